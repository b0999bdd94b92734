#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace telesim {

// Parameter sweep over architecture/parameter keys. The workload is either
// a fixed circuit file or (gen_* set) a fresh random circuit per
// repetition with seed base_seed + repetition index. Rows follow the
// cartesian product of the axes in the order given, first axis outermost,
// repetitions innermost. Output is CSV: swept keys, then the standard
// report columns, then an "error" column that is empty on success; a row
// whose run fails keeps its key columns and carries the message there.
struct SweepSpec {
    std::string circuit_path;
    std::string arch_path;
    std::string params_path;
    std::string mapping_path; // optional

    // random workload instead of circuit_path
    uint32_t gen_qubits = 0;
    size_t gen_gates = 0;
    std::vector<double> gen_arity_dist;

    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    std::vector<std::pair<std::string, std::string>> overrides; // --set
    int repetitions = 1;
    uint64_t base_seed = 0;
    int jobs = 1;
};

struct SweepResult {
    std::string csv;
    size_t failed_rows = 0;
};

// Values of one axis: comma-separated entries; an entry "a..b" with
// integers a <= b expands to the inclusive range.
std::vector<std::string> expand_axis_values(const std::string& spec);

// Sweep spec file: the CLI long options as key=value lines, with vary=
// and set= repeatable.
SweepSpec parse_sweep_spec_file(const std::string& path);

// Runs every row (jobs > 1 distributes rows over threads; the output is
// assembled in row order and is byte-identical to a sequential run).
// Throws on invalid axis keys or unreadable base files before any row
// runs; per-row failures are reported in the CSV instead.
SweepResult run_sweep(const SweepSpec& spec);

} // namespace telesim
