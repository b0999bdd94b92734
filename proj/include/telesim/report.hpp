#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telesim/config.hpp"
#include "telesim/engine.hpp"

namespace telesim {

// Aggregated results of one run. Times in ns, rates in bits/s.
struct ExecutionReport {
    size_t executed_gates = 0;
    size_t intercore_comms = 0;
    size_t intercore_traffic = 0;
    std::vector<std::vector<uint32_t>> comm_map;

    double throughput_avg_bps = 0;
    double throughput_peak_bps = 0;

    UtilizationStats util;

    TimeBreakdown breakdown;

    double comm_ns = 0;    // dispatch+epr+pre+classical+post+ack-overlap
    double comp_ns = 0;    // gate execution
    double control_ns = 0; // fetch+decode
    double total_ns = 0;

    std::optional<double> coherence;

    // Only populated for detailed output.
    std::vector<uint32_t> qubit_ops;
    std::vector<uint32_t> qubit_teleports;
};

// Fraction of coherence left after t_ns, given relaxation and dephasing
// times: exp(-t/t1) * (exp(-t/t2)/2 + 1/2). Equals 1 at t = 0.
double coherence(double t_ns, double t1_ns, double t2_ns);

ExecutionReport summarize(const ExecutionTrace& trace,
                          const ArchitectureConfig& arch,
                          const PhysicalParams& params);

enum class ReportFormat { text, json, csv_row };

struct EmitOptions {
    bool detailed = false;   // text/json: add per-qubit and full comm-map
    bool csv_header = false; // csv_row: prepend the header line
};

// text: human-readable summary. json: stable field names, reparseable via
// report_from_json. csv_row: one flat line, columns fixed (csv_columns),
// comm-map and per-qubit tables excluded.
std::string emit(const ExecutionReport& r, ReportFormat format,
                 const EmitOptions& opts = {});

ExecutionReport report_from_json(const std::string& text);

const std::vector<std::string>& csv_columns();

} // namespace telesim
