#include "telesim/sweep.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"
#include "telesim/engine.hpp"
#include "telesim/error.hpp"
#include "telesim/placement.hpp"
#include "telesim/report.hpp"
#include "keyval.hpp"

namespace telesim {

std::vector<std::string> expand_axis_values(const std::string& spec) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string item{detail::trim(
            spec.substr(pos, comma == std::string::npos ? spec.size() - pos
                                                        : comma - pos))};
        pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
        if (item.empty()) continue;

        size_t dots = item.find("..");
        bool range = dots != std::string::npos && dots > 0 &&
                     dots + 2 < item.size();
        if (range) {
            // integer ranges only; anything else falls through as a plain
            // value so "1.5" style entries keep working
            try {
                long long lo =
                    detail::to_int(item.substr(0, dots), "axis range");
                long long hi =
                    detail::to_int(item.substr(dots + 2), "axis range");
                if (lo > hi)
                    throw ParseError("axis range '" + item +
                                     "' is descending");
                for (long long v = lo; v <= hi; ++v)
                    out.push_back(std::to_string(v));
                continue;
            } catch (const ParseError&) {
                if (item.find("..") != std::string::npos &&
                    item.find_first_not_of("0123456789. \t-") ==
                        std::string::npos)
                    throw; // looked like a numeric range, so report it
            }
        }
        out.push_back(item);
    }
    if (out.empty()) throw ParseError("axis with no values");
    return out;
}

namespace {

std::string csv_escape(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

struct RowTask {
    std::vector<size_t> axis_index;
    int rep = 0;
};

} // namespace

SweepSpec parse_sweep_spec_file(const std::string& path) {
    SweepSpec s;
    for (const detail::KeyVal& kv : detail::read_keyvals(detail::read_file(path))) {
        const std::string where = "sweep spec: " + kv.key;
        if (kv.key == "circuit") s.circuit_path = kv.value;
        else if (kv.key == "arch") s.arch_path = kv.value;
        else if (kv.key == "params") s.params_path = kv.value;
        else if (kv.key == "mapping") s.mapping_path = kv.value;
        else if (kv.key == "vary") {
            size_t eq = kv.value.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParseError(where + ": expected key=v1,v2,...");
            s.axes.emplace_back(
                std::string(detail::trim(kv.value.substr(0, eq))),
                expand_axis_values(kv.value.substr(eq + 1)));
        } else if (kv.key == "set") {
            size_t eq = kv.value.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ParseError(where + ": expected key=value");
            s.overrides.emplace_back(
                std::string(detail::trim(kv.value.substr(0, eq))),
                std::string(detail::trim(kv.value.substr(eq + 1))));
        } else if (kv.key == "reps")
            s.repetitions = (int)detail::to_int(kv.value, where);
        else if (kv.key == "seed")
            s.base_seed = (uint64_t)detail::to_int(kv.value, where);
        else if (kv.key == "jobs")
            s.jobs = (int)detail::to_int(kv.value, where);
        else if (kv.key == "gen_qubits")
            s.gen_qubits = (uint32_t)detail::to_int(kv.value, where);
        else if (kv.key == "gen_gates")
            s.gen_gates = (size_t)detail::to_int(kv.value, where);
        else if (kv.key == "gen_arity_dist") {
            for (const std::string& v : expand_axis_values(kv.value))
                s.gen_arity_dist.push_back(detail::to_double(v, where));
        } else
            throw ParseError(where + ": unknown key");
    }
    return s;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.repetitions < 1) throw ParseError("sweep: reps must be >= 1");
    if (spec.jobs < 1) throw ParseError("sweep: jobs must be >= 1");
    bool gen = spec.gen_qubits > 0 || spec.gen_gates > 0;
    if (gen && !spec.circuit_path.empty())
        throw ParseError("sweep: give either a circuit file or gen_* "
                         "options, not both");
    if (!gen && spec.circuit_path.empty())
        throw ParseError("sweep: no circuit file and no gen_* options");

    // base inputs are read once; every row re-parses from these strings so
    // rows stay independent under concurrency
    const std::string arch_text = detail::read_file(spec.arch_path);
    const std::string params_text = detail::read_file(spec.params_path);
    const std::string mapping_text =
        spec.mapping_path.empty() ? std::string()
                                  : detail::read_file(spec.mapping_path);
    const std::string circuit_text =
        gen ? std::string() : detail::read_file(spec.circuit_path);

    // fail fast on config/axis mistakes before any row runs
    {
        ArchitectureConfig a = parse_architecture(arch_text);
        PhysicalParams p = parse_parameters(params_text);
        for (const auto& [k, v] : spec.overrides) apply_override(a, p, k, v);
        for (const auto& [key, values] : spec.axes) {
            if (values.empty()) throw ParseError("sweep: axis with no values");
            apply_override(a, p, key, values.front());
        }
    }

    // pre-generated workloads, one per repetition
    std::vector<Circuit> circuits(spec.repetitions);
    for (int rep = 0; rep < spec.repetitions; ++rep) {
        if (gen) {
            ArityDist dist{spec.gen_arity_dist};
            circuits[rep] = random_circuit(spec.gen_qubits, spec.gen_gates,
                                           dist, spec.base_seed + rep);
        } else {
            circuits[rep] = parse_circuit(circuit_text);
        }
    }

    // row order: cartesian product, first axis outermost, reps innermost
    std::vector<RowTask> tasks;
    std::vector<size_t> idx(spec.axes.size(), 0);
    for (;;) {
        for (int rep = 0; rep < spec.repetitions; ++rep)
            tasks.push_back({idx, rep});
        if (spec.axes.empty()) break;
        bool done = true;
        for (size_t level = spec.axes.size(); level-- > 0;) {
            if (++idx[level] < spec.axes[level].second.size()) {
                done = false;
                break;
            }
            idx[level] = 0; // carry into the next-outer axis
        }
        if (done) break;
    }

    std::vector<std::string> rows(tasks.size());
    std::atomic<size_t> failed{0};
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const RowTask& task = tasks[i];
            std::ostringstream row;
            for (size_t a = 0; a < spec.axes.size(); ++a)
                row << spec.axes[a].second[task.axis_index[a]] << ',';
            try {
                ArchitectureConfig arch = parse_architecture(arch_text);
                PhysicalParams params = parse_parameters(params_text);
                for (const auto& [k, v] : spec.overrides)
                    apply_override(arch, params, k, v);
                for (size_t a = 0; a < spec.axes.size(); ++a)
                    apply_override(arch, params, spec.axes[a].first,
                                   spec.axes[a].second[task.axis_index[a]]);
                const Circuit& circuit = circuits[task.rep];
                Placement place =
                    mapping_text.empty()
                        ? vanilla_map(circuit.num_qubits, arch)
                        : load_mapping(mapping_text, arch);
                ExecutionTrace trace = simulate(circuit, arch, params, place,
                                                spec.base_seed + task.rep);
                ExecutionReport rep = summarize(trace, arch, params);
                std::string csv = emit(rep, ReportFormat::csv_row);
                if (!csv.empty() && csv.back() == '\n') csv.pop_back();
                row << csv << ','; // empty error column
            } catch (const std::exception& e) {
                for (size_t c = 0; c < csv_columns().size(); ++c) row << ',';
                row << csv_escape(e.what());
                failed.fetch_add(1);
            }
            rows[i] = row.str();
        }
    };

    if (spec.jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < spec.jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::ostringstream out;
    for (const auto& [key, values] : spec.axes) out << key << ',';
    const auto& cols = csv_columns();
    for (const std::string& c : cols) out << c << ',';
    out << "error\n";
    for (const std::string& r : rows) out << r << '\n';
    return {out.str(), failed.load()};
}

} // namespace telesim
