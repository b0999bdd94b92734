#include "telesim/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "telesim/error.hpp"

namespace telesim {

double coherence(double t_ns, double t1_ns, double t2_ns) {
    if (t1_ns <= 0 || t2_ns <= 0)
        throw ModelError("coherence needs positive t1 and t2");
    if (t_ns < 0) throw ModelError("coherence needs t >= 0");
    return std::exp(-t_ns / t1_ns) * (0.5 * std::exp(-t_ns / t2_ns) + 0.5);
}

ExecutionReport summarize(const ExecutionTrace& trace,
                          const ArchitectureConfig& arch,
                          const PhysicalParams& params) {
    (void)arch;
    ExecutionReport r;
    r.executed_gates = trace.executed_gates;
    r.intercore_comms = trace.intercore_comms;
    r.intercore_traffic = trace.intercore_traffic;
    r.comm_map = trace.comm_map;
    r.breakdown = trace.sums;

    const TimeBreakdown& s = trace.sums;
    r.comm_ns = s.dispatch + s.epr_gen + s.epr_dist + s.pre_proc +
                s.classical + s.post_proc + s.ack - s.overlap;
    r.comp_ns = s.gate_exec;
    r.control_ns = s.fetch + s.decode;
    r.total_ns = trace.total_ns;

    if (trace.total_ns > 0)
        r.throughput_avg_bps = static_cast<double>(trace.classical_bits_total) *
                               1e9 / trace.total_ns;
    for (const BundleRecord& b : trace.bundles) {
        double dur = b.end_ns - b.start_ns;
        if (dur > 0 && b.classical_bits > 0)
            r.throughput_peak_bps =
                std::max(r.throughput_peak_bps,
                         static_cast<double>(b.classical_bits) * 1e9 / dur);
    }

    r.util.min = trace.util_min;
    r.util.max = trace.util_max;
    r.util.avg = trace.util_avg;

    if (params.t1 && params.t2)
        r.coherence = coherence(trace.total_ns, *params.t1, *params.t2);

    r.qubit_ops = trace.qubit_ops;
    r.qubit_teleports = trace.qubit_teleports;
    return r;
}

namespace {

std::string fmt(double v, const char* spec = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string emit_text(const ExecutionReport& r, const EmitOptions& opts) {
    std::ostringstream o;
    o << "Executed gates: " << r.executed_gates << '\n';
    o << "Inter-core comms: " << r.intercore_comms << '\n';
    o << "Inter-core traffic: " << r.intercore_traffic << " qubits\n";

    size_t m = r.comm_map.size();
    size_t active = 0;
    for (const auto& row : r.comm_map)
        for (uint32_t v : row)
            if (v) ++active;
    o << "Inter-core comm-map: " << active << " active pairs";
    if (opts.detailed || m <= 8) {
        o << '\n';
        for (size_t i = 0; i < m; ++i) {
            o << "  ";
            for (size_t j = 0; j < m; ++j)
                o << r.comm_map[i][j] << (j + 1 < m ? " " : "");
            o << '\n';
        }
    } else {
        o << " (matrix omitted, use detailed output)\n";
    }

    o << "Throughput: avg " << fmt(r.throughput_avg_bps) << " bps, peak "
      << fmt(r.throughput_peak_bps) << " bps\n";
    o << "Core utilization: min " << r.util.min << ", avg "
      << fmt(r.util.avg, "%.6f") << ", max " << r.util.max << " qubits/core\n";

    const TimeBreakdown& t = r.breakdown;
    o << "Phase totals (ns): fetch " << fmt(t.fetch) << ", decode "
      << fmt(t.decode) << ", dispatch " << fmt(t.dispatch) << ", epr_gen "
      << fmt(t.epr_gen) << ", epr_dist " << fmt(t.epr_dist) << ", pre "
      << fmt(t.pre_proc) << ", classical " << fmt(t.classical) << ", post "
      << fmt(t.post_proc) << ", gate " << fmt(t.gate_exec) << ", ack "
      << fmt(t.ack) << ", overlap " << fmt(t.overlap) << '\n';

    o << "Communication time: " << fmt(r.comm_ns) << " ns\n";
    o << "Computation time: " << fmt(r.comp_ns) << " ns\n";
    o << "Control time: " << fmt(r.control_ns) << " ns\n";
    o << "Execution time: " << fmt(r.total_ns) << " ns\n";
    if (r.coherence)
        o << "Coherence: " << fmt(*r.coherence, "%.9e") << '\n';
    else
        o << "Coherence: disabled (set t1 and t2)\n";

    if (opts.detailed) {
        o << "Per-qubit ops:";
        for (size_t q = 0; q < r.qubit_ops.size(); ++q)
            o << ' ' << q << ':' << r.qubit_ops[q];
        o << '\n';
        o << "Per-qubit teleports:";
        for (size_t q = 0; q < r.qubit_teleports.size(); ++q)
            o << ' ' << q << ':' << r.qubit_teleports[q];
        o << '\n';
    }
    return o.str();
}

nlohmann::ordered_json to_json(const ExecutionReport& r,
                               const EmitOptions& opts) {
    nlohmann::ordered_json j;
    j["executed_gates"] = r.executed_gates;
    j["intercore_comms"] = r.intercore_comms;
    j["intercore_traffic"] = r.intercore_traffic;
    j["comm_map"] = r.comm_map;
    j["throughput_avg_bps"] = r.throughput_avg_bps;
    j["throughput_peak_bps"] = r.throughput_peak_bps;
    j["util_min"] = r.util.min;
    j["util_avg"] = r.util.avg;
    j["util_max"] = r.util.max;
    j["t_fetch_ns"] = r.breakdown.fetch;
    j["t_decode_ns"] = r.breakdown.decode;
    j["t_dispatch_ns"] = r.breakdown.dispatch;
    j["t_epr_gen_ns"] = r.breakdown.epr_gen;
    j["t_epr_dist_ns"] = r.breakdown.epr_dist;
    j["t_pre_ns"] = r.breakdown.pre_proc;
    j["t_classical_ns"] = r.breakdown.classical;
    j["t_post_ns"] = r.breakdown.post_proc;
    j["t_gate_ns"] = r.breakdown.gate_exec;
    j["t_ack_ns"] = r.breakdown.ack;
    j["t_overlap_ns"] = r.breakdown.overlap;
    j["t_comm_ns"] = r.comm_ns;
    j["t_comp_ns"] = r.comp_ns;
    j["t_control_ns"] = r.control_ns;
    j["t_total_ns"] = r.total_ns;
    if (r.coherence)
        j["coherence"] = *r.coherence;
    else
        j["coherence"] = nullptr;
    if (opts.detailed) {
        j["qubit_ops"] = r.qubit_ops;
        j["qubit_teleports"] = r.qubit_teleports;
    }
    return j;
}

std::string emit_csv(const ExecutionReport& r, const EmitOptions& opts) {
    std::ostringstream o;
    if (opts.csv_header) {
        const auto& cols = csv_columns();
        for (size_t i = 0; i < cols.size(); ++i)
            o << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    }
    const TimeBreakdown& t = r.breakdown;
    o << r.executed_gates << ',' << r.intercore_comms << ','
      << r.intercore_traffic << ',' << fmt(r.throughput_avg_bps) << ','
      << fmt(r.throughput_peak_bps) << ',' << r.util.min << ','
      << fmt(r.util.avg, "%.6f") << ',' << r.util.max << ',' << fmt(t.fetch)
      << ',' << fmt(t.decode) << ',' << fmt(t.dispatch) << ','
      << fmt(t.epr_gen) << ',' << fmt(t.epr_dist) << ',' << fmt(t.pre_proc)
      << ',' << fmt(t.classical) << ',' << fmt(t.post_proc) << ','
      << fmt(t.gate_exec) << ',' << fmt(t.ack) << ',' << fmt(t.overlap) << ','
      << fmt(r.comm_ns) << ',' << fmt(r.comp_ns) << ',' << fmt(r.control_ns)
      << ',' << fmt(r.total_ns) << ','
      << (r.coherence ? fmt(*r.coherence, "%.9e") : std::string()) << '\n';
    return o.str();
}

} // namespace

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "executed_gates",      "intercore_comms", "intercore_traffic",
        "throughput_avg_bps",  "throughput_peak_bps",
        "util_min",            "util_avg",        "util_max",
        "t_fetch_ns",          "t_decode_ns",     "t_dispatch_ns",
        "t_epr_gen_ns",        "t_epr_dist_ns",   "t_pre_ns",
        "t_classical_ns",      "t_post_ns",       "t_gate_ns",
        "t_ack_ns",            "t_overlap_ns",    "t_comm_ns",
        "t_comp_ns",           "t_control_ns",    "t_total_ns",
        "coherence"};
    return cols;
}

std::string emit(const ExecutionReport& r, ReportFormat format,
                 const EmitOptions& opts) {
    switch (format) {
    case ReportFormat::text: return emit_text(r, opts);
    case ReportFormat::json: return to_json(r, opts).dump(2) + "\n";
    case ReportFormat::csv_row: return emit_csv(r, opts);
    }
    return {};
}

ExecutionReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
    ExecutionReport r;
    try {
        r.executed_gates = j.at("executed_gates").get<size_t>();
        r.intercore_comms = j.at("intercore_comms").get<size_t>();
        r.intercore_traffic = j.at("intercore_traffic").get<size_t>();
        r.comm_map = j.at("comm_map").get<std::vector<std::vector<uint32_t>>>();
        r.throughput_avg_bps = j.at("throughput_avg_bps").get<double>();
        r.throughput_peak_bps = j.at("throughput_peak_bps").get<double>();
        r.util.min = j.at("util_min").get<int>();
        r.util.avg = j.at("util_avg").get<double>();
        r.util.max = j.at("util_max").get<int>();
        r.breakdown.fetch = j.at("t_fetch_ns").get<double>();
        r.breakdown.decode = j.at("t_decode_ns").get<double>();
        r.breakdown.dispatch = j.at("t_dispatch_ns").get<double>();
        r.breakdown.epr_gen = j.at("t_epr_gen_ns").get<double>();
        r.breakdown.epr_dist = j.at("t_epr_dist_ns").get<double>();
        r.breakdown.pre_proc = j.at("t_pre_ns").get<double>();
        r.breakdown.classical = j.at("t_classical_ns").get<double>();
        r.breakdown.post_proc = j.at("t_post_ns").get<double>();
        r.breakdown.gate_exec = j.at("t_gate_ns").get<double>();
        r.breakdown.ack = j.at("t_ack_ns").get<double>();
        r.breakdown.overlap = j.at("t_overlap_ns").get<double>();
        r.comm_ns = j.at("t_comm_ns").get<double>();
        r.comp_ns = j.at("t_comp_ns").get<double>();
        r.control_ns = j.at("t_control_ns").get<double>();
        r.total_ns = j.at("t_total_ns").get<double>();
        if (!j.at("coherence").is_null())
            r.coherence = j.at("coherence").get<double>();
        if (j.contains("qubit_ops"))
            r.qubit_ops = j.at("qubit_ops").get<std::vector<uint32_t>>();
        if (j.contains("qubit_teleports"))
            r.qubit_teleports =
                j.at("qubit_teleports").get<std::vector<uint32_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
    return r;
}

} // namespace telesim
