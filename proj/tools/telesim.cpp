// Command line front end: run one simulation, generate a random circuit,
// or sweep a parameter grid.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"
#include "telesim/engine.hpp"
#include "telesim/error.hpp"
#include "telesim/placement.hpp"
#include "telesim/report.hpp"
#include "telesim/sweep.hpp"

namespace {

// exit codes: 0 ok, 2 usage, 3 missing file, 4 malformed input, 5 model
// constraint violated, 1 anything else
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;
constexpr int kExitModel = 5;

struct RunArgs {
    std::string circuit, arch, params, mapping, trace_path, format = "text";
    std::vector<std::string> sets;
    uint64_t seed = 0;
    bool detailed = false;
};

struct GenArgs {
    std::string arity_dist = "0.5,0.5";
    std::string output;
    uint64_t qubits = 0, gates = 0, seed = 0;
};

struct SweepArgs {
    std::string spec_file;
    telesim::SweepSpec spec;
    std::string output;
    std::vector<std::string> vary, sets;
    std::string gen_arity_dist;
};

std::vector<double> parse_dist(const std::string& text) {
    std::vector<double> probs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            double v = std::stod(item, &used);
            while (used < item.size() && std::isspace((unsigned char)item[used]))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            probs.push_back(v);
        } catch (const std::exception&) {
            throw telesim::ParseError("arity distribution: bad entry '" +
                                      item + "'");
        }
    }
    if (probs.empty())
        throw telesim::ParseError("arity distribution: no entries");
    return probs;
}

std::pair<std::string, std::string> split_kv(const std::string& s,
                                             const char* what) {
    size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw telesim::ParseError(std::string(what) + ": expected key=value, got '" +
                                  s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw telesim::IoError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw telesim::IoError("cannot write file: " + path);
}

int cmd_run(const RunArgs& a) {
    telesim::ArchitectureConfig arch =
        telesim::parse_architecture_file(a.arch);
    telesim::PhysicalParams params = telesim::parse_parameters_file(a.params);
    for (const std::string& s : a.sets) {
        auto [k, v] = split_kv(s, "--set");
        telesim::apply_override(arch, params, k, v);
    }
    telesim::Circuit circuit = telesim::parse_circuit_file(a.circuit);
    telesim::Placement place =
        a.mapping.empty()
            ? telesim::vanilla_map(circuit.num_qubits, arch)
            : telesim::load_mapping_file(a.mapping, arch);

    telesim::ExecutionTrace trace =
        telesim::simulate(circuit, arch, params, place, a.seed);

    if (!a.trace_path.empty()) {
        std::ofstream tf(a.trace_path, std::ios::binary);
        if (!tf)
            throw telesim::IoError("cannot open file for writing: " +
                                   a.trace_path);
        telesim::dump_trace(trace, tf);
    }

    telesim::ReportFormat fmt;
    if (a.format == "text") fmt = telesim::ReportFormat::text;
    else if (a.format == "json") fmt = telesim::ReportFormat::json;
    else if (a.format == "csv") fmt = telesim::ReportFormat::csv_row;
    else
        throw telesim::ParseError("--format must be text, json or csv, got '" +
                                  a.format + "'");

    telesim::ExecutionReport report = telesim::summarize(trace, arch, params);
    telesim::EmitOptions opts;
    opts.detailed = a.detailed;
    opts.csv_header = true;
    std::cout << telesim::emit(report, fmt, opts);
    return 0;
}

int cmd_gen(const GenArgs& a) {
    telesim::ArityDist dist{parse_dist(a.arity_dist)};
    telesim::Circuit c = telesim::random_circuit(
        static_cast<uint32_t>(a.qubits), a.gates, dist, a.seed);
    write_out(a.output, telesim::render_circuit(c));
    return 0;
}

int cmd_sweep(SweepArgs& a) {
    telesim::SweepSpec spec;
    if (!a.spec_file.empty()) spec = telesim::parse_sweep_spec_file(a.spec_file);

    // flags refine / override the spec file
    if (!a.spec.circuit_path.empty()) spec.circuit_path = a.spec.circuit_path;
    if (!a.spec.arch_path.empty()) spec.arch_path = a.spec.arch_path;
    if (!a.spec.params_path.empty()) spec.params_path = a.spec.params_path;
    if (!a.spec.mapping_path.empty()) spec.mapping_path = a.spec.mapping_path;
    if (a.spec.repetitions != 1) spec.repetitions = a.spec.repetitions;
    if (a.spec.base_seed != 0) spec.base_seed = a.spec.base_seed;
    if (a.spec.jobs != 1) spec.jobs = a.spec.jobs;
    if (a.spec.gen_qubits != 0) spec.gen_qubits = a.spec.gen_qubits;
    if (a.spec.gen_gates != 0) spec.gen_gates = a.spec.gen_gates;
    if (!a.gen_arity_dist.empty())
        spec.gen_arity_dist = parse_dist(a.gen_arity_dist);
    for (const std::string& v : a.vary) {
        auto [k, values] = split_kv(v, "--vary");
        spec.axes.emplace_back(k, telesim::expand_axis_values(values));
    }
    for (const std::string& s : a.sets)
        spec.overrides.push_back(split_kv(s, "--set"));

    if (spec.arch_path.empty())
        throw telesim::ParseError("sweep: no architecture file given");
    if (spec.params_path.empty())
        throw telesim::ParseError("sweep: no parameters file given");

    telesim::SweepResult res = telesim::run_sweep(spec);
    write_out(a.output, res.csv);
    if (res.failed_rows) {
        std::cerr << "sweep: " << res.failed_rows
                  << " row(s) failed, see the error column\n";
        return kExitModel;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"execution-time simulator for teleportation-based "
                 "multi-core quantum programs"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand(
        "run", "simulate one circuit and print the report");
    run->add_option("--circuit", run_args.circuit, "circuit file")->required();
    run->add_option("--arch", run_args.arch, "architecture file")->required();
    run->add_option("--params", run_args.params, "timing parameters file")
        ->required();
    run->add_option("--mapping", run_args.mapping,
                    "initial mapping file (default: round-robin)");
    run->add_option("--seed", run_args.seed, "seed (reserved, model is "
                                             "deterministic)");
    run->add_option("--format", run_args.format, "text, json or csv");
    run->add_option("--trace", run_args.trace_path,
                    "write the per-bundle trace to this file");
    run->add_option("--set", run_args.sets,
                    "override one config key, key=value (repeatable)");
    run->add_flag("--detailed", run_args.detailed,
                  "include per-qubit and full comm-map output");

    GenArgs gen_args;
    CLI::App* gen =
        app.add_subcommand("gen", "generate a random layered circuit");
    gen->add_option("--qubits", gen_args.qubits, "number of logical qubits")
        ->required();
    gen->add_option("--gates", gen_args.gates, "number of gates")->required();
    gen->add_option("--arity-dist", gen_args.arity_dist,
                    "comma probabilities for arity 1,2,... (default 0.5,0.5)");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("-o,--output", gen_args.output,
                    "output file (default stdout)");

    SweepArgs sweep_args;
    CLI::App* sweep =
        app.add_subcommand("sweep", "run a parameter grid, emit CSV");
    sweep->add_option("--spec", sweep_args.spec_file,
                      "sweep spec file (key=value lines)");
    sweep->add_option("--circuit", sweep_args.spec.circuit_path,
                      "circuit file");
    sweep->add_option("--arch", sweep_args.spec.arch_path,
                      "architecture file");
    sweep->add_option("--params", sweep_args.spec.params_path,
                      "timing parameters file");
    sweep->add_option("--mapping", sweep_args.spec.mapping_path,
                      "initial mapping file");
    sweep->add_option("--vary", sweep_args.vary,
                      "axis key=v1,v2,... or key=a..b (repeatable)");
    sweep->add_option("--set", sweep_args.sets,
                      "fixed override key=value (repeatable)");
    sweep->add_option("--reps", sweep_args.spec.repetitions,
                      "repetitions per grid point");
    sweep->add_option("--seed", sweep_args.spec.base_seed,
                      "base seed; repetition i uses seed+i");
    sweep->add_option("--jobs", sweep_args.spec.jobs, "worker threads");
    sweep->add_option("--gen-qubits", sweep_args.spec.gen_qubits,
                      "generate circuits: number of qubits");
    sweep->add_option("--gen-gates", sweep_args.spec.gen_gates,
                      "generate circuits: number of gates");
    sweep->add_option("--gen-arity-dist", sweep_args.gen_arity_dist,
                      "generate circuits: arity probabilities");
    sweep->add_option("-o,--output", sweep_args.output,
                      "output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        std::cerr << "usage error: no subcommand\n";
        return kExitUsage;
    } catch (const telesim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const telesim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const telesim::ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
