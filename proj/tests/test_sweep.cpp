#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"
#include "telesim/engine.hpp"
#include "telesim/error.hpp"
#include "telesim/placement.hpp"
#include "telesim/report.hpp"
#include "telesim/sweep.hpp"

using namespace telesim;
namespace fs = std::filesystem;

namespace {

const char* kArchText =
    "mesh_x = 2\n"
    "mesh_y = 1\n"
    "link_width = 8\n"
    "qubits_per_core = 3\n"
    "ltm_ports = 1\n"
    "wireless_enabled = false\n";

const char* kParamsText =
    "gate_delays = cnot:10, swap:20, default_1q:4, default_2q:10\n"
    "epr_delay = 100\n"
    "dist_delay = 5\n"
    "pre_delay = 7\n"
    "post_delay = 11\n"
    "noc_clock_time = 1\n"
    "memory_bandwidth = 1e9\n"
    "bits_instruction = 4\n"
    "decode_d1 = 2\n"
    "decode_d2 = 3\n";

const char* kCircuitText = "cnot(0,1) cnot(2,3)\nswap(0,1)\ncnot(1,2)\n";
const char* kMappingText = "0 0\n1 0\n2 1\n3 1\n";

struct Fixture {
    fs::path dir;

    Fixture() {
        dir = fs::temp_directory_path() /
              ("telesim_sweep_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        write("arch.conf", kArchText);
        write("params.conf", kParamsText);
        write("circuit.qc", kCircuitText);
        write("mapping.map", kMappingText);
    }
    ~Fixture() { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& content) {
        fs::path p = dir / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string path(const std::string& name) const {
        return (dir / name).string();
    }

    SweepSpec base_spec() const {
        SweepSpec s;
        s.circuit_path = path("circuit.qc");
        s.arch_path = path("arch.conf");
        s.params_path = path("params.conf");
        s.mapping_path = path("mapping.map");
        return s;
    }
};

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

} // namespace

TEST_CASE("axis values: lists, ranges and mixtures") {
    CHECK(expand_axis_values("1,2,5") ==
          std::vector<std::string>{"1", "2", "5"});
    CHECK(expand_axis_values("1..4") ==
          std::vector<std::string>{"1", "2", "3", "4"});
    CHECK(expand_axis_values("2..2") == std::vector<std::string>{"2"});
    CHECK(expand_axis_values("1,4..6,9") ==
          std::vector<std::string>{"1", "4", "5", "6", "9"});
    CHECK(expand_axis_values("1.5, 2.5") ==
          std::vector<std::string>{"1.5", "2.5"});
    CHECK(expand_axis_values("true,false") ==
          std::vector<std::string>{"true", "false"});
    CHECK_THROWS_AS(expand_axis_values("4..1"), ParseError);
    CHECK_THROWS_AS(expand_axis_values(""), ParseError);
    CHECK_THROWS_AS(expand_axis_values(" , ,"), ParseError);
}

TEST_CASE("sweep: no axes produces exactly the single-run row") {
    Fixture f;
    SweepSpec s = f.base_spec();
    SweepResult res = run_sweep(s);
    CHECK(res.failed_rows == 0);
    REQUIRE(count_lines(res.csv) == 2); // header + one row

    size_t nl = res.csv.find('\n');
    std::string header = res.csv.substr(0, nl);
    std::string row = res.csv.substr(nl + 1);
    row.pop_back();

    CHECK(split(header, ',').size() == 25); // 24 report columns + error
    CHECK(split(header, ',').back() == "error");
    CHECK(split(row, ',').size() == 25);
    CHECK(split(row, ',').back().empty());

    // the row body is the plain run report
    ArchitectureConfig arch = parse_architecture(kArchText);
    PhysicalParams params = parse_parameters(kParamsText);
    Placement place = load_mapping(kMappingText, arch);
    ExecutionTrace t = simulate(parse_circuit(kCircuitText), arch, params,
                                place);
    std::string expect = emit(summarize(t, arch, params),
                              ReportFormat::csv_row);
    expect.pop_back();
    CHECK(row == expect + ",");
}

TEST_CASE("sweep: one axis in declared order") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.axes.push_back({"ltm_ports", expand_axis_values("1..5")});
    SweepResult res = run_sweep(s);
    CHECK(res.failed_rows == 0);
    REQUIRE(count_lines(res.csv) == 6);

    std::vector<std::string> lines = split(res.csv, '\n');
    CHECK(split(lines[0], ',').front() == "ltm_ports");
    for (int i = 1; i <= 5; ++i) {
        auto fields = split(lines[i], ',');
        CHECK(fields.front() == std::to_string(i));
        CHECK(fields.size() == 26); // axis + report + error
        CHECK(fields.back().empty());
    }
}

TEST_CASE("sweep: two axes, first outermost, reps innermost") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.axes.push_back({"ltm_ports", {"1", "2"}});
    s.axes.push_back({"pre_delay", {"7", "9", "11"}});
    s.repetitions = 2;
    SweepResult res = run_sweep(s);
    std::vector<std::string> lines = split(res.csv, '\n');
    REQUIRE(lines.size() == 1 + 12 + 1); // header + 2*3*2 rows + final ''

    std::vector<std::pair<std::string, std::string>> expect = {
        {"1", "7"}, {"1", "7"}, {"1", "9"}, {"1", "9"},
        {"1", "11"}, {"1", "11"}, {"2", "7"}, {"2", "7"},
        {"2", "9"}, {"2", "9"}, {"2", "11"}, {"2", "11"}};
    for (size_t i = 0; i < expect.size(); ++i) {
        auto fields = split(lines[1 + i], ',');
        CHECK(fields[0] == expect[i].first);
        CHECK(fields[1] == expect[i].second);
    }
}

TEST_CASE("sweep: reruns and thread counts give identical bytes") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.axes.push_back({"ltm_ports", {"1", "2", "3"}});
    s.axes.push_back({"noc_clock_time", {"1", "2"}});
    s.repetitions = 2;

    SweepResult a = run_sweep(s);
    SweepResult b = run_sweep(s);
    CHECK(a.csv == b.csv);

    s.jobs = 4;
    SweepResult c = run_sweep(s);
    CHECK(a.csv == c.csv);
    CHECK(a.failed_rows == c.failed_rows);
}

TEST_CASE("sweep: overrides apply before the axes") {
    Fixture f;
    SweepSpec s = f.base_spec();
    SweepResult base = run_sweep(s);

    SweepSpec slow = f.base_spec();
    slow.overrides.push_back({"noc_clock_time", "50"});
    SweepResult slowed = run_sweep(slow);
    CHECK(base.csv != slowed.csv);

    // an axis on the same key wins over the override
    SweepSpec both = f.base_spec();
    both.overrides.push_back({"noc_clock_time", "50"});
    both.axes.push_back({"noc_clock_time", {"1"}});
    SweepSpec axis_only = f.base_spec();
    axis_only.axes.push_back({"noc_clock_time", {"1"}});
    CHECK(run_sweep(both).csv == run_sweep(axis_only).csv);
}

TEST_CASE("sweep: bad axis key fails before any row") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.axes.push_back({"warp_factor", {"9"}});
    CHECK_THROWS_AS(run_sweep(s), ParseError);

    SweepSpec bad_value = f.base_spec();
    bad_value.axes.push_back({"ltm_ports", {"zero"}});
    CHECK_THROWS_AS(run_sweep(bad_value), ParseError);
}

TEST_CASE("sweep: a row that cannot run keeps its keys and the message") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.mapping_path.clear(); // vanilla mapping: capacity 1 cannot hold 4/2
    s.axes.push_back({"qubits_per_core", {"3", "1"}});
    SweepResult res = run_sweep(s);
    CHECK(res.failed_rows == 1);

    std::vector<std::string> lines = split(res.csv, '\n');
    auto good = split(lines[1], ',');
    auto bad = split(lines[2], ',');
    CHECK(good[0] == "3");
    CHECK(good.back().empty());
    CHECK(bad[0] == "1");
    REQUIRE(bad.size() == 26);
    for (size_t i = 1; i + 1 < bad.size(); ++i) CHECK(bad[i].empty());
    CHECK(bad.back().find("capacity") != std::string::npos);
}

TEST_CASE("sweep: simultaneous circuit file and generator are rejected") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.gen_qubits = 4;
    s.gen_gates = 10;
    CHECK_THROWS_AS(run_sweep(s), ParseError);

    SweepSpec none = f.base_spec();
    none.circuit_path.clear();
    CHECK_THROWS_AS(run_sweep(none), ParseError);

    SweepSpec zero_reps = f.base_spec();
    zero_reps.repetitions = 0;
    CHECK_THROWS_AS(run_sweep(zero_reps), ParseError);
}

TEST_CASE("sweep: generated workloads differ per repetition, rerun stable") {
    Fixture f;
    SweepSpec s = f.base_spec();
    s.circuit_path.clear();
    s.mapping_path.clear();
    s.gen_qubits = 4; // two per core, one spare slot each for teleports
    s.gen_gates = 30;
    s.gen_arity_dist = {0.5, 0.5};
    s.repetitions = 3;
    s.base_seed = 12;

    SweepResult a = run_sweep(s);
    CHECK(a.failed_rows == 0);
    std::vector<std::string> lines = split(a.csv, '\n');
    REQUIRE(lines.size() == 1 + 3 + 1);
    bool all_same = lines[1] == lines[2] && lines[2] == lines[3];
    CHECK_FALSE(all_same); // three different random circuits

    SweepResult b = run_sweep(s);
    CHECK(a.csv == b.csv);

    s.base_seed = 13; // different seeds, different workloads
    SweepResult c = run_sweep(s);
    CHECK(a.csv != c.csv);
}

TEST_CASE("sweep: spec file round trip") {
    Fixture f;
    std::string spec_path = f.write(
        "sweep.conf",
        "circuit = " + f.path("circuit.qc") + "\n" +
        "arch = " + f.path("arch.conf") + "\n" +
        "params = " + f.path("params.conf") + "\n" +
        "mapping = " + f.path("mapping.map") + "\n" +
        "vary = ltm_ports=1..3\n"
        "vary = pre_delay=7,9\n"
        "set = noc_clock_time=2\n"
        "reps = 2\n"
        "seed = 5\n"
        "jobs = 2\n");
    SweepSpec s = parse_sweep_spec_file(spec_path);
    CHECK(s.circuit_path == f.path("circuit.qc"));
    CHECK(s.mapping_path == f.path("mapping.map"));
    REQUIRE(s.axes.size() == 2);
    CHECK(s.axes[0].first == "ltm_ports");
    CHECK(s.axes[0].second == std::vector<std::string>{"1", "2", "3"});
    CHECK(s.axes[1].first == "pre_delay");
    REQUIRE(s.overrides.size() == 1);
    CHECK(s.overrides[0] ==
          std::pair<std::string, std::string>("noc_clock_time", "2"));
    CHECK(s.repetitions == 2);
    CHECK(s.base_seed == 5);
    CHECK(s.jobs == 2);

    // the parsed spec actually runs
    SweepResult res = run_sweep(s);
    CHECK(res.failed_rows == 0);
    CHECK(count_lines(res.csv) == 1 + 3 * 2 * 2);

    std::string bad = f.write("bad.conf", "circuit = x\nwormhole = yes\n");
    CHECK_THROWS_AS(parse_sweep_spec_file(bad), ParseError);
}

TEST_CASE("sweep: generator settings come through the spec file") {
    Fixture f;
    std::string spec_path = f.write(
        "gen.conf",
        "arch = " + f.path("arch.conf") + "\n" +
        "params = " + f.path("params.conf") + "\n" +
        "gen_qubits = 4\n"
        "gen_gates = 12\n"
        "gen_arity_dist = 0.25,0.75\n"
        "reps = 2\n");
    SweepSpec s = parse_sweep_spec_file(spec_path);
    CHECK(s.gen_qubits == 4);
    CHECK(s.gen_gates == 12);
    REQUIRE(s.gen_arity_dist.size() == 2);
    CHECK(s.gen_arity_dist[0] == doctest::Approx(0.25));
    CHECK(s.gen_arity_dist[1] == doctest::Approx(0.75));
    SweepResult res = run_sweep(s);
    CHECK(res.failed_rows == 0);
    CHECK(count_lines(res.csv) == 3);
}
