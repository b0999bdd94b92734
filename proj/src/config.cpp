#include "telesim/config.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "telesim/error.hpp"
#include "keyval.hpp"

namespace telesim {

namespace detail {

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<KeyVal> read_keyvals(std::string_view text) {
    std::vector<KeyVal> out;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected key=value, got '" + std::string(line) +
                             "'");
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw ParseError("line " + std::to_string(line_no) +
                             ": empty key");
        out.push_back({std::move(key), std::move(value), line_no});
    }
    return out;
}

double to_double(const std::string& s, const std::string& where) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw ParseError(where + ": not a number: '" + s + "'");
    return v;
}

long long to_int(const std::string& s, const std::string& where) {
    double v = to_double(s, where);
    long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(where + ": expected an integer, got '" + s + "'");
    return i;
}

bool to_bool(const std::string& s, const std::string& where) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ParseError(where + ": expected true/false, got '" + s + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read file: " + path);
    return ss.str();
}

} // namespace detail

using detail::KeyVal;

int ceil_log2(uint64_t n) {
    // n = 1 must give 0: a single addressable item needs no bits.
    return n <= 1 ? 0 : std::bit_width(n - 1);
}

double PhysicalParams::gate_delay(const std::string& name,
                                  size_t arity) const {
    if (!name.empty()) {
        auto it = gate_delays.find(name);
        if (it != gate_delays.end()) return it->second;
    }
    std::string fallback = "default_" + std::to_string(arity) + "q";
    auto it = gate_delays.find(fallback);
    if (it != gate_delays.end()) return it->second;
    throw ModelError("no delay for gate '" + (name.empty() ? "<anon>" : name) +
                     "' and no " + fallback + " entry");
}

namespace {

TeleportationType parse_ttype(const std::string& v, const std::string& where) {
    if (v == "all_to_all") return TeleportationType::all_to_all;
    if (v == "split") return TeleportationType::split;
    throw ParseError(where + ": expected all_to_all or split, got '" + v + "'");
}

DstSelectionMode parse_dmode(const std::string& v, const std::string& where) {
    if (v == "load_aware") return DstSelectionMode::load_aware;
    if (v == "load_independent") return DstSelectionMode::load_independent;
    throw ParseError(where +
                     ": expected load_aware or load_independent, got '" + v +
                     "'");
}

std::map<std::string, double> parse_gate_delays(const std::string& v,
                                                const std::string& where) {
    std::map<std::string, double> out;
    size_t pos = 0;
    while (pos < v.size()) {
        size_t comma = v.find(',', pos);
        std::string item{detail::trim(
            v.substr(pos, comma == std::string::npos ? v.size() - pos
                                                     : comma - pos))};
        pos = comma == std::string::npos ? v.size() : comma + 1;
        if (item.empty()) continue;
        size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError(where + ": expected name:delay, got '" + item +
                             "'");
        std::string name{detail::trim(item.substr(0, colon))};
        double delay = detail::to_double(
            std::string(detail::trim(item.substr(colon + 1))), where);
        if (name.empty())
            throw ParseError(where + ": empty gate name in '" + item + "'");
        if (delay < 0)
            throw ParseError(where + ": negative delay for '" + name + "'");
        out[name] = delay;
    }
    return out;
}

void validate(const ArchitectureConfig& a) {
    auto need_pos = [](int v, const char* k) {
        if (v < 1)
            throw ParseError(std::string("architecture: ") + k +
                             " must be >= 1, got " + std::to_string(v));
    };
    need_pos(a.mesh_x, "mesh_x");
    need_pos(a.mesh_y, "mesh_y");
    need_pos(a.link_width, "link_width");
    need_pos(a.qubits_per_core, "qubits_per_core");
    need_pos(a.ltm_ports, "ltm_ports");
    need_pos(a.radio_channels, "radio_channels");
}

void validate(const PhysicalParams& p) {
    auto need_nonneg = [](double v, const char* k) {
        if (!(v >= 0))
            throw ParseError(std::string("parameters: ") + k +
                             " must be >= 0");
    };
    need_nonneg(p.epr_delay, "epr_delay");
    need_nonneg(p.dist_delay, "dist_delay");
    need_nonneg(p.pre_delay, "pre_delay");
    need_nonneg(p.post_delay, "post_delay");
    need_nonneg(p.noc_clock_time, "noc_clock_time");
    need_nonneg(p.decode_d1, "decode_d1");
    need_nonneg(p.decode_d2, "decode_d2");
    if (!(p.memory_bandwidth > 0))
        throw ParseError("parameters: memory_bandwidth must be > 0");
    if (p.wbit_rate && !(*p.wbit_rate > 0))
        throw ParseError("parameters: wbit_rate must be > 0");
    if (p.token_pass_time && !(*p.token_pass_time >= 0))
        throw ParseError("parameters: token_pass_time must be >= 0");
    if (p.t1 && !(*p.t1 > 0))
        throw ParseError("parameters: t1 must be > 0");
    if (p.t2 && !(*p.t2 > 0))
        throw ParseError("parameters: t2 must be > 0");
    if (p.bits_instruction < 1)
        throw ParseError("parameters: bits_instruction must be >= 1");
    if (p.max_bundle_instructions < 1)
        throw ParseError("parameters: max_bundle_instructions must be >= 1");
}

// Field dispatch shared by the file parsers and apply_override.
bool set_arch_field(ArchitectureConfig& a, const std::string& key,
                    const std::string& value) {
    const std::string where = "architecture: " + key;
    if (key == "mesh_x") a.mesh_x = (int)detail::to_int(value, where);
    else if (key == "mesh_y") a.mesh_y = (int)detail::to_int(value, where);
    else if (key == "link_width")
        a.link_width = (int)detail::to_int(value, where);
    else if (key == "qubits_per_core")
        a.qubits_per_core = (int)detail::to_int(value, where);
    else if (key == "ltm_ports")
        a.ltm_ports = (int)detail::to_int(value, where);
    else if (key == "wireless_enabled")
        a.wireless_enabled = detail::to_bool(value, where);
    else if (key == "radio_channels")
        a.radio_channels = (int)detail::to_int(value, where);
    else if (key == "teleportation_type")
        a.teleportation_type = parse_ttype(value, where);
    else if (key == "dst_selection_mode")
        a.dst_selection_mode = parse_dmode(value, where);
    else return false;
    return true;
}

bool set_params_field(PhysicalParams& p, const std::string& key,
                      const std::string& value) {
    const std::string where = "parameters: " + key;
    if (key == "gate_delays") p.gate_delays = parse_gate_delays(value, where);
    else if (key == "epr_delay")
        p.epr_delay = detail::to_double(value, where);
    else if (key == "dist_delay")
        p.dist_delay = detail::to_double(value, where);
    else if (key == "pre_delay")
        p.pre_delay = detail::to_double(value, where);
    else if (key == "post_delay")
        p.post_delay = detail::to_double(value, where);
    else if (key == "noc_clock_time")
        p.noc_clock_time = detail::to_double(value, where);
    else if (key == "memory_bandwidth")
        p.memory_bandwidth = detail::to_double(value, where);
    else if (key == "bits_instruction")
        p.bits_instruction = (int)detail::to_int(value, where);
    else if (key == "decode_d1")
        p.decode_d1 = detail::to_double(value, where);
    else if (key == "decode_d2")
        p.decode_d2 = detail::to_double(value, where);
    else if (key == "wbit_rate")
        p.wbit_rate = detail::to_double(value, where);
    else if (key == "token_pass_time")
        p.token_pass_time = detail::to_double(value, where);
    else if (key == "t1") p.t1 = detail::to_double(value, where);
    else if (key == "t2") p.t2 = detail::to_double(value, where);
    else if (key == "epr_parallel")
        p.epr_parallel = detail::to_bool(value, where);
    else if (key == "max_bundle_instructions")
        p.max_bundle_instructions = (int)detail::to_int(value, where);
    else return false;
    return true;
}

} // namespace

ArchitectureConfig parse_architecture(std::string_view text) {
    ArchitectureConfig a;
    bool seen[6] = {};
    static const char* required[6] = {"mesh_x",          "mesh_y",
                                      "link_width",      "qubits_per_core",
                                      "ltm_ports",       "wireless_enabled"};
    for (const KeyVal& kv : detail::read_keyvals(text)) {
        if (!set_arch_field(a, kv.key, kv.value))
            throw ParseError("architecture: unknown key '" + kv.key +
                             "' (line " + std::to_string(kv.line) + ")");
        for (int i = 0; i < 6; ++i)
            if (kv.key == required[i]) seen[i] = true;
    }
    for (int i = 0; i < 6; ++i)
        if (!seen[i])
            throw ParseError(std::string("architecture: missing key '") +
                             required[i] + "'");
    validate(a);
    return a;
}

ArchitectureConfig parse_architecture_file(const std::string& path) {
    return parse_architecture(detail::read_file(path));
}

PhysicalParams parse_parameters(std::string_view text) {
    PhysicalParams p;
    bool seen[10] = {};
    static const char* required[10] = {
        "gate_delays", "epr_delay",        "dist_delay",
        "pre_delay",   "post_delay",       "noc_clock_time",
        "memory_bandwidth", "bits_instruction", "decode_d1", "decode_d2"};
    for (const KeyVal& kv : detail::read_keyvals(text)) {
        if (!set_params_field(p, kv.key, kv.value))
            throw ParseError("parameters: unknown key '" + kv.key +
                             "' (line " + std::to_string(kv.line) + ")");
        for (int i = 0; i < 10; ++i)
            if (kv.key == required[i]) seen[i] = true;
    }
    for (int i = 0; i < 10; ++i)
        if (!seen[i])
            throw ParseError(std::string("parameters: missing key '") +
                             required[i] + "'");
    validate(p);
    return p;
}

PhysicalParams parse_parameters_file(const std::string& path) {
    return parse_parameters(detail::read_file(path));
}

void apply_override(ArchitectureConfig& arch, PhysicalParams& params,
                    const std::string& key, const std::string& value) {
    if (set_arch_field(arch, key, value)) {
        validate(arch);
        return;
    }
    if (set_params_field(params, key, value)) {
        validate(params);
        return;
    }
    throw ParseError("unknown configuration key '" + key + "'");
}

} // namespace telesim
