#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace telesim {

enum class TeleportationType { all_to_all, split };
enum class DstSelectionMode { load_aware, load_independent };

// Machine description. Read from a key=value file ('#' comments):
//
//   mesh_x = 4
//   mesh_y = 4
//   link_width = 8
//   qubits_per_core = 10
//   ltm_ports = 2
//   wireless_enabled = false
//
// radio_channels, teleportation_type and dst_selection_mode are optional
// and default to 1, all_to_all and load_aware. Everything else is required.
struct ArchitectureConfig {
    int mesh_x = 0;
    int mesh_y = 0;
    int link_width = 0;      // bits per NoC flit
    int qubits_per_core = 0; // computing qubit slots per core
    int ltm_ports = 0;       // max concurrent teleports touching one core
    bool wireless_enabled = false;
    int radio_channels = 1;
    TeleportationType teleportation_type = TeleportationType::all_to_all;
    DstSelectionMode dst_selection_mode = DstSelectionMode::load_aware;

    int num_cores() const { return mesh_x * mesh_y; }
};

// Timing and sizing parameters. Durations are in nanoseconds, rates in
// bits per second. Key=value file, same syntax as the architecture file;
// gate_delays is a comma list of name:ns pairs, e.g.
//
//   gate_delays = h:50, cnot:200, default_1q:50, default_2q:200
//
// t1/t2 are optional (coherence reporting is disabled when absent);
// wbit_rate/token_pass_time are only needed on wireless systems;
// epr_parallel defaults to true; max_bundle_instructions defaults to 16.
struct PhysicalParams {
    std::map<std::string, double> gate_delays;
    double epr_delay = 0;          // EPR pair generation
    double dist_delay = 0;         // EPR pair distribution
    double pre_delay = 0;          // teleport pre-processing
    double post_delay = 0;         // teleport post-processing
    double noc_clock_time = 0;     // ns per wired-NoC cycle
    double memory_bandwidth = 0;   // bundle memory fetch, bits/s
    int bits_instruction = 0;      // opcode width in bits
    double decode_d1 = 0;          // decode = d1 + d2 * n_instructions
    double decode_d2 = 0;
    std::optional<double> wbit_rate;       // wireless rate, bits/s
    std::optional<double> token_pass_time; // ns per token hop
    std::optional<double> t1;              // relaxation time, ns
    std::optional<double> t2;              // dephasing time, ns
    bool epr_parallel = true;
    int max_bundle_instructions = 16;

    // Delay lookup with the default_<k>q fallback. Throws ModelError when
    // neither the name nor the fallback key is present.
    double gate_delay(const std::string& name, size_t arity) const;
};

ArchitectureConfig parse_architecture(std::string_view text);
ArchitectureConfig parse_architecture_file(const std::string& path);
PhysicalParams parse_parameters(std::string_view text);
PhysicalParams parse_parameters_file(const std::string& path);

// Set one field by its file key on whichever config owns it (used by
// --set and sweep axes). Re-validates. Throws ParseError on unknown keys
// or bad values.
void apply_override(ArchitectureConfig& arch, PhysicalParams& params,
                    const std::string& key, const std::string& value);

// Core layout on the mesh. Core i sits at (i % mesh_x, i / mesh_x).
// The dispatcher is node M (one past the last core) and is attached to
// the router of core 0, so it occupies (0,0) for distance purposes.
struct SystemGeometry {
    int mesh_x = 0;
    int mesh_y = 0;

    static SystemGeometry from(const ArchitectureConfig& a) {
        return {a.mesh_x, a.mesh_y};
    }

    int num_cores() const { return mesh_x * mesh_y; }
    int dispatcher_node() const { return num_cores(); }
    int node_count() const { return num_cores() + 1; }

    int x_of(int node) const {
        return node == dispatcher_node() ? 0 : node % mesh_x;
    }
    int y_of(int node) const {
        return node == dispatcher_node() ? 0 : node / mesh_x;
    }
    int core_at(int x, int y) const { return y * mesh_x + x; }

    // Manhattan distance in router hops; 0 between a node and itself and
    // between the dispatcher and core 0 (they share a router).
    int hops(int a, int b) const {
        int dx = x_of(a) - x_of(b);
        int dy = y_of(a) - y_of(b);
        return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
    }
};

// ceil(log2(n)) for n >= 1; 0 for n = 1. Address/operand field widths.
int ceil_log2(uint64_t n);

} // namespace telesim
