#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"
#include "telesim/interconnect.hpp"
#include "telesim/placement.hpp"
#include "telesim/teleport.hpp"

namespace telesim {

enum class InstrKind { gate, tps, tpd };

// One decoded instruction addressed to a core. Gate and tpd operands are
// local slot numbers; a tps carries its source slot in operands[0] and the
// absolute destination address (core * capacity + slot) in tps_dst_abs.
struct Instruction {
    InstrKind kind = InstrKind::gate;
    int core = 0;
    std::string name;            // gates only; "" = anonymous
    std::vector<int> operands;
    int tps_dst_abs = -1;

    bool operator==(const Instruction&) const = default;
};

// What the control unit issues between two barriers. A local bundle holds
// gates only; a remote bundle holds the tps/tpd pairs of one teleport
// round.
struct Bundle {
    std::vector<Instruction> instructions;
    bool remote = false;

    bool operator==(const Bundle&) const = default;
};

// Per-phase cost of one bundle, all in ns. Buckets hold the full cost of
// each phase even when two phases run concurrently; overlap is the portion
// counted twice that way, so total() stays the wall-clock duration:
// dispatch and EPR generation+distribution proceed in parallel and only
// the longer branch shows up on the clock.
struct TimeBreakdown {
    double fetch = 0;
    double decode = 0;
    double dispatch = 0;
    double epr_gen = 0;
    double epr_dist = 0;
    double pre_proc = 0;
    double classical = 0;
    double post_proc = 0;
    double gate_exec = 0;
    double ack = 0;
    double overlap = 0;

    double total() const {
        return fetch + decode + dispatch + epr_gen + epr_dist + pre_proc +
               classical + post_proc + gate_exec + ack - overlap;
    }

    TimeBreakdown& operator+=(const TimeBreakdown& o);
};

struct BundleRecord {
    uint32_t index = 0;
    bool remote = false;
    double start_ns = 0;
    double end_ns = 0;
    TimeBreakdown tb;
    uint64_t classical_bits = 0; // interconnect bits moved by this bundle
};

struct ExecutionTrace {
    std::vector<BundleRecord> bundles;
    double total_ns = 0;
    TimeBreakdown sums; // bucket totals across bundles

    size_t executed_gates = 0;
    size_t intercore_comms = 0;    // teleport hops
    size_t intercore_traffic = 0;  // logical qubit moves
    std::vector<std::vector<uint32_t>> comm_map; // [src][dst] hop counts
    std::vector<uint32_t> qubit_ops;
    std::vector<uint32_t> qubit_teleports;

    uint64_t classical_bits_total = 0;
    size_t comm_event_count = 0;

    // Occupancy sampled before the first and after every bundle.
    int util_min = 0;
    int util_max = 0;
    double util_avg = 0;

    int num_cores = 0;
    size_t total_mapped = 0;

    // Filled only when SimOptions asks for them.
    std::vector<Bundle> recorded_bundles;
    std::vector<CommEvent> events;
};

struct SimOptions {
    bool record_bundles = false;
    bool record_events = false;
};

// Bundles of one slice: one remote bundle per round, then one local bundle
// with every gate of the slice, operands rewritten against the placement
// the rounds leave behind.
struct BundlePlan {
    std::vector<Bundle> bundles;           // rounds first, local last
    std::vector<TeleportRound> rounds;     // rounds[i] belongs to bundles[i]
};

BundlePlan build_bundles(const Slice& slice,
                         const std::vector<TeleportRound>& rounds,
                         const Placement& p);

// Memory image size of a bundle: a ceil(log2(NI)) length header plus, per
// instruction, the core address, the opcode, and one local-width field per
// operand, except that a tps destination is absolute-width. Throws
// ModelError when the bundle exceeds max_bundle_instructions.
uint64_t bundle_size_bits(const Bundle& b, const ArchitectureConfig& arch,
                          const PhysicalParams& params);

// Runs the whole program: slices in order, bundles of a slice in order,
// one barrier per bundle, accumulating the wall clock and the statistics.
// The seed is accepted for interface stability; every policy in the
// current model is deterministic and ignores it. Throws ModelError for
// unmapped qubits, capacity violations and missing gate delays.
ExecutionTrace simulate(const Circuit& circuit, const ArchitectureConfig& arch,
                        const PhysicalParams& params, const Placement& initial,
                        uint64_t seed = 0, const SimOptions& opts = {});

// One line per bundle:
//   index kind start end fetch decode dispatch epr_gen epr_dist pre
//   classical post gate ack
// with times in ns at three decimals.
void dump_trace(const ExecutionTrace& t, std::ostream& os);

} // namespace telesim
