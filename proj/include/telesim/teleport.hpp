#pragma once

#include <cstdint>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"
#include "telesim/placement.hpp"

namespace telesim {

// One qubit moving from src_core to dst_core. chain_head marks the first
// hop of a logical move; split teleports expand into several ops of which
// only the first carries the flag (traffic counts logical moves, comm
// counts hops).
struct TeleportOp {
    uint32_t qubit = 0;
    int src_core = 0;
    int dst_core = 0;
    bool chain_head = true;

    bool operator==(const TeleportOp&) const = default;
};

// Teleports that run concurrently: within a round each core appears as
// src or dst at most ltm_ports times.
struct TeleportRound {
    std::vector<TeleportOp> ops;
};

// Decide the teleports a slice needs under placement p and pack them into
// rounds. Gates are visited in slice order; each cross-core gate picks a
// destination via select_destination and emits one op per operand that has
// to move. Packing is greedy first-fit in op order with two ordering
// constraints: hops of one chain take strictly increasing rounds, and ops
// touching a common core never run earlier than an op of that core that
// was planned before them (this keeps transient occupancy within the
// planner's sequential bound). Does not modify p; the engine applies the
// rounds as the corresponding bundles execute. Throws ModelError via
// select_destination / capacity checks when a teleport cannot be mapped.
std::vector<TeleportRound> plan_teleports(const Slice& slice,
                                          const Placement& p,
                                          const ArchitectureConfig& arch);

// Expand one op into XY-routed single-hop ops (x direction first). Used in
// split mode where EPR pairs only exist between neighbouring cores.
std::vector<TeleportOp> expand_multihop(const TeleportOp& op,
                                        const SystemGeometry& geom);

// Generation time of the EPR pairs of one round: with parallel generation
// hardware one epr_delay covers all pairs, otherwise they queue.
double epr_gen_time(size_t num_pairs, const PhysicalParams& p);

// Distribution of the generated halves to the cores; one dist_delay for a
// non-empty round (pairs travel concurrently), zero otherwise.
double epr_dist_time(const TeleportRound& round, const PhysicalParams& p);

} // namespace telesim
