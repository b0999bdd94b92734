#include "telesim/teleport.hpp"

#include <algorithm>

#include "telesim/error.hpp"

namespace telesim {

std::vector<TeleportOp> expand_multihop(const TeleportOp& op,
                                        const SystemGeometry& geom) {
    std::vector<TeleportOp> chain;
    int x = geom.x_of(op.src_core), y = geom.y_of(op.src_core);
    int tx = geom.x_of(op.dst_core), ty = geom.y_of(op.dst_core);
    int cur = op.src_core;
    auto step_to = [&](int nx, int ny) {
        int next = geom.core_at(nx, ny);
        chain.push_back({op.qubit, cur, next, chain.empty()});
        cur = next;
        x = nx;
        y = ny;
    };
    while (x != tx) step_to(x < tx ? x + 1 : x - 1, y);
    while (y != ty) step_to(x, y < ty ? y + 1 : y - 1);
    return chain;
}

double epr_gen_time(size_t num_pairs, const PhysicalParams& p) {
    if (num_pairs == 0) return 0;
    return p.epr_parallel ? p.epr_delay
                          : static_cast<double>(num_pairs) * p.epr_delay;
}

double epr_dist_time(const TeleportRound& round, const PhysicalParams& p) {
    return round.ops.empty() ? 0 : p.dist_delay;
}

std::vector<TeleportRound> plan_teleports(const Slice& slice,
                                          const Placement& p,
                                          const ArchitectureConfig& arch) {
    SystemGeometry geom = SystemGeometry::from(arch);
    Placement scratch = p;
    std::vector<std::vector<TeleportOp>> chains;

    for (const Gate& gate : slice.gates) {
        bool spans = false;
        for (uint32_t q : gate.qubits) {
            int c = scratch.core_of(q);
            if (c < 0)
                throw ModelError("gate on unmapped qubit " +
                                 std::to_string(q));
            if (c != scratch.core_of(gate.qubits[0])) spans = true;
        }
        if (!spans) continue;

        int dst = select_destination(gate, scratch, arch.dst_selection_mode);
        for (uint32_t q : gate.qubits) {
            int src = scratch.core_of(q);
            if (src == dst) continue;
            TeleportOp op{q, src, dst, true};
            std::vector<TeleportOp> chain =
                arch.teleportation_type == TeleportationType::split
                    ? expand_multihop(op, geom)
                    : std::vector<TeleportOp>{op};
            for (const TeleportOp& hop : chain)
                scratch.apply_teleport(hop.qubit, hop.dst_core);
            chains.push_back(std::move(chain));
        }
    }

    // Greedy first-fit packing. An op may not run before (a) the previous
    // hop of its own chain or (b) any earlier-planned op on one of its two
    // cores; within those bounds it takes the first round whose LTM budget
    // has room at both endpoints.
    std::vector<TeleportRound> rounds;
    std::vector<std::vector<int>> uses; // per round, per core
    std::vector<int> core_floor(arch.num_cores(), 0);
    const int ports = arch.ltm_ports;

    for (const std::vector<TeleportOp>& chain : chains) {
        int next_min = 0;
        for (const TeleportOp& op : chain) {
            int start = std::max(
                {next_min, core_floor[op.src_core], core_floor[op.dst_core]});
            size_t r = start;
            while (r < rounds.size() && (uses[r][op.src_core] >= ports ||
                                         uses[r][op.dst_core] >= ports))
                ++r;
            if (r == rounds.size()) {
                rounds.emplace_back();
                uses.emplace_back(arch.num_cores(), 0);
            }
            rounds[r].ops.push_back(op);
            ++uses[r][op.src_core];
            ++uses[r][op.dst_core];
            int ri = static_cast<int>(r);
            core_floor[op.src_core] = std::max(core_floor[op.src_core], ri);
            core_floor[op.dst_core] = std::max(core_floor[op.dst_core], ri);
            next_min = ri + 1;
        }
    }
    return rounds;
}

} // namespace telesim
