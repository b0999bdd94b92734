#include "telesim/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include "telesim/error.hpp"

namespace telesim {

TimeBreakdown& TimeBreakdown::operator+=(const TimeBreakdown& o) {
    fetch += o.fetch;
    decode += o.decode;
    dispatch += o.dispatch;
    epr_gen += o.epr_gen;
    epr_dist += o.epr_dist;
    pre_proc += o.pre_proc;
    classical += o.classical;
    post_proc += o.post_proc;
    gate_exec += o.gate_exec;
    ack += o.ack;
    overlap += o.overlap;
    return *this;
}

namespace {

// Operand field widths: local operands address one slot in a core,
// absolute operands (tps destinations) address any slot in the machine.
struct Widths {
    int core;      // ceil_log2(M)
    int opcode;    // bits_instruction
    int local;     // ceil_log2(Q)
    int absolute;  // ceil_log2(M*Q)

    Widths(const ArchitectureConfig& a, const PhysicalParams& p)
        : core(ceil_log2(a.num_cores())), opcode(p.bits_instruction),
          local(ceil_log2(a.qubits_per_core)),
          absolute(ceil_log2(static_cast<uint64_t>(a.num_cores()) *
                             a.qubits_per_core)) {}

    // opcode + operand fields; what the dispatcher forwards to the core
    uint64_t dispatch_bits(const Instruction& in) const {
        if (in.kind == InstrKind::tps)
            return static_cast<uint64_t>(opcode) + local + absolute;
        return static_cast<uint64_t>(opcode) +
               static_cast<uint64_t>(in.operands.size()) * local;
    }
};

} // namespace

uint64_t bundle_size_bits(const Bundle& b, const ArchitectureConfig& arch,
                          const PhysicalParams& params) {
    if (b.instructions.size() >
        static_cast<size_t>(params.max_bundle_instructions))
        throw ModelError(
            "bundle of " + std::to_string(b.instructions.size()) +
            " instructions exceeds max_bundle_instructions = " +
            std::to_string(params.max_bundle_instructions));
    Widths w(arch, params);
    uint64_t bits = ceil_log2(params.max_bundle_instructions); // count header
    for (const Instruction& in : b.instructions)
        bits += w.core + w.dispatch_bits(in);
    return bits;
}

BundlePlan build_bundles(const Slice& slice,
                         const std::vector<TeleportRound>& rounds,
                         const Placement& p) {
    BundlePlan plan;
    plan.rounds = rounds;
    Placement scratch = p;
    const int cap = scratch.capacity();

    for (const TeleportRound& round : rounds) {
        Bundle b;
        b.remote = true;
        // all sources free their slots first so an exchange inside one
        // round can reuse them
        std::vector<int> src_slots;
        src_slots.reserve(round.ops.size());
        for (const TeleportOp& op : round.ops) {
            src_slots.push_back(scratch.slot_of(op.qubit));
            scratch.release(op.qubit);
        }
        for (size_t i = 0; i < round.ops.size(); ++i) {
            const TeleportOp& op = round.ops[i];
            int dslot = scratch.allocate(op.qubit, op.dst_core);
            Instruction tps;
            tps.kind = InstrKind::tps;
            tps.core = op.src_core;
            tps.operands = {src_slots[i]};
            tps.tps_dst_abs = op.dst_core * cap + dslot;
            Instruction tpd;
            tpd.kind = InstrKind::tpd;
            tpd.core = op.dst_core;
            tpd.operands = {dslot};
            b.instructions.push_back(std::move(tps));
            b.instructions.push_back(std::move(tpd));
        }
        plan.bundles.push_back(std::move(b));
    }

    Bundle local;
    for (const Gate& g : slice.gates) {
        Instruction in;
        in.kind = InstrKind::gate;
        in.name = g.name;
        in.core = scratch.core_of(g.qubits[0]);
        for (uint32_t q : g.qubits) {
            if (scratch.core_of(q) != in.core)
                throw ModelError("gate operands still span cores after "
                                 "teleport rounds");
            in.operands.push_back(scratch.slot_of(q));
        }
        local.instructions.push_back(std::move(in));
    }
    plan.bundles.push_back(std::move(local));
    return plan;
}

namespace {

class Simulation {
public:
    Simulation(const Circuit& c, const ArchitectureConfig& arch,
               const PhysicalParams& params, const Placement& initial,
               const SimOptions& opts)
        : circuit_(c), arch_(arch), prm_(params), place_(initial),
          geom_(SystemGeometry::from(arch)), net_(arch, params),
          widths_(arch, params), opts_(opts) {
        net_.set_record_events(opts.record_events);
        ack_bits_ = ceil_log2(arch.num_cores()) + 1;
        payload_bits_ = 2 + widths_.absolute;
    }

    ExecutionTrace run();

private:
    const Circuit& circuit_;
    const ArchitectureConfig& arch_;
    const PhysicalParams& prm_;
    Placement place_;
    SystemGeometry geom_;
    Interconnect net_;
    Widths widths_;
    SimOptions opts_;
    ExecutionTrace trace_;
    uint64_t ack_bits_ = 0;
    uint64_t payload_bits_ = 0;

    double dispatch_time(const Bundle& b) {
        // per-core instruction volumes, cores visited in ascending order
        std::map<int, uint64_t> tv;
        for (const Instruction& in : b.instructions)
            tv[in.core] += widths_.dispatch_bits(in);
        double t = 0;
        for (const auto& [core, bits] : tv)
            t += net_.cct(geom_.dispatcher_node(), core, bits);
        return t;
    }

    double ack_time(const std::vector<int>& cores) {
        double t = 0;
        for (int c : cores) t += net_.cct(c, geom_.dispatcher_node(), ack_bits_);
        return t;
    }

    static std::vector<int> sorted_unique(std::vector<int> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    TimeBreakdown exec_local(const Bundle& b) {
        TimeBreakdown tb;
        tb.fetch = static_cast<double>(bundle_size_bits(b, arch_, prm_)) /
                   prm_.memory_bandwidth * 1e9;
        tb.decode = prm_.decode_d1 +
                    prm_.decode_d2 * static_cast<double>(b.instructions.size());
        tb.dispatch = dispatch_time(b);
        std::vector<int> cores;
        for (const Instruction& in : b.instructions) {
            tb.gate_exec = std::max(
                tb.gate_exec, prm_.gate_delay(in.name, in.operands.size()));
            cores.push_back(in.core);
        }
        tb.ack = ack_time(sorted_unique(std::move(cores)));
        return tb;
    }

    TimeBreakdown exec_remote(const Bundle& b) {
        TimeBreakdown tb;
        tb.fetch = static_cast<double>(bundle_size_bits(b, arch_, prm_)) /
                   prm_.memory_bandwidth * 1e9;
        tb.decode = prm_.decode_d1 +
                    prm_.decode_d2 * static_cast<double>(b.instructions.size());
        tb.dispatch = dispatch_time(b);

        size_t pairs = 0;
        for (const Instruction& in : b.instructions)
            if (in.kind == InstrKind::tps) ++pairs;
        tb.epr_gen = epr_gen_time(pairs, prm_);
        tb.epr_dist = pairs ? prm_.dist_delay : 0;

        // EPR generation+distribution runs while the bundle is dispatched;
        // only the longer branch advances the clock
        tb.overlap = std::min(tb.dispatch, tb.epr_gen + tb.epr_dist);

        tb.pre_proc = prm_.pre_delay;
        const int cap = place_.capacity();
        std::vector<int> dst_cores;
        for (const Instruction& in : b.instructions) {
            if (in.kind != InstrKind::tps) continue;
            int dst = in.tps_dst_abs / cap;
            tb.classical += net_.cct(in.core, dst, payload_bits_);
        }
        tb.post_proc = prm_.post_delay;

        // the destination core finishes the teleport, so it reports back
        for (const Instruction& in : b.instructions)
            if (in.kind == InstrKind::tpd) dst_cores.push_back(in.core);
        tb.ack = ack_time(sorted_unique(std::move(dst_cores)));
        return tb;
    }

    void apply_round(const TeleportRound& round) {
        for (const TeleportOp& op : round.ops) place_.release(op.qubit);
        for (const TeleportOp& op : round.ops) {
            place_.allocate(op.qubit, op.dst_core);
            trace_.comm_map[op.src_core][op.dst_core] += 1;
            trace_.intercore_comms += 1;
            if (op.chain_head) trace_.intercore_traffic += 1;
            trace_.qubit_teleports[op.qubit] += 1;
        }
    }

    void sample_utilization() {
        int lo = place_.occupancy(0), hi = lo;
        long long sum = 0;
        for (int c = 0; c < place_.num_cores(); ++c) {
            int o = place_.occupancy(c);
            lo = std::min(lo, o);
            hi = std::max(hi, o);
            sum += o;
        }
        trace_.util_min = std::min(trace_.util_min, lo);
        trace_.util_max = std::max(trace_.util_max, hi);
        util_avg_accum_ +=
            static_cast<double>(sum) / static_cast<double>(place_.num_cores());
        ++util_samples_;
    }

    double util_avg_accum_ = 0;
    size_t util_samples_ = 0;
};

ExecutionTrace Simulation::run() {
    const int m = arch_.num_cores();
    trace_.num_cores = m;
    trace_.total_mapped = place_.total_mapped();
    trace_.comm_map.assign(m, std::vector<uint32_t>(m, 0));
    trace_.qubit_ops.assign(circuit_.num_qubits, 0);
    trace_.qubit_teleports.assign(circuit_.num_qubits, 0);

    std::vector<char> used(circuit_.num_qubits, 0);
    for (const Slice& s : circuit_.slices)
        for (const Gate& g : s.gates)
            for (uint32_t q : g.qubits) used[q] = 1;
    for (uint32_t q = 0; q < circuit_.num_qubits; ++q)
        if (used[q] && !place_.is_mapped(q))
            throw ModelError("circuit uses qubit " + std::to_string(q) +
                             " but the mapping does not place it");

    trace_.util_min = place_.capacity() + 1; // corrected by first sample
    trace_.util_max = -1;
    sample_utilization();

    double clock = 0;
    uint32_t index = 0;
    for (const Slice& slice : circuit_.slices) {
        if (slice.gates.empty()) continue;
        std::vector<TeleportRound> rounds =
            plan_teleports(slice, place_, arch_);
        BundlePlan plan = build_bundles(slice, rounds, place_);

        for (size_t i = 0; i < plan.bundles.size(); ++i) {
            const Bundle& b = plan.bundles[i];
            uint64_t bits_before = net_.total_bits();
            TimeBreakdown tb = b.remote ? exec_remote(b) : exec_local(b);

            BundleRecord rec;
            rec.index = index++;
            rec.remote = b.remote;
            rec.start_ns = clock;
            clock += tb.total();
            rec.end_ns = clock;
            rec.tb = tb;
            rec.classical_bits = net_.total_bits() - bits_before;
            trace_.bundles.push_back(rec);
            trace_.sums += tb;

            if (b.remote) {
                apply_round(plan.rounds[i]);
            } else {
                trace_.executed_gates += b.instructions.size();
            }
            sample_utilization();
            if (opts_.record_bundles) trace_.recorded_bundles.push_back(b);
        }
        for (const Gate& g : slice.gates)
            for (uint32_t q : g.qubits) trace_.qubit_ops[q] += 1;
    }

    trace_.total_ns = clock;
    trace_.classical_bits_total = net_.total_bits();
    trace_.comm_event_count = net_.event_count();
    trace_.util_avg =
        util_samples_ ? util_avg_accum_ / static_cast<double>(util_samples_)
                      : 0.0;
    if (opts_.record_events) trace_.events = net_.events();
    return trace_;
}

} // namespace

ExecutionTrace simulate(const Circuit& circuit, const ArchitectureConfig& arch,
                        const PhysicalParams& params, const Placement& initial,
                        uint64_t seed, const SimOptions& opts) {
    (void)seed; // reserved; the execution model has no random choices
    if (initial.num_cores() != arch.num_cores() ||
        initial.capacity() != arch.qubits_per_core)
        throw ModelError("placement does not match the architecture");
    Simulation sim(circuit, arch, params, initial, opts);
    return sim.run();
}

void dump_trace(const ExecutionTrace& t, std::ostream& os) {
    char buf[512];
    for (const BundleRecord& r : t.bundles) {
        std::snprintf(
            buf, sizeof buf,
            "%u %s %.3f %.3f %.3f %.3f %.3f %.3f %.3f %.3f %.3f %.3f %.3f "
            "%.3f\n",
            r.index, r.remote ? "remote" : "local", r.start_ns, r.end_ns,
            r.tb.fetch, r.tb.decode, r.tb.dispatch, r.tb.epr_gen,
            r.tb.epr_dist, r.tb.pre_proc, r.tb.classical, r.tb.post_proc,
            r.tb.gate_exec, r.tb.ack);
        os << buf;
    }
}

} // namespace telesim
