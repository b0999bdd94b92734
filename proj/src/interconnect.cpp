#include "telesim/interconnect.hpp"

#include <algorithm>

#include "telesim/error.hpp"

namespace telesim {

double cct_noc(const NocModel& m, int src, int dst, uint64_t bits) {
    uint64_t flits = (bits + m.link_width - 1) / m.link_width;
    uint64_t cycles = static_cast<uint64_t>(m.geom.hops(src, dst)) + flits;
    return m.clock_time_ns * static_cast<double>(cycles);
}

double cct_winoc(WinocModel& m, int src, int dst, uint64_t bits) {
    (void)dst; // broadcast medium: the cost does not depend on the receiver

    // shortest token wait wins, lowest channel index on ties
    int best = 0;
    int best_dist = m.num_nodes; // larger than any ring distance
    for (size_t ch = 0; ch < m.token_pos.size(); ++ch) {
        int d = src - m.token_pos[ch];
        if (d < 0) d += m.num_nodes;
        if (d < best_dist) {
            best_dist = d;
            best = static_cast<int>(ch);
        }
    }
    m.token_pos[best] = src;

    double wait = m.token_pass_ns * best_dist;
    double tx = static_cast<double>(bits) / m.wbit_rate_bps * 1e9;
    return wait + tx;
}

Interconnect::Interconnect(const ArchitectureConfig& arch,
                           const PhysicalParams& p) {
    wireless_ = arch.wireless_enabled;
    SystemGeometry geom = SystemGeometry::from(arch);
    if (wireless_) {
        if (!p.wbit_rate)
            throw ModelError("wireless system needs wbit_rate");
        if (!p.token_pass_time)
            throw ModelError("wireless system needs token_pass_time");
        winoc_ = WinocModel(*p.wbit_rate, *p.token_pass_time,
                            geom.node_count(), arch.radio_channels);
    } else {
        noc_ = NocModel{p.noc_clock_time, arch.link_width, geom};
    }
}

double Interconnect::cct(int src, int dst, uint64_t bits) {
    double ns = wireless_ ? cct_winoc(winoc_, src, dst, bits)
                          : cct_noc(noc_, src, dst, bits);
    total_bits_ += bits;
    ++event_count_;
    if (record_events_) events_.push_back({src, dst, bits, ns});
    return ns;
}

} // namespace telesim
