#pragma once

#include <cstdint>
#include <vector>

#include "telesim/config.hpp"

namespace telesim {

// One classical transfer as it happened on the interconnect.
struct CommEvent {
    int src = 0;
    int dst = 0;
    uint64_t bits = 0;
    double elapsed_ns = 0;
};

// Wired mesh: a transfer costs one cycle per router hop plus one cycle per
// flit. XY routing, so hops is the Manhattan distance; src == dst pays the
// flit cycles only.
struct NocModel {
    double clock_time_ns = 0;
    int link_width = 0;
    SystemGeometry geom;
};

double cct_noc(const NocModel& m, int src, int dst, uint64_t bits);

// Single shared radio medium with a circulating token per channel. A node
// transmits when the token reaches it: cost is token_pass_time per ring
// position between the token holder and the source, plus the serialization
// time of the payload. The ring order is node index ascending with the
// dispatcher last, and the token stays at the source afterwards. With
// several channels the sender takes the channel with the shortest wait
// (lowest index on ties).
struct WinocModel {
    double wbit_rate_bps = 0;
    double token_pass_ns = 0;
    int num_nodes = 0;              // cores + dispatcher
    std::vector<int> token_pos;     // per channel, start at node 0

    WinocModel() = default;
    WinocModel(double rate_bps, double token_ns, int nodes, int channels)
        : wbit_rate_bps(rate_bps), token_pass_ns(token_ns),
          num_nodes(nodes), token_pos(channels, 0) {}
};

double cct_winoc(WinocModel& m, int src, int dst, uint64_t bits);

// Facade the engine talks to: routes through the wired or wireless model
// according to the architecture and appends one CommEvent per call.
class Interconnect {
public:
    Interconnect(const ArchitectureConfig& arch, const PhysicalParams& p);

    double cct(int src, int dst, uint64_t bits);

    uint64_t total_bits() const { return total_bits_; }
    size_t event_count() const { return event_count_; }
    const std::vector<CommEvent>& events() const { return events_; }
    void set_record_events(bool on) { record_events_ = on; }

private:
    bool wireless_ = false;
    NocModel noc_;
    WinocModel winoc_;
    uint64_t total_bits_ = 0;
    size_t event_count_ = 0;
    bool record_events_ = false;
    std::vector<CommEvent> events_;
};

} // namespace telesim
