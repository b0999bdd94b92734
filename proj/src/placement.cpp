#include "telesim/placement.hpp"

#include <algorithm>

#include "telesim/error.hpp"
#include "keyval.hpp"

namespace telesim {

Placement::Placement(int num_cores, int capacity)
    : capacity_(capacity), occupancy_(num_cores, 0),
      slot_used_(num_cores, std::vector<bool>(capacity, false)) {}

void Placement::ensure_qubit(uint32_t q) {
    if (q >= core_of_.size()) {
        core_of_.resize(q + 1, -1);
        slot_of_.resize(q + 1, -1);
    }
}

bool Placement::is_mapped(uint32_t q) const {
    return q < core_of_.size() && core_of_[q] >= 0;
}

int Placement::core_of(uint32_t q) const {
    return q < core_of_.size() ? core_of_[q] : -1;
}

int Placement::slot_of(uint32_t q) const {
    return q < slot_of_.size() ? slot_of_[q] : -1;
}

int Placement::take_slot(int core) {
    std::vector<bool>& used = slot_used_[core];
    for (int s = 0; s < capacity_; ++s) {
        if (!used[s]) {
            used[s] = true;
            return s;
        }
    }
    throw ModelError("core " + std::to_string(core) + " has no free slot");
}

void Placement::place(uint32_t q, int core) {
    if (core < 0 || core >= num_cores())
        throw ModelError("mapping: core " + std::to_string(core) +
                         " out of range (have " + std::to_string(num_cores()) +
                         " cores)");
    ensure_qubit(q);
    if (core_of_[q] >= 0)
        throw ModelError("mapping: qubit " + std::to_string(q) +
                         " mapped twice");
    if (occupancy_[core] >= capacity_)
        throw ModelError("mapping: core " + std::to_string(core) +
                         " exceeds capacity " + std::to_string(capacity_));
    core_of_[q] = core;
    slot_of_[q] = take_slot(core);
    ++occupancy_[core];
    ++total_mapped_;
}

void Placement::release(uint32_t q) {
    if (!is_mapped(q))
        throw ModelError("teleport of unmapped qubit " + std::to_string(q));
    int core = core_of_[q];
    slot_used_[core][slot_of_[q]] = false;
    --occupancy_[core];
    core_of_[q] = -1;
    slot_of_[q] = -1;
    --total_mapped_;
}

int Placement::allocate(uint32_t q, int core) {
    if (core < 0 || core >= num_cores())
        throw ModelError("teleport: core " + std::to_string(core) +
                         " out of range");
    ensure_qubit(q);
    if (core_of_[q] >= 0)
        throw ModelError("teleport: qubit " + std::to_string(q) +
                         " already placed");
    if (occupancy_[core] >= capacity_)
        throw ModelError("teleport: core " + std::to_string(core) +
                         " full (capacity " + std::to_string(capacity_) + ")");
    int s = take_slot(core);
    core_of_[q] = core;
    slot_of_[q] = s;
    ++occupancy_[core];
    ++total_mapped_;
    return s;
}

void Placement::apply_teleport(uint32_t q, int dst_core) {
    if (!is_mapped(q))
        throw ModelError("teleport of unmapped qubit " + std::to_string(q));
    if (dst_core == core_of_[q]) return;
    if (dst_core < 0 || dst_core >= num_cores())
        throw ModelError("teleport: core " + std::to_string(dst_core) +
                         " out of range");
    if (occupancy_[dst_core] >= capacity_)
        throw ModelError("teleport destination core " +
                         std::to_string(dst_core) + " full (capacity " +
                         std::to_string(capacity_) + ")");
    release(q);
    allocate(q, dst_core);
}

Placement vanilla_map(uint32_t num_logical, const ArchitectureConfig& arch) {
    int m = arch.num_cores();
    uint32_t worst = (num_logical + m - 1) / m;
    if (worst > static_cast<uint32_t>(arch.qubits_per_core))
        throw ModelError("vanilla mapping needs " + std::to_string(worst) +
                         " qubits on some core, capacity is " +
                         std::to_string(arch.qubits_per_core));
    Placement p(m, arch.qubits_per_core);
    for (uint32_t q = 0; q < num_logical; ++q) p.place(q, q % m);
    return p;
}

Placement load_mapping(std::string_view text, const ArchitectureConfig& arch) {
    Placement p(arch.num_cores(), arch.qubits_per_core);
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
        line = detail::trim(line);
        if (line.empty()) continue;

        long long q = -1, core = -1;
        size_t consumed = 0;
        try {
            std::string s(line);
            size_t after_q = 0;
            q = std::stoll(s, &after_q);
            size_t rest = after_q;
            core = std::stoll(s.substr(rest), &consumed);
            consumed += rest;
            while (consumed < s.size() &&
                   (s[consumed] == ' ' || s[consumed] == '\t'))
                ++consumed;
            if (consumed != s.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("mapping line " + std::to_string(line_no) +
                             ": expected 'qubit core', got '" +
                             std::string(line) + "'");
        }
        if (q < 0 || core < 0)
            throw ParseError("mapping line " + std::to_string(line_no) +
                             ": negative index");
        p.place(static_cast<uint32_t>(q), static_cast<int>(core));
    }
    return p;
}

Placement load_mapping_file(const std::string& path,
                            const ArchitectureConfig& arch) {
    return load_mapping(detail::read_file(path), arch);
}

int select_destination(const Gate& gate, const Placement& p,
                       DstSelectionMode mode) {
    // involved cores in order of first appearance
    std::vector<int> cores;
    for (uint32_t q : gate.qubits) {
        int c = p.core_of(q);
        if (c < 0)
            throw ModelError("gate on unmapped qubit " + std::to_string(q));
        if (std::find(cores.begin(), cores.end(), c) == cores.end())
            cores.push_back(c);
    }
    if (cores.size() < 2)
        throw ModelError("select_destination: gate does not span cores");

    int last_core = p.core_of(gate.qubits.back());

    auto incoming = [&](int c) {
        int n = 0;
        for (uint32_t q : gate.qubits)
            if (p.core_of(q) != c) ++n;
        return n;
    };

    // candidates, best first
    std::vector<int> order = cores;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (mode == DstSelectionMode::load_aware) {
            if (p.free_slots(a) != p.free_slots(b))
                return p.free_slots(a) > p.free_slots(b);
        }
        if ((a == last_core) != (b == last_core)) return a == last_core;
        if (mode == DstSelectionMode::load_independent) {
            // non-last candidates: fall back to the emptier one first
            if (p.free_slots(a) != p.free_slots(b))
                return p.free_slots(a) > p.free_slots(b);
        }
        return a < b;
    });

    for (int c : order)
        if (p.free_slots(c) >= incoming(c)) return c;

    throw ModelError("no destination core with room for gate operands "
                     "(all candidate cores full)");
}

} // namespace telesim
