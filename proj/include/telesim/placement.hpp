#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "telesim/circuit.hpp"
#include "telesim/config.hpp"

namespace telesim {

// Logical-qubit to core assignment plus a per-core slot table. Slots are
// interchangeable (all-to-all connectivity inside a core); they exist so
// instructions can carry concrete local operand addresses. Allocation is
// always the lowest free slot, which keeps every run reproducible.
class Placement {
public:
    Placement() = default;
    Placement(int num_cores, int capacity);

    int num_cores() const { return static_cast<int>(occupancy_.size()); }
    int capacity() const { return capacity_; }

    bool is_mapped(uint32_t q) const;
    int core_of(uint32_t q) const; // -1 when unmapped
    int slot_of(uint32_t q) const; // -1 when unmapped
    int occupancy(int core) const { return occupancy_[core]; }
    int free_slots(int core) const { return capacity_ - occupancy_[core]; }
    size_t total_mapped() const { return total_mapped_; }
    const std::vector<int>& occupancies() const { return occupancy_; }

    // Initial assignment of a fresh qubit. Throws ModelError on an already
    // mapped qubit, a core index out of range, or a full core.
    void place(uint32_t q, int core);

    // Move one mapped qubit to dst_core (frees the source slot, takes the
    // lowest free destination slot). Throws ModelError when dst is full.
    void apply_teleport(uint32_t q, int dst_core);

    // Two-phase variant used when a round of teleports lands atomically:
    // release all movers first, then allocate, so an exchange between two
    // full cores is legal (net occupancy change is what gets checked).
    void release(uint32_t q);
    int allocate(uint32_t q, int core); // returns the slot taken

private:
    int capacity_ = 0;
    size_t total_mapped_ = 0;
    std::vector<int> core_of_;
    std::vector<int> slot_of_;
    std::vector<int> occupancy_;
    std::vector<std::vector<bool>> slot_used_;

    void ensure_qubit(uint32_t q);
    int take_slot(int core);
};

// Round-robin mapping: qubit i goes to core i % M. Throws ModelError when
// ceil(n / M) exceeds the per-core capacity.
Placement vanilla_map(uint32_t num_logical, const ArchitectureConfig& arch);

// Mapping file: one "logical_qubit core_index" pair per line, '#' comments.
// Accepts output produced by external placement tools. Throws ParseError
// on syntax, ModelError on duplicates / range / capacity violations.
Placement load_mapping(std::string_view text, const ArchitectureConfig& arch);
Placement load_mapping_file(const std::string& path,
                            const ArchitectureConfig& arch);

// Pick the core that will run `gate` when its qubits span several cores.
// load_independent: the core of the last operand. load_aware: the involved
// core with the most free slots (ties prefer the last operand's core, then
// the lowest index). A core is only returned if it can absorb every
// incoming operand; otherwise the next candidate is tried, and ModelError
// is thrown when no involved core fits.
int select_destination(const Gate& gate, const Placement& p,
                       DstSelectionMode mode);

struct UtilizationStats {
    int min = 0;
    int max = 0;
    double avg = 0.0;
};

} // namespace telesim
