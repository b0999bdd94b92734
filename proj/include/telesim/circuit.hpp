#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace telesim {

// One quantum gate acting on an ordered list of distinct logical qubits.
// The name is optional ("" = anonymous gate); delays for anonymous gates
// are looked up through the default_<k>q keys of the parameter table.
struct Gate {
    std::string name;
    std::vector<uint32_t> qubits;

    size_t arity() const { return qubits.size(); }
    bool operator==(const Gate&) const = default;
};

// A set of gates with pairwise disjoint qubits, eligible to run in parallel.
struct Slice {
    std::vector<Gate> gates;
    bool operator==(const Slice&) const = default;
};

// Circuit text format, one slice per line:
//
//   # comment to end of line
//   (0,1) h(2)          <- slice with an anonymous 2-qubit gate and an "h"
//   cnot(1,2)
//
// Gate names are lowercase identifiers; operands are decimal qubit indices.
// num_qubits is always 1 + the largest index referenced (0 when empty).
struct Circuit {
    std::vector<Slice> slices;
    uint32_t num_qubits = 0;

    size_t gate_count() const;
    bool operator==(const Circuit&) const = default;
};

// Probability of each gate arity: probs[k-1] = P(arity k).
// Must be non-negative and sum to 1 within 1e-9.
struct ArityDist {
    std::vector<double> probs;
};

struct CircuitStats {
    std::map<uint32_t, size_t> gates_by_arity;
    size_t depth = 0; // number of slices
};

// Parse circuit text. Throws ParseError with a line:column position on
// syntax errors, on a repeated qubit inside one gate, and on overlapping
// qubits between gates of the same slice.
Circuit parse_circuit(std::string_view text);
Circuit parse_circuit_file(const std::string& path);

// Canonical renderer: one slice per line, gates separated by single spaces,
// no whitespace inside tuples. parse_circuit(render_circuit(c)) == c.
std::string render_circuit(const Circuit& c);

// Random circuit: gates are drawn one at a time; each gate picks an arity
// from `dist` and then distinct qubits uniformly. A gate whose qubits
// collide with the current slice closes that slice and opens the next one
// (the colliding gate becomes the first gate of the new slice). Exactly
// num_gates gates are produced. Deterministic for a fixed seed.
Circuit random_circuit(uint32_t num_qubits, size_t num_gates,
                       const ArityDist& dist, uint64_t seed);

CircuitStats circuit_stats(const Circuit& c);

} // namespace telesim
