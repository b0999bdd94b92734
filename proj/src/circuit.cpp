#include "telesim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "telesim/error.hpp"
#include "telesim/rng.hpp"
#include "keyval.hpp"

namespace telesim {

size_t Circuit::gate_count() const {
    size_t n = 0;
    for (const Slice& s : slices) n += s.gates.size();
    return n;
}

namespace {

// Cursor over one line of circuit text, tracking the column for messages.
struct LineScanner {
    std::string_view line;
    size_t pos = 0;
    int line_no;

    explicit LineScanner(std::string_view l, int no) : line(l), line_no(no) {}

    [[noreturn]] void fail(const std::string& what, size_t at) const {
        throw ParseError(std::to_string(line_no) + ":" +
                         std::to_string(at + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= line.size();
    }
    char peek() const { return line[pos]; }

    uint32_t number() {
        skip_ws();
        size_t start = pos;
        if (pos >= line.size() || !std::isdigit((unsigned char)line[pos]))
            fail("expected qubit index", pos);
        uint64_t v = 0;
        while (pos < line.size() && std::isdigit((unsigned char)line[pos])) {
            v = v * 10 + (line[pos] - '0');
            if (v > 0xffffffffull) fail("qubit index too large", start);
            ++pos;
        }
        return static_cast<uint32_t>(v);
    }

    void expect(char c) {
        skip_ws();
        if (pos >= line.size() || line[pos] != c)
            fail(std::string("expected '") + c + "'", pos);
        ++pos;
    }

    std::string name() {
        skip_ws();
        size_t start = pos;
        while (pos < line.size() &&
               (std::islower((unsigned char)line[pos]) ||
                std::isdigit((unsigned char)line[pos]) || line[pos] == '_')) {
            if (pos == start && std::isdigit((unsigned char)line[pos])) break;
            ++pos;
        }
        return std::string(line.substr(start, pos - start));
    }

    Gate gate() {
        Gate g;
        g.name = name();
        expect('(');
        g.qubits.push_back(number());
        skip_ws();
        while (pos < line.size() && line[pos] == ',') {
            ++pos;
            g.qubits.push_back(number());
            skip_ws();
        }
        expect(')');
        return g;
    }
};

} // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    int line_no = 0;
    size_t pos = 0;
    uint64_t max_index = 0;
    bool any_qubit = false;

    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);

        LineScanner sc(raw, line_no);
        if (sc.done()) continue;

        Slice slice;
        std::vector<uint32_t> used; // qubits taken by earlier gates in line
        while (!sc.done()) {
            size_t gate_start = sc.pos;
            Gate g = sc.gate();
            for (size_t i = 0; i < g.qubits.size(); ++i)
                for (size_t j = i + 1; j < g.qubits.size(); ++j)
                    if (g.qubits[i] == g.qubits[j])
                        sc.fail("qubit " + std::to_string(g.qubits[i]) +
                                    " repeated within one gate",
                                gate_start);
            for (uint32_t q : g.qubits) {
                if (std::find(used.begin(), used.end(), q) != used.end())
                    sc.fail("qubit " + std::to_string(q) +
                                " used twice in one slice",
                            gate_start);
                used.push_back(q);
                max_index = std::max<uint64_t>(max_index, q);
                any_qubit = true;
            }
            slice.gates.push_back(std::move(g));
        }
        c.slices.push_back(std::move(slice));
    }

    c.num_qubits = any_qubit ? static_cast<uint32_t>(max_index + 1) : 0;
    return c;
}

Circuit parse_circuit_file(const std::string& path) {
    return parse_circuit(detail::read_file(path));
}

std::string render_circuit(const Circuit& c) {
    std::ostringstream out;
    for (const Slice& s : c.slices) {
        bool first = true;
        for (const Gate& g : s.gates) {
            if (!first) out << ' ';
            first = false;
            out << g.name << '(';
            for (size_t i = 0; i < g.qubits.size(); ++i) {
                if (i) out << ',';
                out << g.qubits[i];
            }
            out << ')';
        }
        out << '\n';
    }
    return out.str();
}

Circuit random_circuit(uint32_t num_qubits, size_t num_gates,
                       const ArityDist& dist, uint64_t seed) {
    if (num_qubits == 0)
        throw ModelError("random circuit: need at least one qubit");
    double sum = 0;
    size_t max_arity = 0;
    for (size_t k = 0; k < dist.probs.size(); ++k) {
        double p = dist.probs[k];
        if (p < 0) throw ModelError("random circuit: negative probability");
        sum += p;
        if (p > 0) max_arity = k + 1;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ModelError("random circuit: arity probabilities sum to " +
                         std::to_string(sum) + ", expected 1");
    if (max_arity == 0)
        throw ModelError("random circuit: no arity has positive probability");
    if (max_arity > num_qubits)
        throw ModelError("random circuit: infeasible arity (arity " +
                         std::to_string(max_arity) + " > " +
                         std::to_string(num_qubits) + " qubits)");

    Rng rng(seed);
    Circuit c;
    std::vector<char> in_slice(num_qubits, 0);
    std::vector<uint32_t> marked;
    Slice current;

    auto close_slice = [&] {
        c.slices.push_back(std::move(current));
        current = Slice{};
        for (uint32_t q : marked) in_slice[q] = 0;
        marked.clear();
    };

    uint64_t max_index = 0;
    for (size_t g = 0; g < num_gates; ++g) {
        // arity from the cumulative distribution, clamped to the last
        // positive entry so fp round-off cannot fall off the end
        double u = rng.unit();
        size_t arity = max_arity;
        double acc = 0;
        for (size_t k = 0; k < dist.probs.size(); ++k) {
            acc += dist.probs[k];
            if (u < acc) {
                arity = k + 1;
                break;
            }
        }
        while (dist.probs[arity - 1] == 0) --arity; // only via fp edge cases

        Gate gate;
        gate.qubits.reserve(arity);
        while (gate.qubits.size() < arity) {
            uint32_t q = static_cast<uint32_t>(rng.bounded(num_qubits));
            if (std::find(gate.qubits.begin(), gate.qubits.end(), q) ==
                gate.qubits.end())
                gate.qubits.push_back(q);
        }

        bool conflict = false;
        for (uint32_t q : gate.qubits)
            if (in_slice[q]) conflict = true;
        if (conflict && !current.gates.empty()) close_slice();

        for (uint32_t q : gate.qubits) {
            in_slice[q] = 1;
            marked.push_back(q);
            max_index = std::max<uint64_t>(max_index, q);
        }
        current.gates.push_back(std::move(gate));
    }
    if (!current.gates.empty()) close_slice();

    c.num_qubits = static_cast<uint32_t>(max_index + 1);
    return c;
}

CircuitStats circuit_stats(const Circuit& c) {
    CircuitStats st;
    st.depth = c.slices.size();
    for (const Slice& s : c.slices)
        for (const Gate& g : s.gates)
            ++st.gates_by_arity[static_cast<uint32_t>(g.arity())];
    return st;
}

} // namespace telesim
