#ifndef MTAEQ_AUTOMATON_HPP
#define MTAEQ_AUTOMATON_HPP

// k-tape automata: data model, validation, determinism and exact run counting.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mtaeq/random.hpp"

namespace mtaeq {

/// Exact number of accepting runs.
using Multiplicity = boost::multiprecision::cpp_int;

/// A word on one tape, as a sequence of letter symbols.
using Word = std::vector<std::string>;

/// Per-tape alphabets. Letters are arbitrary non-empty strings, ordered.
struct Alphabets {
    std::vector<std::vector<std::string>> letters;

    std::size_t tapes() const { return letters.size(); }

    std::size_t size(std::size_t tape) const { return letters.at(tape).size(); }

    /// Sum of the per-tape alphabet sizes.
    std::size_t total_letters() const {
        std::size_t total = 0;
        for (const auto& tape : letters) total += tape.size();
        return total;
    }

    std::optional<std::size_t> index_of(std::size_t tape, const std::string& symbol) const {
        if (tape >= letters.size()) return std::nullopt;
        const auto& sigma = letters[tape];
        auto it = std::find(sigma.begin(), sigma.end(), symbol);
        if (it == sigma.end()) return std::nullopt;
        return static_cast<std::size_t>(it - sigma.begin());
    }

    const std::string& symbol(std::size_t tape, std::size_t index) const {
        return letters.at(tape).at(index);
    }

    friend bool operator==(const Alphabets&, const Alphabets&) = default;
};

/// An element of Sigma_1^* x ... x Sigma_k^*.
struct TapeTuple {
    std::vector<Word> words;

    TapeTuple() = default;
    explicit TapeTuple(std::vector<Word> w) : words(std::move(w)) {}

    /// The all-empty tuple on k tapes.
    static TapeTuple empty(std::size_t tapes) { return TapeTuple(std::vector<Word>(tapes)); }

    std::size_t tapes() const { return words.size(); }

    /// Total length |w_1| + ... + |w_k|.
    std::size_t length() const {
        std::size_t total = 0;
        for (const auto& w : words) total += w.size();
        return total;
    }

    friend bool operator==(const TapeTuple&, const TapeTuple&) = default;
    friend auto operator<=>(const TapeTuple&, const TapeTuple&) = default;
};

/// A transition reading one letter from one tape.
struct Edge {
    std::size_t src = 0;
    std::size_t tape = 0;
    std::string letter;
    std::size_t dst = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Nondeterministic k-tape automaton with states 0..state_count-1.
///
/// Edges are a set; the order of the vector carries no meaning and equality
/// compares edge sets.
struct MultitapeAutomaton {
    Alphabets alphabets;
    std::size_t state_count = 0;
    std::vector<Edge> edges;
    std::set<std::size_t> initial_states;
    std::set<std::size_t> final_states;

    std::size_t tapes() const { return alphabets.tapes(); }

    friend bool operator==(const MultitapeAutomaton& a, const MultitapeAutomaton& b) {
        if (a.alphabets != b.alphabets || a.state_count != b.state_count ||
            a.initial_states != b.initial_states || a.final_states != b.final_states)
            return false;
        auto ea = a.edges;
        auto eb = b.edges;
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end());
        return ea == eb;
    }
};

/// One invariant violation found by validate().
struct Violation {
    std::string location;  // e.g. "edges[3].dst"
    std::string message;   // e.g. "dst out of range"

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Thrown by operations whose inputs break a precondition.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Lists every invariant violation of the automaton; empty means valid.
inline std::vector<Violation> validate(const MultitapeAutomaton& a) {
    std::vector<Violation> out;
    const auto& sigma = a.alphabets;
    if (sigma.tapes() == 0) out.push_back({"alphabets", "automaton needs at least one tape"});
    for (std::size_t t = 0; t < sigma.tapes(); ++t) {
        std::set<std::string> seen;
        for (std::size_t j = 0; j < sigma.letters[t].size(); ++j) {
            const auto& x = sigma.letters[t][j];
            std::string loc = "alphabets[" + std::to_string(t) + "][" + std::to_string(j) + "]";
            if (x.empty()) out.push_back({loc, "empty letter"});
            if (!seen.insert(x).second) out.push_back({loc, "duplicate letter '" + x + "'"});
        }
    }
    std::set<std::tuple<std::size_t, std::size_t, std::string, std::size_t>> seen_edges;
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        const auto& edge = a.edges[e];
        std::string loc = "edges[" + std::to_string(e) + "]";
        if (edge.src >= a.state_count) out.push_back({loc + ".src", "src out of range"});
        if (edge.dst >= a.state_count) out.push_back({loc + ".dst", "dst out of range"});
        if (edge.tape >= sigma.tapes()) {
            out.push_back({loc + ".tape", "tape index out of range"});
        } else if (!sigma.index_of(edge.tape, edge.letter)) {
            out.push_back({loc + ".letter", "unknown letter '" + edge.letter + "' on tape " +
                                                std::to_string(edge.tape)});
        }
        if (!seen_edges.emplace(edge.src, edge.tape, edge.letter, edge.dst).second)
            out.push_back({loc, "duplicate edge"});
    }
    for (auto q : a.initial_states)
        if (q >= a.state_count)
            out.push_back({"initial[" + std::to_string(q) + "]", "initial state out of range"});
    for (auto q : a.final_states)
        if (q >= a.state_count)
            out.push_back({"final[" + std::to_string(q) + "]", "final state out of range"});
    return out;
}

inline void require_valid(const MultitapeAutomaton& a, const std::string& what = "automaton") {
    auto violations = validate(a);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw InputError(what + ": " + v.location + ": " + v.message);
    }
}

/// Edge with its letter resolved to an index into the tape's alphabet.
struct IndexedEdge {
    std::size_t src;
    std::size_t tape;
    std::size_t letter;
    std::size_t dst;
};

/// Outgoing edges grouped per source state. Requires a valid automaton.
inline std::vector<std::vector<IndexedEdge>> outgoing_edges(const MultitapeAutomaton& a) {
    std::vector<std::vector<IndexedEdge>> out(a.state_count);
    for (const auto& e : a.edges) {
        auto idx = a.alphabets.index_of(e.tape, e.letter);
        if (!idx || e.src >= a.state_count || e.dst >= a.state_count)
            throw InputError("outgoing_edges: automaton is not valid");
        out[e.src].push_back({e.src, e.tape, *idx, e.dst});
    }
    return out;
}

/// True iff at most one initial state, every state reads from a single tape,
/// and each (state, letter) has at most one successor. Partial automata count
/// as deterministic.
inline bool is_deterministic(const MultitapeAutomaton& a) {
    if (a.initial_states.size() > 1) return false;
    std::map<std::size_t, std::size_t> tape_of;
    std::set<std::pair<std::size_t, std::string>> used;
    for (const auto& e : a.edges) {
        auto [it, inserted] = tape_of.emplace(e.src, e.tape);
        if (!inserted && it->second != e.tape) return false;
        if (!used.emplace(e.src, e.letter).second) return false;
    }
    return true;
}

/// Resolves every letter of s to its alphabet index, or throws InputError.
inline std::vector<std::vector<std::size_t>> index_tuple(const Alphabets& sigma,
                                                         const TapeTuple& s) {
    if (s.tapes() != sigma.tapes())
        throw InputError("tuple has " + std::to_string(s.tapes()) + " components, expected " +
                         std::to_string(sigma.tapes()));
    std::vector<std::vector<std::size_t>> out(s.tapes());
    for (std::size_t t = 0; t < s.tapes(); ++t) {
        for (const auto& x : s.words[t]) {
            auto idx = sigma.index_of(t, x);
            if (!idx)
                throw InputError("letter '" + x + "' is not in the alphabet of tape " +
                                 std::to_string(t));
            out[t].push_back(*idx);
        }
    }
    return out;
}

/// Counts accepting runs of one automaton on many inputs.
///
/// Dynamic program over configurations (state, i_1, ..., i_k), advanced one
/// consumed letter at a time; only configurations reachable on the input are
/// stored, and counts are exact.
class RunCounter {
  public:
    explicit RunCounter(const MultitapeAutomaton& a) : a_(a) {
        require_valid(a_);
        out_ = outgoing_edges(a_);
    }

    Multiplicity operator()(const TapeTuple& s) const {
        const auto word = index_tuple(a_.alphabets, s);
        const std::size_t k = word.size();
        const std::size_t n = a_.state_count;
        if (n == 0 || a_.final_states.empty() || a_.initial_states.empty()) return 0;

        // Mixed-radix position code; key = position * n + state.
        std::vector<std::uint64_t> stride(k);
        std::uint64_t positions = 1;
        for (std::size_t t = 0; t < k; ++t) {
            stride[t] = positions;
            const std::uint64_t radix = word[t].size() + 1;
            if (positions > std::numeric_limits<std::uint64_t>::max() / radix / (n + 1))
                throw InputError("count_runs: input too large");
            positions *= radix;
        }

        std::unordered_map<std::uint64_t, Multiplicity> frontier;
        for (auto q : a_.initial_states) frontier[q] += 1;

        const std::size_t total = s.length();
        for (std::size_t level = 0; level < total && !frontier.empty(); ++level) {
            std::unordered_map<std::uint64_t, Multiplicity> next;
            for (const auto& [key, count] : frontier) {
                const std::uint64_t pos = key / n;
                const std::size_t q = key % n;
                for (const auto& e : out_[q]) {
                    const auto& w = word[e.tape];
                    const std::uint64_t consumed = (pos / stride[e.tape]) % (w.size() + 1);
                    if (consumed >= w.size() || w[consumed] != e.letter) continue;
                    next[(pos + stride[e.tape]) * n + e.dst] += count;
                }
            }
            frontier = std::move(next);
        }

        Multiplicity result = 0;
        const std::uint64_t end = positions - 1;  // every tape fully consumed
        for (auto q : a_.final_states) {
            auto it = frontier.find(end * n + q);
            if (it != frontier.end()) result += it->second;
        }
        return result;
    }

  private:
    MultitapeAutomaton a_;
    std::vector<std::vector<IndexedEdge>> out_;
};

/// Exact number of accepting runs of a on s; distinct interleavings of tape
/// reads are distinct runs.
inline Multiplicity count_runs(const MultitapeAutomaton& a, const TapeTuple& s) {
    return RunCounter(a)(s);
}

/// Letter names used by the generator: "a".."z", then "l26", "l27", ...
inline std::string generated_letter(std::size_t j) {
    if (j < 26) return std::string(1, static_cast<char>('a' + j));
    return "l" + std::to_string(j);
}

/// Pseudo-random valid automaton. Every possible edge is included
/// independently with probability `density`; initial and final sets are
/// non-empty whenever state_count > 0.
inline MultitapeAutomaton random_automaton(std::size_t tapes, std::size_t state_count,
                                           const std::vector<std::size_t>& alphabet_sizes,
                                           double density, std::uint64_t seed) {
    if (tapes == 0) throw InputError("random_automaton: tapes must be positive");
    if (alphabet_sizes.size() != tapes)
        throw InputError("random_automaton: need one alphabet size per tape");
    if (!(density >= 0.0 && density <= 1.0))
        throw InputError("random_automaton: density must lie in [0, 1]");

    MultitapeAutomaton a;
    a.state_count = state_count;
    a.alphabets.letters.resize(tapes);
    for (std::size_t t = 0; t < tapes; ++t)
        for (std::size_t j = 0; j < alphabet_sizes[t]; ++j)
            a.alphabets.letters[t].push_back(generated_letter(j));

    auto rng = make_stream(seed, stream_tag::generator, 0);
    std::bernoulli_distribution keep(density);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t q = 0; q < state_count; ++q)
        for (std::size_t t = 0; t < tapes; ++t)
            for (const auto& x : a.alphabets.letters[t])
                for (std::size_t r = 0; r < state_count; ++r)
                    if (keep(rng)) a.edges.push_back({q, t, x, r});
    for (std::size_t q = 0; q < state_count; ++q) {
        if (coin(rng)) a.initial_states.insert(q);
        if (coin(rng)) a.final_states.insert(q);
    }
    if (state_count > 0) {
        std::uniform_int_distribution<std::size_t> pick(0, state_count - 1);
        if (a.initial_states.empty()) a.initial_states.insert(pick(rng));
        if (a.final_states.empty()) a.final_states.insert(pick(rng));
    }
    return a;
}

/// Relabels states by q -> perm[q].
inline MultitapeAutomaton permute_states(const MultitapeAutomaton& a,
                                         const std::vector<std::size_t>& perm) {
    if (perm.size() != a.state_count) throw InputError("permute_states: wrong permutation size");
    MultitapeAutomaton b = a;
    for (auto& e : b.edges) {
        e.src = perm.at(e.src);
        e.dst = perm.at(e.dst);
    }
    b.initial_states.clear();
    b.final_states.clear();
    for (auto q : a.initial_states) b.initial_states.insert(perm.at(q));
    for (auto q : a.final_states) b.final_states.insert(perm.at(q));
    return b;
}

/// Disjoint union: b's states are shifted past a's. Alphabets must match.
inline MultitapeAutomaton disjoint_union(const MultitapeAutomaton& a, const MultitapeAutomaton& b) {
    if (a.alphabets != b.alphabets) throw InputError("disjoint_union: alphabets differ");
    MultitapeAutomaton u = a;
    const auto shift = a.state_count;
    u.state_count += b.state_count;
    for (auto e : b.edges) {
        e.src += shift;
        e.dst += shift;
        u.edges.push_back(std::move(e));
    }
    for (auto q : b.initial_states) u.initial_states.insert(q + shift);
    for (auto q : b.final_states) u.final_states.insert(q + shift);
    return u;
}

}  // namespace mtaeq

#endif  // MTAEQ_AUTOMATON_HPP
