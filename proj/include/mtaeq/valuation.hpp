#ifndef MTAEQ_VALUATION_HPP
#define MTAEQ_VALUATION_HPP

// The difference system of two automata and its evaluation under
// superdiagonal matrix valuations.
//
// The combined automaton has weight alpha * M^l * eta = sum over |s| = l of
// (A(s) - B(s)) s. Each letter x on tape i is sent to the n x n matrix with
// indeterminates t^(x)_{j,j+1} on the superdiagonal, acting on tape factor i
// of an n^k dimensional tensor space. A tuple s with per-tape lengths l_i < n
// then shows up in row (1, ..., 1) only, at column (l_1 + 1, ..., l_k + 1),
// as the product of the indeterminates it reads. Tracking that single row is
// enough to decide whether the weight vanishes.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtaeq/automaton.hpp"
#include "mtaeq/field.hpp"
#include "mtaeq/grid_vector.hpp"
#include "mtaeq/unipoly.hpp"

namespace mtaeq {

using ff::Cell;
using ff::CoefficientRing;
using ff::GridCode;
using ff::GridShape;
using ff::GridVector;

/// Thrown when two automata do not share the same alphabets.
class AlphabetMismatch : public InputError {
  public:
    using InputError::InputError;
};

/// Block-diagonal combination of two automata: A's states come first,
/// B's are shifted by n_A. alpha marks initial states of both, eta is +1 on
/// A's final states and -1 on B's.
struct DifferenceSystem {
    std::size_t n = 0;
    std::size_t states_a = 0;
    std::size_t states_b = 0;
    Alphabets alphabets;
    std::vector<IndexedEdge> edges;
    std::vector<int> alpha;
    std::vector<int> eta;
    std::vector<std::vector<IndexedEdge>> out;  // edges grouped by source

    std::size_t tapes() const { return alphabets.tapes(); }

    GridShape shape() const { return GridShape(std::max<std::size_t>(n, 1), tapes(), n); }
};

/// Throws AlphabetMismatch naming the first tape whose alphabet differs.
inline void require_same_alphabets(const Alphabets& a, const Alphabets& b) {
    if (a.tapes() != b.tapes())
        throw AlphabetMismatch("alphabet mismatch: " + std::to_string(a.tapes()) + " tapes vs " +
                               std::to_string(b.tapes()));
    for (std::size_t t = 0; t < a.tapes(); ++t) {
        std::set<std::string> la(a.letters[t].begin(), a.letters[t].end());
        std::set<std::string> lb(b.letters[t].begin(), b.letters[t].end());
        if (la != lb)
            throw AlphabetMismatch("alphabet mismatch on tape " + std::to_string(t));
    }
}

inline DifferenceSystem build_difference_system(const MultitapeAutomaton& a,
                                                const MultitapeAutomaton& b) {
    require_valid(a, "first automaton");
    require_valid(b, "second automaton");
    require_same_alphabets(a.alphabets, b.alphabets);

    DifferenceSystem sys;
    sys.states_a = a.state_count;
    sys.states_b = b.state_count;
    sys.n = a.state_count + b.state_count;
    sys.alphabets = a.alphabets;
    sys.alpha.assign(sys.n, 0);
    sys.eta.assign(sys.n, 0);
    sys.out.resize(sys.n);

    auto add_block = [&](const MultitapeAutomaton& m, std::size_t shift, int sign) {
        // letters resolve against the first automaton's alphabet order
        for (const auto& edge : m.edges) {
            IndexedEdge e{edge.src + shift, edge.tape,
                          *sys.alphabets.index_of(edge.tape, edge.letter), edge.dst + shift};
            sys.edges.push_back(e);
            sys.out[e.src].push_back(e);
        }
        for (auto q : m.initial_states) sys.alpha[q + shift] = 1;
        for (auto q : m.final_states) sys.eta[q + shift] = sign;
    };
    add_block(a, 0, 1);
    add_block(b, a.state_count, -1);
    return sys;
}

/// The indeterminate t^(letter)_{position, position+1} on `tape`.
struct VariableId {
    std::size_t tape = 0;
    std::size_t letter = 0;    // index into the tape's alphabet
    std::size_t position = 1;  // in [1, n-1]

    friend bool operator==(const VariableId&, const VariableId&) = default;
    friend auto operator<=>(const VariableId&, const VariableId&) = default;
};

/// Dense numbering of all (n-1) * sum_i |Sigma_i| variables.
class VariableLayout {
  public:
    VariableLayout(std::size_t n, const Alphabets& sigma) : n_(n) {
        std::size_t offset = 0;
        for (std::size_t t = 0; t < sigma.tapes(); ++t) {
            offsets_.push_back(offset);
            sizes_.push_back(sigma.size(t));
            offset += sigma.size(t);
        }
        letters_ = offset;
    }

    std::size_t n() const { return n_; }
    std::size_t positions() const { return n_ > 0 ? n_ - 1 : 0; }
    std::size_t count() const { return positions() * letters_; }

    std::size_t index(const VariableId& v) const {
        if (v.tape >= sizes_.size() || v.letter >= sizes_[v.tape] || v.position < 1 ||
            v.position > positions())
            throw std::out_of_range("VariableLayout: variable out of range");
        return (offsets_[v.tape] + v.letter) * positions() + (v.position - 1);
    }

    VariableId id(std::size_t index) const {
        const std::size_t slot = index / positions();
        const std::size_t tape =
            static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), slot) -
                                     offsets_.begin()) -
            1;
        return {tape, slot - offsets_[tape], index % positions() + 1};
    }

    /// Index of the first position of (tape, letter); the n-1 positions follow.
    std::size_t first(std::size_t tape, std::size_t letter) const {
        return (offsets_.at(tape) + letter) * positions();
    }

  private:
    std::size_t n_;
    std::size_t letters_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> sizes_;
};

/// Value assigned to every superdiagonal indeterminate.
template <class C>
class Valuation {
  public:
    Valuation(VariableLayout layout, std::vector<C> values)
        : layout_(std::move(layout)), values_(std::move(values)) {
        if (values_.size() != layout_.count())
            throw std::invalid_argument("Valuation: one value per variable required");
    }

    const VariableLayout& layout() const { return layout_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<C>& values() const { return values_; }

    const C& at(const VariableId& v) const { return values_[layout_.index(v)]; }
    void set(const VariableId& v, C value) { values_[layout_.index(v)] = std::move(value); }

    /// Superdiagonal of the matrix of (tape, letter): entry j-1 is t_{j,j+1}.
    std::span<const C> superdiagonal(std::size_t tape, std::size_t letter) const {
        return std::span<const C>(values_).subspan(layout_.first(tape, letter),
                                                   layout_.positions());
    }

  private:
    VariableLayout layout_;
    std::vector<C> values_;
};

/// Independent uniform field values for every variable.
template <class Gen>
Valuation<ff::FieldScalar> sample_valuation(const DifferenceSystem& sys, const ff::PrimeField& field,
                                            Gen& rng) {
    const std::uint64_t need = 2 * (sys.n > 0 ? sys.n - 1 : 0);
    if (field.modulus() <= need)
        throw InputError("prime " + std::to_string(field.modulus()) + " too small for n = " +
                         std::to_string(sys.n));
    VariableLayout layout(sys.n, sys.alphabets);
    std::vector<ff::FieldScalar> values(layout.count());
    for (auto& v : values) v = field.random(rng);
    return Valuation<ff::FieldScalar>(std::move(layout), std::move(values));
}

/// Variable v -> y^weights[v] in the truncated polynomial ring. Weights are
/// indexed like VariableLayout and must lie in [1, 2m].
inline Valuation<ff::UniPoly> symbolic_valuation(const DifferenceSystem& sys,
                                                 std::span<const std::size_t> weights,
                                                 const ff::PolyRing& ring) {
    VariableLayout layout(sys.n, sys.alphabets);
    const std::size_t m = layout.count();
    if (weights.size() != m)
        throw std::invalid_argument("symbolic_valuation: need one weight per variable");
    if (ring.cap() < layout.positions() * 2 * m)
        throw std::invalid_argument("symbolic_valuation: degree cap below (n-1)*2m");
    std::vector<ff::UniPoly> values;
    values.reserve(m);
    for (auto w : weights) {
        if (w < 1 || w > 2 * m)
            throw std::out_of_range("symbolic_valuation: weight " + std::to_string(w) +
                                    " outside [1, " + std::to_string(2 * m) + "]");
        values.push_back(ring.monomial(ring.field().one(), w));
    }
    return Valuation<ff::UniPoly>(std::move(layout), std::move(values));
}

/// Row `row` of alpha as a grid vector: (q, row) -> alpha_q. The default row
/// (1, ..., 1) is the one the checker tracks.
template <CoefficientRing R>
GridVector<typename R::value_type> initial_vector(const R& ring, const DifferenceSystem& sys,
                                                  GridCode row = 0) {
    GridVector<typename R::value_type> v(sys.shape());
    for (std::size_t q = 0; q < sys.n; ++q)
        if (sys.alpha[q] != 0) v.accumulate(ring, {q, row}, ring.one());
    return v;
}

/// One factor of the valuated transition matrix: v * Psi_n(M).
template <CoefficientRing R>
GridVector<typename R::value_type> step(const R& ring, const GridVector<typename R::value_type>& v,
                                        const DifferenceSystem& sys,
                                        const Valuation<typename R::value_type>& val) {
    const auto& shape = v.shape();
    GridVector<typename R::value_type> out(shape);
    for (const auto& [cell, value] : v.entries()) {
        for (const auto& e : sys.out[cell.state]) {
            const std::size_t j = shape.coordinate(cell.grid, e.tape);
            if (j >= shape.n()) continue;
            const auto& t = val.superdiagonal(e.tape, e.letter)[j - 1];
            out.accumulate(ring, {e.dst, shape.advance(cell.grid, e.tape)}, ring.mul(value, t));
        }
    }
    return out;
}

/// Sparse grid-indexed row vector.
template <class C>
using GridRow = std::map<GridCode, C>;

/// Contraction with eta: sum over states q of eta_q times the q block of v.
template <CoefficientRing R>
GridRow<typename R::value_type> project(const R& ring, const GridVector<typename R::value_type>& v,
                                        const DifferenceSystem& sys) {
    GridRow<typename R::value_type> row;
    for (const auto& [cell, value] : v.entries()) {
        const int sign = sys.eta[cell.state];
        if (sign == 0) continue;
        auto term = sign > 0 ? value : ring.neg(value);
        auto [it, inserted] = row.try_emplace(cell.grid, term);
        if (!inserted) it->second = ring.add(it->second, term);
    }
    std::erase_if(row, [&](const auto& kv) { return ring.is_zero(kv.second); });
    return row;
}

/// First level l <= max_level where the projected row is non-zero.
template <class C>
struct NonzeroLevel {
    std::size_t level;
    GridRow<C> row;
};

template <CoefficientRing R>
std::optional<NonzeroLevel<typename R::value_type>> first_nonzero_level(
    const R& ring, const DifferenceSystem& sys, const Valuation<typename R::value_type>& val,
    GridVector<typename R::value_type> v, std::size_t max_level) {
    for (std::size_t l = 0; l <= max_level; ++l) {
        auto row = project(ring, v, sys);
        if (!row.empty()) return NonzeroLevel<typename R::value_type>{l, std::move(row)};
        if (l == max_level || v.empty()) break;
        v = step(ring, v, sys, val);
    }
    return std::nullopt;
}

/// The variables a tuple reads: letter number j of w_i is t_{j,j+1} on tape i.
inline std::set<VariableId> variables_of(const Alphabets& sigma, const TapeTuple& s) {
    const auto word = index_tuple(sigma, s);
    std::set<VariableId> vars;
    for (std::size_t t = 0; t < word.size(); ++t)
        for (std::size_t j = 0; j < word[t].size(); ++j) vars.insert({t, word[t][j], j + 1});
    return vars;
}

/// Thrown when a variable set is not the image of a tuple.
class InvalidMonomial : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reads a tuple back from the variables of its monomial. On every tape the
/// positions must be exactly 1..l_i, each with a single letter.
inline TapeTuple decode_monomial(const std::set<VariableId>& vars, const Alphabets& sigma,
                                 std::size_t n) {
    const std::size_t k = sigma.tapes();
    std::vector<std::map<std::size_t, std::size_t>> by_position(k);
    for (const auto& v : vars) {
        if (v.tape >= k || v.letter >= sigma.size(v.tape))
            throw InvalidMonomial("not a valid monomial: unknown variable");
        if (v.position < 1 || v.position + 1 > n)
            throw InvalidMonomial("not a valid monomial: position out of range");
        if (!by_position[v.tape].emplace(v.position, v.letter).second)
            throw InvalidMonomial("not a valid monomial: two letters at position " +
                                  std::to_string(v.position) + " of tape " +
                                  std::to_string(v.tape));
    }
    TapeTuple s = TapeTuple::empty(k);
    for (std::size_t t = 0; t < k; ++t) {
        std::size_t expect = 1;
        for (const auto& [pos, letter] : by_position[t]) {
            if (pos != expect)
                throw InvalidMonomial("not a valid monomial: position " + std::to_string(expect) +
                                      " missing on tape " + std::to_string(t));
            s.words[t].push_back(sigma.symbol(t, letter));
            ++expect;
        }
    }
    return s;
}

}  // namespace mtaeq

#endif  // MTAEQ_VALUATION_HPP
