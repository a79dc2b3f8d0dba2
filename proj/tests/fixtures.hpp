#ifndef MTAEQ_TESTS_FIXTURES_HPP
#define MTAEQ_TESTS_FIXTURES_HPP

// Shared automata and test-only oracles. Nothing here calls the code paths
// it is used to check.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mtaeq/automaton.hpp"
#include "mtaeq/field.hpp"
#include "mtaeq/random.hpp"

namespace mtaeq::test {

inline MultitapeAutomaton make(std::vector<std::vector<std::string>> alphabets,
                               std::size_t states, std::vector<Edge> edges,
                               std::set<std::size_t> initial, std::set<std::size_t> final) {
    MultitapeAutomaton a;
    a.alphabets.letters = std::move(alphabets);
    a.state_count = states;
    a.edges = std::move(edges);
    a.initial_states = std::move(initial);
    a.final_states = std::move(final);
    return a;
}

inline TapeTuple tuple(std::initializer_list<std::string> words) {
    TapeTuple s;
    for (const auto& w : words) {
        Word word;
        for (char c : w) word.push_back(std::string(1, c));
        s.words.push_back(word);
    }
    return s;
}

/// a then b, or b then a: two runs on ("a","b").
inline MultitapeAutomaton diamond() {
    return make({{"a"}, {"b"}}, 4, {{0, 0, "a", 1}, {1, 1, "b", 3}, {0, 1, "b", 2}, {2, 0, "a", 3}},
                {0}, {3});
}

/// a on tape 0 then b on tape 1: one run on ("a","b").
inline MultitapeAutomaton path_ab() {
    return make({{"a"}, {"b"}}, 3, {{0, 0, "a", 1}, {1, 1, "b", 2}}, {0}, {2});
}

/// b on tape 1 then a on tape 0: same relation as path_ab.
inline MultitapeAutomaton path_ba() {
    return make({{"a"}, {"b"}}, 3, {{0, 1, "b", 1}, {1, 0, "a", 2}}, {0}, {2});
}

inline MultitapeAutomaton self_loop() {
    return make({{"a"}}, 1, {{0, 0, "a", 0}}, {0}, {0});
}

/// Accepts exactly the empty tuple on k tapes.
inline MultitapeAutomaton epsilon_only(std::vector<std::vector<std::string>> alphabets) {
    return make(std::move(alphabets), 1, {}, {0}, {0});
}

/// Accepts nothing.
inline MultitapeAutomaton nothing(std::vector<std::vector<std::string>> alphabets) {
    return make(std::move(alphabets), 1, {}, {0}, {});
}

/// Counts accepting runs by listing every path of |s| edges from an initial
/// state and comparing its label with s; no pruning on s.
inline Multiplicity enumerate_runs(const MultitapeAutomaton& a, const TapeTuple& s) {
    const std::size_t len = s.length();
    Multiplicity total = 0;
    std::vector<const Edge*> path;
    std::function<void(std::size_t)> walk = [&](std::size_t q) {
        if (path.size() == len) {
            if (!a.final_states.count(q)) return;
            TapeTuple label = TapeTuple::empty(a.tapes());
            for (const auto* e : path) label.words[e->tape].push_back(e->letter);
            if (label == s) total += 1;
            return;
        }
        for (const auto& e : a.edges) {
            if (e.src != q) continue;
            path.push_back(&e);
            walk(e.dst);
            path.pop_back();
        }
    };
    for (auto q : a.initial_states) walk(q);
    return total;
}

/// Random permutation of 0..n-1.
inline std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto rng = make_stream(seed, stream_tag::fixtures, 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

/// Dense n^k vector times I x ... x N x ... x I, N having `diag` on its
/// superdiagonal. Coordinates are 0-based with tape 0 most significant.
inline std::vector<ff::FieldScalar> dense_kronecker_apply(const ff::PrimeField& f,
                                                          const std::vector<ff::FieldScalar>& v,
                                                          std::size_t n, std::size_t k,
                                                          std::size_t tape,
                                                          const std::vector<ff::FieldScalar>& diag) {
    // Build the n x n matrix and the full Kronecker product explicitly.
    std::vector<std::vector<ff::FieldScalar>> factor(n, std::vector<ff::FieldScalar>(n));
    for (std::size_t j = 0; j + 1 < n; ++j) factor[j][j + 1] = diag[j];
    std::size_t dim = 1;
    for (std::size_t t = 0; t < k; ++t) dim *= n;
    std::vector<std::vector<ff::FieldScalar>> big = {{f.one()}};
    for (std::size_t t = 0; t < k; ++t) {
        const auto& m = factor;
        std::vector<std::vector<ff::FieldScalar>> next(big.size() * n,
                                                      std::vector<ff::FieldScalar>(big.size() * n));
        for (std::size_t r1 = 0; r1 < big.size(); ++r1)
            for (std::size_t c1 = 0; c1 < big.size(); ++c1)
                for (std::size_t r2 = 0; r2 < n; ++r2)
                    for (std::size_t c2 = 0; c2 < n; ++c2) {
                        const auto rhs = t == tape ? m[r2][c2] : (r2 == c2 ? f.one() : f.zero());
                        next[r1 * n + r2][c1 * n + c2] = f.mul(big[r1][c1], rhs);
                    }
        big = std::move(next);
    }
    std::vector<ff::FieldScalar> out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) out[c] = f.add(out[c], f.mul(v[r], big[r][c]));
    return out;
}

}  // namespace mtaeq::test

#endif  // MTAEQ_TESTS_FIXTURES_HPP
