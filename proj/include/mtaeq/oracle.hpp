#ifndef MTAEQ_ORACLE_HPP
#define MTAEQ_ORACLE_HPP

// Exact ground truth for small inputs: exhaustive search over all tuples of
// length at most n-1, and the #SAT encoding used as a run-counting fixture.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtaeq/automaton.hpp"
#include "mtaeq/equivalence.hpp"
#include "mtaeq/valuation.hpp"

namespace mtaeq {

/// Number of tuples with |s| <= max_len.
inline Multiplicity count_tuples(const Alphabets& sigma, std::size_t max_len) {
    // ways[r] = number of tuples of total length r over the tapes seen so far
    std::vector<Multiplicity> ways(max_len + 1, 0);
    ways[0] = 1;
    for (std::size_t t = 0; t < sigma.tapes(); ++t) {
        std::vector<Multiplicity> next(max_len + 1, 0);
        for (std::size_t r = 0; r <= max_len; ++r) {
            Multiplicity words = 1;  // |Sigma_t|^len
            for (std::size_t len = 0; r + len <= max_len; ++len) {
                next[r + len] += ways[r] * words;
                words *= sigma.size(t);
                if (words == 0) break;
            }
        }
        ways = std::move(next);
    }
    Multiplicity total = 0;
    for (const auto& w : ways) total += w;
    return total;
}

/// Calls visit(s) for every tuple with |s| <= max_len, shortest first.
/// Tuples of one length are ordered lexicographically by the concatenation
/// w_1 w_2 ... w_k, where letters rank by (tape, alphabet position). Stops
/// early when visit returns false.
inline void for_each_tuple(const Alphabets& sigma, std::size_t max_len,
                           const std::function<bool(const TapeTuple&)>& visit) {
    const std::size_t k = sigma.tapes();
    TapeTuple s = TapeTuple::empty(k);
    bool keep_going = true;
    // Extend with letters from tapes >= min_tape so the concatenation stays
    // tape-monotone; depth-first in letter rank gives lexicographic order.
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t min_tape,
                                                               std::size_t remaining) {
        if (!keep_going) return;
        if (remaining == 0) {
            keep_going = visit(s);
            return;
        }
        for (std::size_t t = min_tape; t < k && keep_going; ++t)
            for (const auto& x : sigma.letters[t]) {
                s.words[t].push_back(x);
                extend(t, remaining - 1);
                s.words[t].pop_back();
                if (!keep_going) return;
            }
    };
    for (std::size_t len = 0; len <= max_len && keep_going; ++len) extend(0, len);
}

inline std::vector<TapeTuple> enumerate_tuples(const Alphabets& sigma, std::size_t max_len) {
    std::vector<TapeTuple> out;
    for_each_tuple(sigma, max_len, [&](const TapeTuple& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

/// Thrown when exhaustive search would exceed its budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_enumeration_budget = 1'000'000;

/// Exact equivalence by comparing A(s) and B(s) for every s with
/// |s| <= n-1. An inequivalent verdict carries the first differing tuple in
/// enumeration order, which has minimal length.
inline Verdict brute_force_equivalence(const MultitapeAutomaton& a, const MultitapeAutomaton& b,
                                       std::uint64_t budget = default_enumeration_budget) {
    require_valid(a, "first automaton");
    require_valid(b, "second automaton");
    require_same_alphabets(a.alphabets, b.alphabets);

    Verdict verdict;
    verdict.n = a.state_count + b.state_count;
    if (verdict.n == 0) return verdict;
    const std::size_t max_len = verdict.n - 1;
    const auto total = count_tuples(a.alphabets, max_len);
    if (total > budget)
        throw BudgetExceeded("brute force needs " + total.str() + " tuples (budget " +
                             std::to_string(budget) + "); use the randomized checker");

    const RunCounter count_a(a);
    const RunCounter count_b(b);
    for_each_tuple(a.alphabets, max_len, [&](const TapeTuple& s) {
        auto ca = count_a(s);
        auto cb = count_b(s);
        if (ca == cb) return true;
        verdict.kind = VerdictKind::inequivalent;
        verdict.level = s.length();
        verdict.witness = s;
        verdict.count_a = std::move(ca);
        verdict.count_b = std::move(cb);
        return false;
    });
    return verdict;
}

/// CNF over variables 1..variables; literal +i / -i is x_i / not x_i.
struct CnfFormula {
    std::size_t variables = 0;
    std::vector<std::vector<int>> clauses;
};

inline void validate_cnf(const CnfFormula& f) {
    if (f.variables == 0) throw InputError("CNF needs at least one variable");
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
        if (f.clauses[c].empty()) throw InputError("clause " + std::to_string(c) + " is empty");
        for (int lit : f.clauses[c]) {
            const auto var = static_cast<std::size_t>(lit < 0 ? -static_cast<long>(lit) : lit);
            if (lit == 0 || var > f.variables)
                throw InputError("clause " + std::to_string(c) + ": literal " +
                                 std::to_string(lit) + " out of range");
        }
    }
}

/// Satisfying assignments, by enumeration over all 2^v assignments.
inline Multiplicity count_satisfying(const CnfFormula& f) {
    validate_cnf(f);
    if (f.variables > 30) throw InputError("count_satisfying: too many variables to enumerate");
    Multiplicity count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.variables); ++mask) {
        bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const auto& clause) {
            return std::any_of(clause.begin(), clause.end(), [&](int lit) {
                const auto var = static_cast<unsigned>(lit < 0 ? -lit : lit) - 1;
                const bool value = (mask >> var) & 1;
                return lit > 0 ? value : !value;
            });
        });
        if (all) count += 1;
    }
    return count;
}

/// Automaton and input whose run count equals the number of satisfying
/// assignments.
struct SatEncoding {
    MultitapeAutomaton automaton;
    TapeTuple input;           // ((01)^repetitions, ..., (01)^repetitions)
    std::size_t repetitions;   // exceeds every variable's occurrence count
};

namespace detail {

// Automaton under construction with epsilon moves. The encoder only builds
// epsilon structures with at most one epsilon path between any two states,
// so removing them preserves run counts.
class EpsilonBuilder {
  public:
    std::size_t add_state() { return states_++; }

    void letter(std::size_t src, std::size_t tape, const std::string& x, std::size_t dst) {
        letters_.push_back({src, tape, x, dst});
    }
    void epsilon(std::size_t src, std::size_t dst) { eps_.emplace_back(src, dst); }

    MultitapeAutomaton finish(Alphabets sigma, std::size_t initial, std::size_t final) const {
        std::vector<std::vector<std::size_t>> eps_out(states_);
        for (auto [s, d] : eps_) eps_out[s].push_back(d);

        MultitapeAutomaton a;
        a.alphabets = std::move(sigma);
        a.state_count = states_;
        a.initial_states = {initial};
        std::set<Edge> edges;
        for (std::size_t q = 0; q < states_; ++q) {
            // every state reachable from q by epsilon moves, q included
            std::vector<std::size_t> closure{q};
            for (std::size_t i = 0; i < closure.size(); ++i)
                for (auto d : eps_out[closure[i]]) closure.push_back(d);
            std::set<std::size_t> unique(closure.begin(), closure.end());
            if (unique.size() != closure.size())
                throw std::logic_error("EpsilonBuilder: ambiguous epsilon paths");
            for (auto r : closure) {
                if (r == final) a.final_states.insert(q);
                for (const auto& e : letters_)
                    if (e.src == r && !edges.insert({q, e.tape, e.letter, e.dst}).second)
                        throw std::logic_error("EpsilonBuilder: epsilon removal merged edges");
            }
        }
        a.edges.assign(edges.begin(), edges.end());
        return a;
    }

  private:
    std::size_t states_ = 0;
    std::vector<Edge> letters_;
    std::vector<std::pair<std::size_t, std::size_t>> eps_;
};

}  // namespace detail

/// Encodes #SAT as run counting on a v-tape automaton over {0, 1}.
///
/// A run has four phases, each scheduled left to right:
///   1. read 0 from a chosen subset F of the tapes, in tape order
///      (F is the set of false variables);
///   2. for each clause, for each literal occurrence of x_i in order, read 01
///      from tape i (x_i true) or 10 (x_i false); a clause with no true
///      literal has no way out;
///   3. read 1 from a subset of the tapes, in tape order;
///   4. pad: read 01 any number of times from each tape, in tape order.
/// The input fixes each tape to (01)^r, which forces phase 1 and 3 to use the
/// same subset and every occurrence guess to agree with it, so accepted runs
/// correspond to satisfying assignments one to one.
inline SatEncoding encode_sharp_sat(const CnfFormula& f,
                                    std::optional<std::size_t> repetitions = std::nullopt) {
    validate_cnf(f);
    const std::size_t k = f.variables;
    std::vector<std::size_t> occurrences(k, 0);
    for (const auto& clause : f.clauses)
        for (int lit : clause) ++occurrences[static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1];
    const std::size_t max_occ = *std::max_element(occurrences.begin(), occurrences.end());
    const std::size_t r = repetitions.value_or(max_occ + 1);
    if (r <= max_occ)
        throw InputError("encode_sharp_sat: a variable occurs " + std::to_string(max_occ) +
                         " times, repetitions must exceed that");

    detail::EpsilonBuilder g;
    const std::string zero = "0", one = "1";

    // phase 1: choose_false[t] = about to decide tape t
    std::vector<std::size_t> choose_false(k + 1);
    for (auto& q : choose_false) q = g.add_state();
    for (std::size_t t = 0; t < k; ++t) {
        g.letter(choose_false[t], t, zero, choose_false[t + 1]);
        g.epsilon(choose_false[t], choose_false[t + 1]);
    }

    // phase 2: at[o][sat] before occurrence o of the current clause
    std::size_t entry = choose_false[k];
    for (const auto& clause : f.clauses) {
        std::vector<std::array<std::size_t, 2>> at(clause.size() + 1);
        for (auto& pair : at) pair = {g.add_state(), g.add_state()};
        g.epsilon(entry, at[0][0]);
        for (std::size_t o = 0; o < clause.size(); ++o) {
            const int lit = clause[o];
            const std::size_t tape = static_cast<std::size_t>(lit < 0 ? -lit : lit) - 1;
            for (std::size_t sat = 0; sat < 2; ++sat) {
                // guess true: read 01
                const auto mid_true = g.add_state();
                g.letter(at[o][sat], tape, zero, mid_true);
                g.letter(mid_true, tape, one, at[o + 1][sat | (lit > 0 ? 1 : 0)]);
                // guess false: read 10
                const auto mid_false = g.add_state();
                g.letter(at[o][sat], tape, one, mid_false);
                g.letter(mid_false, tape, zero, at[o + 1][sat | (lit < 0 ? 1 : 0)]);
            }
        }
        entry = at[clause.size()][1];
    }

    // phase 3
    std::vector<std::size_t> close_false(k + 1);
    for (auto& q : close_false) q = g.add_state();
    g.epsilon(entry, close_false[0]);
    for (std::size_t t = 0; t < k; ++t) {
        g.letter(close_false[t], t, one, close_false[t + 1]);
        g.epsilon(close_false[t], close_false[t + 1]);
    }

    // phase 4
    std::vector<std::size_t> pad(k + 1);
    for (auto& q : pad) q = g.add_state();
    g.epsilon(close_false[k], pad[0]);
    for (std::size_t t = 0; t < k; ++t) {
        const auto mid = g.add_state();
        g.letter(pad[t], t, zero, mid);
        g.letter(mid, t, one, pad[t]);
        g.epsilon(pad[t], pad[t + 1]);
    }

    Alphabets sigma;
    sigma.letters.assign(k, {zero, one});
    SatEncoding out{g.finish(std::move(sigma), choose_false[0], pad[k]), TapeTuple::empty(k), r};
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < r; ++i) {
            out.input.words[t].push_back(zero);
            out.input.words[t].push_back(one);
        }
    return out;
}

}  // namespace mtaeq

#endif  // MTAEQ_ORACLE_HPP
