#ifndef MTAEQ_EQUIVALENCE_HPP
#define MTAEQ_EQUIVALENCE_HPP

// Randomized multiplicity-equivalence check.
//
// A and B are equivalent iff alpha * Psi_n(M)^l * eta vanishes for
// l = 0, ..., n-1, n the total state count. Each level is a matrix of
// polynomials of degree l < n in the superdiagonal indeterminates; the
// checker evaluates them at a random point of a prime field. Equivalent
// inputs always pass; an inequivalent pair escapes one round with
// probability at most (n-1)/p.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtaeq/automaton.hpp"
#include "mtaeq/field.hpp"
#include "mtaeq/random.hpp"
#include "mtaeq/valuation.hpp"

namespace mtaeq {

enum class PrimeKind { fixed, random };

/// fixed: every round uses 2^61 - 1. random: each round draws its own prime
/// of `bits` bits from `seed`.
struct PrimePolicy {
    PrimeKind kind = PrimeKind::fixed;
    unsigned bits = 61;
    std::uint64_t seed = 0;
};

enum class CheckMode {
    first_row,    // track row (1, ..., 1) only
    full_matrix,  // track every row; slow, for cross-validation
};

struct CheckConfig {
    std::size_t rounds = 2;
    PrimePolicy prime;
    std::uint64_t seed = 0;
    CheckMode mode = CheckMode::first_row;
};

enum class VerdictKind { equivalent, inequivalent };

struct Verdict {
    VerdictKind kind = VerdictKind::equivalent;
    std::size_t n = 0;       // total state count
    std::size_t rounds = 0;  // rounds actually run
    std::vector<std::uint64_t> primes;
    double false_equivalence_bound = 0.0;  // meaningful for equivalent verdicts

    // inequivalent only
    std::optional<std::size_t> level;
    std::optional<TapeTuple> witness;
    std::optional<Multiplicity> count_a;
    std::optional<Multiplicity> count_b;

    bool equivalent() const { return kind == VerdictKind::equivalent; }
};

/// ((n-1)/p)^rounds; zero for n <= 1.
inline double false_equivalence_bound(std::size_t n, std::uint64_t p, std::size_t rounds) {
    if (p <= 2 * (n > 0 ? n - 1 : 0))
        throw std::invalid_argument("false_equivalence_bound: need p > 2(n-1)");
    if (n <= 1) return 0.0;
    return std::pow(static_cast<double>(n - 1) / static_cast<double>(p),
                    static_cast<double>(rounds));
}

/// Upper bound on |A(s) - B(s)| for |s| < n: 1 for two deterministic
/// automata, else (max out-degree * n)^(n-1).
inline Multiplicity coefficient_bound(const MultitapeAutomaton& a, const MultitapeAutomaton& b) {
    if (is_deterministic(a) && is_deterministic(b)) return 1;
    const std::size_t n = a.state_count + b.state_count;
    std::size_t degree = 1;
    for (const auto* m : {&a, &b})
        for (const auto& group : outgoing_edges(*m)) degree = std::max(degree, group.size());
    Multiplicity base = degree * n;
    return n == 0 ? Multiplicity(1) : boost::multiprecision::pow(base, static_cast<unsigned>(n - 1));
}

/// Prime used by each round. After the configured rounds, extra rounds with
/// distinct random primes are appended until the product of the distinct
/// primes exceeds coefficient_bound, so no non-zero coefficient can vanish
/// modulo every prime.
inline std::vector<std::uint64_t> round_primes(const MultitapeAutomaton& a,
                                               const MultitapeAutomaton& b,
                                               const CheckConfig& cfg) {
    if (cfg.rounds == 0) throw std::invalid_argument("CheckConfig: rounds must be at least 1");
    std::vector<std::uint64_t> primes;
    for (std::size_t r = 0; r < cfg.rounds; ++r) {
        if (cfg.prime.kind == PrimeKind::fixed)
            primes.push_back(ff::mersenne61);
        else
            primes.push_back(ff::choose_prime(cfg.prime.bits, derive_seed(cfg.prime.seed, r)));
    }

    const Multiplicity bound = coefficient_bound(a, b);
    std::set<std::uint64_t> distinct(primes.begin(), primes.end());
    Multiplicity product = 1;
    for (auto p : distinct) product *= p;
    const unsigned bits = cfg.prime.kind == PrimeKind::fixed ? 61 : cfg.prime.bits;
    for (std::uint64_t i = 0; product <= bound; ++i) {
        const auto p = ff::choose_prime(bits, derive_seed(cfg.seed ^ 0x5eedc0ffee5eedull, i));
        if (!distinct.insert(p).second) continue;
        primes.push_back(p);
        product *= p;
    }
    return primes;
}

/// First level at which the sampled valuation sees a non-zero weight, or
/// nullopt if all levels 0..n-1 vanish.
inline std::optional<std::size_t> check_round(const DifferenceSystem& sys, std::uint64_t prime,
                                              std::uint64_t seed, std::size_t round,
                                              CheckMode mode) {
    if (sys.n == 0) return std::nullopt;
    const ff::PrimeField field(prime);
    auto rng = make_stream(seed, stream_tag::valuation, round);
    const auto val = sample_valuation(sys, field, rng);
    const std::size_t max_level = sys.n - 1;

    if (mode == CheckMode::first_row) {
        auto hit = first_nonzero_level(field, sys, val, initial_vector(field, sys), max_level);
        if (!hit) return std::nullopt;
        return hit->level;
    }

    std::vector<GridVector<ff::FieldScalar>> rows;
    const auto shape = sys.shape();
    for (GridCode r = 0; r < shape.grid_size(); ++r) rows.push_back(initial_vector(field, sys, r));
    for (std::size_t l = 0; l <= max_level; ++l) {
        for (const auto& v : rows)
            if (!project(field, v, sys).empty()) return l;
        if (l == max_level) break;
        for (auto& v : rows) v = step(field, v, sys, val);
    }
    return std::nullopt;
}

/// Randomized equivalence check. Never reports equivalent inputs as
/// inequivalent. The reported level is the least first-non-zero level over
/// all rounds; no witness is attached (see extract_counterexample).
inline Verdict check_equivalence(const MultitapeAutomaton& a, const MultitapeAutomaton& b,
                                 const CheckConfig& cfg = {}) {
    const auto sys = build_difference_system(a, b);
    Verdict verdict;
    verdict.n = sys.n;
    verdict.primes = round_primes(a, b, cfg);
    verdict.rounds = verdict.primes.size();
    for (auto p : verdict.primes)
        if (p <= 2 * (sys.n > 0 ? sys.n - 1 : 0))
            throw InputError("prime " + std::to_string(p) + " too small for n = " +
                             std::to_string(sys.n));

    // Rounds are independent: each owns the stream (seed, round).
    for (std::size_t r = 0; r < verdict.primes.size(); ++r) {
        auto level = check_round(sys, verdict.primes[r], cfg.seed, r, cfg.mode);
        if (level && (!verdict.level || *level < *verdict.level)) verdict.level = level;
    }

    if (verdict.level) {
        verdict.kind = VerdictKind::inequivalent;
    } else {
        verdict.kind = VerdictKind::equivalent;
        double bound = sys.n <= 1 ? 0.0 : 1.0;
        for (auto p : verdict.primes) bound *= false_equivalence_bound(sys.n, p, 1);
        verdict.false_equivalence_bound = bound;
    }
    return verdict;
}

}  // namespace mtaeq

#endif  // MTAEQ_EQUIVALENCE_HPP
