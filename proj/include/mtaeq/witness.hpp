#ifndef MTAEQ_WITNESS_HPP
#define MTAEQ_WITNESS_HPP

// Counterexample extraction by weight isolation.
//
// Every variable v gets a random weight w_v in [1, 2m] and is replaced by
// y^{w_v}. With probability at least 1/2 the polynomial at the first non-zero
// (level, column) has a unique monomial of minimum weight d, whose
// coefficient A(s) - B(s) survives as the coefficient of y^d. Zeroing one
// variable at a time and watching that coefficient recovers the monomial's
// variables, which decode to s. The result is always checked by exact run
// counting, so a failed isolation only costs another attempt.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtaeq/automaton.hpp"
#include "mtaeq/equivalence.hpp"
#include "mtaeq/random.hpp"
#include "mtaeq/unipoly.hpp"
#include "mtaeq/valuation.hpp"

namespace mtaeq {

/// Weight per variable, indexed like VariableLayout, each in [1, 2m].
using WeightAssignment = std::vector<std::size_t>;

struct WitnessOptions {
    std::size_t max_attempts = 20;
};

struct WitnessResult {
    TapeTuple tuple;
    Multiplicity a_count;
    Multiplicity b_count;
    std::size_t attempts = 0;
    std::size_t level = 0;
};

/// Extraction failure. `level` is set when the inputs are known to be
/// inequivalent but no witness was verified within the attempt budget.
class WitnessError : public std::runtime_error {
  public:
    WitnessError(const std::string& what, std::optional<std::size_t> level)
        : std::runtime_error(what), level_(level) {}

    std::optional<std::size_t> level() const { return level_; }

  private:
    std::optional<std::size_t> level_;
};

template <class Gen>
WeightAssignment sample_weights(std::size_t m, Gen& rng) {
    WeightAssignment w(m);
    if (m == 0) return w;
    std::uniform_int_distribution<std::size_t> dist(1, 2 * m);
    for (auto& x : w) x = dist(rng);
    return w;
}

/// A symbolic run that found a non-zero coefficient of y^degree at
/// (level, column).
struct MembershipContext {
    const DifferenceSystem& sys;
    const ff::PolyRing& ring;
    const Valuation<ff::UniPoly>& valuation;
    std::size_t level;
    GridCode column;
    std::size_t degree;
};

/// Coefficient of y^degree at (level, column) under `val`.
inline ff::FieldScalar symbolic_coefficient(const MembershipContext& ctx,
                                            const Valuation<ff::UniPoly>& val) {
    auto v = initial_vector(ctx.ring, ctx.sys);
    for (std::size_t l = 0; l < ctx.level && !v.empty(); ++l) v = step(ctx.ring, v, ctx.sys, val);
    const auto row = project(ctx.ring, v, ctx.sys);
    auto it = row.find(ctx.column);
    return it == row.end() ? ff::FieldScalar{0} : it->second.coeff(ctx.degree);
}

/// True iff zeroing `var` kills the tracked coefficient. Variables at
/// positions the column cannot reach are never members.
inline bool membership_test(const VariableId& var, const MembershipContext& ctx) {
    const auto shape = ctx.sys.shape();
    if (var.tape >= shape.tapes() || var.position >= shape.coordinate(ctx.column, var.tape))
        return false;
    Valuation<ff::UniPoly> zeroed = ctx.valuation;
    zeroed.set(var, ctx.ring.zero());
    return ctx.ring.field().is_zero(symbolic_coefficient(ctx, zeroed));
}

/// Outcome of one isolation attempt, before exact verification.
struct IsolationAttempt {
    std::optional<std::size_t> level;  // unset if the weighted run saw no non-zero level
    std::optional<TapeTuple> tuple;    // unset if membership did not decode
};

inline IsolationAttempt isolate_monomial(const DifferenceSystem& sys, const ff::PrimeField& field,
                                         const WeightAssignment& weights) {
    IsolationAttempt out;
    if (sys.n == 0) return out;
    const VariableLayout layout(sys.n, sys.alphabets);
    const std::size_t m = layout.count();
    const ff::PolyRing ring(field, layout.positions() * 2 * m);
    const auto val = symbolic_valuation(sys, weights, ring);

    auto hit = first_nonzero_level(ring, sys, val, initial_vector(ring, sys), sys.n - 1);
    if (!hit) return out;
    out.level = hit->level;
    // smallest column, lexicographically
    const auto& [column, poly] = *hit->row.begin();
    const MembershipContext ctx{sys, ring, val, hit->level, column, *poly.min_degree_nonzero()};

    std::set<VariableId> members;
    const auto shape = sys.shape();
    for (std::size_t t = 0; t < sys.tapes(); ++t) {
        const std::size_t reach = shape.coordinate(column, t);  // positions 1..reach-1
        for (std::size_t j = 1; j < reach; ++j)
            for (std::size_t x = 0; x < sys.alphabets.size(t); ++x) {
                const VariableId var{t, x, j};
                if (membership_test(var, ctx)) members.insert(var);
            }
    }
    try {
        out.tuple = decode_monomial(members, sys.alphabets, sys.n);
    } catch (const InvalidMonomial&) {
        // minimum not isolated; the caller retries with fresh weights
    }
    return out;
}

/// Las Vegas search for s with A(s) != B(s), |s| <= n-1. Throws WitnessError
/// when the inputs are equivalent or the attempt budget runs out.
inline WitnessResult extract_counterexample(const MultitapeAutomaton& a,
                                            const MultitapeAutomaton& b,
                                            const CheckConfig& cfg = {},
                                            const WitnessOptions& opts = {}) {
    const auto verdict = check_equivalence(a, b, cfg);
    if (verdict.equivalent()) throw WitnessError("no distinguishing level found", std::nullopt);

    const auto sys = build_difference_system(a, b);
    const RunCounter count_a(a);
    const RunCounter count_b(b);
    const VariableLayout layout(sys.n, sys.alphabets);
    for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
        const ff::PrimeField field(verdict.primes[attempt % verdict.primes.size()]);
        auto rng = make_stream(cfg.seed, stream_tag::weights, attempt);
        const auto weights = sample_weights(layout.count(), rng);
        const auto trial = isolate_monomial(sys, field, weights);
        if (!trial.tuple) continue;
        auto ca = count_a(*trial.tuple);
        auto cb = count_b(*trial.tuple);
        if (ca == cb) continue;
        return WitnessResult{*trial.tuple, std::move(ca), std::move(cb), attempt + 1,
                             *trial.level};
    }
    throw WitnessError("inequivalent at level " + std::to_string(*verdict.level) +
                           ", but no witness verified after " +
                           std::to_string(opts.max_attempts) + " attempts",
                       verdict.level);
}

}  // namespace mtaeq

#endif  // MTAEQ_WITNESS_HPP
