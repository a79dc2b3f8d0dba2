#include "mtaeq/witness.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mtaeq/oracle.hpp"

namespace mtaeq {
namespace {

using test::make;
using test::tuple;

TEST(ExtractCounterexample, EmptyTuple) {
    auto w = extract_counterexample(test::epsilon_only({{"a"}, {"b"}}), test::nothing({{"a"}, {"b"}}));
    EXPECT_EQ(w.tuple, tuple({"", ""}));
    EXPECT_EQ(w.a_count, 1);
    EXPECT_EQ(w.b_count, 0);
    EXPECT_EQ(w.level, 0u);
}

TEST(ExtractCounterexample, Diamond) {
    auto w = extract_counterexample(test::diamond(), test::path_ab());
    EXPECT_EQ(w.tuple, tuple({"a", "b"}));
    EXPECT_EQ(w.a_count, 2);
    EXPECT_EQ(w.b_count, 1);
    EXPECT_GE(w.attempts, 1u);
}

TEST(ExtractCounterexample, SingleLetters) {
    auto a = make({{"a", "b"}}, 2, {{0, 0, "a", 1}}, {0}, {1});
    auto b = make({{"a", "b"}}, 2, {{0, 0, "b", 1}}, {0}, {1});
    auto w = extract_counterexample(a, b);
    EXPECT_TRUE(w.tuple == tuple({"a"}) || w.tuple == tuple({"b"}));
    EXPECT_NE(w.a_count, w.b_count);
}

TEST(ExtractCounterexample, EquivalentInputsThrow) {
    try {
        extract_counterexample(test::path_ab(), test::path_ba());
        FAIL();
    } catch (const WitnessError& e) {
        EXPECT_FALSE(e.level());
    }
}

TEST(ExtractCounterexample, VerifiedOnRandomPairs) {
    std::size_t found = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t k = 1 + seed % 3;
        auto a = random_automaton(k, 3, std::vector<std::size_t>(k, 2), 0.3, seed);
        auto b = random_automaton(k, 3, std::vector<std::size_t>(k, 2), 0.3, seed + 300);
        CheckConfig cfg;
        cfg.seed = seed;
        if (check_equivalence(a, b, cfg).equivalent()) continue;
        auto w = extract_counterexample(a, b, cfg);
        EXPECT_NE(count_runs(a, w.tuple), count_runs(b, w.tuple));
        EXPECT_EQ(count_runs(a, w.tuple), w.a_count);
        EXPECT_LE(w.tuple.length(), 5u);
        ++found;
    }
    EXPECT_GT(found, 10u);
}

TEST(SampleWeights, Range) {
    auto rng = make_stream(0, stream_tag::weights, 0);
    auto w = sample_weights(50, rng);
    ASSERT_EQ(w.size(), 50u);
    for (auto x : w) {
        EXPECT_GE(x, 1u);
        EXPECT_LE(x, 100u);
    }
    EXPECT_TRUE(sample_weights(0, rng).empty());
}

// diamond vs path_ab with every weight 1 except one variable: the minimal
// monomial at (2, (2,2)) is t^a_{12} t^b_{12} and each of its variables is a
// member while the others are not.
TEST(MembershipTest, Examples) {
    auto sys = build_difference_system(test::diamond(), test::path_ab());
    const VariableLayout layout(sys.n, sys.alphabets);
    const std::size_t m = layout.count();
    const ff::PolyRing ring(ff::PrimeField{}, layout.positions() * 2 * m);
    WeightAssignment weights(m, 1);
    const auto val = symbolic_valuation(sys, weights, ring);
    const std::vector<std::size_t> coords = {2, 2};
    const MembershipContext ctx{sys, ring, val, 2, sys.shape().encode(coords), 2};
    EXPECT_EQ(symbolic_coefficient(ctx, val), ff::FieldScalar{1});
    EXPECT_TRUE(membership_test({0, 0, 1}, ctx));
    EXPECT_TRUE(membership_test({1, 0, 1}, ctx));
    EXPECT_FALSE(membership_test({0, 0, 2}, ctx));
    EXPECT_FALSE(membership_test({1, 0, 5}, ctx));
}

TEST(IsolateMonomial, UniformWeightsWithSingleMonomial) {
    auto sys = build_difference_system(test::diamond(), test::path_ab());
    const VariableLayout layout(sys.n, sys.alphabets);
    auto attempt = isolate_monomial(sys, ff::PrimeField{}, WeightAssignment(layout.count(), 3));
    EXPECT_EQ(attempt.level, 2u);
    ASSERT_TRUE(attempt.tuple);
    EXPECT_EQ(*attempt.tuple, tuple({"a", "b"}));
}

}  // namespace
}  // namespace mtaeq
