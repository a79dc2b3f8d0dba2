#include "mtaeq/oracle.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace mtaeq {
namespace {

using test::make;
using test::tuple;

TEST(EnumerateTuples, ShortestFirstThenTapeOrder) {
    Alphabets sigma{{{"a"}, {"b"}}};
    auto all = enumerate_tuples(sigma, 2);
    const std::vector<TapeTuple> expected = {tuple({"", ""}), tuple({"a", ""}), tuple({"", "b"}),
                                             tuple({"aa", ""}), tuple({"a", "b"}),
                                             tuple({"", "bb"})};
    EXPECT_EQ(all, expected);
}

TEST(EnumerateTuples, CountsAndUniqueness) {
    Alphabets sigma{{{"a", "b"}, {"x", "y"}}};
    EXPECT_EQ(count_tuples(sigma, 2), 17);
    auto all = enumerate_tuples(sigma, 4);
    EXPECT_EQ(Multiplicity(all.size()), count_tuples(sigma, 4));
    std::set<TapeTuple> unique(all.begin(), all.end());
    EXPECT_EQ(unique.size(), all.size());
    for (std::size_t i = 1; i < all.size(); ++i)
        EXPECT_LE(all[i - 1].length(), all[i].length());

    Alphabets three{{{"a"}, {"b", "c"}, {"d"}}};
    EXPECT_EQ(Multiplicity(enumerate_tuples(three, 3).size()), count_tuples(three, 3));
}

TEST(EnumerateTuples, StopsEarly) {
    std::size_t seen = 0;
    for_each_tuple(Alphabets{{{"a", "b"}}}, 10, [&](const TapeTuple&) { return ++seen < 5; });
    EXPECT_EQ(seen, 5u);
}

TEST(BruteForce, Examples) {
    auto v = brute_force_equivalence(test::diamond(), test::path_ab());
    ASSERT_FALSE(v.equivalent());
    EXPECT_EQ(*v.witness, tuple({"a", "b"}));
    EXPECT_EQ(v.level, 2u);
    EXPECT_EQ(v.count_a, 2);
    EXPECT_EQ(v.count_b, 1);

    EXPECT_TRUE(brute_force_equivalence(test::path_ab(), test::path_ba()).equivalent());
    auto eps = brute_force_equivalence(test::epsilon_only({{"a"}}), test::nothing({{"a"}}));
    EXPECT_EQ(*eps.witness, tuple({""}));
}

TEST(BruteForce, Budget) {
    auto a = random_automaton(2, 3, {2, 2}, 0.3, 1);
    EXPECT_THROW(brute_force_equivalence(a, a, 100), BudgetExceeded);
    EXPECT_TRUE(brute_force_equivalence(a, a).equivalent());
    auto big = random_automaton(3, 12, {2, 2, 2}, 0.1, 1);
    EXPECT_THROW(brute_force_equivalence(big, big), BudgetExceeded);
}

TEST(CountSatisfying, Examples) {
    EXPECT_EQ(count_satisfying({1, {{1}}}), 1);
    EXPECT_EQ(count_satisfying({2, {{1, 2}}}), 3);
    EXPECT_EQ(count_satisfying({1, {{1}, {-1}}}), 0);
    EXPECT_EQ(count_satisfying({3, {}}), 8);
    EXPECT_THROW(count_satisfying({2, {{3}}}), InputError);
    EXPECT_THROW(count_satisfying({2, {{}}}), InputError);
}

TEST(EncodeSharpSat, Examples) {
    for (const CnfFormula& f : {CnfFormula{1, {{1}}}, CnfFormula{2, {{1, 2}}},
                                CnfFormula{1, {{1}, {-1}}}, CnfFormula{3, {{1, 2}, {-1, 3}}},
                                CnfFormula{2, {{1, -1}, {2}}}}) {
        auto enc = encode_sharp_sat(f);
        EXPECT_TRUE(validate(enc.automaton).empty());
        EXPECT_EQ(count_runs(enc.automaton, enc.input), count_satisfying(f));
    }
}

TEST(EncodeSharpSat, Repetitions) {
    const CnfFormula f{2, {{1, 2}, {1, -2}}};
    EXPECT_THROW(encode_sharp_sat(f, 2), InputError);
    for (std::size_t r : {3u, 4u, 6u}) {
        auto enc = encode_sharp_sat(f, r);
        EXPECT_EQ(enc.input.words[0].size(), 2 * r);
        EXPECT_EQ(count_runs(enc.automaton, enc.input), 2);
    }
}

TEST(EncodeSharpSat, RandomFormulas) {
    auto rng = make_stream(17, stream_tag::fixtures, 0);
    for (int i = 0; i < 40; ++i) {
        CnfFormula f;
        f.variables = 1 + rng() % 4;
        const std::size_t clauses = 1 + rng() % 4;
        for (std::size_t c = 0; c < clauses; ++c) {
            std::vector<int> clause;
            const std::size_t width = 1 + rng() % 3;
            for (std::size_t j = 0; j < width; ++j) {
                const int var = 1 + static_cast<int>(rng() % f.variables);
                clause.push_back(rng() % 2 ? var : -var);
            }
            f.clauses.push_back(clause);
        }
        auto enc = encode_sharp_sat(f);
        ASSERT_EQ(count_runs(enc.automaton, enc.input), count_satisfying(f)) << "formula " << i;
    }
}

}  // namespace
}  // namespace mtaeq
