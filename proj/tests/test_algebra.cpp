#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "mtaeq/field.hpp"
#include "mtaeq/grid_vector.hpp"
#include "mtaeq/unipoly.hpp"

namespace mtaeq::ff {
namespace {

TEST(PrimeField, Basics) {
    const PrimeField f;
    EXPECT_EQ(f.modulus(), mersenne61);
    EXPECT_EQ(f.add({mersenne61 - 1}, {1}), FieldScalar{0});
    EXPECT_EQ(f.sub({0}, {1}), FieldScalar{mersenne61 - 1});
    EXPECT_EQ(f.neg({0}), FieldScalar{0});
    EXPECT_EQ(f.from_int(-1), FieldScalar{mersenne61 - 1});

    const PrimeField f7(7);
    EXPECT_EQ(f7.inv({3}), FieldScalar{5});
    EXPECT_THROW(f7.inv({0}), std::domain_error);
    EXPECT_THROW(PrimeField(9), std::invalid_argument);
    EXPECT_THROW(PrimeField(2), std::invalid_argument);
}

TEST(PrimeField, InverseProperty) {
    const PrimeField f;
    auto rng = make_stream(11, stream_tag::fixtures, 0);
    for (int i = 0; i < 200; ++i) {
        auto x = f.random(rng);
        if (f.is_zero(x)) continue;
        EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
    }
}

TEST(Primes, MillerRabin) {
    // small range against trial division
    for (std::uint64_t n = 0; n < 5000; ++n) {
        bool trial = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
        ASSERT_EQ(is_prime(n), trial) << n;
    }
    EXPECT_TRUE(is_prime(mersenne61));
    EXPECT_FALSE(is_prime(mersenne61 - 2));
    EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
    EXPECT_TRUE(is_prime(18446744073709551557ull));  // largest 64-bit prime
}

TEST(Primes, ChoosePrime) {
    EXPECT_EQ(choose_prime(61), 2305843009213693951ull);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (unsigned bits : {16u, 32u, 61u}) {
            const auto p = choose_prime(bits, seed);
            EXPECT_TRUE(is_prime(p));
            EXPECT_GE(p, std::uint64_t{1} << bits);
            EXPECT_EQ(p, choose_prime(bits, seed));
        }
    }
    EXPECT_NE(choose_prime(61, 1), choose_prime(61, 2));
    EXPECT_THROW(choose_prime(8), std::invalid_argument);
}

TEST(UniPoly, Operations) {
    const PolyRing ring(PrimeField{}, 10);
    const auto one_plus_y = UniPoly({FieldScalar{1}, FieldScalar{1}});
    EXPECT_EQ(ring.mul(one_plus_y, one_plus_y).coeff(1), FieldScalar{2});
    EXPECT_TRUE(ring.mul(ring.monomial({1}, 6), ring.monomial({1}, 5)).is_zero());
    EXPECT_EQ(ring.mul(ring.monomial({1}, 6), ring.monomial({1}, 4)), ring.monomial({1}, 10));

    const auto g = ring.add(ring.monomial({3}, 2), ring.monomial({1}, 5));
    EXPECT_EQ(g.min_degree_nonzero(), 2u);
    EXPECT_FALSE(UniPoly{}.min_degree_nonzero().has_value());
    EXPECT_TRUE(ring.sub(g, g).is_zero());
    EXPECT_EQ(UniPoly({FieldScalar{0}, FieldScalar{0}}), UniPoly{});
}

TEST(UniPoly, RingLawsBelowCap) {
    const PrimeField f;
    const PolyRing ring(f, 64);
    auto rng = make_stream(5, stream_tag::fixtures, 1);
    auto random_poly = [&](std::size_t deg) {
        std::vector<FieldScalar> c(deg + 1);
        for (auto& x : c) x = f.random(rng);
        return UniPoly(c);
    };
    for (int i = 0; i < 50; ++i) {
        auto a = random_poly(10), b = random_poly(12), c = random_poly(8);
        EXPECT_EQ(ring.mul(a, b), ring.mul(b, a));
        EXPECT_EQ(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
        auto x = f.random(rng);
        EXPECT_EQ(ring.evaluate(ring.mul(a, b), x), f.mul(ring.evaluate(a, x), ring.evaluate(b, x)));
    }
}

GridVector<FieldScalar> random_grid(const PrimeField& f, const GridShape& shape,
                                    std::uint64_t seed) {
    GridVector<FieldScalar> v(shape);
    auto rng = make_stream(seed, stream_tag::fixtures, 2);
    for (std::size_t q = 0; q < shape.states(); ++q)
        for (GridCode g = 0; g < shape.grid_size(); ++g)
            if (rng() % 3 != 0) v.accumulate(f, {q, g}, f.random(rng));
    return v;
}

std::vector<FieldScalar> random_diag(const PrimeField& f, std::size_t n, std::uint64_t seed) {
    auto rng = make_stream(seed, stream_tag::fixtures, 3);
    std::vector<FieldScalar> d(n - 1);
    for (auto& x : d) x = f.random(rng);
    return d;
}

TEST(ApplyLetter, Examples) {
    const PrimeField f;
    const GridShape shape(2, 1, 1);
    GridVector<FieldScalar> v(shape);
    v.accumulate(f, {0, shape.origin()}, f.one());
    const std::vector<FieldScalar> c = {{42}};
    auto w = apply_letter(f, v, 0, std::span<const FieldScalar>(c));
    ASSERT_EQ(w.size(), 1u);
    const std::vector<std::size_t> two = {2};
    EXPECT_EQ(*w.find({0, shape.encode(two)}), FieldScalar{42});

    GridVector<FieldScalar> top(shape);
    top.accumulate(f, {0, shape.encode(two)}, f.one());
    EXPECT_TRUE(apply_letter(f, top, 0, std::span<const FieldScalar>(c)).empty());
    EXPECT_THROW(apply_letter(f, v, 1, std::span<const FieldScalar>(c)), std::out_of_range);
}

TEST(ApplyLetter, MatchesExplicitKroneckerProduct) {
    const PrimeField f;
    for (std::size_t n : {2u, 3u, 4u})
        for (std::size_t k : {1u, 2u, 3u})
            for (std::size_t tape = 0; tape < k; ++tape) {
                const GridShape shape(n, k, 1);
                auto v = random_grid(f, shape, n * 100 + k * 10 + tape);
                auto diag = random_diag(f, n, n + k + tape);
                auto fast = apply_letter(f, v, tape, std::span<const FieldScalar>(diag));
                std::vector<FieldScalar> dense(shape.grid_size());
                for (const auto& [cell, value] : v.entries()) dense[cell.grid] = value;
                auto expected = test::dense_kronecker_apply(f, dense, n, k, tape, diag);
                for (GridCode g = 0; g < shape.grid_size(); ++g) {
                    const auto* got = fast.find({0, g});
                    ASSERT_EQ(got ? *got : FieldScalar{0}, expected[g]);
                }
            }
}

TEST(ApplyLetter, Linear) {
    const PrimeField f;
    const GridShape shape(4, 2, 3);
    auto u = random_grid(f, shape, 1), v = random_grid(f, shape, 2);
    auto diag = random_diag(f, 4, 3);
    const std::span<const FieldScalar> d(diag);
    EXPECT_EQ(apply_letter(f, u.plus(f, v), 1, d),
              apply_letter(f, u, 1, d).plus(f, apply_letter(f, v, 1, d)));
    const FieldScalar c{123456789};
    EXPECT_EQ(apply_letter(f, u.scaled(f, c), 0, d), apply_letter(f, u, 0, d).scaled(f, c));
}

TEST(ApplyLetter, CrossTapeCommutes) {
    const PrimeField f;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const GridShape shape(4, 3, 2);
        auto v = random_grid(f, shape, seed);
        auto x = random_diag(f, 4, seed + 1000), y = random_diag(f, 4, seed + 2000);
        const std::span<const FieldScalar> dx(x), dy(y);
        EXPECT_EQ(apply_letter(f, apply_letter(f, v, 0, dx), 2, dy),
                  apply_letter(f, apply_letter(f, v, 2, dy), 0, dx));
    }
}

TEST(ApplyLetter, SameTapeDoesNotCommute) {
    // x = diag(1, 2), y = diag(3, 5) on n = 3: from (1) both orders reach (3)
    // with x1*y2 = 5 versus y1*x2 = 6.
    const PrimeField f;
    const GridShape shape(3, 1, 1);
    GridVector<FieldScalar> v(shape);
    v.accumulate(f, {0, shape.origin()}, f.one());
    const std::vector<FieldScalar> x = {{1}, {2}}, y = {{3}, {5}};
    auto xy = apply_letter(f, apply_letter(f, v, 0, std::span<const FieldScalar>(x)), 0,
                           std::span<const FieldScalar>(y));
    auto yx = apply_letter(f, apply_letter(f, v, 0, std::span<const FieldScalar>(y)), 0,
                           std::span<const FieldScalar>(x));
    const std::vector<std::size_t> three = {3};
    EXPECT_EQ(*xy.find({0, shape.encode(three)}), FieldScalar{5});
    EXPECT_EQ(*yx.find({0, shape.encode(three)}), FieldScalar{6});
    EXPECT_NE(xy, yx);
}

TEST(ApplyLetter, NilpotentOnEachTape) {
    const PrimeField f;
    for (std::size_t n : {1u, 2u, 3u, 5u}) {
        const GridShape shape(n, 2, 2);
        for (std::size_t tape = 0; tape < 2; ++tape) {
            auto v = random_grid(f, shape, n + tape);
            auto diag = random_diag(f, n, 7);
            for (std::size_t i = 0; i < n; ++i)
                v = apply_letter(f, v, tape, std::span<const FieldScalar>(diag));
            EXPECT_TRUE(v.empty()) << "n=" << n;
        }
    }
}

}  // namespace
}  // namespace mtaeq::ff
