#ifndef MTAEQ_FIELD_HPP
#define MTAEQ_FIELD_HPP

// Prime-field scalars and prime selection.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "mtaeq/random.hpp"

namespace mtaeq::ff {

/// 2^61 - 1.
inline constexpr std::uint64_t mersenne61 = (std::uint64_t{1} << 61) - 1;

/// Residue in [0, p) of some prime field.
struct FieldScalar {
    std::uint64_t value = 0;

    friend bool operator==(FieldScalar, FieldScalar) = default;
    friend auto operator<=>(FieldScalar, FieldScalar) = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e != 0) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is known to be a deterministic witness set below 2^64.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = detail::powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Arithmetic modulo an odd prime p < 2^63.
class PrimeField {
  public:
    using value_type = FieldScalar;

    explicit PrimeField(std::uint64_t p = mersenne61) : p_(p) {
        if (p < 3 || p >= (std::uint64_t{1} << 63) || !is_prime(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                        " is not an odd prime below 2^63");
    }

    std::uint64_t modulus() const { return p_; }

    FieldScalar zero() const { return {0}; }
    FieldScalar one() const { return {1}; }
    bool is_zero(FieldScalar a) const { return a.value == 0; }

    FieldScalar from_int(std::int64_t v) const {
        const auto m = static_cast<std::int64_t>(p_);
        std::int64_t r = v % m;
        if (r < 0) r += m;
        return {static_cast<std::uint64_t>(r)};
    }

    FieldScalar add(FieldScalar a, FieldScalar b) const {
        std::uint64_t s = a.value + b.value;  // p < 2^63, no overflow
        return {s >= p_ ? s - p_ : s};
    }
    FieldScalar sub(FieldScalar a, FieldScalar b) const {
        return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
    }
    FieldScalar neg(FieldScalar a) const { return {a.value == 0 ? 0 : p_ - a.value}; }
    FieldScalar mul(FieldScalar a, FieldScalar b) const {
        return {detail::mulmod(a.value, b.value, p_)};
    }
    FieldScalar pow(FieldScalar a, std::uint64_t e) const { return {detail::powmod(a.value, e, p_)}; }

    /// Multiplicative inverse via Fermat; throws on zero.
    FieldScalar inv(FieldScalar a) const {
        if (a.value == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
        return pow(a, p_ - 2);
    }

    /// Uniform element of [0, p).
    template <class Gen>
    FieldScalar random(Gen& gen) const {
        std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
        return {dist(gen)};
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  private:
    std::uint64_t p_;
};

/// Prime >= 2^min_bits. Without a seed and for min_bits <= 61 this is
/// 2^61 - 1; with a seed, the first prime at or after a pseudo-random point
/// of [2^min_bits, 2^(min_bits+1)).
inline std::uint64_t choose_prime(unsigned min_bits, std::optional<std::uint64_t> seed = {}) {
    if (min_bits < 16 || min_bits > 61)
        throw std::invalid_argument("choose_prime: min_bits must lie in [16, 61]");
    if (!seed) return mersenne61;
    const std::uint64_t lo = std::uint64_t{1} << min_bits;
    auto rng = make_stream(*seed, stream_tag::prime, min_bits);
    std::uniform_int_distribution<std::uint64_t> dist(lo, 2 * lo - 1);
    std::uint64_t candidate = dist(rng) | 1;
    // stay inside the window
    while (!is_prime(candidate)) {
        candidate += 2;
        if (candidate >= 2 * lo) candidate = lo + 1;
    }
    return candidate;
}

}  // namespace mtaeq::ff

#endif  // MTAEQ_FIELD_HPP
