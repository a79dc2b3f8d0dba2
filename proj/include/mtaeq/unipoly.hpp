#ifndef MTAEQ_UNIPOLY_HPP
#define MTAEQ_UNIPOLY_HPP

// Univariate polynomials over a prime field, truncated at a degree cap.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtaeq/field.hpp"

namespace mtaeq::ff {

/// Polynomial in y; coefficients()[d] is the coefficient of y^d. Trailing
/// zeros are never stored, so the zero polynomial has no coefficients.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<FieldScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(FieldScalar coeff, std::size_t degree) {
        std::vector<FieldScalar> c(degree + 1);
        c[degree] = coeff;
        return UniPoly(std::move(c));
    }

    const std::vector<FieldScalar>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    /// Degree, or nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }

    FieldScalar coeff(std::size_t d) const { return d < c_.size() ? c_[d] : FieldScalar{0}; }

    /// Least d with a non-zero coefficient, or nullopt for the zero polynomial.
    std::optional<std::size_t> min_degree_nonzero() const {
        for (std::size_t d = 0; d < c_.size(); ++d)
            if (c_[d].value != 0) return d;
        return std::nullopt;
    }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back().value == 0) c_.pop_back();
    }

    std::vector<FieldScalar> c_;

    friend class PolyRing;
};

/// Ring of polynomials over `field`, with every product truncated at degree
/// `cap`.
class PolyRing {
  public:
    using value_type = UniPoly;

    PolyRing(PrimeField field, std::size_t cap) : f_(field), cap_(cap) {}

    const PrimeField& field() const { return f_; }
    std::size_t cap() const { return cap_; }

    UniPoly zero() const { return {}; }
    UniPoly one() const { return UniPoly::monomial(f_.one(), 0); }
    bool is_zero(const UniPoly& a) const { return a.is_zero(); }
    UniPoly from_int(std::int64_t v) const { return UniPoly::monomial(f_.from_int(v), 0); }

    /// c * y^d, or zero when d exceeds the cap.
    UniPoly monomial(FieldScalar c, std::size_t d) const {
        if (d > cap_) return {};
        return UniPoly::monomial(c, d);
    }

    UniPoly add(const UniPoly& a, const UniPoly& b) const {
        const auto& big = a.c_.size() >= b.c_.size() ? a : b;
        const auto& small = a.c_.size() >= b.c_.size() ? b : a;
        std::vector<FieldScalar> c = big.c_;
        for (std::size_t d = 0; d < small.c_.size(); ++d) c[d] = f_.add(c[d], small.c_[d]);
        return UniPoly(std::move(c));
    }

    UniPoly neg(const UniPoly& a) const {
        std::vector<FieldScalar> c = a.c_;
        for (auto& x : c) x = f_.neg(x);
        return UniPoly(std::move(c));
    }

    UniPoly sub(const UniPoly& a, const UniPoly& b) const { return add(a, neg(b)); }

    /// Schoolbook product truncated at the cap; zero coefficients are skipped,
    /// so multiplying by a monomial costs one pass.
    UniPoly mul(const UniPoly& a, const UniPoly& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        const std::size_t len = std::min(a.c_.size() + b.c_.size() - 1, cap_ + 1);
        std::vector<FieldScalar> c(len);
        for (std::size_t i = 0; i < a.c_.size() && i < len; ++i) {
            if (a.c_[i].value == 0) continue;
            for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j) {
                if (b.c_[j].value == 0) continue;
                c[i + j] = f_.add(c[i + j], f_.mul(a.c_[i], b.c_[j]));
            }
        }
        return UniPoly(std::move(c));
    }

    /// Evaluates a at y = x (Horner).
    FieldScalar evaluate(const UniPoly& a, FieldScalar x) const {
        FieldScalar acc = f_.zero();
        for (auto it = a.c_.rbegin(); it != a.c_.rend(); ++it) acc = f_.add(f_.mul(acc, x), *it);
        return acc;
    }

  private:
    PrimeField f_;
    std::size_t cap_;
};

}  // namespace mtaeq::ff

#endif  // MTAEQ_UNIPOLY_HPP
