#ifndef MTAEQ_GRID_VECTOR_HPP
#define MTAEQ_GRID_VECTOR_HPP

// Sparse vectors indexed by (state, grid index), and the Kronecker-structured
// action of a superdiagonal letter matrix on one tape factor.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtaeq::ff {

/// Coefficient rings the grid machinery runs over (PrimeField, PolyRing).
template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a) {
    typename R::value_type;
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.one() } -> std::convertible_to<typename R::value_type>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.neg(a) } -> std::convertible_to<typename R::value_type>;
};

/// Flat code of a grid index (j_1, ..., j_k), 1 <= j_i <= n. Tape 0 is the
/// most significant digit, so ordering codes orders indices lexicographically.
using GridCode = std::uint64_t;

/// Dimensions of a grid vector: superdiagonal size n, tape count k, states.
class GridShape {
  public:
    GridShape(std::size_t n, std::size_t k, std::size_t states) : n_(n), k_(k), states_(states) {
        if (n == 0 || k == 0) throw std::invalid_argument("GridShape: n and k must be positive");
        stride_.assign(k, 1);
        std::uint64_t size = 1;
        for (std::size_t t = k; t-- > 0;) {
            stride_[t] = size;
            if (size > (std::uint64_t{1} << 62) / n)
                throw std::length_error("GridShape: n^k does not fit in 62 bits");
            size *= n;
        }
        size_ = size;
    }

    std::size_t n() const { return n_; }
    std::size_t tapes() const { return k_; }
    std::size_t states() const { return states_; }
    std::uint64_t grid_size() const { return size_; }

    /// Code of (1, ..., 1).
    GridCode origin() const { return 0; }

    GridCode encode(std::span<const std::size_t> coords) const {
        if (coords.size() != k_) throw std::invalid_argument("GridShape::encode: wrong arity");
        GridCode code = 0;
        for (std::size_t t = 0; t < k_; ++t) {
            if (coords[t] < 1 || coords[t] > n_)
                throw std::out_of_range("GridShape::encode: coordinate outside [1, n]");
            code += (coords[t] - 1) * stride_[t];
        }
        return code;
    }

    std::vector<std::size_t> decode(GridCode code) const {
        std::vector<std::size_t> coords(k_);
        for (std::size_t t = 0; t < k_; ++t) coords[t] = coordinate(code, t);
        return coords;
    }

    /// j_tape of the index, 1-based.
    std::size_t coordinate(GridCode code, std::size_t tape) const {
        return static_cast<std::size_t>((code / stride_[tape]) % n_) + 1;
    }

    /// Index with j_tape increased by one; caller ensures j_tape < n.
    GridCode advance(GridCode code, std::size_t tape) const { return code + stride_[tape]; }

    friend bool operator==(const GridShape& a, const GridShape& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.states_ == b.states_;
    }

  private:
    std::size_t n_;
    std::size_t k_;
    std::size_t states_;
    std::vector<std::uint64_t> stride_;
    std::uint64_t size_ = 1;
};

/// Position of one entry of a grid vector.
struct Cell {
    std::size_t state;
    GridCode grid;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Sparse vector over (state, grid index); absent entries are zero and zero
/// values are never stored.
template <class C>
class GridVector {
  public:
    explicit GridVector(GridShape shape) : shape_(std::move(shape)) {}

    const GridShape& shape() const { return shape_; }
    const std::map<Cell, C>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    const C* find(Cell cell) const {
        auto it = entries_.find(cell);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// entries[cell] += value.
    template <CoefficientRing R>
    void accumulate(const R& ring, Cell cell, const C& value) {
        if (ring.is_zero(value)) return;
        auto [it, inserted] = entries_.try_emplace(cell, value);
        if (inserted) return;
        it->second = ring.add(it->second, value);
        if (ring.is_zero(it->second)) entries_.erase(it);
    }

    template <CoefficientRing R>
    GridVector scaled(const R& ring, const C& factor) const {
        GridVector out(shape_);
        for (const auto& [cell, value] : entries_) out.accumulate(ring, cell, ring.mul(value, factor));
        return out;
    }

    template <CoefficientRing R>
    GridVector plus(const R& ring, const GridVector& other) const {
        GridVector out = *this;
        for (const auto& [cell, value] : other.entries_) out.accumulate(ring, cell, value);
        return out;
    }

    friend bool operator==(const GridVector& a, const GridVector& b) {
        return a.shape_ == b.shape_ && a.entries_ == b.entries_;
    }

  private:
    GridShape shape_;
    std::map<Cell, C> entries_;
};

/// v * (I x ... x N x ... x I) with N the n x n matrix whose only non-zero
/// entries are N[j][j+1] = superdiagonal[j-1], on tape factor `tape`.
/// Entries with j_tape = n are annihilated; states are untouched.
template <CoefficientRing R>
GridVector<typename R::value_type> apply_letter(
    const R& ring, const GridVector<typename R::value_type>& v, std::size_t tape,
    std::span<const typename R::value_type> superdiagonal) {
    const auto& shape = v.shape();
    if (tape >= shape.tapes())
        throw std::out_of_range("apply_letter: tape index " + std::to_string(tape) +
                                " out of range");
    if (superdiagonal.size() + 1 != shape.n())
        throw std::invalid_argument("apply_letter: superdiagonal must have n - 1 entries");
    GridVector<typename R::value_type> out(shape);
    for (const auto& [cell, value] : v.entries()) {
        const std::size_t j = shape.coordinate(cell.grid, tape);
        if (j >= shape.n()) continue;
        out.accumulate(ring, {cell.state, shape.advance(cell.grid, tape)},
                       ring.mul(value, superdiagonal[j - 1]));
    }
    return out;
}

}  // namespace mtaeq::ff

#endif  // MTAEQ_GRID_VECTOR_HPP
