#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgec/bitvec.hpp"

namespace qgec::gf2 {

/// Matrix-vector product: bit i of the result is the parity of row_i AND v.
inline BitVec mat_vec_mul(const BitMat& m, const BitVec& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("mat_vec_mul: matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                         std::to_string(v.size()) + " bits");
  }
  BitVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i).dot(v)) out.set(i);
  }
  return out;
}

/// Linear combination sum_i c_i * row_i (that is, c^T M).
inline BitVec mat_combine(const BitVec& coeffs, const BitMat& m) {
  if (coeffs.size() != m.rows()) throw DimensionError("mat_combine: coefficient count != rows");
  BitVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (coeffs.get(i)) out ^= m.row(i);
  }
  return out;
}

/// A * B over GF(2).
inline BitMat mat_mul(const BitMat& a, const BitMat& b) {
  if (a.cols() != b.rows()) throw DimensionError("mat_mul: inner dimensions differ");
  BitMat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.row(i) = mat_combine(a.row(i), b);
  return out;
}

/// Reduced row echelon form of a matrix, remembering how each reduced row
/// was assembled from the original rows.
///
/// Built once and queried many times; membership tests in the Monte Carlo
/// loop go through here rather than re-running elimination.
class RowSpace {
 public:
  RowSpace() = default;

  explicit RowSpace(const BitMat& m) : cols_(m.cols()), source_rows_(m.rows()) {
    std::vector<BitVec> rows = m.row_list();
    std::vector<BitVec> combos;
    combos.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      BitVec c(source_rows_);
      c.set(i);
      combos.push_back(std::move(c));
    }

    std::size_t next = 0;
    for (std::size_t col = 0; col < cols_ && next < rows.size(); ++col) {
      std::size_t pivot = next;
      while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[pivot], rows[next]);
      std::swap(combos[pivot], combos[next]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r != next && rows[r].get(col)) {
          rows[r] ^= rows[next];
          combos[r] ^= combos[next];
        }
      }
      pivots_.push_back(col);
      ++next;
    }
    rows.resize(next);
    combos.resize(next);
    basis_ = std::move(rows);
    combos_ = std::move(combos);
  }

  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<BitVec>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Coefficients c over the original rows with c^T M = v, if any.
  std::optional<BitVec> solve(const BitVec& v) const {
    if (v.size() != cols_) throw DimensionError("solve_in_rowspace: vector length != columns");
    BitVec rem = v;
    BitVec coeffs(source_rows_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (rem.get(pivots_[k])) {
        rem ^= basis_[k];
        coeffs ^= combos_[k];
      }
    }
    if (!rem.is_zero()) return std::nullopt;
    return coeffs;
  }

  bool contains(const BitVec& v) const {
    if (v.size() != cols_) throw DimensionError("RowSpace::contains: vector length != columns");
    BitVec rem = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (rem.get(pivots_[k])) rem ^= basis_[k];
    }
    return rem.is_zero();
  }

 private:
  std::size_t cols_ = 0;
  std::size_t source_rows_ = 0;
  std::vector<BitVec> basis_;
  std::vector<BitVec> combos_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const BitMat& m) { return RowSpace(m).rank(); }

inline std::optional<BitVec> solve_in_rowspace(const BitMat& m, const BitVec& v) {
  if (m.cols() != v.size()) throw DimensionError("solve_in_rowspace: vector length != columns");
  return RowSpace(m).solve(v);
}

/// Basis of {v : M v = 0}, one free column per basis row.
inline BitMat kernel_basis(const BitMat& m) {
  const RowSpace rs(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : rs.pivots()) is_pivot[p] = true;

  BitMat out(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVec v(n);
    v.set(free);
    // Reduced rows have a single pivot each, so the pivot variable equals the
    // free column's entry in that row.
    for (std::size_t k = 0; k < rs.rank(); ++k) {
      if (rs.basis()[k].get(free)) v.set(rs.pivots()[k]);
    }
    out.push_row(std::move(v));
  }
  return out;
}

/// Largest rank for which span enumeration is permitted.
inline constexpr std::size_t kMaxSpanRank = 24;

class SpanTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Visits every vector of rowspace(M) exactly once, zero first, in Gray-code
/// order over a reduced basis.
template <typename Visitor>
void for_each_in_span(const BitMat& m, Visitor&& visit) {
  const RowSpace rs(m);
  const std::size_t r = rs.rank();
  if (r > kMaxSpanRank) {
    throw SpanTooLarge("enumerate_span: rank " + std::to_string(r) + " exceeds limit " +
                       std::to_string(kMaxSpanRank));
  }
  BitVec cur(m.cols());
  visit(static_cast<const BitVec&>(cur));
  const std::uint64_t total = std::uint64_t{1} << r;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur ^= rs.basis()[static_cast<std::size_t>(std::countr_zero(i))];
    visit(static_cast<const BitVec&>(cur));
  }
}

inline std::vector<BitVec> enumerate_span(const BitMat& m) {
  std::vector<BitVec> out;
  for_each_in_span(m, [&](const BitVec& v) { out.push_back(v); });
  return out;
}

}  // namespace qgec::gf2
