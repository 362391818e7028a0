#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qgec/bitvec.hpp"
#include "qgec/css_code.hpp"
#include "qgec/gf2.hpp"

namespace qgec::golay {

inline constexpr std::size_t kLength = 23;
inline constexpr std::size_t kChecks = 11;
inline constexpr std::size_t kDistance = 7;

enum class Label { h1, h2, h3 };

inline std::string_view to_string(Label l) {
  switch (l) {
    case Label::h1: return "h1";
    case Label::h2: return "h2";
    case Label::h3: return "h3";
  }
  return "?";
}

inline Label parse_label(std::string_view s) {
  if (s == "h1") return Label::h1;
  if (s == "h2") return Label::h2;
  if (s == "h3") return Label::h3;
  throw std::invalid_argument("unknown Golay generator polynomial '" + std::string(s) + "' (expected h1, h2 or h3)");
}

struct GeneratorPolynomial {
  Label label;
  BitVec coefficients;  // bit i = coefficient of x^i

  std::size_t weight() const { return coefficients.weight(); }
  std::size_t degree() const {
    for (std::size_t i = coefficients.size(); i-- > 0;) {
      if (coefficients.get(i)) return i;
    }
    return 0;
  }
};

inline GeneratorPolynomial polynomial(Label l) {
  switch (l) {
    case Label::h1:
      return {l, BitVec::from_indices(kLength, {12, 10, 7, 4, 3, 2, 1, 0})};
    case Label::h2:
      return {l, BitVec::from_indices(kLength, {16, 14, 12, 11, 10, 8, 6, 5, 3, 2, 1, 0})};
    case Label::h3:
      return {l, BitVec::from_indices(kLength, {21, 18, 17, 16, 15, 14, 13, 12, 11, 10, 8, 7, 5, 3, 1, 0})};
  }
  throw std::invalid_argument("bad Golay label");
}

/// Row k is the coefficient vector rotated right by k.
inline BitMat circular_shifts(const GeneratorPolynomial& p) {
  const std::size_t n = p.coefficients.size();
  if (n != kLength) throw DimensionError("circular_shifts: polynomial must have 23 coefficients");
  BitMat m(0, n);
  for (std::size_t k = 0; k < n; ++k) m.push_row(p.coefficients.rotated_right(k));
  return m;
}

/// Published parity-check rows, column 0 = coefficient of x^0.
inline BitMat published_matrix(Label l) {
  switch (l) {
    case Label::h1:
      return BitMat::from_strings({
          "11111001001010000000000",
          "01111100100101000000000",
          "00111110010010100000000",
          "00011111001001010000000",
          "00001111100100101000000",
          "00000111110010010100000",
          "00000011111001001010000",
          "00000001111100100101000",
          "00000000111110010010100",
          "00000000011111001001010",
          "00000000001111100100101",
      });
    case Label::h2:
      return BitMat::from_strings({
          "10111011111101100000000",
          "01011101111110110000000",
          "11110110101110101000000",
          "11101001100111111000000",
          "00101110111111011000000",
          "11111110111000010100000",
          "11111010110011001010000",
          "11111000110110100101000",
          "11111001110100010010100",
          "11111001010101001001010",
          "11111001000101100100101",
      });
    case Label::h3:
      return BitMat::from_strings({
          "10111111110110111110000",
          "11100111111111110101000",
          "11111011001111101111000",
          "01011111111011011111000",
          "01110011111111111010100",
          "11011111011101110110100",
          "11101110101011111110100",
          "01111101100111110111100",
          "10111010111111010111100",
          "11111110100111011101010",
          "11010111111010111100101",
      });
  }
  throw std::invalid_argument("bad Golay label");
}

struct ParityCheckMatrix {
  Label source;
  BitMat matrix;
};

/// Checks an 11x23 candidate against the generator polynomial of `l`:
/// rank 11, H * H^T = 0, and every row in the span of the circular shifts.
/// Throws CodeConstructionError naming the first violated condition.
inline void check_parity_matrix(Label l, const BitMat& h) {
  const std::string tag = "golay:" + std::string(to_string(l));
  if (h.rows() != kChecks || h.cols() != kLength) throw CodeConstructionError(tag + ": matrix is not 11x23");
  if (gf2::rank(h) != kChecks) throw CodeConstructionError(tag + ": rank != 11");
  if (!gf2::mat_mul(h, h.transpose()).is_zero()) {
    throw CodeConstructionError(tag + ": H * H^T != 0 (not self-orthogonal)");
  }
  const gf2::RowSpace cyclic(circular_shifts(polynomial(l)));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    if (!cyclic.contains(h.row(r))) {
      throw CodeConstructionError(tag + ": row " + std::to_string(r) +
                                  " is not in the span of the polynomial's circular shifts");
    }
  }
}

inline ParityCheckMatrix build_parity_matrix(Label l) {
  BitMat h = published_matrix(l);
  check_parity_matrix(l, h);
  return {l, std::move(h)};
}

/// Minimum nonzero weight over ker(H), by enumerating all of it.
inline std::size_t kernel_min_weight(const BitMat& h) {
  std::size_t best = h.cols() + 1;
  gf2::for_each_in_span(gf2::kernel_basis(h), [&](const BitVec& v) {
    const std::size_t w = v.weight();
    if (w != 0 && w < best) best = w;
  });
  return best;
}

/// [[23,1,7]] CSS code with Hx = Hz = H and all-ones logical operators.
inline CssCode build_golay_css(Label l) {
  const std::string tag = "golay:" + std::string(to_string(l));
  const ParityCheckMatrix pcm = build_parity_matrix(l);
  const BitMat& h = pcm.matrix;

  BitVec ones(kLength);
  for (std::size_t i = 0; i < kLength; ++i) ones.set(i);
  if (!gf2::mat_vec_mul(h, ones).is_zero()) throw CodeConstructionError(tag + ": all-ones is not in ker(H)");
  if (gf2::solve_in_rowspace(h, ones)) throw CodeConstructionError(tag + ": all-ones lies in rowspace(H)");
  if (const auto d = kernel_min_weight(h); d != kDistance) {
    throw CodeConstructionError(tag + ": min weight of ker(H) is " + std::to_string(d) + ", expected 7");
  }

  return CssCode(tag, h, h, {PauliError(ones, BitVec(kLength))}, {PauliError(BitVec(kLength), ones)});
}

}  // namespace qgec::golay
