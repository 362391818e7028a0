#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qgec/golay.hpp"

using namespace qgec;
using golay::Label;

namespace {

constexpr Label kLabels[] = {Label::h1, Label::h2, Label::h3};

const std::vector<int>& oracle_poly(Label l) {
  static const std::vector<int> h1 = oracle::poly({12, 10, 7, 4, 3, 2, 1, 0});
  static const std::vector<int> h2 = oracle::poly({16, 14, 12, 11, 10, 8, 6, 5, 3, 2, 1, 0});
  static const std::vector<int> h3 = oracle::poly({21, 18, 17, 16, 15, 14, 13, 12, 11, 10, 8, 7, 5, 3, 1, 0});
  return l == Label::h1 ? h1 : l == Label::h2 ? h2 : h3;
}

}  // namespace

TEST(GeneratorPolynomial, WeightsAndDegrees) {
  EXPECT_EQ(golay::polynomial(Label::h1).weight(), 8U);
  EXPECT_EQ(golay::polynomial(Label::h2).weight(), 12U);
  EXPECT_EQ(golay::polynomial(Label::h3).weight(), 16U);
  EXPECT_EQ(golay::polynomial(Label::h1).degree(), 12U);
  EXPECT_EQ(golay::polynomial(Label::h2).degree(), 16U);
  EXPECT_EQ(golay::polynomial(Label::h3).degree(), 21U);
}

TEST(CircularShifts, UnitPolynomialGivesIdentity) {
  const golay::GeneratorPolynomial one{Label::h1, BitVec::from_indices(23, {0})};
  EXPECT_EQ(golay::circular_shifts(one), BitMat::identity(23));
}

TEST(CircularShifts, H1FirstRowAndRank) {
  const auto shifts = golay::circular_shifts(golay::polynomial(Label::h1));
  EXPECT_EQ(shifts.row(0).to_string(), "11111001001010000000000");
  EXPECT_EQ(gf2::rank(shifts), 11U);
  EXPECT_EQ(oracle::rank(oracle::shifts(oracle_poly(Label::h1), 23)), 11U);
  for (std::size_t k = 0; k < 23; ++k) {
    EXPECT_EQ(shifts.row(k).to_string(), oracle::row_string(oracle::shifts(oracle_poly(Label::h1), 23)[k]));
  }
}

TEST(CircularShifts, RejectsWrongLength) {
  EXPECT_THROW(golay::circular_shifts({Label::h1, BitVec(22)}), DimensionError);
}

TEST(ParityMatrix, H1IsElevenConsecutiveShifts) {
  // H1 as printed is exactly the first 11 cyclic shifts of h1.
  const auto expected = oracle::shifts(oracle_poly(Label::h1), 11);
  const auto h = golay::build_parity_matrix(Label::h1).matrix;
  ASSERT_EQ(h.rows(), 11U);
  for (std::size_t r = 0; r < 11; ++r) EXPECT_EQ(h.row(r).to_string(), oracle::row_string(expected[r]));
}

TEST(ParityMatrix, H2FirstRow) {
  EXPECT_EQ(golay::build_parity_matrix(Label::h2).matrix.row(0).to_string(), "10111011111101100000000");
}

TEST(ParityMatrix, RowWeightsMatchPolynomialWeights) {
  for (auto l : kLabels) {
    const auto h = golay::build_parity_matrix(l).matrix;
    for (const auto& row : h.row_list()) EXPECT_EQ(row.weight(), golay::polynomial(l).weight());
  }
}

TEST(ParityMatrix, RowsLieInCyclicSpan) {
  for (auto l : kLabels) {
    const auto h = golay::build_parity_matrix(l).matrix;
    const auto shifts = golay::circular_shifts(golay::polynomial(l));
    for (std::size_t r = 0; r < h.rows(); ++r) {
      EXPECT_TRUE(gf2::solve_in_rowspace(shifts, h.row(r)).has_value()) << golay::to_string(l) << " row " << r;
    }
    // Independent route: appending the rows to the shifts does not raise the rank.
    auto grid = oracle::shifts(oracle_poly(l), 23);
    for (const auto& row : oracle::grid_from(h)) grid.push_back(row);
    EXPECT_EQ(oracle::rank(grid), 11U);
  }
}

TEST(ParityMatrix, SelfOrthogonalAndFullRank) {
  for (auto l : kLabels) {
    const auto g = oracle::grid_from(golay::published_matrix(l));
    EXPECT_EQ(oracle::rank(g), 11U);
    for (const auto& row : oracle::gram(g)) {
      for (int x : row) EXPECT_EQ(x, 0);
    }
  }
}

TEST(ParityMatrix, ValidationNamesTheViolatedInvariant) {
  BitMat h = golay::published_matrix(Label::h1);

  BitMat dependent = h;
  dependent.row(10) = dependent.row(0) ^ dependent.row(1);
  try {
    golay::check_parity_matrix(Label::h1, dependent);
    FAIL() << "expected a rank failure";
  } catch (const CodeConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("rank"), std::string::npos);
  }

  BitMat foreign = h;
  foreign.row(4).flip(22);
  foreign.row(4).flip(21);
  try {
    golay::check_parity_matrix(Label::h1, foreign);
    FAIL() << "expected a failure";
  } catch (const CodeConstructionError& e) {
    const std::string what = e.what();
    EXPECT_TRUE(what.find("H * H^T") != std::string::npos || what.find("circular shifts") != std::string::npos)
        << what;
  }

  // Full rank but outside the cyclic span (and not self-orthogonal).
  BitMat identity_rows(0, 23);
  for (std::size_t i = 0; i < 11; ++i) identity_rows.push_row(BitVec::from_indices(23, {i}));
  EXPECT_THROW(golay::check_parity_matrix(Label::h1, identity_rows), CodeConstructionError);
  EXPECT_THROW(golay::check_parity_matrix(Label::h1, BitMat(10, 23)), CodeConstructionError);
}

TEST(GolayCss, StructureOfEachCode) {
  for (auto l : kLabels) {
    const auto code = golay::build_golay_css(l);
    EXPECT_EQ(code.n(), 23U);
    EXPECT_EQ(code.k(), 1U);
    EXPECT_EQ(code.stabilizer_count(), 22U);
    EXPECT_EQ(code.syndrome_bits(), 22U);
    EXPECT_EQ(code.hx(), code.hz());
    EXPECT_EQ(code.logical_x()[0].x().weight(), 23U);
    EXPECT_EQ(code.logical_z()[0].z().weight(), 23U);
    EXPECT_EQ(code.name(), "golay:" + std::string(golay::to_string(l)));
  }
}

TEST(GolayCss, KernelMinWeightIsSevenByExhaustiveScan) {
  for (auto l : kLabels) {
    const auto h = golay::published_matrix(l);
    EXPECT_EQ(golay::kernel_min_weight(h), 7U);
    EXPECT_EQ(oracle::brute_force_kernel_min_weight(oracle::grid_from(h)), 7U);
  }
}

TEST(GolayCss, AllOnesIsALogicalRepresentative) {
  BitVec ones(23);
  for (std::size_t i = 0; i < 23; ++i) ones.set(i);
  for (auto l : kLabels) {
    const auto h = golay::published_matrix(l);
    EXPECT_TRUE(gf2::mat_vec_mul(h, ones).is_zero());
    EXPECT_FALSE(gf2::solve_in_rowspace(h, ones).has_value());
  }
}

// Radius-3 spheres tile F_2^23: the 2048 vectors of weight <= 3 have
// pairwise distinct syndromes covering all of F_2^11.
TEST(GolayCss, PerfectCodeBijection) {
  EXPECT_EQ(1 + 23 + 253 + 1771, 2048);
  for (auto l : kLabels) {
    const auto cols = oracle::column_masks(oracle::grid_from(golay::published_matrix(l)));
    std::vector<int> hits(2048, 0);
    std::size_t patterns = 0;
    for (std::uint32_t e = 0; e < (1U << 23); ++e) {
      if (__builtin_popcount(e) > 3) continue;
      ++patterns;
      ++hits[oracle::syndrome(cols, e)];
    }
    EXPECT_EQ(patterns, 2048U);
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}
