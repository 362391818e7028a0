#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qgec/css_code.hpp"
#include "qgec/golay.hpp"
#include "qgec/toric.hpp"

using namespace qgec;

namespace {

const CssCode& golay_h1() {
  static const CssCode code = golay::build_golay_css(golay::Label::h1);
  return code;
}

BitVec ones(std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i);
  return v;
}

oracle::Grid h1_grid() { return oracle::grid_from(golay::published_matrix(golay::Label::h1)); }

}  // namespace

TEST(PauliError, SymbolsMapToBits) {
  PauliError e(4);
  e.set(0, Pauli::X);
  e.set(1, Pauli::Y);
  e.set(2, Pauli::Z);
  EXPECT_EQ(e.x().to_string(), "1100");
  EXPECT_EQ(e.z().to_string(), "0110");
  EXPECT_EQ(e.at(1), Pauli::Y);
  EXPECT_EQ(e.at(3), Pauli::I);
  EXPECT_EQ(e.weight(), 3U);
  EXPECT_EQ(e.to_label(), "11000110");
  EXPECT_EQ(PauliError::from_label(e.to_label()), e);
  EXPECT_THROW(PauliError(BitVec(3), BitVec(4)), DimensionError);
}

TEST(ExtractSyndrome, IdentityGivesZero) {
  const auto s = extract_syndrome(golay_h1(), PauliError(23));
  EXPECT_EQ(s.bits.size(), 22U);
  EXPECT_TRUE(s.is_zero());
}

TEST(ExtractSyndrome, XOnQubitZeroFlagsColumnZeroInFirstHalf) {
  const auto s = extract_syndrome(golay_h1(), PauliError::single(23, 0, Pauli::X));
  EXPECT_EQ(s.to_string(), "10000000000" + std::string(11, '0'));
}

TEST(ExtractSyndrome, YOnQubitFiveFlagsBothHalves) {
  const std::string col5 = oracle::column(h1_grid(), 5);
  const auto s = extract_syndrome(golay_h1(), PauliError::single(23, 5, Pauli::Y));
  EXPECT_EQ(s.z_part().to_string(), col5);
  EXPECT_EQ(s.x_part().to_string(), col5);
}

TEST(ExtractSyndrome, ZErrorLandsInSecondHalf) {
  const auto s = extract_syndrome(golay_h1(), PauliError::single(23, 9, Pauli::Z));
  EXPECT_TRUE(s.z_part().is_zero());
  EXPECT_EQ(s.x_part().to_string(), oracle::column(h1_grid(), 9));
}

TEST(ExtractSyndrome, SizeMismatchThrows) {
  EXPECT_THROW(extract_syndrome(golay_h1(), PauliError(22)), DimensionError);
}

TEST(ExtractSyndrome, IsLinear) {
  std::mt19937_64 rng(21);
  const auto tc = toric::build_toric(5);
  for (const CssCode* code : {&golay_h1(), &tc.code}) {
    for (int t = 0; t < 500; ++t) {
      const PauliError a(oracle::random_vec(rng, code->n()), oracle::random_vec(rng, code->n()));
      const PauliError b(oracle::random_vec(rng, code->n()), oracle::random_vec(rng, code->n()));
      EXPECT_EQ(extract_syndrome(*code, apply_correction(a, b)).bits,
                extract_syndrome(*code, a).bits ^ extract_syndrome(*code, b).bits);
    }
  }
}

TEST(ApplyCorrection, Examples) {
  const auto x0 = PauliError::single(23, 0, Pauli::X);
  EXPECT_TRUE(apply_correction(x0, x0).is_identity());
  EXPECT_EQ(apply_correction(x0, PauliError::single(23, 0, Pauli::Y)), PauliError::single(23, 0, Pauli::Z));
  PauliError x01 = x0;
  x01.set(1, Pauli::X);
  EXPECT_EQ(apply_correction(x01, PauliError::single(23, 1, Pauli::X)), x0);
  EXPECT_THROW(apply_correction(x0, PauliError(22)), DimensionError);
}

TEST(ClassifyResidual, Examples) {
  const auto& code = golay_h1();
  EXPECT_EQ(classify_residual(code, PauliError(23)), ResidualClass::Trivial);
  EXPECT_EQ(classify_residual(code, PauliError(ones(23), BitVec(23))), ResidualClass::LogicalX);
  EXPECT_EQ(classify_residual(code, PauliError(BitVec(23), ones(23))), ResidualClass::LogicalZ);
  EXPECT_EQ(classify_residual(code, PauliError(ones(23), ones(23))), ResidualClass::LogicalY);
  EXPECT_EQ(classify_residual(code, PauliError(code.hz().row(4), BitVec(23))), ResidualClass::Trivial);
  EXPECT_EQ(classify_residual(code, PauliError::single(23, 3, Pauli::X)), ResidualClass::SyndromeNonzero);
  EXPECT_THROW(classify_residual(code, PauliError(5)), DimensionError);
}

TEST(ClassifyResidual, EveryStabilizerIsTrivialPerAxis) {
  const auto& code = golay_h1();
  std::size_t count = 0;
  gf2::for_each_in_span(code.hx(), [&](const BitVec& v) {
    ++count;
    ASSERT_EQ(classify_residual(code, PauliError(v, BitVec(23))), ResidualClass::Trivial);
    ASSERT_EQ(classify_residual(code, PauliError(BitVec(23), v)), ResidualClass::Trivial);
  });
  EXPECT_EQ(count, 2048U);
}

TEST(ClassifyResidual, RandomJointStabilizersAreTrivial) {
  const auto& code = golay_h1();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10000; ++t) {
    const auto x = gf2::mat_combine(oracle::random_vec(rng, 11), code.hx());
    const auto z = gf2::mat_combine(oracle::random_vec(rng, 11), code.hz());
    ASSERT_EQ(classify_residual(code, PauliError(x, z)), ResidualClass::Trivial);
  }
}

// Second route to the same answer: a zero-syndrome x-part is a logical error
// iff it anticommutes with some logical Z.
TEST(ClassifyResidual, AgreesWithLogicalCommutation) {
  std::mt19937_64 rng(13);
  const auto tc = toric::build_toric(5);
  for (const CssCode* code : {&golay_h1(), &tc.code}) {
    const auto kx = gf2::kernel_basis(code->hz());
    const auto kz = gf2::kernel_basis(code->hx());
    for (int t = 0; t < 3000; ++t) {
      const auto x = gf2::mat_combine(oracle::random_vec(rng, kx.rows()), kx);
      const auto z = gf2::mat_combine(oracle::random_vec(rng, kz.rows()), kz);
      bool fx = false, fz = false;
      for (const auto& lz : code->logical_z()) fx = fx || x.dot(lz.z());
      for (const auto& lx : code->logical_x()) fz = fz || z.dot(lx.x());
      const auto expected = fx && fz ? ResidualClass::LogicalY
                            : fx     ? ResidualClass::LogicalX
                            : fz     ? ResidualClass::LogicalZ
                                     : ResidualClass::Trivial;
      ASSERT_EQ(classify_residual(*code, PauliError(x, z)), expected);
    }
  }
}

TEST(CssCode, RejectsNonCommutingChecks) {
  const auto hx = BitMat::from_strings({"110"});
  const auto hz = BitMat::from_strings({"100"});
  EXPECT_THROW(CssCode("bad", hx, hz, {}, {}), CodeConstructionError);
}

TEST(CssCode, RejectsWrongLogicalCount) {
  const auto h = golay::published_matrix(golay::Label::h1);
  EXPECT_THROW(CssCode("bad", h, h, {}, {}), CodeConstructionError);
}

TEST(CssCode, RejectsLogicalThatAnticommutesWithStabilizer) {
  const auto h = golay::published_matrix(golay::Label::h1);
  const PauliError bad_x(BitVec::from_indices(23, {0}), BitVec(23));
  EXPECT_THROW(CssCode("bad", h, h, {bad_x}, {PauliError(BitVec(23), ones(23))}), CodeConstructionError);
}

TEST(CssCode, MakeSyndromeChecksLength) {
  EXPECT_THROW(golay_h1().make_syndrome(BitVec(21)), DimensionError);
  const auto s = golay_h1().make_syndrome(BitVec(22));
  EXPECT_EQ(s.z_checks, 11U);
  EXPECT_EQ(s.x_checks, 11U);
}
