#include <algorithm>
#include <cmath>
#include <iostream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qgec/decoders.hpp"
#include "qgec/golay.hpp"
#include "qgec/toric.hpp"

using namespace qgec;

namespace {

const CssCode& golay_h1() {
  static const CssCode code = golay::build_golay_css(golay::Label::h1);
  return code;
}

const toric::ToricCode& toric5() {
  static const toric::ToricCode tc = toric::build_toric(5);
  return tc;
}

ResidualClass decode_and_classify(const CssCode& code, Decoder& dec, const PauliError& e) {
  const auto s = extract_syndrome(code, e);
  const auto out = dec.decode(s);
  EXPECT_EQ(extract_syndrome(code, out.correction).bits, s.bits);
  return classify_residual(code, apply_correction(e, out.correction));
}

// Every nonzero pattern of weight <= w on n bits, as index lists.
template <class F>
void for_each_small_pattern(std::size_t n, std::size_t w, F&& f) {
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) f(idx);
    if (idx.size() == w) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

TEST(SyndromeTable, EntriesAreLightestPreimages) {
  for (auto l : {golay::Label::h1, golay::Label::h2, golay::Label::h3}) {
    const auto h = golay::published_matrix(l);
    const SyndromeTable table(h);
    EXPECT_EQ(table.size(), 2048U);
    const auto cols = oracle::column_masks(oracle::grid_from(h));
    for (std::uint64_t key = 0; key < 2048; ++key) {
      const auto w = table.leader(key);
      ASSERT_LE(w.weight(), 3U);
      ASSERT_EQ(oracle::syndrome(cols, static_cast<std::uint32_t>(w.to_u64())), key);
    }
  }
}

TEST(SyndromeTable, Examples) {
  const auto h = golay::published_matrix(golay::Label::h1);
  const SyndromeTable table(h);
  EXPECT_TRUE(table.leader(BitVec(11)).is_zero());
  EXPECT_EQ(table.leader(h.column(7)), BitVec::from_indices(23, {7}));
  EXPECT_THROW(table.leader(BitVec(10)), DimensionError);
}

TEST(SyndromeTable, CollisionIsAConstructionError) {
  // Repeated column: e0 and e1 share a syndrome.
  auto h = golay::published_matrix(golay::Label::h1);
  for (std::size_t r = 0; r < h.rows(); ++r) h.set(r, 1, h.get(r, 0));
  EXPECT_THROW(SyndromeTable{h}, CodeConstructionError);
}

TEST(SyndromeTable, MissingKeyIsAConstructionError) {
  // Two columns reach only 4 of the 8 keys.
  const auto h = BitMat::from_strings({"10", "01", "00"});
  EXPECT_THROW(SyndromeTable{h}, CodeConstructionError);
}

TEST(TableDecoder, ZeroSyndromeGivesIdentity) {
  TableDecoder dec(golay_h1());
  EXPECT_EQ(dec.id(), "table");
  EXPECT_TRUE(dec.decode(golay_h1().make_syndrome(BitVec(22))).correction.is_identity());
}

TEST(TableDecoder, YOnQubitThree) {
  TableDecoder dec(golay_h1());
  const auto y3 = PauliError::single(23, 3, Pauli::Y);
  EXPECT_EQ(dec.decode(extract_syndrome(golay_h1(), y3)).correction, y3);
}

TEST(TableDecoder, RecoversEveryLightErrorOnEachAxis) {
  TableDecoder dec(golay_h1());
  std::size_t count = 0;
  for_each_small_pattern(23, 3, [&](const std::vector<std::size_t>& idx) {
    ++count;
    const auto v = BitVec::from_indices(23, idx);
    const PauliError ex(v, BitVec(23)), ez(BitVec(23), v);
    ASSERT_EQ(dec.decode(extract_syndrome(golay_h1(), ex)).correction, ex);
    ASSERT_EQ(dec.decode(extract_syndrome(golay_h1(), ez)).correction, ez);
  });
  EXPECT_EQ(count, 2047U);
}

TEST(TableDecoder, RandomJointErrorsUpToWeightThreePerAxis) {
  TableDecoder dec(golay_h1());
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20000; ++t) {
    const PauliError e(oracle::random_weight(rng, 23, rng() % 4), oracle::random_weight(rng, 23, rng() % 4));
    ASSERT_EQ(decode_and_classify(golay_h1(), dec, e), ResidualClass::Trivial);
  }
}

TEST(TableDecoder, HeavierErrorsStaySyndromeConsistent) {
  TableDecoder dec(golay_h1());
  std::mt19937_64 rng(32);
  std::size_t logical = 0;
  for (int t = 0; t < 2000; ++t) {
    const PauliError e(oracle::random_weight(rng, 23, 4 + rng() % 8), oracle::random_weight(rng, 23, 4 + rng() % 8));
    const auto r = decode_and_classify(golay_h1(), dec, e);
    ASSERT_NE(r, ResidualClass::SyndromeNonzero);
    logical += r != ResidualClass::Trivial;
  }
  EXPECT_GT(logical, 0U);
}

TEST(TableDecoder, RejectsWrongSyndromeLayout) {
  TableDecoder dec(golay_h1());
  EXPECT_THROW(dec.decode(toric5().code.make_syndrome(BitVec(48))), DimensionError);
  EXPECT_THROW(TableDecoder{toric5().code}, std::invalid_argument);
}

TEST(MlOracle, ZeroSyndromeGivesIdentity) {
  const NoiseModel m(0.05, 1.0);
  const auto out = ml_decode_oracle(golay_h1(), m, golay_h1().make_syndrome(BitVec(22)), 1ULL << 24);
  EXPECT_TRUE(out.correction.is_identity());
}

TEST(MlOracle, RefusesOverBudget) {
  const NoiseModel m(0.05, 1.0);
  EXPECT_THROW(ml_decode_oracle(golay_h1(), m, golay_h1().make_syndrome(BitVec(22)), 1ULL << 23), BudgetExceeded);
  EXPECT_THROW(ml_decode_oracle(toric5().code, m, toric5().code.make_syndrome(BitVec(48)), 1ULL << 40),
               BudgetExceeded);
}

// P(Y3) = py * pI^22 against P(X3 Z3 elsewhere) which needs two flips.
TEST(MlOracle, StrongCorrelationPrefersY) {
  const NoiseModel m(0.05, 100.0);
  const auto y3 = PauliError::single(23, 3, Pauli::Y);
  const auto out = ml_decode_oracle(golay_h1(), m, extract_syndrome(golay_h1(), y3), 1ULL << 24);
  EXPECT_EQ(out.correction, y3);
  EXPECT_GT(error_probability(m, y3), m.px() * m.pz() * std::pow(m.pi(), 21));
}

// Record agreement, and require the oracle never to be less likely than the table.
TEST(MlOracle, AgreementWithTableAtEtaOne) {
  const NoiseModel m(0.01, 1.0);
  TableDecoder dec(golay_h1());
  Rng rng(5);
  int agree = 0;
  const int total = 100;
  for (int t = 0; t < total; ++t) {
    const auto e = sample_error(NoiseModel(0.1, 1.0), 23, rng);
    const auto s = extract_syndrome(golay_h1(), e);
    const auto ml = ml_decode_oracle(golay_h1(), m, s, 1ULL << 24).correction;
    const auto tb = dec.decode(s).correction;
    EXPECT_EQ(extract_syndrome(golay_h1(), ml).bits, s.bits);
    EXPECT_GE(error_probability(m, ml), error_probability(m, tb) * (1 - 1e-12));
    agree += ml == tb;
  }
  RecordProperty("agreement", agree);
  std::cout << "ml/table agreement at eta=1: " << agree << "/" << total << "\n";
  EXPECT_GT(agree, 0);
}

// On the 8-qubit torus, score all 4^8 Paulis directly.
TEST(MlOracle, MatchesBruteForceOnSmallTorus) {
  const auto tc = toric::build_toric(2);
  const auto& code = tc.code;
  std::mt19937_64 rng(44);
  for (double eta : {0.25, 1.0, 3.0}) {
    const NoiseModel m(0.1, eta);
    for (int t = 0; t < 20; ++t) {
      const PauliError e(oracle::random_vec(rng, 8, 0.2), oracle::random_vec(rng, 8, 0.2));
      const auto s = extract_syndrome(code, e);
      double best = -1;
      for (std::uint32_t x = 0; x < 256; ++x) {
        for (std::uint32_t z = 0; z < 256; ++z) {
          const PauliError c(BitVec::from_u64(8, x), BitVec::from_u64(8, z));
          if (!(extract_syndrome(code, c).bits == s.bits)) continue;
          best = std::max(best, error_probability(m, c));
        }
      }
      const auto ml = ml_decode_oracle(code, m, s, 1ULL << 20).correction;
      EXPECT_NEAR(error_probability(m, ml), best, best * 1e-12);
    }
  }
}

TEST(MatchDecoder, ZeroSyndromeGivesIdentity) {
  MatchDecoder dec(toric5());
  EXPECT_EQ(dec.id(), "match");
  EXPECT_TRUE(dec.decode(toric5().code.make_syndrome(BitVec(48))).correction.is_identity());
}

TEST(MatchDecoder, SingleErrorIsUndone) {
  MatchDecoder dec(toric5());
  for (std::size_t q = 0; q < 50; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const auto e = PauliError::single(50, q, p);
      EXPECT_EQ(dec.decode(extract_syndrome(toric5().code, e)).correction, e) << q;
    }
  }
}

TEST(MatchDecoder, CorrectsEveryErrorOfWeightAtMostTwo) {
  MatchDecoder dec(toric5());
  const auto& code = toric5().code;
  std::size_t count = 0;
  for_each_small_pattern(50, 2, [&](const std::vector<std::size_t>& idx) {
    ++count;
    const auto v = BitVec::from_indices(50, idx);
    ASSERT_EQ(decode_and_classify(code, dec, PauliError(v, BitVec(50))), ResidualClass::Trivial);
    ASSERT_EQ(decode_and_classify(code, dec, PauliError(BitVec(50), v)), ResidualClass::Trivial);
    if (idx.size() == 2) {
      const Pauli ps[] = {Pauli::X, Pauli::Y, Pauli::Z};
      for (Pauli a : ps) {
        for (Pauli b : ps) {
          PauliError e(50);
          e.set(idx[0], a);
          e.set(idx[1], b);
          ASSERT_EQ(decode_and_classify(code, dec, e), ResidualClass::Trivial);
        }
      }
    }
  });
  EXPECT_EQ(count, 50U + 1225U);
}

TEST(MatchDecoder, DenseErrorsStaySyndromeConsistent) {
  MatchDecoder dec(toric5());
  std::mt19937_64 rng(46);
  for (int t = 0; t < 1000; ++t) {
    const PauliError e(oracle::random_vec(rng, 50, 0.2), oracle::random_vec(rng, 50, 0.2));
    ASSERT_NE(decode_and_classify(toric5().code, dec, e), ResidualClass::SyndromeNonzero);
  }
}

TEST(MatchDefects, OddCountThrows) {
  EXPECT_THROW(match_defects(toric5().layout, {{0, 0}, {1, 1}, {2, 2}}), DecodeError);
}

TEST(MatchDefects, ExactPairingMinimisesTotalDistance) {
  const toric::Layout lay(7);
  std::mt19937_64 rng(50);
  for (int t = 0; t < 200; ++t) {
    std::vector<toric::Site> sites;
    const std::size_t m = 2 * (1 + rng() % 4);
    for (std::size_t i = 0; i < m; ++i) sites.push_back({rng() % 7, rng() % 7});
    const auto pairs = match_defects(lay, sites);
    ASSERT_EQ(pairs.size(), m / 2);
    std::size_t cost = 0;
    for (const auto& [i, j] : pairs) cost += lay.distance(sites[i], sites[j]);
    // Brute force over permutations, reading consecutive entries as pairs.
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::size_t best = ~std::size_t{0};
    do {
      std::size_t c = 0;
      for (std::size_t i = 0; i < m; i += 2) c += lay.distance(sites[perm[i]], sites[perm[i + 1]]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    ASSERT_EQ(cost, best);
  }
}

TEST(MatchDefects, GreedyAboveTheExactLimit) {
  const toric::Layout lay(9);
  std::vector<toric::Site> sites;
  for (std::size_t i = 0; i < 14; ++i) sites.push_back({i % 9, (3 * i) % 9});
  const auto pairs = match_defects(lay, sites);
  ASSERT_EQ(pairs.size(), 7U);
  std::vector<bool> seen(14, false);
  for (const auto& [i, j] : pairs) {
    ASSERT_FALSE(seen[i]);
    ASSERT_FALSE(seen[j]);
    seen[i] = seen[j] = true;
  }
}

TEST(TogglePath, ConnectsTheTwoDefects) {
  const auto& tc = toric5();
  std::mt19937_64 rng(52);
  for (int t = 0; t < 300; ++t) {
    const toric::Site a{rng() % 5, rng() % 5}, b{rng() % 5, rng() % 5};
    for (bool dual : {true, false}) {
      BitVec path(50);
      toggle_path(tc.layout, a, b, dual, path);
      EXPECT_EQ(path.weight(), tc.layout.distance(a, b));
      const PauliError e = dual ? PauliError(path, BitVec(50)) : PauliError(BitVec(50), path);
      const auto d = toric::defect_positions(tc, extract_syndrome(tc.code, e));
      const auto& got = dual ? d.plaquettes : d.vertices;
      if (a.row == b.row && a.col == b.col) {
        EXPECT_TRUE(got.empty());
      } else {
        ASSERT_EQ(got.size(), 2U);
        const auto ia = tc.layout.site_index(a), ib = tc.layout.site_index(b);
        const auto g0 = tc.layout.site_index(got[0]), g1 = tc.layout.site_index(got[1]);
        EXPECT_EQ(std::min(g0, g1), std::min(ia, ib));
        EXPECT_EQ(std::max(g0, g1), std::max(ia, ib));
      }
    }
  }
}
