#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgec/bitvec.hpp"
#include "qgec/css_code.hpp"
#include "qgec/gf2.hpp"
#include "qgec/noise.hpp"
#include "qgec/toric.hpp"

namespace qgec {

struct DecoderOutcome {
  PauliError correction;
  std::string decoder;
};

/// Syndrome to correction. Implementations whose decode() is safe to call
/// concurrently report concurrent() == true.
class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual std::string id() const = 0;
  virtual DecoderOutcome decode(const Syndrome& s) = 0;
  virtual bool concurrent() const { return true; }
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Syndrome table for the perfect [23,12,7] code.

/// Coset leaders of weight <= 3 indexed by the syndrome value (syndrome bit i
/// is bit i of the index).
class SyndromeTable {
 public:
  static constexpr std::size_t kMaxLeaderWeight = 3;

  explicit SyndromeTable(const BitMat& h) : checks_(h.rows()), n_(h.cols()) {
    if (checks_ > 20 || n_ > 64) throw std::invalid_argument("SyndromeTable: matrix too large for a dense table");
    const std::size_t size = std::size_t{1} << checks_;
    leaders_.assign(size, 0);
    std::vector<bool> filled(size, false);

    std::vector<std::uint64_t> cols(n_);
    for (std::size_t c = 0; c < n_; ++c) cols[c] = h.column(c).to_u64();

    auto insert = [&](std::uint64_t key, std::uint64_t pattern) {
      if (filled[key]) {
        throw CodeConstructionError("SyndromeTable: two errors of weight <= 3 share syndrome " +
                                    BitVec::from_u64(checks_, key).to_string());
      }
      filled[key] = true;
      leaders_[key] = pattern;
    };

    insert(0, 0);
    for (std::size_t a = 0; a < n_; ++a) {
      insert(cols[a], bit(a));
      for (std::size_t b = a + 1; b < n_; ++b) {
        insert(cols[a] ^ cols[b], bit(a) | bit(b));
        for (std::size_t c = b + 1; c < n_; ++c) insert(cols[a] ^ cols[b] ^ cols[c], bit(a) | bit(b) | bit(c));
      }
    }
    for (std::size_t key = 0; key < size; ++key) {
      if (!filled[key]) {
        throw CodeConstructionError("SyndromeTable: syndrome " + BitVec::from_u64(checks_, key).to_string() +
                                    " has no preimage of weight <= 3");
      }
    }
  }

  std::size_t size() const noexcept { return leaders_.size(); }
  std::size_t checks() const noexcept { return checks_; }
  std::size_t n() const noexcept { return n_; }

  BitVec leader(const BitVec& syndrome) const {
    if (syndrome.size() != checks_) throw DimensionError("SyndromeTable: syndrome length mismatch");
    return BitVec::from_u64(n_, leaders_[syndrome.to_u64()]);
  }
  BitVec leader(std::uint64_t key) const { return BitVec::from_u64(n_, leaders_.at(key)); }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

  std::size_t checks_;
  std::size_t n_;
  std::vector<std::uint64_t> leaders_;
};

/// Decodes each axis independently through the coset-leader table.
inline DecoderOutcome table_decode(const SyndromeTable& table, const CssCode& code, const Syndrome& s) {
  if (s.bits.size() != code.syndrome_bits() || s.z_checks != table.checks() || s.x_checks != table.checks()) {
    throw DimensionError("table_decode: syndrome layout does not match the table");
  }
  return {PauliError(table.leader(s.z_part()), table.leader(s.x_part())), "table"};
}

class TableDecoder final : public Decoder {
 public:
  /// Requires Hx == Hz, which holds for the Golay instances.
  explicit TableDecoder(const CssCode& code) : code_(&code), table_(code.hz()) {
    if (!(code.hx() == code.hz())) throw std::invalid_argument("table decoder requires Hx == Hz");
  }
  std::string id() const override { return "table"; }
  DecoderOutcome decode(const Syndrome& s) override { return table_decode(table_, *code_, s); }
  const SyndromeTable& table() const noexcept { return table_; }

 private:
  const CssCode* code_;
  SyndromeTable table_;
};

// ---------------------------------------------------------------------------
// Exhaustive maximum-likelihood oracle.

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Most probable single error consistent with `s` (degeneracy-unaware).
///
/// Enumerates x0 + ker(Hz) against z0 + ker(Hx), so the cost is
/// 2^(dim ker Hz + dim ker Hx) evaluations; refuses when that exceeds
/// `budget`. Ties keep the first candidate in Gray-code order.
inline DecoderOutcome ml_decode_oracle(const CssCode& code, const NoiseModel& model, const Syndrome& s,
                                       std::uint64_t budget) {
  const std::size_t n = code.n();
  if (s.bits.size() != code.syndrome_bits()) throw DimensionError("ml_decode_oracle: syndrome length mismatch");
  if (n > 64) throw BudgetExceeded("ml_decode_oracle: codes above 64 qubits are not supported");

  const BitMat kx = gf2::kernel_basis(code.hz());
  const BitMat kz = gf2::kernel_basis(code.hx());
  const std::size_t dims = kx.rows() + kz.rows();
  if (dims >= 63 || (std::uint64_t{1} << dims) > budget) {
    throw BudgetExceeded("ml_decode_oracle: needs 2^" + std::to_string(dims) + " evaluations, budget is " +
                         std::to_string(budget));
  }

  const auto x0 = gf2::RowSpace(code.hz().transpose()).solve(s.z_part());
  const auto z0 = gf2::RowSpace(code.hx().transpose()).solve(s.x_part());
  if (!x0 || !z0) throw DecodeError("ml_decode_oracle: syndrome is not reachable by any error");

  auto coset = [](std::uint64_t start, const BitMat& basis) {
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << basis.rows());
    std::uint64_t cur = start;
    out.push_back(cur);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << basis.rows()); ++i) {
      cur ^= basis.row(static_cast<std::size_t>(std::countr_zero(i))).to_u64();
      out.push_back(cur);
    }
    return out;
  };
  const auto xs = coset(x0->to_u64(), kx);
  const auto zs = coset(z0->to_u64(), kz);

  // log P = nI log pI + nX log pX + nY log pY + nZ log pZ, with 0 * log 0 = 0.
  const double log_i = std::log(model.pi());
  const double log_x = std::log(model.px());
  const double log_y = std::log(model.py());
  const double log_z = std::log(model.pz());
  auto term = [](int count, double lp) { return count == 0 ? 0.0 : count * lp; };
  const int nq = static_cast<int>(n);

  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t best_x = xs.front();
  std::uint64_t best_z = zs.front();
  bool found = false;
  for (const auto x : xs) {
    const int wx = std::popcount(x);
    for (const auto z : zs) {
      const int ny = std::popcount(x & z);
      const int nx = wx - ny;
      const int nz = std::popcount(z) - ny;
      const int ni = nq - nx - ny - nz;
      const double score = term(ni, log_i) + term(nx, log_x) + term(ny, log_y) + term(nz, log_z);
      if (!found || score > best) {
        best = score;
        best_x = x;
        best_z = z;
        found = true;
      }
    }
  }
  return {PauliError(BitVec::from_u64(n, best_x), BitVec::from_u64(n, best_z)), "ml"};
}

// ---------------------------------------------------------------------------
// Toric matching decoder.

namespace detail {

/// Largest defect count solved by exhaustive pairing.
inline constexpr std::size_t kExactMatchingLimit = 12;

inline void exact_pairing(const std::vector<std::vector<std::size_t>>& dist, std::vector<bool>& used,
                          std::vector<std::pair<std::size_t, std::size_t>>& current, std::size_t cost,
                          std::size_t& best_cost, std::vector<std::pair<std::size_t, std::size_t>>& best) {
  if (cost >= best_cost) return;
  std::size_t i = 0;
  while (i < used.size() && used[i]) ++i;
  if (i == used.size()) {
    best_cost = cost;
    best = current;
    return;
  }
  used[i] = true;
  for (std::size_t j = i + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    current.emplace_back(i, j);
    exact_pairing(dist, used, current, cost + dist[i][j], best_cost, best);
    current.pop_back();
    used[j] = false;
  }
  used[i] = false;
}

inline std::vector<std::pair<std::size_t, std::size_t>> greedy_pairing(
    const std::vector<std::vector<std::size_t>>& dist) {
  const std::size_t m = dist.size();
  std::vector<bool> used(m, false);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t round = 0; round < m / 2; ++round) {
    std::size_t bi = m, bj = m, bd = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!used[j] && dist[i][j] < bd) {
          bd = dist[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    used[bi] = used[bj] = true;
    out.emplace_back(bi, bj);
  }
  return out;
}

}  // namespace detail

/// Pairs defects to minimise total toroidal Manhattan distance: exact for up
/// to 12 defects (lexicographically first optimum), greedy nearest pair above.
inline std::vector<std::pair<std::size_t, std::size_t>> match_defects(const toric::Layout& lay,
                                                                       const std::vector<toric::Site>& defects) {
  if (defects.size() % 2 != 0) throw DecodeError("match_decode: odd number of defects");
  const std::size_t m = defects.size();
  std::vector<std::vector<std::size_t>> dist(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) dist[i][j] = lay.distance(defects[i], defects[j]);
  }
  if (m > detail::kExactMatchingLimit) return detail::greedy_pairing(dist);

  std::vector<bool> used(m, false);
  std::vector<std::pair<std::size_t, std::size_t>> current, best;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  detail::exact_pairing(dist, used, current, 0, best_cost, best);
  return best;
}

/// Flips the edges along a row-first shortest path between two sites.
/// `on_dual` selects plaquette-to-plaquette paths; otherwise vertex to vertex.
inline void toggle_path(const toric::Layout& lay, toric::Site a, toric::Site b, bool on_dual, BitVec& out) {
  const std::size_t d = lay.d();
  std::size_t r = a.row;
  std::size_t c = a.col;
  const long dr = lay.displacement(a.row, b.row);
  const long dc = lay.displacement(a.col, b.col);
  for (long k = 0; k < std::labs(dr); ++k) {
    if (dr > 0) {
      out.flip(on_dual ? lay.h_edge(r + 1, c) : lay.v_edge(r, c));
      r = (r + 1) % d;
    } else {
      out.flip(on_dual ? lay.h_edge(r, c) : lay.v_edge(r + d - 1, c));
      r = (r + d - 1) % d;
    }
  }
  for (long k = 0; k < std::labs(dc); ++k) {
    if (dc > 0) {
      out.flip(on_dual ? lay.v_edge(r, c + 1) : lay.h_edge(r, c));
      c = (c + 1) % d;
    } else {
      out.flip(on_dual ? lay.v_edge(r, c) : lay.h_edge(r, c + d - 1));
      c = (c + d - 1) % d;
    }
  }
}

inline DecoderOutcome match_decode(const toric::ToricCode& tc, const Syndrome& s) {
  const toric::Defects defects = toric::defect_positions(tc, s);
  const std::size_t n = tc.layout.qubits();
  PauliError corr(n);
  for (const auto& [i, j] : match_defects(tc.layout, defects.plaquettes)) {
    toggle_path(tc.layout, defects.plaquettes[i], defects.plaquettes[j], true, corr.x());
  }
  for (const auto& [i, j] : match_defects(tc.layout, defects.vertices)) {
    toggle_path(tc.layout, defects.vertices[i], defects.vertices[j], false, corr.z());
  }
  return {std::move(corr), "match"};
}

class MatchDecoder final : public Decoder {
 public:
  explicit MatchDecoder(const toric::ToricCode& tc) : tc_(&tc) {}
  std::string id() const override { return "match"; }
  DecoderOutcome decode(const Syndrome& s) override { return match_decode(*tc_, s); }

 private:
  const toric::ToricCode* tc_;
};

}  // namespace qgec
