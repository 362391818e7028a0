#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qgec/css_code.hpp"
#include "qgec/golay.hpp"
#include "qgec/registry.hpp"

namespace qgec {

namespace detail {

// Depth-first search over supports of size <= max_weight, carrying the
// syndrome and the logical-anticommutation pattern as 64-bit masks.
inline bool search_logical(const std::vector<std::uint64_t>& syn_cols, const std::vector<std::uint64_t>& logical_cols,
                           std::size_t start, std::size_t remaining, std::uint64_t syn, std::uint64_t logical) {
  for (std::size_t q = start; q < syn_cols.size(); ++q) {
    const std::uint64_t s = syn ^ syn_cols[q];
    const std::uint64_t l = logical ^ logical_cols[q];
    if (s == 0 && l != 0) return true;
    if (remaining > 1 && search_logical(syn_cols, logical_cols, q + 1, remaining - 1, s, l)) return true;
  }
  return false;
}

inline std::optional<std::size_t> min_logical_weight_axis(const BitMat& checks, const std::vector<BitVec>& partners,
                                                          std::size_t max_weight) {
  const std::size_t n = checks.cols();
  std::vector<std::uint64_t> syn_cols(n), logical_cols(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    syn_cols[q] = checks.column(q).to_u64();
    for (std::size_t j = 0; j < partners.size(); ++j) {
      if (partners[j].get(q)) logical_cols[q] |= std::uint64_t{1} << j;
    }
  }
  for (std::size_t w = 1; w <= max_weight; ++w) {
    if (search_logical(syn_cols, logical_cols, 0, w, 0, 0)) return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// Smallest weight of a nontrivial logical operator, searching supports up
/// to `max_weight` on each axis. Requires n <= 64 and at most 64 checks per
/// type. Nontriviality is decided by anticommutation with the code's
/// logical operators, independently of the stabilizer row spaces.
inline std::optional<std::size_t> min_logical_weight(const CssCode& code, std::size_t max_weight) {
  if (code.n() > 64 || code.hx().rows() > 64 || code.hz().rows() > 64 || code.k() > 64) {
    throw std::length_error("min_logical_weight: code too large for the 64-bit search");
  }
  std::vector<BitVec> z_partners, x_partners;
  for (const auto& lz : code.logical_z()) z_partners.push_back(lz.z());
  for (const auto& lx : code.logical_x()) x_partners.push_back(lx.x());
  const auto dx = detail::min_logical_weight_axis(code.hz(), z_partners, max_weight);
  const auto dz = detail::min_logical_weight_axis(code.hx(), x_partners, max_weight);
  if (dx && dz) return std::min(*dx, *dz);
  return dx ? dx : dz;
}

struct CodeInfo {
  std::string id;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  bool distance_verified = false;
  std::size_t stabilizers = 0;
  std::set<std::size_t> hx_row_weights;
  std::set<std::size_t> hz_row_weights;
  std::vector<std::size_t> logical_weights;
  std::string note;
};

inline CodeInfo code_info(const CodeHandle& handle) {
  const CssCode& code = handle.code();
  CodeInfo info;
  info.id = code.name();
  info.n = code.n();
  info.k = code.k();
  info.stabilizers = code.stabilizer_count();
  for (const auto& r : code.hx().row_list()) info.hx_row_weights.insert(r.weight());
  for (const auto& r : code.hz().row_list()) info.hz_row_weights.insert(r.weight());
  for (const auto& l : code.logical_x()) info.logical_weights.push_back(l.weight());
  for (const auto& l : code.logical_z()) info.logical_weights.push_back(l.weight());

  if (handle.is_golay()) {
    info.d = golay::kernel_min_weight(code.hz());
    info.distance_verified = true;
    // Informational: compare this matrix's row space with the other two.
    std::ostringstream note;
    note << "rowspace equal to";
    for (auto other : {golay::Label::h1, golay::Label::h2, golay::Label::h3}) {
      if (other == handle.golay_label()) continue;
      BitMat both = code.hz();
      const BitMat theirs = golay::published_matrix(other);
      for (const auto& r : theirs.row_list()) both.push_row(r);
      note << ' ' << golay::to_string(other) << '=' << (gf2::rank(both) == golay::kChecks ? "yes" : "no");
    }
    info.note = note.str();
  } else if (code.n() <= 64) {
    const std::size_t d = handle.toric().layout.d();
    if (const auto w = min_logical_weight(code, d)) {
      info.d = *w;
      info.distance_verified = true;
    }
  } else {
    info.d = handle.toric().layout.d();
    info.note = "distance not verified (n > 64)";
  }
  return info;
}

inline std::string format_code_info(const CodeInfo& info) {
  auto join = [](const auto& xs) {
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  std::ostringstream os;
  os << "code: " << info.id << '\n'
     << "n: " << info.n << '\n'
     << "k: " << info.k << '\n'
     << "d: " << info.d << (info.distance_verified ? " (verified)" : " (unverified)") << '\n'
     << "stabilizer generators: " << info.stabilizers << '\n'
     << "hx row weight: " << join(info.hx_row_weights) << '\n'
     << "hz row weight: " << join(info.hz_row_weights) << '\n'
     << "logical operator weights: " << join(info.logical_weights) << '\n';
  if (!info.note.empty()) os << "note: " << info.note << '\n';
  return os.str();
}

}  // namespace qgec
