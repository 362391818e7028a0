#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgec/bitvec.hpp"
#include "qgec/css_code.hpp"
#include "qgec/gf2.hpp"

namespace qgec::toric {

/// Lattice cell (vertex or plaquette) on the d x d torus.
struct Site {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

/// Edge indexing on a d x d torus.
///
/// Horizontal edge (r, c) = r*d + c joins vertex (r, c) to (r, c+1).
/// Vertical edge (r, c) = d^2 + r*d + c joins vertex (r, c) to (r+1, c).
/// Plaquette (r, c) has corners (r, c) and (r+1, c+1).
class Layout {
 public:
  explicit Layout(std::size_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("toric lattice size must be >= 2, got " + std::to_string(d));
  }

  std::size_t d() const noexcept { return d_; }
  std::size_t qubits() const noexcept { return 2 * d_ * d_; }
  std::size_t sites() const noexcept { return d_ * d_; }

  std::size_t h_edge(std::size_t r, std::size_t c) const { return wrap(r) * d_ + wrap(c); }
  std::size_t v_edge(std::size_t r, std::size_t c) const { return d_ * d_ + wrap(r) * d_ + wrap(c); }
  std::size_t site_index(Site s) const { return s.row * d_ + s.col; }
  Site site(std::size_t index) const { return {index / d_, index % d_}; }

  /// The four edges meeting at vertex (r, c).
  std::array<std::size_t, 4> star(std::size_t r, std::size_t c) const {
    return {h_edge(r, c), h_edge(r, c + d_ - 1), v_edge(r, c), v_edge(r + d_ - 1, c)};
  }
  /// The four edges bounding plaquette (r, c).
  std::array<std::size_t, 4> plaquette(std::size_t r, std::size_t c) const {
    return {h_edge(r, c), h_edge(r + 1, c), v_edge(r, c), v_edge(r, c + 1)};
  }

  /// Signed shortest displacement from a to b along one cyclic axis.
  long displacement(std::size_t a, std::size_t b) const {
    const long n = static_cast<long>(d_);
    long delta = (static_cast<long>(b) - static_cast<long>(a)) % n;
    if (delta < 0) delta += n;
    if (2 * delta > n) delta -= n;
    return delta;
  }
  std::size_t distance(Site a, Site b) const {
    return static_cast<std::size_t>(std::labs(displacement(a.row, b.row)) + std::labs(displacement(a.col, b.col)));
  }

  std::size_t wrap(std::size_t v) const { return v % d_; }

 private:
  std::size_t d_;
};

/// Full vertex (X-type) and plaquette (Z-type) check matrices, d^2 rows each.
inline BitMat vertex_checks(const Layout& lay) {
  BitMat m(0, lay.qubits());
  for (std::size_t r = 0; r < lay.d(); ++r) {
    for (std::size_t c = 0; c < lay.d(); ++c) {
      BitVec row(lay.qubits());
      for (auto e : lay.star(r, c)) row.flip(e);
      m.push_row(std::move(row));
    }
  }
  return m;
}

inline BitMat plaquette_checks(const Layout& lay) {
  BitMat m(0, lay.qubits());
  for (std::size_t r = 0; r < lay.d(); ++r) {
    for (std::size_t c = 0; c < lay.d(); ++c) {
      BitVec row(lay.qubits());
      for (auto e : lay.plaquette(r, c)) row.flip(e);
      m.push_row(std::move(row));
    }
  }
  return m;
}

/// A toric CssCode plus the lattice it lives on.
///
/// Hx holds vertex rows 0..d^2-2 and Hz plaquette rows 0..d^2-2; the last
/// check of each type is implied by parity and dropped from the syndrome.
struct ToricCode {
  Layout layout;
  CssCode code;
};

inline ToricCode build_toric(std::size_t d) {
  const Layout lay(d);
  const std::size_t n = lay.qubits();
  const std::string tag = "toric:" + std::to_string(d);

  BitMat all_v = vertex_checks(lay);
  BitMat all_p = plaquette_checks(lay);
  for (const BitMat* m : {&all_v, &all_p}) {
    BitVec sum(n);
    for (const auto& row : m->row_list()) {
      if (row.weight() != 4) throw CodeConstructionError(tag + ": check of weight != 4");
      sum ^= row;
    }
    if (!sum.is_zero()) throw CodeConstructionError(tag + ": checks of one type do not multiply to identity");
  }

  BitMat hx(0, n);
  BitMat hz(0, n);
  for (std::size_t i = 0; i + 1 < lay.sites(); ++i) {
    hx.push_row(all_v.row(i));
    hz.push_row(all_p.row(i));
  }
  if (gf2::rank(hx) != lay.sites() - 1 || gf2::rank(hz) != lay.sites() - 1) {
    throw CodeConstructionError(tag + ": check rank != d^2 - 1");
  }

  // X loops cross a column (or row) of the dual lattice; Z loops run along
  // the primal lattice. Pair i of each shares exactly one edge.
  BitVec x1(n), x2(n), z1(n), z2(n);
  for (std::size_t t = 0; t < d; ++t) {
    x1.set(lay.h_edge(t, 0));
    z1.set(lay.h_edge(0, t));
    x2.set(lay.v_edge(0, t));
    z2.set(lay.v_edge(t, 0));
  }
  std::vector<PauliError> lx{PauliError(x1, BitVec(n)), PauliError(x2, BitVec(n))};
  std::vector<PauliError> lz{PauliError(BitVec(n), z1), PauliError(BitVec(n), z2)};

  return ToricCode{lay, CssCode(tag, std::move(hx), std::move(hz), std::move(lx), std::move(lz))};
}

/// Violated checks of each type, with the dropped check restored by parity.
struct Defects {
  std::vector<Site> plaquettes;  // flagged by X errors
  std::vector<Site> vertices;    // flagged by Z errors
};

inline Defects defect_positions(const ToricCode& tc, const Syndrome& s) {
  const std::size_t per_type = tc.layout.sites() - 1;
  if (s.bits.size() != 2 * per_type || s.z_checks != per_type || s.x_checks != per_type) {
    throw DimensionError("defect_positions: syndrome must have " + std::to_string(2 * per_type) + " bits");
  }
  Defects out;
  auto collect = [&](std::size_t offset, std::vector<Site>& into) {
    bool parity = false;
    for (std::size_t i = 0; i < per_type; ++i) {
      if (s.bits.get(offset + i)) {
        into.push_back(tc.layout.site(i));
        parity = !parity;
      }
    }
    if (parity) into.push_back(tc.layout.site(per_type));
  };
  collect(0, out.plaquettes);
  collect(per_type, out.vertices);
  return out;
}

}  // namespace qgec::toric
