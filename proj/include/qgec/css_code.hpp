#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgec/bitvec.hpp"
#include "qgec/gf2.hpp"

namespace qgec {

/// Raised when a code fails one of its structural checks at construction.
class CodeConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Pauli : unsigned char { I = 0, X = 1, Z = 2, Y = 3 };

/// n-qubit Pauli operator up to phase: X on x-only bits, Z on z-only bits,
/// Y where both are set.
class PauliError {
 public:
  PauliError() = default;
  explicit PauliError(std::size_t n) : x_(n), z_(n) {}
  PauliError(BitVec x, BitVec z) : x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw DimensionError("PauliError: x and z parts differ in length");
  }

  static PauliError single(std::size_t n, std::size_t qubit, Pauli p) {
    PauliError e(n);
    e.set(qubit, p);
    return e;
  }

  /// Parses the 2n-bit label form: x-part then z-part.
  static PauliError from_label(std::string_view bits) {
    if (bits.size() % 2 != 0) throw DimensionError("Pauli label must have even length");
    const BitVec v = BitVec::from_string(bits);
    const std::size_t n = bits.size() / 2;
    return {v.slice(0, n), v.slice(n, n)};
  }

  std::size_t size() const noexcept { return x_.size(); }
  const BitVec& x() const noexcept { return x_; }
  const BitVec& z() const noexcept { return z_; }
  BitVec& x() noexcept { return x_; }
  BitVec& z() noexcept { return z_; }

  Pauli at(std::size_t q) const {
    return static_cast<Pauli>((x_.get(q) ? 1 : 0) | (z_.get(q) ? 2 : 0));
  }
  void set(std::size_t q, Pauli p) {
    const auto bits = static_cast<unsigned>(p);
    x_.set(q, (bits & 1U) != 0);
    z_.set(q, (bits & 2U) != 0);
  }

  bool is_identity() const { return x_.is_zero() && z_.is_zero(); }
  std::size_t weight() const { return (x_ | z_).weight(); }

  /// x-part then z-part, 2n characters.
  std::string to_label() const { return x_.to_string() + z_.to_string(); }
  BitVec to_bits() const { return x_.concat(z_); }

  friend bool operator==(const PauliError&, const PauliError&) = default;

 private:
  BitVec x_;
  BitVec z_;
};

/// Stabilizer outcomes. Bits [0, z_checks) are Z-type checks (detect X
/// errors), bits [z_checks, z_checks + x_checks) are X-type checks.
struct Syndrome {
  BitVec bits;
  std::size_t z_checks = 0;
  std::size_t x_checks = 0;

  BitVec z_part() const { return bits.slice(0, z_checks); }
  BitVec x_part() const { return bits.slice(z_checks, x_checks); }
  bool is_zero() const { return bits.is_zero(); }
  std::string to_string() const { return bits.to_string(); }

  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

enum class ResidualClass { Trivial, LogicalX, LogicalZ, LogicalY, SyndromeNonzero };

inline std::string_view to_string(ResidualClass c) {
  switch (c) {
    case ResidualClass::Trivial: return "Trivial";
    case ResidualClass::LogicalX: return "LogicalX";
    case ResidualClass::LogicalZ: return "LogicalZ";
    case ResidualClass::LogicalY: return "LogicalY";
    case ResidualClass::SyndromeNonzero: return "SyndromeNonzero";
  }
  return "?";
}

/// A CSS stabilizer code.
///
/// `hx` holds X-type stabilizers (they detect Z errors), `hz` holds Z-type
/// stabilizers (they detect X errors). Logical operators come in pairs:
/// logical_x[i] anticommutes with logical_z[i] and commutes with every other
/// logical and with all stabilizers. The constructor checks all of that.
class CssCode {
 public:
  CssCode(std::string name, BitMat hx, BitMat hz, std::vector<PauliError> logical_x,
          std::vector<PauliError> logical_z)
      : name_(std::move(name)),
        hx_(std::move(hx)),
        hz_(std::move(hz)),
        logical_x_(std::move(logical_x)),
        logical_z_(std::move(logical_z)),
        x_stabilizers_(hx_),
        z_stabilizers_(hz_) {
    validate();
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t n() const noexcept { return hx_.cols(); }
  std::size_t k() const noexcept { return logical_x_.size(); }
  const BitMat& hx() const noexcept { return hx_; }
  const BitMat& hz() const noexcept { return hz_; }
  const std::vector<PauliError>& logical_x() const noexcept { return logical_x_; }
  const std::vector<PauliError>& logical_z() const noexcept { return logical_z_; }
  std::size_t syndrome_bits() const noexcept { return hz_.rows() + hx_.rows(); }
  std::size_t stabilizer_count() const noexcept { return syndrome_bits(); }

  /// Row spaces of the X-type and Z-type stabilizer supports.
  const gf2::RowSpace& x_stabilizers() const noexcept { return x_stabilizers_; }
  const gf2::RowSpace& z_stabilizers() const noexcept { return z_stabilizers_; }

  Syndrome make_syndrome(BitVec bits) const {
    if (bits.size() != syndrome_bits()) {
      throw DimensionError("syndrome for " + name_ + " must have " + std::to_string(syndrome_bits()) +
                           " bits, got " + std::to_string(bits.size()));
    }
    return Syndrome{std::move(bits), hz_.rows(), hx_.rows()};
  }

 private:
  void validate() const {
    const std::size_t nq = n();
    if (hz_.cols() != nq) throw CodeConstructionError(name_ + ": Hx and Hz column counts differ");
    if (!gf2::mat_mul(hx_, hz_.transpose()).is_zero()) {
      throw CodeConstructionError(name_ + ": Hx * Hz^T != 0, stabilizers do not commute");
    }
    if (logical_x_.size() != logical_z_.size()) {
      throw CodeConstructionError(name_ + ": unequal numbers of logical X and Z operators");
    }
    const std::size_t k_expected = nq - x_stabilizers_.rank() - z_stabilizers_.rank();
    if (logical_x_.size() != k_expected) {
      throw CodeConstructionError(name_ + ": expected " + std::to_string(k_expected) +
                                  " logical qubits, got " + std::to_string(logical_x_.size()));
    }
    for (std::size_t i = 0; i < logical_x_.size(); ++i) {
      const auto& lx = logical_x_[i];
      const auto& lz = logical_z_[i];
      if (lx.size() != nq || lz.size() != nq) throw CodeConstructionError(name_ + ": logical operator size");
      if (!lx.z().is_zero()) throw CodeConstructionError(name_ + ": logical X has a Z component");
      if (!lz.x().is_zero()) throw CodeConstructionError(name_ + ": logical Z has an X component");
      if (!gf2::mat_vec_mul(hz_, lx.x()).is_zero()) {
        throw CodeConstructionError(name_ + ": logical X " + std::to_string(i) + " anticommutes with a stabilizer");
      }
      if (!gf2::mat_vec_mul(hx_, lz.z()).is_zero()) {
        throw CodeConstructionError(name_ + ": logical Z " + std::to_string(i) + " anticommutes with a stabilizer");
      }
      for (std::size_t j = 0; j < logical_z_.size(); ++j) {
        const bool anti = lx.x().dot(logical_z_[j].z());
        if (anti != (i == j)) {
          throw CodeConstructionError(name_ + ": logical pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                      ") has wrong commutation");
        }
      }
    }
  }

  std::string name_;
  BitMat hx_;
  BitMat hz_;
  std::vector<PauliError> logical_x_;
  std::vector<PauliError> logical_z_;
  gf2::RowSpace x_stabilizers_;
  gf2::RowSpace z_stabilizers_;
};

/// Perfect measurement of every stabilizer: Hz * x then Hx * z.
inline Syndrome extract_syndrome(const CssCode& code, const PauliError& e) {
  if (e.size() != code.n()) {
    throw DimensionError("extract_syndrome: error on " + std::to_string(e.size()) + " qubits, code has " +
                         std::to_string(code.n()));
  }
  return Syndrome{gf2::mat_vec_mul(code.hz(), e.x()).concat(gf2::mat_vec_mul(code.hx(), e.z())), code.hz().rows(),
                  code.hx().rows()};
}

/// Product of two Paulis, dropping the phase.
inline PauliError apply_correction(const PauliError& e, const PauliError& c) {
  if (e.size() != c.size()) throw DimensionError("apply_correction: error and correction sizes differ");
  return {e.x() ^ c.x(), e.z() ^ c.z()};
}

/// Decides whether a residual acts trivially on the code space.
///
/// An x-part with zero syndrome is harmless iff it lies in the span of the
/// X-type stabilizer supports (rows of Hx); likewise the z-part against Hz.
inline ResidualClass classify_residual(const CssCode& code, const PauliError& r) {
  if (r.size() != code.n()) throw DimensionError("classify_residual: size mismatch");
  if (!extract_syndrome(code, r).is_zero()) return ResidualClass::SyndromeNonzero;
  const bool fx = !code.x_stabilizers().contains(r.x());
  const bool fz = !code.z_stabilizers().contains(r.z());
  if (fx && fz) return ResidualClass::LogicalY;
  if (fx) return ResidualClass::LogicalX;
  if (fz) return ResidualClass::LogicalZ;
  return ResidualClass::Trivial;
}

}  // namespace qgec
