#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "qgec/css_code.hpp"

namespace qgec {

/// splitmix64 finalizer; used only to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the private stream for (seed, a, b), e.g. (seed, p-index, trial).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

/// Per-trial generator. std::mt19937_64 output is fixed by the standard, and
/// doubles are formed from the top 53 bits by hand rather than through
/// std::uniform_real_distribution, whose algorithm varies across libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) : engine_(stream_seed(seed, a, b)) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [0, bound), bound > 0; Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const auto x = engine_();
      const auto m = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

 private:
  std::mt19937_64 engine_;
};

class InvalidNoiseModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// i.i.d. single-qubit Pauli channel: X and Z each with p/(eta+2), Y with
/// eta*p/(eta+2), identity with 1-p.
class NoiseModel {
 public:
  NoiseModel(double p, double eta) : p_(p), eta_(eta) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidNoiseModel("noise: p must be in [0, 1], got " + std::to_string(p));
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
      throw InvalidNoiseModel("noise: eta must be finite and >= 0, got " + std::to_string(eta));
    }
    px_ = p / (eta + 2.0);
    pz_ = px_;
    py_ = eta * p / (eta + 2.0);
  }

  double p() const noexcept { return p_; }
  double eta() const noexcept { return eta_; }
  double px() const noexcept { return px_; }
  double py() const noexcept { return py_; }
  double pz() const noexcept { return pz_; }
  double pi() const noexcept { return 1.0 - p_; }

  double probability(Pauli q) const noexcept {
    switch (q) {
      case Pauli::I: return pi();
      case Pauli::X: return px_;
      case Pauli::Y: return py_;
      case Pauli::Z: return pz_;
    }
    return 0.0;
  }

  /// One draw; the unit interval is cut as [X | Y | Z | I].
  Pauli sample_qubit(Rng& rng) const {
    const double u = rng.uniform();
    if (u < px_) return Pauli::X;
    if (u < px_ + py_) return Pauli::Y;
    if (u < px_ + py_ + pz_) return Pauli::Z;
    return Pauli::I;
  }

 private:
  double p_;
  double eta_;
  double px_ = 0;
  double py_ = 0;
  double pz_ = 0;
};

inline PauliError sample_error(const NoiseModel& model, std::size_t n, Rng& rng) {
  PauliError e(n);
  for (std::size_t q = 0; q < n; ++q) {
    const Pauli s = model.sample_qubit(rng);
    if (s != Pauli::I) e.set(q, s);
  }
  return e;
}

/// Probability of exactly this Pauli under the model (product over qubits).
inline double error_probability(const NoiseModel& model, const PauliError& e) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t q = 0; q < e.size(); ++q) ++counts[static_cast<unsigned>(e.at(q))];
  double prob = 1.0;
  for (unsigned k = 0; k < 4; ++k) {
    if (counts[k] > 0) prob *= std::pow(model.probability(static_cast<Pauli>(k)), static_cast<double>(counts[k]));
  }
  return prob;
}

}  // namespace qgec
