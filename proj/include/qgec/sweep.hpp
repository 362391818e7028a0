#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgec/css_code.hpp"
#include "qgec/decoders.hpp"
#include "qgec/noise.hpp"
#include "qgec/stats.hpp"

namespace qgec {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
  std::string code_id = "golay:h1";
  std::string decoder_id = "table";
  double p_min = 0.001;
  double p_max = 0.05;
  double p_step = 0.001;
  std::uint64_t trials = 10000;
  double eta = 1.0;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: QGEC_THREADS, else hardware concurrency

  void validate() const {
    if (!(p_min > 0.0 && p_min <= p_max && p_max <= 0.5)) {
      throw ConfigError("sweep: need 0 < p_min <= p_max <= 0.5");
    }
    if (!(p_step > 0.0)) throw ConfigError("sweep: p_step must be > 0");
    if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
    if (!(eta >= 0.0)) throw ConfigError("sweep: eta must be >= 0");
  }

  /// Inclusive grid p_min, p_min + step, ..., up to p_max (with a 1e-9
  /// relative slack so that 0.001..0.05 step 0.001 has 50 points).
  std::vector<double> grid() const {
    validate();
    const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / p_step + 1e-9)) + 1;
    std::vector<double> ps;
    ps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) ps.push_back(p_min + static_cast<double>(i) * p_step);
    return ps;
  }
};

/// Shot tallies at one physical error rate.
struct PointResult {
  double p = 0;
  std::uint64_t trials = 0;
  std::uint64_t fail_x = 0;
  std::uint64_t fail_z = 0;
  std::uint64_t fail_y = 0;
  std::uint64_t inconsistent = 0;

  std::uint64_t failures() const noexcept { return fail_x + fail_z + fail_y + inconsistent; }
  double rate() const noexcept { return trials == 0 ? 0.0 : static_cast<double>(failures()) / trials; }
  stats::Interval interval() const { return stats::wilson(failures(), trials); }

  void record(ResidualClass c) {
    ++trials;
    switch (c) {
      case ResidualClass::Trivial: break;
      case ResidualClass::LogicalX: ++fail_x; break;
      case ResidualClass::LogicalZ: ++fail_z; break;
      case ResidualClass::LogicalY: ++fail_y; break;
      case ResidualClass::SyndromeNonzero: ++inconsistent; break;
    }
  }
  PointResult& operator+=(const PointResult& o) {
    trials += o.trials;
    fail_x += o.fail_x;
    fail_z += o.fail_z;
    fail_y += o.fail_y;
    inconsistent += o.inconsistent;
    return *this;
  }
  friend bool operator==(const PointResult&, const PointResult&) = default;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PointResult> points;
  bool aborted = false;
  std::string error;

  std::vector<double> rates() const {
    std::vector<double> r;
    for (const auto& pt : points) r.push_back(pt.rate());
    return r;
  }
};

/// Thread count from QGEC_THREADS, falling back to the hardware.
inline unsigned default_threads() {
  if (const char* env = std::getenv("QGEC_THREADS"); env != nullptr && *env != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// One shot: sample, measure, decode, classify.
inline ResidualClass run_trial(const CssCode& code, const NoiseModel& model, Decoder& decoder, Rng& rng) {
  const PauliError e = sample_error(model, code.n(), rng);
  const DecoderOutcome out = decoder.decode(extract_syndrome(code, e));
  return classify_residual(code, apply_correction(e, out.correction));
}

/// Monte Carlo sweep over the config's p grid.
///
/// Trial t at grid index i draws from Rng(seed, i, t), so tallies do not
/// depend on thread count or scheduling. A DecodeError from the decoder
/// stops the sweep; completed points are kept and `aborted` is set.
inline SweepResult run_sweep(const SweepConfig& config, const CssCode& code, Decoder& decoder,
                             const std::function<void(const PointResult&)>& on_point = {}) {
  config.validate();
  SweepResult result;
  result.config = config;
  const auto ps = config.grid();
  unsigned threads = config.threads == 0 ? default_threads() : config.threads;
  if (!decoder.concurrent()) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.trials));

  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const NoiseModel model(ps[pi], config.eta);
    std::vector<PointResult> partial(threads);
    std::vector<std::string> errors(threads);
    auto work = [&](unsigned w) {
      try {
        for (std::uint64_t t = w; t < config.trials; t += threads) {
          Rng rng(config.seed, pi, t);
          partial[w].record(run_trial(code, model, decoder, rng));
        }
      } catch (const std::exception& ex) {
        errors[w] = ex.what();
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    for (const auto& err : errors) {
      if (!err.empty()) {
        result.aborted = true;
        result.error = err;
        return result;
      }
    }
    PointResult total;
    total.p = ps[pi];
    for (const auto& part : partial) total += part;
    result.points.push_back(total);
    if (on_point) on_point(total);
  }
  return result;
}

inline constexpr std::string_view kSweepCsvHeader = "p,trials,failures,rate,ci_low,ci_high,fail_x,fail_z,fail_y,inconsistent";

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << kSweepCsvHeader << '\n';
  for (const auto& pt : r.points) {
    const auto ci = pt.interval();
    os << format_double(pt.p) << ',' << pt.trials << ',' << pt.failures() << ',' << format_double(pt.rate()) << ','
       << format_double(ci.low) << ',' << format_double(ci.high) << ',' << pt.fail_x << ',' << pt.fail_z << ','
       << pt.fail_y << ',' << pt.inconsistent << '\n';
  }
}

inline nlohmann::json sweep_sidecar(const SweepResult& r) {
  const auto& c = r.config;
  return {
      {"code", c.code_id},
      {"decoder", c.decoder_id},
      {"p_min", c.p_min},
      {"p_max", c.p_max},
      {"p_step", c.p_step},
      {"points", r.points.size()},
      {"trials", c.trials},
      {"eta", c.eta},
      {"seed", c.seed},
      {"rng", "mt19937_64 per trial, seeded splitmix64(splitmix64(splitmix64(seed) ^ p_index) ^ trial)"},
      {"failure_rule", "any residual other than Trivial counts as one logical failure"},
      {"aborted", r.aborted},
      {"error", r.error},
  };
}

}  // namespace qgec
