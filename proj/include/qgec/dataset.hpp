#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgec/css_code.hpp"
#include "qgec/noise.hpp"
#include "qgec/registry.hpp"
#include "qgec/sweep.hpp"

namespace qgec {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDatasetFormat = "qgec-dataset";
inline constexpr std::string_view kBitOrder =
    "syndrome: Z-type check outcomes (detect X errors) then X-type check outcomes; "
    "label: x-part qubits 0..n-1 then z-part qubits 0..n-1; character 0 is index 0";

/// Stream slot for dataset records, kept apart from sweep grid indices.
inline constexpr std::uint64_t kDatasetStream = 0xda7a5e7ULL;

struct DatasetConfig {
  std::string code_id = "golay:h1";
  /// One value: fixed p. Several: each record draws p uniformly from the list.
  std::vector<double> p_values{0.01};
  double eta = 1.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
};

struct DatasetRecord {
  std::string syndrome;
  std::string label;
};

/// Header line plus one "<syndrome> <label>" line per record. Record r uses
/// Rng(seed, kDatasetStream, r).
inline void generate_dataset(const DatasetConfig& cfg, const CssCode& code, std::ostream& os) {
  if (cfg.p_values.empty()) throw ConfigError("dataset: no p value given");
  std::vector<NoiseModel> models;
  for (double p : cfg.p_values) models.emplace_back(p, cfg.eta);

  nlohmann::json header = {
      {"format", kDatasetFormat},
      {"version", 1},
      {"code", code.name()},
      {"eta", cfg.eta},
      {"seed", cfg.seed},
      {"count", cfg.count},
      {"n_qubits", code.n()},
      {"n_syndrome", code.syndrome_bits()},
      {"n_label", 2 * code.n()},
      {"bit_order", kBitOrder},
  };
  if (cfg.p_values.size() == 1) {
    header["p"] = cfg.p_values.front();
  } else {
    header["p"] = nullptr;
    header["p_grid"] = cfg.p_values;
  }
  os << header.dump() << '\n';

  for (std::uint64_t r = 0; r < cfg.count; ++r) {
    Rng rng(cfg.seed, kDatasetStream, r);
    const NoiseModel& model = models.size() == 1 ? models.front() : models[rng.below(models.size())];
    const PauliError e = sample_error(model, code.n(), rng);
    os << extract_syndrome(code, e).to_string() << ' ' << e.to_label() << '\n';
  }
  if (!os) throw DatasetError("dataset: write failed");
}

struct Dataset {
  nlohmann::json header;
  std::vector<DatasetRecord> records;
};

/// Parses a dataset and checks every record's label against its syndrome.
inline Dataset load_dataset(std::istream& is, const CssCode& code) {
  Dataset ds;
  std::string line;
  if (!std::getline(is, line)) throw DatasetError("dataset: missing header line");
  try {
    ds.header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& ex) {
    throw DatasetError(std::string("dataset: header is not valid JSON: ") + ex.what());
  }
  if (ds.header.value("format", "") != kDatasetFormat) throw DatasetError("dataset: header format is not qgec-dataset");
  if (ds.header.value("code", "") != code.name()) {
    throw DatasetError("dataset: header code '" + ds.header.value("code", "") + "' does not match " + code.name());
  }
  const std::size_t n_syn = code.syndrome_bits();
  const std::size_t n_lab = 2 * code.n();
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw DatasetError("dataset line " + std::to_string(lineno) + ": missing separator");
    DatasetRecord rec{line.substr(0, sp), line.substr(sp + 1)};
    if (rec.syndrome.size() != n_syn || rec.label.size() != n_lab || !wire::is_bit_string(rec.syndrome) ||
        !wire::is_bit_string(rec.label)) {
      throw DatasetError("dataset line " + std::to_string(lineno) + ": expected " + std::to_string(n_syn) + "+" +
                         std::to_string(n_lab) + " bits");
    }
    if (extract_syndrome(code, PauliError::from_label(rec.label)).to_string() != rec.syndrome) {
      throw DatasetError("dataset line " + std::to_string(lineno) + ": label does not reproduce the stored syndrome");
    }
    ds.records.push_back(std::move(rec));
  }
  if (ds.header.contains("count") && ds.header["count"].get<std::uint64_t>() != ds.records.size()) {
    throw DatasetError("dataset: header count " + ds.header["count"].dump() + " but " +
                       std::to_string(ds.records.size()) + " records");
  }
  return ds;
}

inline Dataset load_dataset_file(const std::string& path, std::optional<CodeHandle>* code_out = nullptr) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset " + path);
  std::string first;
  if (!std::getline(in, first)) throw DatasetError("dataset " + path + " is empty");
  std::string code_id;
  try {
    code_id = nlohmann::json::parse(first).value("code", "");
  } catch (const nlohmann::json::exception&) {
    throw DatasetError("dataset " + path + ": header is not valid JSON");
  }
  CodeHandle handle = CodeHandle::load(code_id);
  in.clear();
  in.seekg(0);
  Dataset ds = load_dataset(in, handle.code());
  if (code_out != nullptr) *code_out = std::move(handle);
  return ds;
}

/// Scores corrections against dataset labels: residual = label XOR prediction.
inline PointResult evaluate_predictions(const CssCode& code, const Dataset& ds, std::istream& predictions) {
  PointResult report;
  report.p = ds.header.contains("p") && ds.header["p"].is_number() ? ds.header["p"].get<double>() : 0.0;
  const std::size_t n_lab = 2 * code.n();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(predictions, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && predictions.peek() == std::char_traits<char>::eof()) break;
    if (lineno > ds.records.size()) {
      throw DatasetError("predictions line " + std::to_string(lineno) + ": more predictions than dataset records (" +
                         std::to_string(ds.records.size()) + ")");
    }
    if (line.size() != n_lab || !wire::is_bit_string(line)) {
      throw DatasetError("predictions line " + std::to_string(lineno) + ": expected " + std::to_string(n_lab) +
                         " bits of 0/1, got '" + line + "'");
    }
    const PauliError label = PauliError::from_label(ds.records[lineno - 1].label);
    report.record(classify_residual(code, apply_correction(label, PauliError::from_label(line))));
  }
  if (report.trials != ds.records.size()) {
    throw DatasetError("predictions file has " + std::to_string(report.trials) + " lines, dataset has " +
                       std::to_string(ds.records.size()) + " records");
  }
  return report;
}

}  // namespace qgec
