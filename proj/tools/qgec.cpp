// qgec: code inspection, dataset generation, Monte Carlo sweeps, offline
// evaluation, and a reference decoder server for the wire protocol.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgec/qgec.hpp"

namespace {

int cmd_code_info(const std::string& id) {
  const auto handle = qgec::CodeHandle::load(id);
  std::cout << qgec::format_code_info(qgec::code_info(handle));
  return 0;
}

struct DatasetArgs {
  std::string code = "golay:h1";
  double p = -1;
  double p_min = -1;
  double p_max = -1;
  double p_step = -1;
  double eta = 1.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_dataset_gen(const DatasetArgs& a) {
  const auto handle = qgec::CodeHandle::load(a.code);
  qgec::DatasetConfig cfg;
  cfg.code_id = a.code;
  cfg.eta = a.eta;
  cfg.count = a.count;
  cfg.seed = a.seed;
  if (a.p >= 0) {
    cfg.p_values = {a.p};
  } else if (a.p_min > 0 && a.p_max > 0 && a.p_step > 0) {
    qgec::SweepConfig grid;
    grid.p_min = a.p_min;
    grid.p_max = a.p_max;
    grid.p_step = a.p_step;
    cfg.p_values = grid.grid();
  } else {
    throw qgec::ConfigError("dataset gen: give --p, or all of --p-min/--p-max/--p-step");
  }
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw qgec::DatasetError("cannot open " + a.out + " for writing");
  qgec::generate_dataset(cfg, handle.code(), out);
  out.close();
  if (!out) throw qgec::DatasetError("write to " + a.out + " failed");
  return 0;
}

int cmd_sweep(const qgec::SweepConfig& cfg, const std::string& out_path, bool quiet) {
  const auto handle = qgec::CodeHandle::load(cfg.code_id);
  auto decoder = handle.make_decoder(cfg.decoder_id);
  const auto result = qgec::run_sweep(cfg, handle.code(), *decoder, [&](const qgec::PointResult& pt) {
    if (!quiet) {
      std::fprintf(stderr, "p=%s failures=%llu/%llu\n", qgec::format_double(pt.p).c_str(),
                   static_cast<unsigned long long>(pt.failures()), static_cast<unsigned long long>(pt.trials));
    }
  });
  decoder.reset();

  std::ofstream csv(out_path);
  if (!csv) throw std::runtime_error("cannot open " + out_path + " for writing");
  qgec::write_sweep_csv(csv, result);
  std::ofstream sidecar(out_path + ".json");
  sidecar << qgec::sweep_sidecar(result).dump(2) << '\n';
  if (!csv || !sidecar) throw std::runtime_error("write to " + out_path + " failed");
  if (result.aborted) throw qgec::DecodeError("sweep aborted (partial results written): " + result.error);
  return 0;
}

int cmd_eval(const std::string& dataset_path, const std::string& predictions_path) {
  std::optional<qgec::CodeHandle> handle;
  const auto ds = qgec::load_dataset_file(dataset_path, &handle);
  std::ifstream preds(predictions_path);
  if (!preds) throw qgec::DatasetError("cannot open predictions " + predictions_path);
  const auto r = qgec::evaluate_predictions(handle->code(), ds, preds);
  const auto ci = r.interval();
  std::cout << "code: " << handle->id() << '\n'
            << "records: " << r.trials << '\n'
            << "failures: " << r.failures() << '\n'
            << "logical_error_rate: " << qgec::format_double(r.rate()) << '\n'
            << "ci95: " << qgec::format_double(ci.low) << ' ' << qgec::format_double(ci.high) << '\n'
            << "fail_x: " << r.fail_x << '\n'
            << "fail_z: " << r.fail_z << '\n'
            << "fail_y: " << r.fail_y << '\n'
            << "inconsistent: " << r.inconsistent << '\n';
  return 0;
}

int cmd_serve(const std::string& code_id, const std::string& decoder_id, const std::string& listen, bool once) {
  const auto handle = qgec::CodeHandle::load(code_id);
  auto decoder = handle.make_decoder(decoder_id);
  if (listen.empty()) {
    auto ch = qgec::wire::LineChannel::borrow(STDIN_FILENO, STDOUT_FILENO);
    return qgec::wire::serve_session(ch, handle.code(), *decoder);
  }
  const auto addr = qgec::wire::SocketAddress::parse(listen);
  if (!addr) throw std::invalid_argument("--listen expects unix:<path> or tcp:<ip>:<port>");
  qgec::wire::Listener listener(*addr);
  std::cout << "READY" << std::endl;
  int status = 0;
  do {
    qgec::wire::LineChannel ch(listener.accept(), std::chrono::milliseconds(-1));
    status = qgec::wire::serve_session(ch, handle.code(), *decoder);
  } while (!once);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Golay / toric code decoding harness"};
  app.require_subcommand(1);

  auto* code = app.add_subcommand("code", "Inspect a code");
  code->require_subcommand(1);
  std::string info_id;
  auto* info = code->add_subcommand("info", "Print n, k, d, stabilizer count and operator weights");
  info->add_option("id", info_id, "Code id (golay:h1|h2|h3, toric:<d>)")->required();

  auto* dataset = app.add_subcommand("dataset", "Dataset tools");
  dataset->require_subcommand(1);
  DatasetArgs ds;
  auto* gen = dataset->add_subcommand("gen", "Sample (syndrome, error label) records");
  gen->add_option("--code", ds.code, "Code id")->required();
  gen->add_option("--p", ds.p, "Physical error rate");
  gen->add_option("--p-min", ds.p_min, "Draw p per record from a grid: lower end");
  gen->add_option("--p-max", ds.p_max, "Grid upper end");
  gen->add_option("--p-step", ds.p_step, "Grid step");
  gen->add_option("--eta", ds.eta, "X/Z correlation")->capture_default_str();
  gen->add_option("--count", ds.count, "Number of records")->required();
  gen->add_option("--seed", ds.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", ds.out, "Output path")->required();

  qgec::SweepConfig sc;
  std::string sweep_out;
  bool quiet = false;
  auto* sweep = app.add_subcommand("sweep", "Logical error rate over a p grid");
  sweep->add_option("--code", sc.code_id, "Code id")->required();
  sweep->add_option("--decoder", sc.decoder_id, "table | match | external:<command|unix:path|tcp:host:port>")
      ->required();
  sweep->add_option("--p-min", sc.p_min, "Lowest p")->capture_default_str();
  sweep->add_option("--p-max", sc.p_max, "Highest p")->capture_default_str();
  sweep->add_option("--p-step", sc.p_step, "Grid step")->capture_default_str();
  sweep->add_option("--trials", sc.trials, "Shots per point")->capture_default_str();
  sweep->add_option("--eta", sc.eta, "X/Z correlation")->capture_default_str();
  sweep->add_option("--seed", sc.seed, "RNG seed")->capture_default_str();
  sweep->add_option("--threads", sc.threads, "Worker threads (default: QGEC_THREADS or all cores)");
  sweep->add_option("--out", sweep_out, "CSV output path (sidecar: <out>.json)")->required();
  sweep->add_flag("--quiet", quiet, "No per-point progress on stderr");

  std::string eval_dataset, eval_predictions;
  auto* eval = app.add_subcommand("eval", "Score a predictions file against a dataset");
  eval->add_option("--dataset", eval_dataset, "Dataset path")->required();
  eval->add_option("--predictions", eval_predictions, "One 2n-bit correction per line")->required();

  std::string serve_code = "golay:h1", serve_decoder, serve_listen;
  bool serve_once = false;
  auto* serve = app.add_subcommand("serve", "Answer the decoder wire protocol with a built-in decoder");
  serve->add_option("--code", serve_code, "Code id")->capture_default_str();
  serve->add_option("--decoder", serve_decoder, "table (golay) or match (toric); default picks by code");
  serve->add_option("--listen", serve_listen, "unix:<path> or tcp:<ip>:<port>; stdin/stdout if omitted");
  serve->add_flag("--once", serve_once, "Exit after the first socket session");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (info->parsed()) return cmd_code_info(info_id);
    if (gen->parsed()) return cmd_dataset_gen(ds);
    if (sweep->parsed()) return cmd_sweep(sc, sweep_out, quiet);
    if (eval->parsed()) return cmd_eval(eval_dataset, eval_predictions);
    if (serve->parsed()) {
      if (serve_decoder.empty()) serve_decoder = serve_code.starts_with("toric:") ? "match" : "table";
      return cmd_serve(serve_code, serve_decoder, serve_listen, serve_once);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
