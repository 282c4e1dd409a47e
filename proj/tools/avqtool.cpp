// Command-line front end: symmetrizability checks, secrecy lower bounds,
// finite-blocklength simulation, super-activation analysis, and a one-shot
// recomputation of the bundled demonstration suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "avq/bounds.hpp"
#include "avq/examples.hpp"
#include "avq/io.hpp"
#include "avq/sim.hpp"

namespace {

using nlohmann::json;

struct OutputSink {
  std::string base;  // empty: stdout only

  void emit(const std::string& report_json) const {
    std::cout << report_json;
    if (!base.empty()) {
      avq::write_text_file(base + ".json", report_json);
      avq::write_text_file(base + ".tsv", avq::report_to_tsv(report_json));
    }
  }
};

avq::BoundOpts bound_opts_from(int grid, int q_grid, int leakage_order, double base) {
  avq::BoundOpts opts;
  opts.p_grid = grid;
  opts.q_grid = q_grid;
  opts.leakage_order = leakage_order;
  opts.base = base;
  if (opts.leakage_order < 1) avq::throw_invariant("leakage order must be >= 1");
  if (opts.base <= 1.0) avq::throw_invariant("log base must exceed 1");
  return opts;
}

int run_check_sym(const std::string& file, double tol, const std::string& witness_out,
                  const OutputSink& sink) {
  const avq::AVWC channel = avq::load_avwc(file);
  const avq::SymResult result = avq::check_symmetrizable(channel.legal, tol);
  sink.emit(avq::format_sym_result(channel, result));
  if (!witness_out.empty() && result.witness) {
    avq::write_text_file(witness_out,
                         avq::format_witness(*result.witness, result.residual, result.tolerance));
  }
  return 0;
}

int run_bound(const std::string& file, const avq::BoundOpts& opts, const OutputSink& sink) {
  const avq::AVWC channel = avq::load_avwc(file);
  const avq::BoundReport report = avq::secrecy_lower_bound(channel, opts);
  sink.emit(avq::format_bound_report(channel, report));
  return 0;
}

int run_simulate(const std::string& channel_file, const std::string& code_file,
                 const std::string& sweep_mode, long long cap, std::optional<uint64_t> seed,
                 const OutputSink& sink) {
  const avq::AVWC channel = avq::load_avwc(channel_file);
  const avq::Code code = avq::load_code(code_file);
  avq::JammerSweep sweep;
  sweep.cap = cap;
  if (sweep_mode == "exhaustive") {
    sweep.mode = avq::JammerSweep::Mode::exhaustive;
  } else if (sweep_mode == "sampled") {
    sweep.mode = avq::JammerSweep::Mode::sampled;
    if (!seed) avq::throw_invariant("sampled sweeps require --seed");
    sweep.seed = *seed;
  } else {
    avq::throw_invariant("unknown sweep mode '" + sweep_mode + "'");
  }
  const avq::WorstCaseReport report = avq::worst_case(code, channel, sweep);
  sink.emit(avq::format_worst_case(channel, report));
  return 0;
}

json dichotomy_body(const avq::AVWC& channel, const avq::DichotomyReport& rep) {
  const json full = json::parse(avq::format_dichotomy_report(channel, rep));
  return full;
}

int run_superactivate(const std::string& file1, const std::string& file2,
                      const avq::BoundOpts& opts, const OutputSink& sink) {
  const avq::AVWC c1 = avq::load_avwc(file1);
  const avq::AVWC c2 = avq::load_avwc(file2);
  const avq::AVWC prod = avq::product_avwc(c1, c2);

  const avq::DichotomyReport r1 = avq::dichotomy_report(c1, opts);
  const avq::DichotomyReport r2 = avq::dichotomy_report(c2, opts);
  const avq::DichotomyReport rp = avq::dichotomy_report(prod, opts);

  json doc;
  doc["factor_1"] = dichotomy_body(c1, r1);
  doc["factor_2"] = dichotomy_body(c2, r2);
  doc["product"] = dichotomy_body(prod, rp);
  doc["super_activation"] = r1.deterministic_secrecy_lb == 0.0 &&
                            r2.deterministic_secrecy_lb == 0.0 &&
                            rp.deterministic_secrecy_lb > 0.0;
  sink.emit(doc.dump(2) + "\n");
  return 0;
}

int run_reproduce(const std::string& out_dir) {
  const avq::AVWC blind = avq::examples::sym_blind();
  const avq::AVWC copy = avq::examples::robust_copy();
  const avq::AVWC prod = avq::examples::product_channel();

  json doc;

  // Inner jammer minimization on the symmetrizable channel at uniform input.
  {
    const avq::SimplexDist p = avq::SimplexDist::uniform(2);
    avq::BoundOpts opts;
    auto [qstar, value] = avq::min_chi_over_jammer(blind.legal, p, opts);
    json entry;
    entry["channel"] = blind.name;
    entry["P"] = p.probs();
    entry["value_bits"] = value;
    entry["argmin_Q"] = qstar.probs();
    entry["stationarity_residual"] = std::abs(avq::chi_q_derivative(blind.legal, p, 0.5));
    entry["fd_agreement_q03"] = avq::chi_gradient_check(blind.legal, p, 0.3, 1e-4);
    doc["jammer_min_chi"] = std::move(entry);
  }

  // Symmetrizability decisions, including the closed-form shift witness.
  {
    json rows = json::array();
    for (const auto& [name, channel] : avq::examples::bundled()) {
      const avq::SymResult res = avq::check_symmetrizable(channel.legal);
      json row;
      row["channel"] = name;
      row["symmetrizable"] = res.symmetrizable;
      row["residual"] = res.residual;
      if (name == blind.name) {
        row["shift_witness_residual"] =
            avq::residual(channel.legal, avq::SymWitness(avq::examples::shift_witness()));
      }
      rows.push_back(std::move(row));
    }
    doc["symmetrizability"] = std::move(rows);
  }

  // The copying wiretapper pins leakage to log2 J for deterministic codes.
  {
    json rows = json::array();
    for (const auto& [label, code] :
         {std::pair<std::string, avq::Code>{"basis", avq::examples::basis_code()},
          std::pair<std::string, avq::Code>{"repetition", avq::examples::repetition_code()}}) {
      json row;
      row["code"] = label;
      row["J"] = code.J;
      row["log2_J"] = std::log2(static_cast<double>(code.J));
      row["leakage"] =
          avq::leakage(code, copy, std::vector<int>(static_cast<size_t>(code.n), 0));
      rows.push_back(std::move(row));
    }
    doc["copy_wiretap_leakage"] = std::move(rows);
  }

  // Dichotomy + super-activation across the bundled channels.
  {
    avq::BoundOpts opts;
    const avq::DichotomyReport r1 = avq::dichotomy_report(blind, opts);
    const avq::DichotomyReport r2 = avq::dichotomy_report(copy, opts);
    const avq::DichotomyReport rp = avq::dichotomy_report(prod, opts);
    doc["dichotomy"] = json::array({dichotomy_body(blind, r1), dichotomy_body(copy, r2),
                                    dichotomy_body(prod, rp)});
    doc["super_activation"] = r1.deterministic_secrecy_lb == 0.0 &&
                              r2.deterministic_secrecy_lb == 0.0 &&
                              rp.deterministic_secrecy_lb > 0.0;
  }

  const std::string report = doc.dump(2) + "\n";
  std::cout << report;

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "channels");
    avq::write_text_file((fs::path(out_dir) / "report.json").string(), report);
    avq::write_text_file((fs::path(out_dir) / "summary.tsv").string(),
                         avq::report_to_tsv(report));
    avq::write_text_file((fs::path(out_dir) / "channels" / "sym_blind.json").string(),
                         avq::format_avwc(blind));
    avq::write_text_file((fs::path(out_dir) / "channels" / "robust_copy.json").string(),
                         avq::format_avwc(copy));
    avq::write_text_file((fs::path(out_dir) / "channels" / "product.json").string(),
                         avq::format_avwc(prod));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arbitrarily varying classical-quantum wiretap channel toolkit"};
  app.require_subcommand(1);

  std::string file1, file2, code_file, witness_out, out_base, out_dir = "reproduce-out";
  std::string sweep_mode = "exhaustive";
  double tol = avq::kDefaultSymTol;
  double base = 2.0;
  int grid = 0, q_grid = 0, leakage_order = 1;
  long long cap = 4096;
  std::optional<uint64_t> seed;

  auto* check = app.add_subcommand("check-sym", "decide symmetrizability of the legal family");
  check->add_option("FILE", file1, "channel file")->required();
  check->add_option("--tol", tol, "decision tolerance");
  check->add_option("--witness", witness_out, "write the witness document here");
  check->add_option("--out", out_base, "write report to BASE.json and BASE.tsv");

  auto* bound = app.add_subcommand("bound", "evaluate the secrecy lower bound");
  bound->add_option("FILE", file1, "channel file")->required();
  bound->add_option("--grid", grid, "P-grid points per simplex dimension (0 = auto)");
  bound->add_option("--q-grid", q_grid, "Q-grid points per simplex dimension (0 = auto)");
  bound->add_option("--leakage-order", leakage_order, "finite-n leakage surrogate order");
  bound->add_option("--base", base, "log base for reported quantities");
  bound->add_option("--out", out_base, "write report to BASE.json and BASE.tsv");

  auto* sim = app.add_subcommand("simulate", "worst-case code evaluation over jammer sequences");
  sim->add_option("CHANNEL", file1, "channel file")->required();
  sim->add_option("--code", code_file, "code file")->required();
  sim->add_option("--sweep", sweep_mode, "exhaustive | sampled");
  sim->add_option("--cap", cap, "sweep cap (exhaustive limit or sample count)");
  sim->add_option("--seed", seed, "sampled-mode RNG seed");
  sim->add_option("--out", out_base, "write report to BASE.json and BASE.tsv");

  auto* super = app.add_subcommand("superactivate", "dichotomy analysis of two channels and their product");
  super->add_option("FILE1", file1, "first channel file")->required();
  super->add_option("FILE2", file2, "second channel file")->required();
  super->add_option("--grid", grid, "P-grid points per simplex dimension (0 = auto)");
  super->add_option("--out", out_base, "write report to BASE.json and BASE.tsv");

  auto* repro = app.add_subcommand("reproduce", "recompute the bundled demonstration suite");
  repro->add_option("--out", out_dir, "output directory (report, summary, channel files)");

  CLI11_PARSE(app, argc, argv);

  try {
    const OutputSink sink{out_base};
    if (check->parsed()) {
      if (tol <= 0.0) avq::throw_invariant("--tol must be positive");
      return run_check_sym(file1, tol, witness_out, sink);
    }
    if (bound->parsed()) {
      return run_bound(file1, bound_opts_from(grid, q_grid, leakage_order, base), sink);
    }
    if (sim->parsed()) {
      if (cap <= 0) avq::throw_invariant("--cap must be positive");
      return run_simulate(file1, code_file, sweep_mode, cap, seed, sink);
    }
    if (super->parsed()) {
      return run_superactivate(file1, file2, bound_opts_from(grid, q_grid, leakage_order, base),
                               sink);
    }
    if (repro->parsed()) {
      return run_reproduce(out_dir);
    }
  } catch (const avq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
