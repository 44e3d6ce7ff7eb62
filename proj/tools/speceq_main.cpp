// speceq: tests for equality of two time series spectra, plus the
// simulation models and Monte Carlo harness behind them.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speceq/harness.hpp"
#include "speceq/nulldist.hpp"

namespace {

void print_human(const speceq::TestResult& r) {
  std::cout << std::setprecision(6);
  std::cout << (r.kind == speceq::TestKind::stationary
                    ? "stationary equal-spectra test"
                    : "blocked equal-time-varying-spectra test")
            << "\n";
  std::cout << "  T = " << r.T << ", L = " << r.L;
  if (r.kind == speceq::TestKind::blocked)
    std::cout << ", B = " << r.B << ", M = " << r.M;
  std::cout << ", alpha = " << r.alpha << "\n";
  std::cout << "  statistic      = " << r.statistic << "\n";
  std::cout << "  critical value = " << r.critical_value << "\n";
  std::cout << "  p-value        = " << r.p_value << "\n";
  if (!r.block_statistics.empty()) {
    std::cout << "  block statistics =";
    for (double s : r.block_statistics) std::cout << " " << s;
    std::cout << "\n";
  }
  std::cout << (r.reject ? "  REJECT equal spectra" : "  fail to reject")
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral equality tests for univariate time series pairs"};
  app.require_subcommand(1);

  // test
  auto* test_cmd =
      app.add_subcommand("test", "Run an equal-spectra test on a CSV file");
  std::string csv_path;
  double alpha = 0.05;
  std::string mode = "stationary";
  std::size_t opt_L = 0, opt_B = 0, opt_M = 0;
  bool no_demean = false, as_json = false;
  test_cmd->add_option("csv", csv_path, "two-column numeric CSV (x1,x2)")
      ->required();
  test_cmd->add_option("--alpha", alpha, "significance level");
  test_cmd->add_option("--mode", mode, "stationary|blocked")
      ->check(CLI::IsMember({"stationary", "blocked"}));
  test_cmd->add_option("--L", opt_L, "ratio-grid size (default: rule)");
  test_cmd->add_option("--B", opt_B, "block count (blocked mode)");
  test_cmd->add_option("--M", opt_M, "block length, even (blocked mode)");
  test_cmd->add_flag("--no-demean", no_demean, "skip per-channel demeaning");
  test_cmd->add_flag("--json", as_json, "machine-readable output");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a model to CSV");
  std::string model_name;
  std::size_t sim_T = 1024;
  double sim_rho = 0.1;
  std::uint64_t sim_seed = 0;
  std::string out_path;
  bool literal_text = false;
  sim_cmd->add_option("--model", model_name,
                      "A..R or path to a custom model file")
      ->required();
  sim_cmd->add_option("--T", sim_T, "sample length");
  sim_cmd->add_option("--rho", sim_rho, "innovation correlation");
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_option("--out", out_path, "output CSV path")->required();
  sim_cmd->add_flag("--literal-text", literal_text,
                    "keep the printed cross-channel terms of models I and O");

  // critical-values
  auto* cv_cmd = app.add_subcommand("critical-values",
                                    "Null quantiles kappa_{1-alpha}(B)");
  std::vector<double> cv_alphas{0.05, 0.10, 0.15};
  std::vector<std::size_t> cv_blocks{1};
  cv_cmd->add_option("--alpha", cv_alphas, "significance levels");
  cv_cmd->add_option("--B", cv_blocks, "block counts");

  // reproduce-table
  auto* table_cmd = app.add_subcommand(
      "reproduce-table", "Re-run a published rejection-probability table");
  int table_id = 1;
  std::size_t reps = 1000;
  std::uint64_t table_seed = 20240001;
  table_cmd->add_option("--table", table_id, "table number 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  table_cmd->add_option("--reps", reps, "Monte Carlo replications per cell");
  table_cmd->add_option("--seed", table_seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return 2;
  }

  try {
    if (*test_cmd) {
      const speceq::BivariateSeries data = speceq::load_csv(csv_path);
      speceq::TestConfig cfg;
      cfg.alpha = alpha;
      cfg.demean = !no_demean;
      if (opt_L) cfg.L = opt_L;
      if (opt_B) cfg.B = opt_B;
      if (opt_M) cfg.M = opt_M;
      const speceq::TestResult result =
          mode == "blocked" ? speceq::blocked_test(data, cfg)
                            : speceq::stationary_test(data, cfg);
      if (!result.warning.empty())
        std::cerr << "warning: " << result.warning << "\n";
      if (as_json)
        std::cout << speceq::test_result_to_json(result) << "\n";
      else
        print_human(result);
      return result.reject ? 1 : 0;
    }

    if (*sim_cmd) {
      speceq::ModelSpec spec;
      if (model_name.size() == 1) {
        spec.id = speceq::model_id_from_string(model_name);
      } else {
        spec = speceq::load_custom_model(model_name);
      }
      spec.T = sim_T;
      spec.rho = sim_rho;
      spec.literal_text = literal_text;
      speceq::write_csv(out_path, speceq::simulate(spec, sim_seed));
      return 0;
    }

    if (*cv_cmd) {
      std::cout << std::left << std::setw(8) << "alpha" << std::setw(6) << "B"
                << "kappa\n";
      std::cout << std::setprecision(10);
      for (double a : cv_alphas) {
        for (std::size_t b : cv_blocks) {
          std::cout << std::setw(8) << a << std::setw(6) << b
                    << speceq::blocked_quantile(a, b).value << "\n";
        }
      }
      return 0;
    }

    if (*table_cmd) {
      const speceq::TableReport report =
          speceq::reproduce_table(table_id, reps, table_seed);
      speceq::print_table(std::cout, report);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
