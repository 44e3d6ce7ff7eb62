#include "speceq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "speceq/nulldist.hpp"
#include "speceq/parallel.hpp"
#include "speceq/rng.hpp"

namespace speceq {

namespace {

// One test statistic per replication; the statistic does not depend on
// alpha, so the same simulations serve every level.
std::vector<double> replication_statistics(const Experiment& exp) {
  if (exp.replications < 100)
    throw std::invalid_argument("need at least 100 replications");
  std::vector<double> stats(exp.replications);
  std::mutex error_mutex;
  std::string first_error;
  parallel_for(exp.replications, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      try {
        const BivariateSeries data =
            simulate(exp.model, mix_seed(exp.base_seed, r));
        TestConfig cfg;
        const TestResult res = exp.kind == TestKind::stationary
                                   ? stationary_test(data, cfg)
                                   : blocked_test(data, cfg);
        stats[r] = res.statistic;
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        if (first_error.empty())
          first_error = "replication " + std::to_string(r) + ": " + e.what();
      }
    }
  });
  if (!first_error.empty()) throw std::runtime_error(first_error);
  return stats;
}

struct StationaryTableRow {
  char model;
  // per T in {128, 256, 512, 1024}: alpha 5/10/15% at rho=0.1, then rho=0.5
  double values[4][6];
};

struct BlockedTableRow {
  char model;
  // per T in {128, 256, 512, 1024}: alpha 5/10/15% at rho=0.5
  double values[4][3];
};

constexpr std::size_t kTableT[4] = {128, 256, 512, 1024};
constexpr double kTableAlpha[3] = {0.05, 0.10, 0.15};

const StationaryTableRow kTable1[] = {
    {'A',
     {{0.044, 0.081, 0.133, 0.041, 0.077, 0.133},
      {0.067, 0.131, 0.181, 0.075, 0.120, 0.168},
      {0.067, 0.120, 0.171, 0.060, 0.125, 0.156},
      {0.046, 0.094, 0.155, 0.039, 0.090, 0.140}}},
    {'B',
     {{0.056, 0.104, 0.150, 0.050, 0.088, 0.148},
      {0.056, 0.111, 0.168, 0.045, 0.103, 0.158},
      {0.066, 0.106, 0.155, 0.073, 0.118, 0.172},
      {0.056, 0.101, 0.164, 0.050, 0.097, 0.145}}},
    {'C',
     {{0.050, 0.098, 0.140, 0.042, 0.089, 0.135},
      {0.065, 0.127, 0.176, 0.057, 0.119, 0.165},
      {0.061, 0.110, 0.162, 0.054, 0.109, 0.150},
      {0.044, 0.096, 0.148, 0.044, 0.098, 0.137}}},
    {'D',
     {{0.046, 0.095, 0.130, 0.041, 0.080, 0.122},
      {0.058, 0.121, 0.172, 0.058, 0.113, 0.162},
      {0.060, 0.121, 0.160, 0.053, 0.105, 0.155},
      {0.045, 0.098, 0.148, 0.037, 0.091, 0.137}}},
    {'E',
     {{0.056, 0.118, 0.193, 0.053, 0.112, 0.167},
      {0.056, 0.093, 0.148, 0.057, 0.106, 0.149},
      {0.030, 0.077, 0.121, 0.038, 0.093, 0.134},
      {0.050, 0.112, 0.164, 0.064, 0.111, 0.166}}},
};

const StationaryTableRow kTable2[] = {
    {'F',
     {{0.183, 0.279, 0.358, 0.197, 0.279, 0.347},
      {0.425, 0.541, 0.614, 0.417, 0.533, 0.606},
      {0.617, 0.724, 0.782, 0.614, 0.727, 0.783},
      {0.835, 0.899, 0.929, 0.829, 0.895, 0.922}}},
    {'G',
     {{0.128, 0.228, 0.299, 0.130, 0.206, 0.295},
      {0.285, 0.410, 0.488, 0.273, 0.384, 0.475},
      {0.443, 0.566, 0.628, 0.440, 0.567, 0.628},
      {0.639, 0.765, 0.828, 0.642, 0.750, 0.809}}},
    {'H',
     {{0.089, 0.162, 0.224, 0.072, 0.153, 0.223},
      {0.117, 0.209, 0.286, 0.111, 0.201, 0.280},
      {0.138, 0.235, 0.321, 0.142, 0.245, 0.330},
      {0.260, 0.388, 0.480, 0.256, 0.396, 0.504}}},
    {'I',
     {{0.129, 0.200, 0.254, 0.113, 0.183, 0.244},
      {0.166, 0.242, 0.304, 0.147, 0.240, 0.315},
      {0.182, 0.281, 0.354, 0.174, 0.269, 0.350},
      {0.288, 0.419, 0.488, 0.320, 0.428, 0.507}}},
};

const BlockedTableRow kTable3[] = {
    {'J',
     {{0.057, 0.119, 0.176},
      {0.062, 0.116, 0.174},
      {0.066, 0.132, 0.180},
      {0.054, 0.109, 0.161}}},
    {'K',
     {{0.055, 0.094, 0.135},
      {0.055, 0.106, 0.158},
      {0.059, 0.096, 0.135},
      {0.045, 0.102, 0.162}}},
    {'L',
     {{0.066, 0.125, 0.186},
      {0.106, 0.163, 0.223},
      {0.078, 0.141, 0.206},
      {0.083, 0.152, 0.218}}},
    {'M',
     {{0.048, 0.100, 0.166},
      {0.055, 0.099, 0.149},
      {0.055, 0.102, 0.153},
      {0.038, 0.093, 0.154}}},
    {'A',
     {{0.053, 0.119, 0.177},
      {0.062, 0.126, 0.190},
      {0.071, 0.130, 0.186},
      {0.049, 0.099, 0.156}}},
    {'B',
     {{0.064, 0.118, 0.159},
      {0.045, 0.090, 0.147},
      {0.051, 0.105, 0.145},
      {0.057, 0.123, 0.171}}},
};

const BlockedTableRow kTable4[] = {
    {'N',
     {{0.114, 0.204, 0.277},
      {0.205, 0.328, 0.404},
      {0.353, 0.492, 0.590},
      {0.514, 0.662, 0.753}}},
    {'O',
     {{0.182, 0.301, 0.389},
      {0.168, 0.288, 0.366},
      {0.332, 0.466, 0.571},
      {0.466, 0.618, 0.715}}},
    {'P',
     {{0.529, 0.658, 0.732},
      {0.766, 0.862, 0.901},
      {0.955, 0.988, 0.991},
      {0.999, 1.000, 1.000}}},
    {'Q',
     {{0.099, 0.171, 0.230},
      {0.249, 0.360, 0.443},
      {0.764, 0.851, 0.879},
      {0.999, 1.000, 1.000}}},
    {'R',
     {{0.122, 0.209, 0.287},
      {0.163, 0.265, 0.344},
      {0.261, 0.380, 0.497},
      {0.714, 0.812, 0.864}}},
    {'F',
     {{0.117, 0.185, 0.261},
      {0.173, 0.272, 0.379},
      {0.307, 0.442, 0.533},
      {0.408, 0.586, 0.692}}},
};

// 3-SE gate with the binomial SE computed at the printed value, clamped
// away from {0,1} so cells printed as 1.000 stay attainable.
double gate_3se(double published_p, std::size_t replications) {
  const double lo = 0.5 / static_cast<double>(replications);
  const double p = std::clamp(published_p, lo, 1.0 - lo);
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

}  // namespace

std::vector<MCEstimate> rejection_probability(const Experiment& exp) {
  for (double a : exp.alphas) {
    if (!(a > 0.0) || !(a < 1.0))
      throw std::domain_error("alpha outside (0, 1)");
  }
  const std::vector<double> stats = replication_statistics(exp);

  std::size_t B = 1;
  if (exp.kind == TestKind::blocked) B = default_blocks(exp.model.T).first;

  std::vector<MCEstimate> out;
  out.reserve(exp.alphas.size());
  for (double alpha : exp.alphas) {
    const double crit = exp.kind == TestKind::stationary
                            ? ad_quantile(1.0 - alpha)
                            : blocked_quantile(alpha, B).value;
    std::size_t rejections = 0;
    for (double s : stats)
      if (s > crit) ++rejections;
    MCEstimate est;
    est.alpha = alpha;
    est.rejections = rejections;
    est.replications = exp.replications;
    est.rejection_rate = static_cast<double>(rejections) /
                         static_cast<double>(exp.replications);
    est.standard_error =
        std::sqrt(est.rejection_rate * (1.0 - est.rejection_rate) /
                  static_cast<double>(exp.replications));
    est.base_seed = exp.base_seed;
    out.push_back(est);
  }
  return out;
}

std::size_t TableReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : cells)
    if (c.pass) ++n;
  return n;
}

double TableReport::pass_fraction() const {
  return cells.empty() ? 1.0
                       : static_cast<double>(passed()) /
                             static_cast<double>(cells.size());
}

TableReport reproduce_table(int table_id, std::size_t replications,
                            std::uint64_t base_seed) {
  TableReport report;
  report.table_id = table_id;
  report.replications = replications;
  report.base_seed = base_seed;

  const auto run_cells = [&](char model, double rho, std::size_t T,
                             TestKind kind, const double published[3]) {
    Experiment exp;
    exp.model.id = model_id_from_string(std::string(1, model));
    exp.model.rho = rho;
    exp.model.T = T;
    exp.alphas = {kTableAlpha[0], kTableAlpha[1], kTableAlpha[2]};
    exp.replications = replications;
    exp.kind = kind;
    // decouple cell seeds so cells can be compared across partial runs
    exp.base_seed = mix_seed(base_seed, (static_cast<std::uint64_t>(model) << 32) ^
                                            (T << 8) ^
                                            static_cast<std::uint64_t>(rho * 100));
    const auto estimates = rejection_probability(exp);
    for (std::size_t a = 0; a < 3; ++a) {
      TableCell cell;
      cell.model = std::string(1, model);
      cell.T = T;
      cell.rho = rho;
      cell.B = kind == TestKind::blocked ? default_blocks(T).first : 0;
      cell.alpha = kTableAlpha[a];
      cell.published_value = published[a];
      cell.estimate = estimates[a].rejection_rate;
      cell.rejections = estimates[a].rejections;
      cell.gate = gate_3se(published[a], replications);
      cell.pass = std::abs(cell.estimate - cell.published_value) <= cell.gate;
      report.cells.push_back(cell);
    }
  };

  switch (table_id) {
    case 1:
    case 2: {
      const auto& rows = table_id == 1 ? kTable1 : kTable2;
      const std::size_t nrows = table_id == 1 ? std::size(kTable1) : std::size(kTable2);
      for (std::size_t m = 0; m < nrows; ++m) {
        for (std::size_t ti = 0; ti < 4; ++ti) {
          run_cells(rows[m].model, 0.1, kTableT[ti], TestKind::stationary,
                    &rows[m].values[ti][0]);
          run_cells(rows[m].model, 0.5, kTableT[ti], TestKind::stationary,
                    &rows[m].values[ti][3]);
        }
      }
      break;
    }
    case 3:
    case 4: {
      const auto& rows = table_id == 3 ? kTable3 : kTable4;
      const std::size_t nrows = table_id == 3 ? std::size(kTable3) : std::size(kTable4);
      for (std::size_t m = 0; m < nrows; ++m) {
        for (std::size_t ti = 0; ti < 4; ++ti) {
          run_cells(rows[m].model, 0.5, kTableT[ti], TestKind::blocked,
                    rows[m].values[ti]);
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("table id must be 1..4");
  }
  return report;
}

void print_table(std::ostream& os, const TableReport& report) {
  os << "Table " << report.table_id << " reproduction, "
     << report.replications << " replications, seed " << report.base_seed
     << "\n";
  os << std::left << std::setw(7) << "model" << std::setw(6) << "T"
     << std::setw(6) << "rho" << std::setw(4) << "B" << std::setw(7) << "alpha"
     << std::setw(11) << "published" << std::setw(9) << "est" << std::setw(9)
     << "3SE" << "result\n";
  os << std::fixed;
  for (const auto& c : report.cells) {
    os << std::setw(7) << c.model << std::setw(6) << c.T << std::setw(6)
       << std::setprecision(1) << c.rho << std::setw(4)
       << (c.B ? std::to_string(c.B) : "-") << std::setw(7)
       << std::setprecision(2) << c.alpha << std::setw(9)
       << std::setprecision(3) << c.published_value << std::setw(9) << c.estimate
       << std::setw(9) << c.gate << (c.pass ? "pass" : "FAIL") << "\n";
  }
  os << "passed " << report.passed() << "/" << report.cells.size() << " ("
     << std::setprecision(1) << 100.0 * report.pass_fraction() << "%)\n";
}

BivariateSeries load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  BivariateSeries data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream row(cleaned);
    double v1, v2;
    if (!(row >> v1 >> v2)) {
      if (lineno == 1) continue;  // header
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected two numeric columns");
    }
    std::string extra;
    if (row >> extra)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected exactly two columns");
    if (!std::isfinite(v1) || !std::isfinite(v2))
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": non-finite value");
    data.x1.push_back(v1);
    data.x2.push_back(v2);
  }
  return data;
}

void write_csv(const std::string& path, const BivariateSeries& data) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << "x1,x2\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < data.length(); ++i)
    out << data.x1[i] << "," << data.x2[i] << "\n";
}

std::string test_result_to_json(const TestResult& result) {
  nlohmann::json j;
  j["statistic"] = result.statistic;
  j["critical_value"] = result.critical_value;
  j["p_value"] = result.p_value;
  j["reject"] = result.reject;
  j["kind"] = result.kind == TestKind::stationary ? "stationary" : "blocked";
  j["T"] = result.T;
  j["L"] = result.L;
  j["alpha"] = result.alpha;
  if (result.kind == TestKind::blocked) {
    j["B"] = result.B;
    j["M"] = result.M;
    j["block_statistics"] = result.block_statistics;
  } else {
    j["B"] = nullptr;
    j["M"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace speceq
