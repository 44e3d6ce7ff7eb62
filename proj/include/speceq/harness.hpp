#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "speceq/models.hpp"
#include "speceq/testkit.hpp"

namespace speceq {

struct Experiment {
  ModelSpec model;
  std::vector<double> alphas;  // each in (0,1)
  std::size_t replications = 1000;
  TestKind kind = TestKind::stationary;
  std::uint64_t base_seed = 0;
};

struct MCEstimate {
  double alpha = 0.0;
  double rejection_rate = 0.0;
  std::size_t rejections = 0;
  std::size_t replications = 0;
  double standard_error = 0.0;  // sqrt(p(1-p)/R) at the estimate
  std::uint64_t base_seed = 0;
};

// Runs `replications` seeded simulate -> test cycles and counts rejections
// at every alpha (one estimate per alpha, same simulations shared).
// Replication r uses seed mix_seed(base_seed, r).
std::vector<MCEstimate> rejection_probability(const Experiment& exp);

struct TableCell {
  std::string model;
  std::size_t T = 0;
  double rho = 0.0;
  std::size_t B = 0;  // 0 for the stationary tables
  double alpha = 0.0;
  double published_value = 0.0;
  double estimate = 0.0;
  std::size_t rejections = 0;
  double gate = 0.0;  // 3-SE tolerance at the paper value
  bool pass = false;
};

struct TableReport {
  int table_id = 0;
  std::size_t replications = 0;
  std::uint64_t base_seed = 0;
  std::vector<TableCell> cells;

  std::size_t passed() const;
  double pass_fraction() const;
};

// Re-runs every cell of the published rejection-probability table (1-4) and
// flags each against the printed value at 3-SE tolerance.
TableReport reproduce_table(int table_id, std::size_t replications,
                            std::uint64_t base_seed);

void print_table(std::ostream& os, const TableReport& report);

// Two-column numeric CSV (optional x1,x2 header). Rejects non-finite values
// and ragged rows, reporting the offending line number.
BivariateSeries load_csv(const std::string& path);

void write_csv(const std::string& path, const BivariateSeries& data);

// JSON with keys {statistic, critical_value, p_value, reject, kind, T, L,
// B, M, alpha, block_statistics?}; B, M, block_statistics only for the
// blocked kind.
std::string test_result_to_json(const TestResult& result);

}  // namespace speceq
