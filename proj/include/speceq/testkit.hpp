#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speceq/series.hpp"

namespace speceq {

enum class TestKind { stationary, blocked };

struct TestConfig {
  double alpha = 0.05;
  std::optional<std::size_t> L;  // ratio-grid size
  std::optional<std::size_t> B;  // block count (blocked test)
  std::optional<std::size_t> M;  // block length, even (blocked test)
  bool demean = true;
};

struct TestResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 1.0;
  bool reject = false;
  TestKind kind = TestKind::stationary;
  std::size_t T = 0;
  std::size_t L = 0;
  std::size_t B = 0;  // 0 when not applicable (stationary)
  std::size_t M = 0;  // 0 when not applicable (stationary)
  double alpha = 0.05;
  std::vector<double> block_statistics;  // empty for stationary
  std::string warning;                   // empty when none
};

// Default ratio-grid size: min(floor(n/4), floor(n^(3/4))).
std::size_t default_L(std::size_t n);

// Default blocking: B = max(1, floor(sqrt(T)/5)), M = floor(T/B) rounded
// down to even. The first B*M samples are used.
std::pair<std::size_t, std::size_t> default_blocks(std::size_t T);

// Equal-spectra test for stationary series: A-D statistic of the global
// staggered periodogram ratios against the asymptotic null quantile.
TestResult stationary_test(const BivariateSeries& data,
                           const TestConfig& config = {});

// Equal time-varying-spectra test: maximum of per-block local A-D
// statistics against the quantile of the max of B i.i.d. null laws.
TestResult blocked_test(const BivariateSeries& data,
                        const TestConfig& config = {});

}  // namespace speceq
