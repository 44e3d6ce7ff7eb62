#include "speceq/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speceq/adstat.hpp"
#include "speceq/errors.hpp"
#include "speceq/nulldist.hpp"
#include "speceq/spectral.hpp"

namespace speceq {

namespace {

// floor(n^(3/4)) without floating-point edge cases: largest m with
// m^4 <= n^3 (n <= ~5e4 keeps both sides inside uint64).
std::size_t floor_pow34(std::size_t n) {
  auto m = static_cast<std::size_t>(std::floor(
      std::pow(static_cast<double>(n), 0.75)));
  const auto pow4 = [](std::size_t v) { return v * v * v * v; };
  const std::size_t n3 = n * n * n;
  while (pow4(m + 1) <= n3) ++m;
  while (m > 0 && pow4(m) > n3) --m;
  return m;
}

std::size_t floor_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  while ((r + 1) * (r + 1) <= n) ++r;
  while (r > 0 && r * r > n) --r;
  return r;
}

std::size_t resolve_L(const TestConfig& config, std::size_t n,
                      std::string& warning) {
  std::size_t L = config.L ? *config.L : default_L(n);
  if (L < 2) throw std::invalid_argument("resolved L must be >= 2");
  if (2 * L >= n)
    throw std::invalid_argument(
        "L too large for the Fourier resolution (need L < T/2)");
  if (config.L && *config.L > 4 * default_L(n)) {
    warning =
        "L exceeds the default rule by more than 4x; the ratio grid is finer "
        "than the periodogram resolution and the F(2,2) approximation may "
        "degrade";
  }
  return L;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("alpha outside (0, 1)");
}

}  // namespace

std::size_t default_L(std::size_t n) {
  if (n < 8) throw std::invalid_argument("need n >= 8");
  return std::min(n / 4, floor_pow34(n));
}

std::pair<std::size_t, std::size_t> default_blocks(std::size_t T) {
  if (T < 64) throw std::invalid_argument("blocked test needs T >= 64");
  const std::size_t B = std::max<std::size_t>(1, floor_sqrt(T) / 5);
  std::size_t M = T / B;
  if (M % 2 != 0) --M;  // theory requires an even block length
  return {B, M};
}

TestResult stationary_test(const BivariateSeries& data,
                           const TestConfig& config) {
  validate(data);
  check_alpha(config.alpha);
  const std::size_t T = data.length();

  TestResult result;
  result.kind = TestKind::stationary;
  result.T = T;
  result.alpha = config.alpha;
  result.L = resolve_L(config, T, result.warning);

  std::vector<double> ratios;
  if (config.demean) {
    ratios = ratio_sample(demeaned(data.x1), demeaned(data.x2), result.L);
  } else {
    ratios = ratio_sample(data.x1, data.x2, result.L);
  }

  result.statistic = ad_statistic(ratios).statistic;
  result.critical_value = ad_quantile(1.0 - config.alpha);
  result.p_value = 1.0 - ad_limit_cdf(result.statistic);
  result.reject = result.statistic > result.critical_value;
  return result;
}

TestResult blocked_test(const BivariateSeries& data, const TestConfig& config) {
  validate(data);
  check_alpha(config.alpha);
  const std::size_t T = data.length();

  std::size_t B, M;
  if (config.B || config.M) {
    const auto defaults = default_blocks(T);
    B = config.B ? *config.B : defaults.first;
    M = config.M ? *config.M : defaults.second;
  } else {
    std::tie(B, M) = default_blocks(T);
  }
  if (B < 1) throw std::invalid_argument("block count must be >= 1");
  if (M % 2 != 0 || M < 8)
    throw std::invalid_argument("block length must be even and >= 8");
  if (B * M > T)
    throw std::invalid_argument("B*M exceeds the series length");

  TestResult result;
  result.kind = TestKind::blocked;
  result.T = T;
  result.B = B;
  result.M = M;
  result.alpha = config.alpha;
  result.L = resolve_L(config, M, result.warning);

  std::vector<double> x1, x2;
  if (config.demean) {
    x1 = demeaned(data.x1);
    x2 = demeaned(data.x2);
  } else {
    x1 = data.x1;
    x2 = data.x2;
  }

  result.block_statistics.reserve(B);
  for (std::size_t k = 1; k <= B; ++k) {
    // window center [u_k T] = (k-1)M + M/2; blocks tile the first B*M samples
    const long center = static_cast<long>((k - 1) * M + M / 2);
    const Periodogram p1 = local_periodogram_centered(x1, center, M);
    const Periodogram p2 = local_periodogram_centered(x2, center, M);
    std::vector<double> ratios;
    ratios.reserve(result.L - 1);
    for (std::size_t l = 1; l <= result.L - 1; ++l) {
      const double num =
          periodogram_at(p1, (static_cast<double>(l) - 0.5) * M_PI /
                                 static_cast<double>(result.L));
      const double den = periodogram_at(
          p2, static_cast<double>(l) * M_PI / static_cast<double>(result.L));
      if (den == 0.0 || num == 0.0)
        throw degenerate_spectrum_error("zero periodogram ordinate in block " +
                                        std::to_string(k));
      ratios.push_back(num / den);
    }
    result.block_statistics.push_back(ad_statistic(ratios).statistic);
  }

  result.statistic = *std::max_element(result.block_statistics.begin(),
                                       result.block_statistics.end());
  result.critical_value = blocked_quantile(config.alpha, B).value;
  result.p_value =
      1.0 - std::pow(ad_limit_cdf(result.statistic), static_cast<double>(B));
  result.reject = result.statistic > result.critical_value;
  return result;
}

}  // namespace speceq
