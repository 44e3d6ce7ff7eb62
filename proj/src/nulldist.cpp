#include "speceq/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "speceq/adstat.hpp"
#include "speceq/parallel.hpp"
#include "speceq/rng.hpp"

namespace speceq {

double ad_limit_cdf(double x) {
  // Marsaglia-Marsaglia series for the asymptotic A-D law; saturated
  // outside the algorithm's validity range.
  if (x < 1e-8) return 0.0;
  if (x > 32.0) return 1.0;
  double p;
  if (x < 2.0) {
    p = std::exp(-1.2337141 / x) / std::sqrt(x) *
        (2.00012 +
         (0.247105 -
          (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * x) * x) * x) * x) *
             x);
  } else {
    p = std::exp(
        -std::exp(1.0776 -
                  (2.30695 -
                   (0.43424 - (0.082433 - (0.008056 - 0.0003146 * x) * x) * x) *
                       x) *
                      x));
  }
  return std::clamp(p, 0.0, 1.0);
}

double ad_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("p outside (0, 1)");
  double lo = 1e-8;
  double hi = 64.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ad_limit_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CriticalValue blocked_quantile(double alpha, std::size_t B) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("alpha outside (0, 1)");
  if (B < 1) throw std::domain_error("block count must be >= 1");
  const double p = std::pow(1.0 - alpha, 1.0 / static_cast<double>(B));
  return {alpha, B, ad_quantile(p)};
}

double EmpiricalCdf::cdf(double x) const {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) /
         static_cast<double>(sorted.size());
}

double EmpiricalCdf::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("p outside (0, 1)");
  const std::size_t n = sorted.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(n)));
  if (idx == 0) idx = 1;
  if (idx > n) idx = n;
  return sorted[idx - 1];
}

EmpiricalCdf mc_null_oracle(std::size_t sample_size, std::size_t replications,
                            std::uint64_t seed) {
  if (replications < 100000)
    throw std::invalid_argument("oracle needs at least 10^5 replications");
  EmpiricalCdf out;
  out.sorted.resize(replications);
  parallel_for(replications, [&](std::size_t begin, std::size_t end) {
    std::vector<double> ratios(sample_size);
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng(mix_seed(seed, r));
      for (double& v : ratios) v = rng.exponential() / rng.exponential();
      out.sorted[r] = ad_statistic(ratios).statistic;
    }
  });
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

}  // namespace speceq
