#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace speceq {

struct CriticalValue {
  double alpha = 0.0;
  std::size_t B = 1;
  double value = 0.0;
};

// CDF of the asymptotic A-D null law, integral_0^1 B0(t)^2/(t(1-t)) dt.
// Saturates to 0 below 1e-8 and to 1 above 32.
double ad_limit_cdf(double x);

// Inverse of ad_limit_cdf by bisection on [1e-8, 64]; p must lie in (0,1).
double ad_quantile(double p);

// Quantile of the max of B i.i.d. A-D limit laws: solves F_A(x)^B = 1-alpha,
// i.e. ad_quantile((1-alpha)^(1/B)).
CriticalValue blocked_quantile(double alpha, std::size_t B);

// Sorted Monte Carlo draws usable as an empirical CDF.
struct EmpiricalCdf {
  std::vector<double> sorted;

  double cdf(double x) const;
  double quantile(double p) const;
};

// Independent null-distribution oracle: `replications` A-D statistics of
// `sample_size` i.i.d. F(2,2) draws (each a ratio of two independent
// standard exponentials). Deterministic for a fixed seed.
EmpiricalCdf mc_null_oracle(std::size_t sample_size, std::size_t replications,
                            std::uint64_t seed);

}  // namespace speceq
