#pragma once

#include <cstddef>
#include <span>

namespace speceq {

struct ADValue {
  double statistic = 0.0;
  std::size_t n = 0;
};

// CDF of F(2,2): x/(1+x) for x > 0, else 0.
double f22_cdf(double x);

// Right-continuous empirical CDF: fraction of sample entries <= x.
double empirical_cdf(std::span<const double> sample, double x);

// Anderson-Darling statistic of `sample` against the F(2,2) reference,
// closed form:
//   -n - (1/n) sum_i (2i-1) [log x_(i) - log(1+x_(i)) - log(1+x_(n-i+1))].
// Entries must be strictly positive and finite.
ADValue ad_statistic(std::span<const double> sample);

// The same statistic by quadrature of
//   n * integral (Fhat(x) - F(x))^2 / (F(x)(1-F(x))) dF(x)
// after the substitution t = F(x). Midpoint rule on a partition aligned with
// the empirical-CDF breakpoints, refined adaptively; `quadrature_points`
// (>= 10^4) sets the accuracy budget. Independent cross-check of
// ad_statistic.
ADValue ad_statistic_integral(std::span<const double> sample,
                              std::size_t quadrature_points);

}  // namespace speceq
