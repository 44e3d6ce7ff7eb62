#include "speceq/adstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace speceq {

namespace {

std::vector<double> sorted_valid(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  for (double x : sample) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument("sample entries must be positive and finite");
  }
  std::vector<double> s(sample.begin(), sample.end());
  std::stable_sort(s.begin(), s.end());
  return s;
}

// (c - t)^2 / (t (1 - t)), the integrand after the t = F(x) substitution,
// with the empirical CDF constant at c on the current segment.
inline double segment_integrand(double c, double t) {
  const double d = c - t;
  return d * d * (1.0 / t + 1.0 / (1.0 - t));
}

// Adaptive composite midpoint rule with Richardson extrapolation of the
// halving step. fm is the integrand at the midpoint of (a, b).
double adapt_midpoint(double c, double a, double b, double fm, double tol,
                      int depth) {
  const double m = 0.5 * (a + b);
  const double fl = segment_integrand(c, 0.5 * (a + m));
  const double fr = segment_integrand(c, 0.5 * (m + b));
  const double whole = fm * (b - a);
  const double split = fl * (m - a) + fr * (b - m);
  if (depth <= 0 || std::abs(split - whole) < 3.0 * tol)
    return split + (split - whole) / 3.0;
  return adapt_midpoint(c, a, m, fl, 0.5 * tol, depth - 1) +
         adapt_midpoint(c, m, b, fr, 0.5 * tol, depth - 1);
}

}  // namespace

double f22_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  return x / (1.0 + x);
}

double empirical_cdf(std::span<const double> sample, double x) {
  if (sample.empty()) return 0.0;
  std::size_t count = 0;
  for (double v : sample)
    if (v <= x) ++count;
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

ADValue ad_statistic(std::span<const double> sample) {
  const std::vector<double> s = sorted_valid(sample);
  const std::size_t n = s.size();
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double xi = s[i - 1];
    const double xr = s[n - i];
    acc += static_cast<double>(2 * i - 1) *
           (std::log(xi) - std::log1p(xi) - std::log1p(xr));
  }
  return {-static_cast<double>(n) - acc / static_cast<double>(n), n};
}

ADValue ad_statistic_integral(std::span<const double> sample,
                              std::size_t quadrature_points) {
  if (quadrature_points < 10000)
    throw std::invalid_argument("need at least 10^4 quadrature points");
  const std::vector<double> s = sorted_valid(sample);
  const std::size_t n = s.size();

  // breakpoints of the empirical step function in t-space
  std::vector<double> breaks;
  breaks.reserve(n + 2);
  breaks.push_back(0.0);
  for (double x : s) breaks.push_back(f22_cdf(x));
  breaks.push_back(1.0);

  // more quadrature budget => tighter tolerance on the statistic
  const double tol_total = 0.1 / static_cast<double>(quadrature_points);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;  // ties collapse the segment
    const double c = static_cast<double>(i) / static_cast<double>(n);
    const double fm = segment_integrand(c, 0.5 * (a + b));
    const double seg_tol =
        tol_total * std::max(b - a, 1e-6) / static_cast<double>(n);
    integral += adapt_midpoint(c, a, b, fm, seg_tol, 48);
  }
  return {static_cast<double>(n) * integral, n};
}

}  // namespace speceq
