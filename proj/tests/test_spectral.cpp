#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "speceq/errors.hpp"
#include "speceq/rng.hpp"
#include "speceq/spectral.hpp"

using namespace speceq;

namespace {

std::vector<double> random_series(std::size_t T, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(T);
  for (double& v : x) v = rng.normal();
  return x;
}

// brute-force DFT oracle: fresh std::polar at every (k, t)
std::complex<double> dft_oracle(const std::vector<double>& x, std::size_t k) {
  const std::size_t T = x.size();
  const double omega = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(T);
  std::complex<double> sum = 0.0;
  for (std::size_t t = 1; t <= T; ++t)
    sum += x[t - 1] * std::polar(1.0, omega * static_cast<double>(t));
  return sum / std::sqrt(2.0 * M_PI * static_cast<double>(T));
}

}  // namespace

TEST_CASE("dft of a constant series concentrates all energy at k=0") {
  std::vector<double> x(64, 3.7);
  const Spectrum s = dft(x);
  REQUIRE(s.values.size() == 33);
  CHECK(std::abs(s.values[0]) > 1.0);
  for (std::size_t k = 1; k < s.values.size(); ++k)
    CHECK(std::abs(s.values[k]) < 1e-12);
}

TEST_CASE("single tone peaks at its own bin") {
  const std::size_t T = 64;
  std::vector<double> x(T);
  for (std::size_t t = 1; t <= T; ++t)
    x[t - 1] = std::cos(2.0 * M_PI * 4.0 * static_cast<double>(t) / 64.0);
  const Periodogram p = periodogram(x);
  for (std::size_t k = 1; k + 1 < p.values.size(); ++k) {
    if (k != 4) CHECK(p.values[4] > p.values[k]);
  }
}

TEST_CASE("dft matches the brute-force oracle") {
  for (std::size_t T : {8u, 17u, 64u, 171u}) {
    const auto x = random_series(T, 1000 + T);
    const Spectrum s = dft(x);
    for (std::size_t k = 0; k <= T / 2; ++k) {
      CHECK(std::abs(s.values[k] - dft_oracle(x, k)) <= 1e-11);
    }
  }
}

TEST_CASE("Parseval over the full symmetric grid") {
  for (std::size_t T : {32u, 101u, 256u, 1000u}) {
    const auto x = random_series(T, 77 + T);
    const Spectrum s = dft(x);
    // reconstruct the full grid through conjugate symmetry
    double grid_sum = 0.0;
    for (std::size_t k = 0; k < T; ++k) {
      const std::size_t kk = k <= T / 2 ? k : T - k;
      grid_sum += std::norm(s.values[kk]);
    }
    double sq = 0.0;
    for (double v : x) sq += v * v;
    const double expected = sq / (2.0 * M_PI);
    CHECK(std::abs(grid_sum - expected) <= 1e-10 * expected);
  }
}

TEST_CASE("dft rejects bad input") {
  std::vector<double> short_series(5, 1.0);
  CHECK_THROWS_AS((void)dft(short_series), std::invalid_argument);
  auto x = random_series(32, 1);
  x[7] = std::nan("");
  CHECK_THROWS_AS((void)dft(x), std::invalid_argument);
}

TEST_CASE("periodogram basics") {
  std::vector<double> zeros(32, 0.0);
  for (double v : periodogram(zeros).values) CHECK(v == 0.0);

  const auto x = random_series(128, 5);
  for (double v : periodogram(x).values) CHECK(v >= 0.0);
}

TEST_CASE("white-noise periodogram level matches the flat spectrum") {
  const std::size_t T = 1024;
  const auto x = random_series(T, 99);
  const Periodogram p = periodogram(x);
  double mean = 0.0;
  for (std::size_t k = 1; k < T / 2; ++k) mean += p.values[k];
  mean /= static_cast<double>(T / 2 - 1);
  double var = 0.0, mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(T);
  for (double v : x) var += (v - mu) * (v - mu);
  var /= static_cast<double>(T);
  const double expected = var / (2.0 * M_PI);
  CHECK(std::abs(mean - expected) <= 0.10 * expected);
}

TEST_CASE("periodogram_at lookup follows the half-open cell rule") {
  const std::size_t T = 64;
  const auto x = random_series(T, 3);
  const Periodogram p = periodogram(x);
  const double cell = M_PI / static_cast<double>(T);

  const double w5 = 2.0 * M_PI * 5.0 / static_cast<double>(T);
  CHECK(periodogram_at(p, w5) == p.values[5]);
  CHECK(periodogram_at(p, w5 + cell) == p.values[5]);       // right edge in
  CHECK(periodogram_at(p, w5 + cell + 1e-9) == p.values[6]);  // just past
  CHECK(periodogram_at(p, w5 - cell + 1e-9) == p.values[5]);  // left edge out

  // hand evaluation: T=64, w = pi/16 => wT/(2pi) = 2 => k = 2
  CHECK(periodogram_at(p, M_PI / 16.0) == p.values[2]);

  // piecewise constant: same cell, bitwise equal
  CHECK(periodogram_at(p, w5 + 0.3 * cell) == periodogram_at(p, w5 - 0.3 * cell));

  CHECK(periodogram_at(p, M_PI) == p.values[32]);
  CHECK_THROWS_AS((void)periodogram_at(p, 0.0), std::domain_error);
  CHECK_THROWS_AS((void)periodogram_at(p, M_PI + 0.01), std::domain_error);
}

TEST_CASE("local periodogram of an interior window equals the slice periodogram") {
  const std::size_t T = 256, M = 64;
  const auto x = random_series(T, 11);
  const double u = 0.5;  // [uT] = 128, window 97..160, fully interior
  const Periodogram local = local_periodogram(x, u, M);
  const std::vector<double> slice(x.begin() + 96, x.begin() + 160);
  const Periodogram direct = periodogram(slice);
  REQUIRE(local.values.size() == direct.values.size());
  for (std::size_t k = 0; k < local.values.size(); ++k)
    CHECK(local.values[k] == direct.values[k]);  // bitwise
}

TEST_CASE("window positions left of sample 1 contribute zero") {
  const std::size_t T = 256, M = 64;
  const auto x = random_series(T, 12);
  // [uT] = 16: window covers -15..48, first 16 positions out of range
  const Periodogram local = local_periodogram(x, 16.0 / 256.0, M);
  std::vector<double> padded(M, 0.0);
  for (std::size_t s = 1; s <= M; ++s) {
    const long t = 16 - 32 + static_cast<long>(s);
    if (t >= 1) padded[s - 1] = x[static_cast<std::size_t>(t - 1)];
  }
  const Periodogram direct = periodogram(padded);
  for (std::size_t k = 0; k < local.values.size(); ++k)
    CHECK(local.values[k] == direct.values[k]);
}

TEST_CASE("first block of a 2-block layout is exactly the first half") {
  const std::size_t T = 128, M = 64;
  const auto x = random_series(T, 13);
  const BlockLayout layout = make_block_layout(2, M, T);
  CHECK(layout.midpoints[0] == doctest::Approx(32.0 / 128.0));
  const Periodogram local = local_periodogram(x, layout.midpoints[0], M);
  const std::vector<double> half(x.begin(), x.begin() + 64);
  const Periodogram direct = periodogram(half);
  for (std::size_t k = 0; k < local.values.size(); ++k)
    CHECK(local.values[k] == direct.values[k]);
}

TEST_CASE("local periodogram parameter validation") {
  const auto x = random_series(64, 2);
  CHECK_THROWS_AS((void)local_periodogram(x, 0.5, 15), std::invalid_argument);
  CHECK_THROWS_AS((void)local_periodogram(x, 0.5, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)local_periodogram(x, 1.5, 16), std::domain_error);
}

TEST_CASE("block layout invariants") {
  const BlockLayout layout = make_block_layout(6, 170, 1024);
  REQUIRE(layout.midpoints.size() == 6);
  for (std::size_t k = 0; k + 1 < 6; ++k)
    CHECK(layout.midpoints[k] < layout.midpoints[k + 1]);
  for (double u : layout.midpoints) {
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
  CHECK_THROWS_AS((void)make_block_layout(3, 171, 1024), std::invalid_argument);
  CHECK_THROWS_AS((void)make_block_layout(9, 170, 1024), std::invalid_argument);
}

TEST_CASE("ratio sample length, positivity and staggering") {
  const std::size_t T = 1024, L = T / 4;
  const auto x = random_series(T, 21);
  const auto ratios = ratio_sample(x, x, L);
  REQUIRE(ratios.size() == L - 1);
  for (double r : ratios) {
    CHECK(r > 0.0);
    CHECK(std::isfinite(r));
  }
  // with L = T/4 the half-cell stagger maps numerator and denominator
  // frequencies to distinct cells for every l
  for (std::size_t l = 1; l <= L - 1; ++l) {
    const double wn = (static_cast<double>(l) - 0.5) * M_PI / static_cast<double>(L);
    const double wd = static_cast<double>(l) * M_PI / static_cast<double>(L);
    const auto cell = [&](double w) {
      return static_cast<long>(std::ceil(w * static_cast<double>(T) / (2.0 * M_PI) - 0.5));
    };
    CHECK(cell(wn) != cell(wd));
  }
}

TEST_CASE("ratio sample scales quadratically with the denominator channel") {
  const std::size_t T = 512, L = 64;
  const auto x = random_series(T, 22);
  std::vector<double> x2(x);
  for (double& v : x2) v *= 2.0;
  const auto base = ratio_sample(x, x, L);
  const auto scaled = ratio_sample(x, x2, L);
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(scaled[i] == doctest::Approx(base[i] / 4.0).epsilon(1e-12));
}

TEST_CASE("white-noise ratio sample is close to F(2,2) in KS distance") {
  const std::size_t T = 1024, L = 181;
  const auto x1 = random_series(T, 31);
  const auto x2 = random_series(T, 32);
  auto ratios = ratio_sample(x1, x2, L);
  std::sort(ratios.begin(), ratios.end());
  double ks = 0.0;
  const double n = static_cast<double>(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double f = ratios[i] / (1.0 + ratios[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
  }
  CHECK(ks < 0.12);
}

TEST_CASE("zero channel raises a degenerate-spectrum error") {
  const auto x = random_series(64, 41);
  const std::vector<double> zeros(64, 0.0);
  CHECK_THROWS_AS((void)ratio_sample(x, zeros, 16), degenerate_spectrum_error);
}

TEST_CASE("blocked ratio sample uses the local periodogram") {
  const std::size_t T = 256, M = 64, L = 16;
  const auto x1 = random_series(T, 51);
  const auto x2 = random_series(T, 52);
  const auto blocked = ratio_sample(x1, x2, L, BlockRef{0.5, M});
  const Periodogram p1 = local_periodogram(x1, 0.5, M);
  const Periodogram p2 = local_periodogram(x2, 0.5, M);
  REQUIRE(blocked.size() == L - 1);
  for (std::size_t l = 1; l <= L - 1; ++l) {
    const double num = periodogram_at(
        p1, (static_cast<double>(l) - 0.5) * M_PI / static_cast<double>(L));
    const double den =
        periodogram_at(p2, static_cast<double>(l) * M_PI / static_cast<double>(L));
    CHECK(blocked[l - 1] == num / den);
  }
}
