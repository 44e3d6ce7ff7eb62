#include "speceq/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "speceq/errors.hpp"

namespace speceq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// DFT of the window x_{offset+1} .. x_{offset+N} (1-based positions s=1..N,
// out-of-range samples zero), grid w_k = 2*pi*k/N, k = 0..N/2.
// Direct evaluation with a per-bin twiddle recurrence; the twiddle is
// re-anchored periodically to keep the drift well under Parseval tolerance.
Spectrum dft_window(std::span<const double> series, long offset,
                    std::size_t N) {
  Spectrum out;
  out.T = N;
  out.values.resize(N / 2 + 1);
  const double scale = 1.0 / std::sqrt(kTwoPi * static_cast<double>(N));
  const long len = static_cast<long>(series.size());
  for (std::size_t k = 0; k <= N / 2; ++k) {
    const double omega = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
    const std::complex<double> w = std::polar(1.0, omega);
    std::complex<double> phase = w;  // e^{i w_k s} at s = 1
    std::complex<double> sum = 0.0;
    for (std::size_t s = 1; s <= N; ++s) {
      const long t = offset + static_cast<long>(s);
      if (t >= 1 && t <= len) sum += series[static_cast<std::size_t>(t - 1)] * phase;
      if ((s & 511u) == 0u)
        phase = std::polar(1.0, omega * static_cast<double>(s + 1));
      else
        phase *= w;
    }
    out.values[k] = scale * sum;
  }
  // k = 0 (and k = N/2 for even N) are real by symmetry; drop rounding dust
  out.values[0].imag(0.0);
  if (N % 2 == 0) out.values[N / 2].imag(0.0);
  return out;
}

void check_input(std::span<const double> series) {
  if (series.size() < 8)
    throw std::invalid_argument("series too short (need T >= 8)");
  for (double v : series) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample value");
  }
}

}  // namespace

BlockLayout make_block_layout(std::size_t B, std::size_t M, std::size_t T) {
  if (B < 1) throw std::invalid_argument("block count must be >= 1");
  if (M % 2 != 0) throw std::invalid_argument("block length must be even");
  if (M * B > T) throw std::invalid_argument("blocks exceed series length");
  BlockLayout layout;
  layout.B = B;
  layout.M = M;
  layout.midpoints.reserve(B);
  for (std::size_t k = 1; k <= B; ++k) {
    layout.midpoints.push_back(
        (static_cast<double>((k - 1) * M) + static_cast<double>(M) / 2.0) /
        static_cast<double>(T));
  }
  return layout;
}

Spectrum dft(std::span<const double> series) {
  check_input(series);
  return dft_window(series, 0, series.size());
}

Periodogram periodogram(std::span<const double> series) {
  const Spectrum spec = dft(series);
  Periodogram out;
  out.T = spec.T;
  out.values.reserve(spec.values.size());
  for (const auto& v : spec.values) out.values.push_back(std::norm(v));
  return out;
}

double periodogram_at(const Periodogram& p, double omega) {
  if (!(omega > 0.0) || !(omega <= M_PI))
    throw std::domain_error("frequency outside (0, pi]");
  // cell (w_k - pi/T, w_k + pi/T]  <=>  k = ceil(w*T/(2*pi) - 1/2),
  // exact boundaries resolving to the lower k
  const double v = omega * static_cast<double>(p.T) / kTwoPi - 0.5;
  long k = static_cast<long>(std::ceil(v));
  if (k < 0) k = 0;
  const long kmax = static_cast<long>(p.values.size()) - 1;
  if (k > kmax) k = kmax;
  return p.values[static_cast<std::size_t>(k)];
}

Periodogram local_periodogram_centered(std::span<const double> series,
                                       long center, std::size_t M) {
  if (M % 2 != 0 || M < 8)
    throw std::invalid_argument("block length must be even and >= 8");
  check_input(series);
  const Spectrum spec = dft_window(series, center - static_cast<long>(M) / 2, M);
  Periodogram out;
  out.T = M;
  out.values.reserve(spec.values.size());
  for (const auto& v : spec.values) out.values.push_back(std::norm(v));
  return out;
}

Periodogram local_periodogram(std::span<const double> series, double u,
                              std::size_t M) {
  if (!(u > 0.0) || !(u > 0.0 && u <= 1.0))
    throw std::domain_error("u outside (0, 1]");
  const double ut = u * static_cast<double>(series.size());
  // [uT] with a guard against values like 169.99999999 that are meant to
  // be exact integers
  double fl = std::floor(ut);
  if (ut - fl > 1.0 - 1e-9) fl += 1.0;
  return local_periodogram_centered(series, static_cast<long>(fl), M);
}

std::vector<double> ratio_sample(std::span<const double> x1,
                                 std::span<const double> x2, std::size_t L,
                                 std::optional<BlockRef> block) {
  if (x1.size() != x2.size())
    throw std::invalid_argument("channel lengths differ");
  if (L < 2) throw std::invalid_argument("L must be >= 2");

  Periodogram p1, p2;
  if (block) {
    p1 = local_periodogram(x1, block->u, block->M);
    p2 = local_periodogram(x2, block->u, block->M);
  } else {
    p1 = periodogram(x1);
    p2 = periodogram(x2);
  }

  std::vector<double> ratios;
  ratios.reserve(L - 1);
  for (std::size_t l = 1; l <= L - 1; ++l) {
    const double num_freq =
        (static_cast<double>(l) - 0.5) * M_PI / static_cast<double>(L);
    const double den_freq =
        static_cast<double>(l) * M_PI / static_cast<double>(L);
    const double num = periodogram_at(p1, num_freq);
    const double den = periodogram_at(p2, den_freq);
    if (den == 0.0 || num == 0.0)
      throw degenerate_spectrum_error(
          "zero periodogram ordinate in ratio at l=" + std::to_string(l));
    ratios.push_back(num / den);
  }
  return ratios;
}

}  // namespace speceq
