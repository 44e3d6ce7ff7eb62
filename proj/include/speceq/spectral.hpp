#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace speceq {

// DFT values y(w_k) = (2*pi*T)^(-1/2) * sum_{t=1..T} x_t e^{i w_k t}
// at Fourier frequencies w_k = 2*pi*k/T, k = 0..floor(T/2).
struct Spectrum {
  std::vector<std::complex<double>> values;
  std::size_t T = 0;
};

// Squared DFT moduli on the same grid. Lookup at arbitrary frequencies is
// piecewise constant over the cells (w_k - pi/T, w_k + pi/T].
struct Periodogram {
  std::vector<double> values;
  std::size_t T = 0;
};

// Blocking of T samples into B blocks of M each (M even), with rescaled-time
// mid-points u_k = ((k-1)*M + M/2) / T.
struct BlockLayout {
  std::size_t B = 0;
  std::size_t M = 0;
  std::vector<double> midpoints;
};

BlockLayout make_block_layout(std::size_t B, std::size_t M, std::size_t T);

Spectrum dft(std::span<const double> series);

Periodogram periodogram(std::span<const double> series);

// Grid value whose half-open cell contains omega; omega must lie in (0, pi].
double periodogram_at(const Periodogram& p, double omega);

// Local periodogram around rescaled time u from M observations, frequency
// grid w_k = 2*pi*k/M. Samples outside 1..T contribute zero.
Periodogram local_periodogram(std::span<const double> series, double u,
                              std::size_t M);

// Same, but with the window center [uT] given directly as a sample index.
Periodogram local_periodogram_centered(std::span<const double> series,
                                       long center, std::size_t M);

// Identifies the block a local ratio sample is taken from.
struct BlockRef {
  double u;
  std::size_t M;
};

// Staggered-frequency periodogram ratios
//   r_l = I11((l-1/2)*pi/L) / I22(l*pi/L),  l = 1..L-1,
// from the global periodograms of x1, x2, or from local periodograms at
// block.u when a block is given.
std::vector<double> ratio_sample(std::span<const double> x1,
                                 std::span<const double> x2, std::size_t L,
                                 std::optional<BlockRef> block = std::nullopt);

}  // namespace speceq
