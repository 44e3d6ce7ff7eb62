#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "speceq/series.hpp"

namespace speceq {

// The simulation models: A-E copied stationary pairs, F-I stationary pairs
// with unequal spectra, J-M copied locally stationary pairs, N-R locally
// stationary pairs with unequal spectra.
enum class ModelId {
  A, B, C, D, E, F, G, H, I,
  J, K, L, M, N, O, P, Q, R,
  Custom
};

ModelId model_id_from_string(const std::string& name);
std::string to_string(ModelId id);

// Coefficient path sampled on a u-grid in [0,1]; linear interpolation
// between rows. Every row must hold the same number of coefficients.
struct CoefficientPath {
  std::vector<double> grid;                 // strictly increasing, in [0,1]
  std::vector<std::vector<double>> coeffs;  // one row per grid node

  std::vector<double> at(double u) const;
};

// One channel of a user-specified linear filter
//   x_t = sum_j ar_j(t/T) x_{t-j} + scale * (Z_t + sum_j ma_j(t/T) Z_{t-j}).
// Constant coefficients via `ar`/`ma`; time-varying via the paths.
struct ChannelFilter {
  std::vector<double> ar;
  std::vector<double> ma;
  double scale = 1.0;
  std::optional<CoefficientPath> ar_path;
  std::optional<CoefficientPath> ma_path;
};

struct ModelSpec {
  ModelId id = ModelId::A;
  double rho = 0.1;    // innovation correlation, |rho| < 1
  std::size_t T = 0;   // sample length, >= 64
  // Model I first channel and Model O second channel contain suspected
  // typos (cross-channel index); the default repairs them, this flag keeps
  // the literal text.
  bool literal_text = false;
  std::optional<std::array<ChannelFilter, 2>> custom;
};

// Pairs (Z_{1,t}, Z_{2,t}) of correlated standard normals.
struct InnovationStream {
  std::vector<double> z1;
  std::vector<double> z2;
};

// Z_{2,t} = rho*Z_{1,t} + sqrt(1-rho^2)*W_t with Z_1, W i.i.d. N(0,1).
InnovationStream gaussian_innovations(std::size_t count, double rho,
                                      std::uint64_t seed);

// Simulates one realization of the specified model; bitwise reproducible
// for a fixed seed. Throws instability_error for unstable custom AR parts.
BivariateSeries simulate(const ModelSpec& spec, std::uint64_t seed);

// Locally stationary process with pre-specified diagonal spectral transfer
//   x_t = sum_{k=1..T} diag(psi11, psi22)(t/T, k/T) e^{2 pi i k t / T} eps_k,
// eps_k complex normal with covariance T^{-1} I, conjugate-symmetric in k.
// T must be even. Output is real up to a ~1e-10 rounding residual.
BivariateSeries spectral_synthesis(
    const std::function<double(double, double)>& psi11,
    const std::function<double(double, double)>& psi22, std::size_t T,
    std::uint64_t seed, double* max_imag_residual = nullptr);

// Parses the key=value custom-model file format (see README) into a spec
// with id == ModelId::Custom. T and rho still come from the caller.
ModelSpec load_custom_model(const std::string& path);

}  // namespace speceq
