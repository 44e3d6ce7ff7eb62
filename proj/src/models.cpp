#include "speceq/models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "speceq/errors.hpp"
#include "speceq/rng.hpp"

namespace speceq {

namespace {

constexpr std::size_t kWarmup = 200;  // > 5 time constants of every AR used
constexpr std::size_t kMaxLag = 2;

// ---------------------------------------------------------------------------
// building blocks

// Constant-coefficient recursion
//   x_t = sum_j ar[j] x_{t-j-1} + sum_j ma[j] Z_{t-j}   (ma includes lag 0)
// run from zero state through `warmup` discarded samples. z must hold
// T + warmup + maxlag innovations, z[i] being Z at time i - (warmup+maxlag) + 1.
std::vector<double> filter_const(const std::vector<double>& z,
                                 const std::vector<double>& ar,
                                 const std::vector<double>& ma, std::size_t T,
                                 std::size_t warmup) {
  const std::size_t lead = warmup + kMaxLag;
  std::vector<double> x(T + warmup, 0.0);  // x[i] is x at time i - warmup + 1
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = 0.0;
    for (std::size_t j = 0; j < ar.size(); ++j)
      if (i >= j + 1) v += ar[j] * x[i - j - 1];
    const std::size_t zi = i + lead - warmup;  // z index of time i - warmup + 1
    for (std::size_t j = 0; j < ma.size(); ++j) v += ma[j] * z[zi - j];
    x[i] = v;
  }
  return {x.begin() + static_cast<long>(warmup), x.end()};
}

// Time-varying recursion; coefficients are functions of u = t/T, t = 1..T,
// zero initial state, no warm-up (the coefficient path is anchored to t/T).
// z must hold T + lead innovations, z[i] being Z at time i - lead + 1.
template <typename ArFn, typename MaFn>
std::vector<double> filter_tv(const std::vector<double>& z, ArFn ar_at,
                              MaFn ma_at, std::size_t T,
                              std::size_t lead = kMaxLag) {
  std::vector<double> x(T, 0.0);  // x[i] is x at time i+1
  for (std::size_t i = 0; i < T; ++i) {
    const double u = static_cast<double>(i + 1) / static_cast<double>(T);
    const std::vector<double> ar = ar_at(u);
    const std::vector<double> ma = ma_at(u);
    double v = 0.0;
    for (std::size_t j = 0; j < ar.size(); ++j)
      if (i >= j + 1) v += ar[j] * x[i - j - 1];
    const std::size_t zi = i + lead;
    for (std::size_t j = 0; j < ma.size(); ++j) v += ma[j] * z[zi - j];
    x[i] = v;
  }
  return x;
}

// Wavelet-style filter x_t = sum_k w(k/T) psi_{k-t} Z_k, with psi supported
// on the given offsets; k runs over 0..T-1, exactly as the sum is written.
std::vector<double> filter_wavelet(
    const std::vector<double>& z, const std::function<double(double)>& w,
    const std::vector<std::pair<long, double>>& psi, std::size_t T) {
  std::vector<double> x(T, 0.0);
  for (std::size_t i = 0; i < T; ++i) {
    const long t = static_cast<long>(i + 1);
    double v = 0.0;
    for (const auto& [offset, coeff] : psi) {
      const long k = t + offset;
      if (k >= 0 && k < static_cast<long>(T))
        v += w(static_cast<double>(k) / static_cast<double>(T)) * coeff *
             z[static_cast<std::size_t>(k)];
    }
    x[i] = v;
  }
  return x;
}

const std::vector<std::pair<long, double>> kPsi1 = {{0, 1.0 / std::sqrt(2.0)},
                                                    {1, -1.0 / std::sqrt(2.0)}};
const std::vector<std::pair<long, double>> kPsi2 = {
    {0, 0.5}, {1, 0.5}, {2, -0.5}, {3, -0.5}};

double beta1(double u) { return 0.8 * (1.0 + std::sin(M_PI * u / 2.0)); }
double beta2(double u) { return 0.5 * (1.0 - std::cos(M_PI * u)); }
double phi_sv(double u) { return 0.6 * std::sin(4.0 * M_PI * u); }
double wavelet_w1(double u) { return std::cos(M_PI * u / 2.0); }
double wavelet_w2(double u) { return 0.3 * u * u; }

double psi_m(double u, double v) {
  const double c = 1.2 * std::cos(2.0 * M_PI * v);
  return c * c + 0.3 * std::sin(2.0 * M_PI * u) + 0.7;
}
double psi_r22(double u, double v) {
  const double c = 1.2 * std::cos(2.0 * M_PI * v);
  return c * c + 0.6 * std::sin(2.0 * M_PI * u) + 0.7;
}

// ---------------------------------------------------------------------------
// custom-model stability

// Durand-Kerner roots of 1 - a_1 z - ... - a_p z^p.
std::vector<std::complex<double>> ar_poly_roots(const std::vector<double>& ar) {
  const std::size_t p = ar.size();
  std::vector<std::complex<double>> coeff(p + 1);  // coeff[j] on z^j
  coeff[0] = 1.0;
  for (std::size_t j = 1; j <= p; ++j) coeff[j] = -ar[j - 1];
  while (coeff.size() > 1 && std::abs(coeff.back()) == 0.0) coeff.pop_back();
  const std::size_t deg = coeff.size() - 1;
  if (deg == 0) return {};
  const std::complex<double> leading = coeff[deg];
  for (auto& c : coeff) c /= leading;

  std::vector<std::complex<double>> roots(deg);
  const std::complex<double> base(0.4, 0.9);
  std::complex<double> pw = 1.0;
  for (auto& r : roots) {
    pw *= base;
    r = pw;
  }
  const auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 0.0;
    for (std::size_t j = deg + 1; j-- > 0;) v = v * z + coeff[j];
    return v;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-12) break;
  }
  return roots;
}

void check_stable(const std::vector<double>& ar, double u) {
  for (const auto& root : ar_poly_roots(ar)) {
    if (std::abs(root) <= 1.0 + 1e-9)
      throw instability_error(
          "AR polynomial root on or inside the unit circle at u=" +
          std::to_string(u));
  }
}

std::vector<double> simulate_custom_channel(const ChannelFilter& f,
                                            const std::vector<double>& z,
                                            std::size_t T) {
  std::vector<double> ma0 = f.ma;
  ma0.insert(ma0.begin(), 1.0);
  for (double& c : ma0) c *= f.scale;

  // z always carries kWarmup + kMaxLag innovations ahead of t = 1
  if (!f.ar_path && !f.ma_path) {
    check_stable(f.ar, 0.0);
    return filter_const(z, f.ar, ma0, T, kWarmup);
  }
  // time-varying: stability checked at every sampled t/T
  if (f.ar_path) {
    for (std::size_t t = 1; t <= T; ++t) {
      const double u = static_cast<double>(t) / static_cast<double>(T);
      check_stable(f.ar_path->at(u), u);
    }
  } else {
    check_stable(f.ar, 0.0);
  }
  const auto ar_at = [&](double u) {
    return f.ar_path ? f.ar_path->at(u) : f.ar;
  };
  const auto ma_at = [&](double u) {
    std::vector<double> m = f.ma_path ? f.ma_path->at(u) : f.ma;
    m.insert(m.begin(), 1.0);
    for (double& c : m) c *= f.scale;
    return m;
  };
  return filter_tv(z, ar_at, ma_at, T, kWarmup + kMaxLag);
}

std::vector<double> parse_numbers(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed number list: " + text);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ModelId model_id_from_string(const std::string& name) {
  if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'R')
    return static_cast<ModelId>(name[0] - 'A');
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'r')
    return static_cast<ModelId>(name[0] - 'a');
  throw std::invalid_argument("unknown model '" + name + "' (expected A..R)");
}

std::string to_string(ModelId id) {
  if (id == ModelId::Custom) return "custom";
  return std::string(1, static_cast<char>('A' + static_cast<int>(id)));
}

std::vector<double> CoefficientPath::at(double u) const {
  if (grid.empty()) throw std::invalid_argument("empty coefficient path");
  if (u <= grid.front()) return coeffs.front();
  if (u >= grid.back()) return coeffs.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (u - grid[lo]) / (grid[hi] - grid[lo]);
  std::vector<double> out(coeffs[lo].size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (1.0 - w) * coeffs[lo][j] + w * coeffs[hi][j];
  return out;
}

InnovationStream gaussian_innovations(std::size_t count, double rho,
                                      std::uint64_t seed) {
  if (!(std::abs(rho) < 1.0))
    throw std::domain_error("|rho| must be < 1");
  Rng rng(seed);
  InnovationStream s;
  s.z1.resize(count);
  s.z2.resize(count);
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t t = 0; t < count; ++t) {
    const double z = rng.normal();
    const double w = rng.normal();
    s.z1[t] = z;
    s.z2[t] = rho * z + c * w;
  }
  return s;
}

BivariateSeries spectral_synthesis(
    const std::function<double(double, double)>& psi11,
    const std::function<double(double, double)>& psi22, std::size_t T,
    std::uint64_t seed, double* max_imag_residual) {
  if (T % 2 != 0) throw std::invalid_argument("T must be even");
  if (T < 8) throw std::invalid_argument("need T >= 8");

  // eps_k, k = 1..T, per channel: complex normal with E|eps|^2 = 1/T and
  // eps_k = conj(eps_{T-k}); real normal at k = T/2 and k = T
  Rng rng(seed);
  std::vector<std::complex<double>> eps1(T + 1), eps2(T + 1);
  const double cplx_sd = std::sqrt(0.5 / static_cast<double>(T));
  const double real_sd = std::sqrt(1.0 / static_cast<double>(T));
  for (std::size_t k = 1; k < T / 2; ++k) {
    eps1[k] = {cplx_sd * rng.normal(), cplx_sd * rng.normal()};
    eps2[k] = {cplx_sd * rng.normal(), cplx_sd * rng.normal()};
    eps1[T - k] = std::conj(eps1[k]);
    eps2[T - k] = std::conj(eps2[k]);
  }
  eps1[T / 2] = real_sd * rng.normal();
  eps2[T / 2] = real_sd * rng.normal();
  eps1[T] = real_sd * rng.normal();
  eps2[T] = real_sd * rng.normal();

  BivariateSeries out;
  out.x1.resize(T);
  out.x2.resize(T);
  double worst_imag = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    const double u = static_cast<double>(t) / static_cast<double>(T);
    const double theta = 2.0 * M_PI * static_cast<double>(t) /
                         static_cast<double>(T);
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> phase = 1.0;  // e^{i theta k} at k = 0
    std::complex<double> s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 1; k <= T; ++k) {
      if ((k & 511u) == 0u)
        phase = std::polar(1.0, theta * static_cast<double>(k));
      else
        phase *= step;
      const double v = static_cast<double>(k) / static_cast<double>(T);
      s1 += psi11(u, v) * phase * eps1[k];
      s2 += psi22(u, v) * phase * eps2[k];
    }
    worst_imag = std::max({worst_imag, std::abs(s1.imag()), std::abs(s2.imag())});
    out.x1[t - 1] = s1.real();
    out.x2[t - 1] = s2.real();
  }
  if (max_imag_residual) *max_imag_residual = worst_imag;
  return out;
}

BivariateSeries simulate(const ModelSpec& spec, std::uint64_t seed) {
  if (spec.T < 64) throw std::invalid_argument("need T >= 64");
  if (!(std::abs(spec.rho) < 1.0))
    throw std::domain_error("|rho| must be < 1");
  const std::size_t T = spec.T;

  // Cholesky-decomposition models draw their own complex innovations
  if (spec.id == ModelId::M)
    return spectral_synthesis(psi_m, psi_m, T, seed);
  if (spec.id == ModelId::R)
    return spectral_synthesis(psi_m, psi_r22, T, seed);

  const bool stationary =
      spec.id <= ModelId::I || spec.id == ModelId::Custom;
  const std::size_t warm = stationary ? kWarmup : 0;
  const bool wavelet = spec.id == ModelId::L || spec.id == ModelId::Q;
  const std::size_t count = wavelet ? T : T + warm + kMaxLag;
  const InnovationStream z = gaussian_innovations(count, spec.rho, seed);

  const double s075 = std::sqrt(0.75);
  const double s1_15 = 1.0 / std::sqrt(1.5);
  const double s055 = std::sqrt(0.55);

  BivariateSeries out;
  switch (spec.id) {
    case ModelId::A:
      out.x1 = filter_const(z.z1, {}, {1.0, -0.8}, T, warm);
      out.x2 = filter_const(z.z2, {}, {1.0, -0.8}, T, warm);
      break;
    case ModelId::B:
      out.x1 = filter_const(z.z1, {}, {1.0, -0.8, -0.5}, T, warm);
      out.x2 = filter_const(z.z2, {}, {1.0, -0.8, -0.5}, T, warm);
      break;
    case ModelId::C:
      out.x1 = filter_const(z.z1, {0.5}, {s075}, T, warm);
      out.x2 = filter_const(z.z2, {0.5}, {s075}, T, warm);
      break;
    case ModelId::D:
      out.x1 = filter_const(z.z1, {0.5}, {1.0, -0.5}, T, warm);
      out.x2 = filter_const(z.z2, {0.5}, {1.0, -0.5}, T, warm);
      break;
    case ModelId::E:
      out.x1 = filter_const(z.z1, {0.5, -0.5}, {s1_15}, T, warm);
      out.x2 = filter_const(z.z2, {0.5, -0.5}, {s1_15}, T, warm);
      break;
    case ModelId::F:
      out.x1 = filter_const(z.z1, {}, {1.0, -0.8, -0.5}, T, warm);
      out.x2 = filter_const(z.z2, {}, {1.0, -0.8}, T, warm);
      break;
    case ModelId::G:
      out.x1 = filter_const(z.z1, {0.5}, {s075}, T, warm);
      out.x2 = filter_const(z.z2, {0.5}, {1.0, -0.5}, T, warm);
      break;
    case ModelId::H:
      out.x1 = filter_const(z.z1, {0.5}, {s075}, T, warm);
      out.x2 = filter_const(z.z2, {0.5, -0.5}, {s1_15}, T, warm);
      break;
    case ModelId::I: {
      if (spec.literal_text) {
        // literal text: the x1 recursion references x_{2,t-2}
        const std::size_t lead = warm + kMaxLag;
        std::vector<double> x1(T + warm, 0.0), x2full(T + warm, 0.0);
        for (std::size_t i = 0; i < x2full.size(); ++i) {
          double v = s055 * z.z2[i + lead - warm];
          if (i >= 1) v += 0.6 * x2full[i - 1];
          if (i >= 2) v -= 0.6 * x2full[i - 2];
          x2full[i] = v;
        }
        for (std::size_t i = 0; i < x1.size(); ++i) {
          double v = s1_15 * z.z1[i + lead - warm];
          if (i >= 1) v += 0.5 * x1[i - 1];
          if (i >= 2) v -= 0.5 * x2full[i - 2];
          x1[i] = v;
        }
        out.x1.assign(x1.begin() + static_cast<long>(warm), x1.end());
        out.x2.assign(x2full.begin() + static_cast<long>(warm), x2full.end());
      } else {
        out.x1 = filter_const(z.z1, {0.5, -0.5}, {s1_15}, T, warm);
        out.x2 = filter_const(z.z2, {0.6, -0.6}, {s055}, T, warm);
      }
      break;
    }
    case ModelId::J: {
      const auto ma = [](double u) {
        return std::vector<double>{1.0, -beta1(u)};
      };
      const auto ar = [](double) { return std::vector<double>{}; };
      out.x1 = filter_tv(z.z1, ar, ma, T);
      out.x2 = filter_tv(z.z2, ar, ma, T);
      break;
    }
    case ModelId::K: {
      const auto ar = [](double u) { return std::vector<double>{phi_sv(u)}; };
      const auto ma = [](double) { return std::vector<double>{1.0}; };
      out.x1 = filter_tv(z.z1, ar, ma, T);
      out.x2 = filter_tv(z.z2, ar, ma, T);
      break;
    }
    case ModelId::L:
      out.x1 = filter_wavelet(z.z1, wavelet_w1, kPsi1, T);
      out.x2 = filter_wavelet(z.z2, wavelet_w1, kPsi1, T);
      break;
    case ModelId::N: {
      const auto ar = [](double) { return std::vector<double>{}; };
      const auto ma1 = [](double u) {
        return std::vector<double>{1.0, -beta1(u), -beta2(u)};
      };
      const auto ma2 = [](double u) {
        return std::vector<double>{1.0, -beta1(u)};
      };
      out.x1 = filter_tv(z.z1, ar, ma1, T);
      out.x2 = filter_tv(z.z2, ar, ma2, T);
      break;
    }
    case ModelId::O: {
      const auto ar = [](double) { return std::vector<double>{}; };
      const auto ma1 = [](double u) {
        const double gamma = u >= 0.5 ? 1.0 : 0.0;
        return std::vector<double>{1.0, -0.8, -(0.5 - gamma)};
      };
      out.x1 = filter_tv(z.z1, ar, ma1, T);
      if (spec.literal_text) {
        // literal text: the lag-2 innovation of x2 comes from channel 1
        out.x2.resize(T);
        for (std::size_t i = 0; i < T; ++i) {
          const std::size_t zi = i + kMaxLag;
          out.x2[i] = z.z2[zi] - 0.8 * z.z2[zi - 1] - 0.5 * z.z1[zi - 2];
        }
      } else {
        const auto ma2 = [](double) {
          return std::vector<double>{1.0, -0.8, -0.5};
        };
        out.x2 = filter_tv(z.z2, ar, ma2, T);
      }
      break;
    }
    case ModelId::P: {
      const auto ar = [](double u) { return std::vector<double>{phi_sv(u)}; };
      const auto ma1 = [](double) { return std::vector<double>{1.5}; };
      const auto ma2 = [](double) { return std::vector<double>{1.0}; };
      out.x1 = filter_tv(z.z1, ar, ma1, T);
      out.x2 = filter_tv(z.z2, ar, ma2, T);
      break;
    }
    case ModelId::Q: {
      out.x1 = filter_wavelet(z.z1, wavelet_w1, kPsi1, T);
      const std::vector<double> part2 =
          filter_wavelet(z.z2, wavelet_w2, kPsi2, T);
      for (std::size_t i = 0; i < T; ++i) out.x1[i] += part2[i];
      out.x2 = filter_wavelet(z.z2, wavelet_w1, kPsi1, T);
      break;
    }
    case ModelId::Custom: {
      if (!spec.custom)
        throw std::invalid_argument("custom model without filter definition");
      out.x1 = simulate_custom_channel((*spec.custom)[0], z.z1, T);
      out.x2 = simulate_custom_channel((*spec.custom)[1], z.z2, T);
      break;
    }
    default:
      throw std::logic_error("unhandled model id");
  }
  return out;
}

ModelSpec load_custom_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    kv[key] = value;
  }

  const auto parse_path = [](const std::string& text) {
    CoefficientPath path;
    std::istringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
      const auto colon = row.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("path row needs 'u: coefficients'");
      path.grid.push_back(std::stod(row.substr(0, colon)));
      path.coeffs.push_back(parse_numbers(row.substr(colon + 1)));
    }
    if (path.grid.empty()) throw std::invalid_argument("empty path");
    for (std::size_t i = 0; i + 1 < path.grid.size(); ++i) {
      if (!(path.grid[i] < path.grid[i + 1]))
        throw std::invalid_argument("path grid must be strictly increasing");
    }
    for (const auto& row_coeffs : path.coeffs) {
      if (row_coeffs.size() != path.coeffs.front().size())
        throw std::invalid_argument("path rows must have equal length");
    }
    return path;
  };

  ModelSpec spec;
  spec.id = ModelId::Custom;
  std::array<ChannelFilter, 2> filters;
  for (int c = 1; c <= 2; ++c) {
    ChannelFilter& f = filters[static_cast<std::size_t>(c - 1)];
    const std::string suffix = std::to_string(c);
    if (auto it = kv.find("ar" + suffix); it != kv.end())
      f.ar = parse_numbers(it->second);
    if (auto it = kv.find("ma" + suffix); it != kv.end())
      f.ma = parse_numbers(it->second);
    if (auto it = kv.find("scale" + suffix); it != kv.end())
      f.scale = std::stod(it->second);
    if (auto it = kv.find("ar" + suffix + "_path"); it != kv.end())
      f.ar_path = parse_path(it->second);
    if (auto it = kv.find("ma" + suffix + "_path"); it != kv.end())
      f.ma_path = parse_path(it->second);
  }
  spec.custom = filters;
  return spec;
}

}  // namespace speceq
