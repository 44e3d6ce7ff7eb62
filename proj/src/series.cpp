#include "speceq/series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace speceq {

void validate(const BivariateSeries& data) {
  if (data.x1.size() != data.x2.size())
    throw std::invalid_argument("channel lengths differ");
  if (data.x1.size() < 8)
    throw std::invalid_argument("need at least 8 samples per channel");
  for (const auto* ch : {&data.x1, &data.x2}) {
    for (double v : *ch) {
      if (!std::isfinite(v))
        throw std::invalid_argument("non-finite sample value");
    }
  }
}

std::vector<double> demeaned(std::span<const double> x) {
  const double mean =
      std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= mean;
  return out;
}

}  // namespace speceq
