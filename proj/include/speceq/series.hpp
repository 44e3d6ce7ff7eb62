#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace speceq {

// Two equal-length real-valued sample sequences; the test input.
struct BivariateSeries {
  std::vector<double> x1;
  std::vector<double> x2;

  std::size_t length() const { return x1.size(); }
};

// Throws std::invalid_argument unless both channels have equal length
// T >= 8 and all values are finite.
void validate(const BivariateSeries& data);

// Copy of `x` with its sample mean subtracted.
std::vector<double> demeaned(std::span<const double> x);

}  // namespace speceq
