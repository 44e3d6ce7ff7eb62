#pragma once

#include <stdexcept>
#include <string>

namespace speceq {

// A periodogram ordinate used as a ratio denominator (or numerator) is
// exactly zero. For continuous-valued data this signals pathological input,
// e.g. an identically-zero channel.
class degenerate_spectrum_error : public std::runtime_error {
 public:
  explicit degenerate_spectrum_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A user-supplied AR polynomial has a root on or inside the unit circle.
class instability_error : public std::runtime_error {
 public:
  explicit instability_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace speceq
