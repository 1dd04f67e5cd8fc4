#ifndef GSIM_COMMON_HPP
#define GSIM_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsim {

using VecView = std::span<const double>;

/// Invalid argument or configuration rejected by a precondition check.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An encoder asked for a received signal that is not yet available.
class CausalityError : public std::logic_error {
 public:
  CausalityError(int node, int slot, int requested)
      : std::logic_error("causality violation: node " + std::to_string(node) +
                         " at slot " + std::to_string(slot) +
                         " requested observation index " + std::to_string(requested)),
        node(node), slot(slot), requested(requested) {}
  int node, slot, requested;
};

/// A coding scheme produced an unusable value (NaN/inf) during a run.
class SchemeError : public std::runtime_error {
 public:
  explicit SchemeError(const std::string& what) : std::runtime_error(what) {}
};

inline bool all_finite(VecView v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

/// 2^-rho * floor(2^rho * x); the scaling is exact in binary floating point.
inline double floor_to_precision(double x, int rho) {
  return std::ldexp(std::floor(std::ldexp(x, rho)), -rho);
}

/// Mid-rise uniform quantizer: snaps x to the midpoint of one of 2^rate_bits
/// equal cells covering [-range, range]; inputs beyond the range saturate to
/// the outermost midpoints. Midpoints are fixed points of the map.
inline double midrise_quantize(double x, double range, int rate_bits) {
  const int cells = 1 << rate_bits;
  const double width = 2.0 * range / cells;
  double idx = std::floor((x + range) / width);
  if (idx < 0.0) idx = 0.0;
  if (idx > cells - 1) idx = cells - 1;
  return -range + (idx + 0.5) * width;
}

}  // namespace gsim

#endif
