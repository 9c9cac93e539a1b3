#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace mmconc {

/// Coordinate vector in R^k, identified with the finitely supported
/// sequences (trailing zeros implicit). Plain storage; operations live
/// in lp_geometry.
using LpVector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an exact enumeration would exceed its instance-size cap.
class CapExceededError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mmconc
