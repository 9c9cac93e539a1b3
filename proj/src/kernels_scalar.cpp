#include "mmconc/kernels.hpp"

#include <cmath>
#include <limits>

namespace mmconc::kernels::scalar {

double l1_dist(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double l2_dist_sq(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double linf_dist(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sum_abs(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sum_sq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

double min_plus(const double* a, const double* b, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < m) m = s;
  }
  return m;
}

std::size_t count_outside(const double* v, std::size_t n, double center, double r) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(v[i] - center) >= r) ++c;
  return c;
}

} // namespace mmconc::kernels::scalar

namespace mmconc::kernels {

double sum_abs_pow(const double* a, std::size_t n, double r) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(a[i]), r);
  return s;
}

} // namespace mmconc::kernels
