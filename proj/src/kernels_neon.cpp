#include "mmconc/kernels.hpp"

#if defined(MMCONC_HAVE_NEON)

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace mmconc::kernels::neon {

double l1_dist(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double l2_dist_sq(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double linf_dist(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vmaxq_f64(acc, vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  double m = vgetq_lane_f64(acc, 0);
  const double m1 = vgetq_lane_f64(acc, 1);
  if (m1 > m) m = m1;
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sum_abs(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sum_sq(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vld1q_f64(a + i);
    acc = vaddq_f64(acc, vmulq_f64(x, x));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double m = vgetq_lane_f64(acc, 0);
  const double m1 = vgetq_lane_f64(acc, 1);
  if (m1 > m) m = m1;
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

double min_plus(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vminq_f64(acc, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double m = vgetq_lane_f64(acc, 0);
  const double m1 = vgetq_lane_f64(acc, 1);
  if (m1 < m) m = m1;
  for (; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < m) m = s;
  }
  return m;
}

std::size_t count_outside(const double* v, std::size_t n, double center, double r) {
  const float64x2_t c = vdupq_n_f64(center);
  const float64x2_t rr = vdupq_n_f64(r);
  std::size_t cnt = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(v + i), c));
    uint64x2_t ge = vcgeq_f64(d, rr);
    cnt += (vgetq_lane_u64(ge, 0) ? 1u : 0u) + (vgetq_lane_u64(ge, 1) ? 1u : 0u);
  }
  for (; i < n; ++i)
    if (std::fabs(v[i] - center) >= r) ++cnt;
  return cnt;
}

} // namespace mmconc::kernels::neon

#endif // MMCONC_HAVE_NEON
