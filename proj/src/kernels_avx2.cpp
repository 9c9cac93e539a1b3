#include "mmconc/kernels.hpp"

#if defined(MMCONC_HAVE_AVX2)

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <limits>

namespace mmconc::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d x) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, x);
}

// Fixed combine order: (l0 + l1) + (l2 + l3).
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_add_pd(lo, hi); // (l0+l2, l1+l3)
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_max_pd(lo, hi);
  const double a = _mm_cvtsd_f64(pair);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  return a > b ? a : b;
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_min_pd(lo, hi);
  const double a = _mm_cvtsd_f64(pair);
  const double b = _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  return a < b ? a : b;
}

} // namespace

bool supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

double l1_dist(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, abs_pd(d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double l2_dist_sq(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double linf_dist(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, abs_pd(d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

double sum_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(a + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sum_sq(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(a + i)));
  double m = hmax(acc);
  for (; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

double min_plus(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_min_pd(acc, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double m = hmin(acc);
  for (; i < n; ++i) {
    const double s = a[i] + b[i];
    if (s < m) m = s;
  }
  return m;
}

std::size_t count_outside(const double* v, std::size_t n, double center, double r) {
  const __m256d c = _mm256_set1_pd(center);
  const __m256d rr = _mm256_set1_pd(r);
  std::size_t cnt = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(v + i), c));
    __m256d ge = _mm256_cmp_pd(d, rr, _CMP_GE_OQ);
    cnt += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(ge))));
  }
  for (; i < n; ++i)
    if (std::fabs(v[i] - center) >= r) ++cnt;
  return cnt;
}

} // namespace mmconc::kernels::avx2

#endif // MMCONC_HAVE_AVX2
