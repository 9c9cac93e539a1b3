#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Data-parallel inner loops shared by the distance, norm and profile
// computations. Every kernel has a scalar reference implementation and,
// where the build target supports it, a SIMD variant (AVX2 on x86-64,
// NEON on aarch64) selected once at runtime. The dispatched entry points
// below are what library code calls; the per-backend namespaces exist so
// the equivalence tests can pin both implementations against each other.
//
// Reduction order differs between backends (lane-wise partial sums), so
// sum-type kernels agree with the scalar reference up to roundoff only;
// max/min/count kernels agree exactly.

namespace mmconc::kernels {

double l1_dist(const double* a, const double* b, std::size_t n);
double l2_dist_sq(const double* a, const double* b, std::size_t n);
double linf_dist(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);

/// min_i (a[i] + b[i]); +inf for n == 0.
double min_plus(const double* a, const double* b, std::size_t n);

/// Number of entries with |v[i] - center| >= r.
std::size_t count_outside(const double* v, std::size_t n, double center, double r);

/// Sum of |a[i]|^r for general r (libm pow; scalar on all targets).
double sum_abs_pow(const double* a, std::size_t n, double r);

const char* active_backend();
std::vector<std::string> available_backends();

namespace scalar {
double l1_dist(const double* a, const double* b, std::size_t n);
double l2_dist_sq(const double* a, const double* b, std::size_t n);
double linf_dist(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min_plus(const double* a, const double* b, std::size_t n);
std::size_t count_outside(const double* v, std::size_t n, double center, double r);
} // namespace scalar

#if defined(MMCONC_HAVE_AVX2)
namespace avx2 {
bool supported();
double l1_dist(const double* a, const double* b, std::size_t n);
double l2_dist_sq(const double* a, const double* b, std::size_t n);
double linf_dist(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min_plus(const double* a, const double* b, std::size_t n);
std::size_t count_outside(const double* v, std::size_t n, double center, double r);
} // namespace avx2
#endif

#if defined(MMCONC_HAVE_NEON)
namespace neon {
double l1_dist(const double* a, const double* b, std::size_t n);
double l2_dist_sq(const double* a, const double* b, std::size_t n);
double linf_dist(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double min_plus(const double* a, const double* b, std::size_t n);
std::size_t count_outside(const double* v, std::size_t n, double center, double r);
} // namespace neon
#endif

} // namespace mmconc::kernels
