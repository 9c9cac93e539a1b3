#include "mmconc/kernels.hpp"

namespace mmconc::kernels {

namespace {

struct Table {
  double (*l1_dist)(const double*, const double*, std::size_t);
  double (*l2_dist_sq)(const double*, const double*, std::size_t);
  double (*linf_dist)(const double*, const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*min_plus)(const double*, const double*, std::size_t);
  std::size_t (*count_outside)(const double*, std::size_t, double, double);
  const char* name;
};

Table make_table() {
#if defined(MMCONC_HAVE_AVX2)
  if (avx2::supported()) {
    return {avx2::l1_dist, avx2::l2_dist_sq, avx2::linf_dist, avx2::sum_abs,
            avx2::sum_sq,  avx2::max_abs,    avx2::min_plus,  avx2::count_outside,
            "avx2"};
  }
#endif
#if defined(MMCONC_HAVE_NEON)
  return {neon::l1_dist, neon::l2_dist_sq, neon::linf_dist, neon::sum_abs,
          neon::sum_sq,  neon::max_abs,    neon::min_plus,  neon::count_outside,
          "neon"};
#endif
  return {scalar::l1_dist, scalar::l2_dist_sq, scalar::linf_dist, scalar::sum_abs,
          scalar::sum_sq,  scalar::max_abs,    scalar::min_plus,  scalar::count_outside,
          "scalar"};
}

const Table& table() {
  static const Table t = make_table();
  return t;
}

} // namespace

double l1_dist(const double* a, const double* b, std::size_t n) { return table().l1_dist(a, b, n); }
double l2_dist_sq(const double* a, const double* b, std::size_t n) { return table().l2_dist_sq(a, b, n); }
double linf_dist(const double* a, const double* b, std::size_t n) { return table().linf_dist(a, b, n); }
double sum_abs(const double* a, std::size_t n) { return table().sum_abs(a, n); }
double sum_sq(const double* a, std::size_t n) { return table().sum_sq(a, n); }
double max_abs(const double* a, std::size_t n) { return table().max_abs(a, n); }
double min_plus(const double* a, const double* b, std::size_t n) { return table().min_plus(a, b, n); }
std::size_t count_outside(const double* v, std::size_t n, double center, double r) {
  return table().count_outside(v, n, center, r);
}

const char* active_backend() { return table().name; }

std::vector<std::string> available_backends() {
  std::vector<std::string> out{"scalar"};
#if defined(MMCONC_HAVE_AVX2)
  if (avx2::supported()) out.emplace_back("avx2");
#endif
#if defined(MMCONC_HAVE_NEON)
  out.emplace_back("neon");
#endif
  return out;
}

} // namespace mmconc::kernels
