#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mmconc/kernels.hpp"
#include "mmconc/rng.hpp"

using namespace mmconc;

namespace {

std::vector<double> random_vec(rng::Engine& eng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (eng.uniform01() - 0.5);
  return v;
}

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 33, 64, 101, 257};

} // namespace

TEST_CASE("scalar kernels: basic identities") {
  rng::Engine eng(101);
  for (std::size_t n : kSizes) {
    const auto a = random_vec(eng, n);
    CHECK(kernels::scalar::l1_dist(a.data(), a.data(), n) == 0.0);
    CHECK(kernels::scalar::l2_dist_sq(a.data(), a.data(), n) == 0.0);
    CHECK(kernels::scalar::linf_dist(a.data(), a.data(), n) == 0.0);
    CHECK(kernels::scalar::count_outside(a.data(), n, 0.0, 0.0) == n);
    if (n > 0) {
      const auto b = random_vec(eng, n);
      // sup distance never exceeds the l1 distance
      CHECK(kernels::scalar::linf_dist(a.data(), b.data(), n) <=
            kernels::scalar::l1_dist(a.data(), b.data(), n) + 1e-15);
    }
  }
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
  rng::Engine eng(202);
  INFO("active backend: ", kernels::active_backend());
  for (std::size_t n : kSizes) {
    const auto a = random_vec(eng, n, 3.0);
    const auto b = random_vec(eng, n, 3.0);

    // Sum-type kernels reassociate across lanes: compare within roundoff.
    const double tol = 1e-12 * (1.0 + static_cast<double>(n));
    CHECK(kernels::l1_dist(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::l1_dist(a.data(), b.data(), n)).epsilon(tol));
    CHECK(kernels::l2_dist_sq(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::l2_dist_sq(a.data(), b.data(), n)).epsilon(tol));
    CHECK(kernels::sum_abs(a.data(), n) ==
          doctest::Approx(kernels::scalar::sum_abs(a.data(), n)).epsilon(tol));
    CHECK(kernels::sum_sq(a.data(), n) ==
          doctest::Approx(kernels::scalar::sum_sq(a.data(), n)).epsilon(tol));

    // Max / min / count kernels select rather than accumulate: exact match.
    CHECK(kernels::linf_dist(a.data(), b.data(), n) ==
          kernels::scalar::linf_dist(a.data(), b.data(), n));
    CHECK(kernels::max_abs(a.data(), n) == kernels::scalar::max_abs(a.data(), n));
    CHECK(kernels::min_plus(a.data(), b.data(), n) ==
          kernels::scalar::min_plus(a.data(), b.data(), n));
    CHECK(kernels::count_outside(a.data(), n, 0.1, 0.25) ==
          kernels::scalar::count_outside(a.data(), n, 0.1, 0.25));
  }
}

#if defined(MMCONC_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::avx2::supported()) return;
  rng::Engine eng(303);
  for (std::size_t n : kSizes) {
    const auto a = random_vec(eng, n, 2.0);
    const auto b = random_vec(eng, n, 2.0);
    const double tol = 1e-12 * (1.0 + static_cast<double>(n));
    CHECK(kernels::avx2::l1_dist(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::l1_dist(a.data(), b.data(), n)).epsilon(tol));
    CHECK(kernels::avx2::l2_dist_sq(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::l2_dist_sq(a.data(), b.data(), n)).epsilon(tol));
    CHECK(kernels::avx2::sum_abs(a.data(), n) ==
          doctest::Approx(kernels::scalar::sum_abs(a.data(), n)).epsilon(tol));
    CHECK(kernels::avx2::sum_sq(a.data(), n) ==
          doctest::Approx(kernels::scalar::sum_sq(a.data(), n)).epsilon(tol));
    CHECK(kernels::avx2::linf_dist(a.data(), b.data(), n) ==
          kernels::scalar::linf_dist(a.data(), b.data(), n));
    CHECK(kernels::avx2::max_abs(a.data(), n) == kernels::scalar::max_abs(a.data(), n));
    CHECK(kernels::avx2::min_plus(a.data(), b.data(), n) ==
          kernels::scalar::min_plus(a.data(), b.data(), n));
    CHECK(kernels::avx2::count_outside(a.data(), n, -0.05, 0.3) ==
          kernels::scalar::count_outside(a.data(), n, -0.05, 0.3));
  }
}
#endif

TEST_CASE("backend listing") {
  const auto backends = kernels::available_backends();
  REQUIRE(!backends.empty());
  CHECK(backends.front() == "scalar");
  bool found = false;
  for (const auto& b : backends)
    if (b == kernels::active_backend()) found = true;
  CHECK(found);
}

TEST_CASE("min_plus edge cases") {
  CHECK(std::isinf(kernels::min_plus(nullptr, nullptr, 0)));
  const double a[] = {3.0, 1.0, 2.0};
  const double b[] = {0.5, 4.0, 0.25};
  CHECK(kernels::min_plus(a, b, 3) == 2.25);
}

TEST_CASE("sum_abs_pow matches direct evaluation") {
  rng::Engine eng(404);
  const auto a = random_vec(eng, 37, 2.0);
  double want = 0.0;
  for (double x : a) want += std::pow(std::fabs(x), 2.7);
  CHECK(kernels::sum_abs_pow(a.data(), a.size(), 2.7) == doctest::Approx(want).epsilon(1e-14));
}
