#include "mmconc/sphere_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmconc/kernels.hpp"
#include "mmconc/lp_geometry.hpp"
#include "mmconc/parallel.hpp"

namespace mmconc {

namespace {

LpVector draw_sphere_point(rng::Engine& eng, int n, double p) {
  if (n == 1) return {eng.sign()}; // the sphere is exactly {-1, +1}
  LpVector x(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& c : x) {
      const double mag = std::pow(eng.gamma(1.0 / p), 1.0 / p);
      c = eng.sign() * mag;
    }
    const double norm = lp_norm(x, p);
    if (norm > 0.0) {
      for (auto& c : x) c /= norm;
      return x;
    }
  }
}

} // namespace

SphereSampleSet sample_cone(int n, double p, std::size_t count, std::uint64_t seed,
                            bool symmetrize) {
  if (n < 1) throw std::invalid_argument("sample_cone: dimension must be >= 1");
  if (!(p >= 1.0) || std::isinf(p))
    throw std::invalid_argument("sample_cone: need finite exponent p >= 1");
  if (count < 1) throw std::invalid_argument("sample_cone: count must be >= 1");

  SphereSampleSet S;
  S.n = n;
  S.p = p;
  S.seed = seed;
  S.symmetrized = symmetrize;
  const std::size_t stride = symmetrize ? 2 : 1;
  S.points.assign(count * stride, LpVector{});

  parallel_for(count, [&](std::size_t i) {
    rng::Engine eng(seed, i);
    LpVector x = draw_sphere_point(eng, n, p);
    if (symmetrize) {
      LpVector neg(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) neg[j] = -x[j];
      S.points[2 * i] = std::move(x);
      S.points[2 * i + 1] = std::move(neg);
    } else {
      S.points[i] = std::move(x);
    }
  });
  return S;
}

FiniteMMSpace empirical_mmspace(const SphereSampleSet& S, double q) {
  const int s = static_cast<int>(S.points.size());
  if (s < 1) throw std::invalid_argument("empirical_mmspace: empty sample");
  std::vector<double> flat(static_cast<std::size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      const double dd =
          lq_dist(S.points[static_cast<std::size_t>(i)], S.points[static_cast<std::size_t>(j)], q);
      flat[static_cast<std::size_t>(i) * s + j] = dd;
      flat[static_cast<std::size_t>(j) * s + i] = dd;
    }
  std::vector<double> w(static_cast<std::size_t>(s), 1.0 / s);
  return FiniteMMSpace::create(s, std::move(flat), std::move(w));
}

double midpoint_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("midpoint_median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<double> median_concentration_profile(const std::vector<double>& values,
                                                 std::span<const double> r_grid) {
  if (values.empty()) throw std::invalid_argument("median_concentration_profile: empty input");
  const double med = midpoint_median(values);
  std::vector<double> out;
  out.reserve(r_grid.size());
  const double n = static_cast<double>(values.size());
  for (double r : r_grid) {
    const std::size_t c = kernels::count_outside(values.data(), values.size(), med, r);
    out.push_back(static_cast<double>(c) / n);
  }
  return out;
}

std::vector<double> coordinate_values(const SphereSampleSet& S, int coord) {
  if (coord < 0 || coord >= S.n) throw std::invalid_argument("coordinate_values: bad coordinate");
  std::vector<double> out;
  out.reserve(S.points.size());
  for (const auto& pt : S.points) out.push_back(pt[static_cast<std::size_t>(coord)]);
  return out;
}

} // namespace mmconc
