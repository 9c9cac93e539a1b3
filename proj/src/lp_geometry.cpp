#include "mmconc/lp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mmconc/kernels.hpp"

namespace mmconc {

namespace {

void check_exponent(double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("lq exponent must satisfy r >= 1");
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return inv;
}

} // namespace

double lq_dist(std::span<const double> x, std::span<const double> y, double r) {
  check_exponent(r);
  if (x.size() < y.size()) std::swap(x, y);
  const std::size_t m = y.size();
  const std::size_t n = x.size();
  const double* tail = x.data() + m;
  const std::size_t tail_n = n - m;
  if (r == 1.0) return kernels::l1_dist(x.data(), y.data(), m) + kernels::sum_abs(tail, tail_n);
  if (r == 2.0)
    return std::sqrt(kernels::l2_dist_sq(x.data(), y.data(), m) + kernels::sum_sq(tail, tail_n));
  if (std::isinf(r))
    return std::max(kernels::linf_dist(x.data(), y.data(), m), kernels::max_abs(tail, tail_n));
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += std::pow(std::fabs(x[i] - y[i]), r);
  s += kernels::sum_abs_pow(tail, tail_n, r);
  return std::pow(s, 1.0 / r);
}

double lp_norm(std::span<const double> x, double p) {
  check_exponent(p);
  if (p == 1.0) return kernels::sum_abs(x.data(), x.size());
  if (p == 2.0) return std::sqrt(kernels::sum_sq(x.data(), x.size()));
  if (std::isinf(p)) return kernels::max_abs(x.data(), x.size());
  return std::pow(kernels::sum_abs_pow(x.data(), x.size(), p), 1.0 / p);
}

std::size_t nonzero_count(std::span<const double> x) {
  std::size_t c = 0;
  for (double v : x)
    if (v != 0.0) ++c;
  return c;
}

SignedPermutation SignedPermutation::identity(std::size_t k) {
  SignedPermutation g;
  g.signs.assign(k, 1);
  g.perm.resize(k);
  std::iota(g.perm.begin(), g.perm.end(), 0);
  return g;
}

bool SignedPermutation::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || signs[i] != 1) return false;
  return true;
}

void SignedPermutation::validate() const {
  if (signs.size() != perm.size())
    throw std::invalid_argument("SignedPermutation: signs/perm length mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("SignedPermutation: perm is not a bijection");
    seen[static_cast<std::size_t>(p)] = 1;
    if (signs[i] != 1 && signs[i] != -1)
      throw std::invalid_argument("SignedPermutation: signs must be +1 or -1");
  }
}

LpVector group_apply(const SignedPermutation& g, std::span<const double> x) {
  const std::size_t k = g.size();
  if (x.size() != k) throw std::invalid_argument("group_apply: vector length mismatch");
  const std::vector<int> inv = inverse_perm(g.perm);
  LpVector y(k);
  for (std::size_t i = 0; i < k; ++i)
    y[i] = static_cast<double>(g.signs[i]) * x[static_cast<std::size_t>(inv[i])];
  return y;
}

SignedPermutation group_compose(const SignedPermutation& g, const SignedPermutation& h) {
  const std::size_t k = g.size();
  if (h.size() != k) throw std::invalid_argument("group_compose: length mismatch");
  const std::vector<int> ginv = inverse_perm(g.perm);
  SignedPermutation out;
  out.signs.resize(k);
  out.perm.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.signs[i] = static_cast<std::int8_t>(g.signs[i] * h.signs[static_cast<std::size_t>(ginv[i])]);
    // (g*h)(i) = g(h(i))
    out.perm[i] = g.perm[static_cast<std::size_t>(h.perm[i])];
  }
  return out;
}

SignedPermutation group_inverse(const SignedPermutation& g) {
  const std::size_t k = g.size();
  SignedPermutation out;
  out.signs.resize(k);
  out.perm = inverse_perm(g.perm);
  for (std::size_t i = 0; i < k; ++i)
    out.signs[i] = g.signs[static_cast<std::size_t>(g.perm[i])];
  return out;
}

int k_eps(double p, double q, double eps) {
  if (!(p >= 1.0) || !(q > p)) throw std::invalid_argument("k_eps: need 1 <= p < q");
  if (!(eps > 0.0)) throw std::invalid_argument("k_eps: eps must be positive");
  const double expo = std::isinf(q) ? p : p * q / (q - p);
  const double v = std::pow(2.0 / eps, expo);
  if (!(v < 2147483000.0)) throw std::invalid_argument("k_eps: k(eps) too large to represent");
  const double c = std::ceil(v);
  return static_cast<int>(c) - 1;
}

ReductionParams ReductionParams::make(double p, double q, double eps) {
  ReductionParams params;
  params.p = p;
  params.q = q;
  params.eps = eps;
  params.k = k_eps(p, q, eps);
  return params;
}

bool in_lambda(std::span<const double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= 0.0)) return false;
    if (i > 0 && y[i] > y[i - 1]) return false;
  }
  return true;
}

std::pair<SignedPermutation, LpVector> canonicalize(std::span<const double> x) {
  const std::size_t k = x.size();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::fabs(x[static_cast<std::size_t>(a)]) > std::fabs(x[static_cast<std::size_t>(b)]);
  });

  SignedPermutation g;
  g.signs.resize(k);
  g.perm.resize(k);
  LpVector y(k);
  for (std::size_t pos = 0; pos < k; ++pos) {
    const int src = order[pos];
    const double v = x[static_cast<std::size_t>(src)];
    g.perm[static_cast<std::size_t>(src)] = static_cast<int>(pos);
    g.signs[pos] = static_cast<std::int8_t>(v < 0.0 ? -1 : 1);
    y[pos] = std::fabs(v);
  }
  return {std::move(g), std::move(y)};
}

LpVector f_trunc(std::span<const double> y, int k) {
  if (k < 0) throw std::invalid_argument("f_trunc: k must be nonnegative");
  if (!in_lambda(y)) throw std::invalid_argument("f_trunc: input not nonincreasing nonnegative");
  const std::size_t n = y.size();
  const std::size_t uk = static_cast<std::size_t>(k);
  const double pivot = uk < n ? y[uk] : 0.0;
  LpVector z(n, 0.0);
  const std::size_t keep = std::min(uk, n);
  for (std::size_t i = 0; i < keep; ++i) z[i] = y[i] - pivot;
  return z;
}

LpVector reduce_F(std::span<const double> x, const ReductionParams& params, double ball_tol) {
  if (lp_norm(x, params.p) > 1.0 + ball_tol)
    throw std::invalid_argument("reduce_F: input outside the unit lp ball");
  const std::size_t len = std::max(x.size(), static_cast<std::size_t>(params.k) + 1);
  LpVector padded(x.begin(), x.end());
  padded.resize(len, 0.0);

  auto [g, y] = canonicalize(padded);
  const LpVector z = f_trunc(y, params.k);
  LpVector out = group_apply(group_inverse(g), z);
  // Padding positions always carry zeros on the way back.
  out.resize(x.size());
  return out;
}

double reduce_lipschitz_bound(const ReductionParams& params) {
  const double root = std::isinf(params.q) ? 1.0 : std::pow(static_cast<double>(params.k), 1.0 / params.q);
  return 1.0 + root;
}

ProjectionResult project_Ak(std::span<const double> x, int k, double q) {
  if (k < 0) throw std::invalid_argument("project_Ak: k must be nonnegative");
  check_exponent(q);
  std::vector<int> nz;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) nz.push_back(static_cast<int>(i));

  ProjectionResult res;
  res.y.assign(x.begin(), x.end());
  if (nz.size() <= static_cast<std::size_t>(k)) {
    res.dist = 0.0;
    return res;
  }
  std::sort(nz.begin(), nz.end(), [&](int a, int b) {
    const double fa = std::fabs(x[static_cast<std::size_t>(a)]);
    const double fb = std::fabs(x[static_cast<std::size_t>(b)]);
    if (fa != fb) return fa < fb;
    return a < b;
  });
  const std::size_t drop = nz.size() - static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < drop; ++i) res.y[static_cast<std::size_t>(nz[i])] = 0.0;
  res.dist = lq_dist(x, res.y, q);
  return res;
}

} // namespace mmconc
