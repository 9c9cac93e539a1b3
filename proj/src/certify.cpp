#include "mmconc/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "mmconc/parallel.hpp"

namespace mmconc::certify {

namespace {

double line_partial_diameter(const std::vector<double>& values, const std::vector<double>& weights,
                             double kappa) {
  return partial_diameter_exact(WeightedCloud::real_line(values, weights), kappa);
}

std::string subset_to_string(std::uint64_t mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (mask & (std::uint64_t{1} << i)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  }
  s += "}";
  return s;
}

} // namespace

double obsdiam_family_lower(const FiniteMMSpace& X, double kappa_prime, int cap,
                            std::uint64_t* witness_subset) {
  if (!(kappa_prime > 0.0))
    throw std::invalid_argument("obsdiam_family_lower: kappa_prime must be positive");
  if (X.n > cap)
    throw CapExceededError("obsdiam_family_lower: instance too large for subset enumeration");
  const int n = X.n;

  double best = 0.0;
  std::uint64_t best_mask = 0;

  // DFS over subsets A, carrying d(., A) = coordinate-wise min over rows of
  // included points. One scratch row per depth avoids per-node allocation.
  std::vector<std::vector<double>> scratch(static_cast<std::size_t>(n) + 1,
                                           std::vector<double>(static_cast<std::size_t>(n), kInf));
  std::vector<double> values(static_cast<std::size_t>(n));

  auto rec = [&](auto&& self, int idx, int depth, std::uint64_t mask) -> void {
    if (idx == n) {
      if (mask == 0) return;
      const auto& min_d = scratch[static_cast<std::size_t>(depth)];
      std::copy(min_d.begin(), min_d.end(), values.begin());
      const double v = line_partial_diameter(values, X.weights, kappa_prime);
      if (v > best) {
        best = v;
        best_mask = mask;
      }
      return;
    }
    // exclude idx
    self(self, idx + 1, depth, mask);
    // include idx
    auto& next = scratch[static_cast<std::size_t>(depth) + 1];
    const auto& cur = scratch[static_cast<std::size_t>(depth)];
    for (int x = 0; x < n; ++x)
      next[static_cast<std::size_t>(x)] =
          std::min(cur[static_cast<std::size_t>(x)], X.d(x, idx));
    self(self, idx + 1, depth + 1, mask | (std::uint64_t{1} << idx));
  };
  rec(rec, 0, 0, 0);

  if (witness_subset != nullptr) *witness_subset = best_mask;
  return best;
}

std::vector<double> default_kappa_grid(double kappa_prime, double total_mass) {
  std::vector<double> grid = {kappa_prime * 1.125, kappa_prime * 1.25, kappa_prime * 1.5,
                              kappa_prime * 2.0,   kappa_prime * 3.0,  kappa_prime * 4.0,
                              total_mass / 4.0,    total_mass / 2.0};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::erase_if(grid, [&](double k) { return !(k > kappa_prime); });
  return grid;
}

Bracket obsdiam_bracket_R(const FiniteMMSpace& X, double kappa_prime,
                          std::span<const double> kappa_grid, int subset_cap, int sep_cap) {
  if (!(kappa_prime > 0.0))
    throw std::invalid_argument("obsdiam_bracket_R: kappa_prime must be positive");

  std::vector<double> grid(kappa_grid.begin(), kappa_grid.end());
  if (grid.empty()) grid = default_kappa_grid(kappa_prime, X.total_mass);

  Bracket b;
  std::uint64_t mask = 0;
  b.lower = obsdiam_family_lower(X, kappa_prime, subset_cap, &mask);
  b.lower_witness = "pushforward by +/-d(.,A), A=" + subset_to_string(mask, X.n);

  for (double k : grid) {
    if (!(k > kappa_prime)) continue; // the lower bound needs kappa strictly above kappa_prime
    const double v = sep_exact(X, {k, k}, sep_cap);
    if (v > b.lower) {
      b.lower = v;
      char buf[64];
      std::snprintf(buf, sizeof(buf), "Sep(kappa,kappa) at kappa=%.17g", k);
      b.lower_witness = buf;
    }
  }

  b.upper = sep_exact(X, {kappa_prime / 2.0, kappa_prime / 2.0}, sep_cap);
  b.upper_witness = "Sep(kappa'/2,kappa'/2)";

  if (b.lower > b.upper + 1e-9)
    throw std::logic_error("obsdiam_bracket_R: bracket inverted (solver inconsistency)");
  return b;
}

namespace {

void check_cloud_in_ball(const WeightedCloud& cloud, const ReductionParams& params,
                         double ball_tol) {
  if (cloud.target != WeightedCloud::Target::CoordinateSpace)
    throw std::invalid_argument("lpball_reduce_bound: cloud must live in a coordinate space");
  if (cloud.r != params.q)
    throw std::invalid_argument("lpball_reduce_bound: cloud distance exponent must equal q");
  for (const auto& pt : cloud.points)
    if (lp_norm(pt, params.p) > 1.0 + ball_tol)
      throw std::invalid_argument("lpball_reduce_bound: point outside the unit lp ball");
}

std::vector<LpVector> reduce_points(const WeightedCloud& cloud, const ReductionParams& params,
                                    double ball_tol) {
  std::vector<LpVector> out;
  out.reserve(cloud.points.size());
  for (const auto& pt : cloud.points) out.push_back(reduce_F(pt, params, ball_tol));
  return out;
}

WeightedCloud cloud_from_points(const WeightedCloud& like, std::vector<LpVector> pts) {
  WeightedCloud out = WeightedCloud::coordinate_space(like.dim, like.r, std::move(pts), like.weights);
  out.total_mass = like.total_mass;
  return out;
}

} // namespace

ReduceBound lpball_reduce_bound(const WeightedCloud& cloud, const ReductionParams& params,
                                double kappa, int cap, double ball_tol) {
  check_cloud_in_ball(cloud, params, ball_tol);
  ReduceBound r;
  r.direct = partial_diameter_exact(cloud, kappa, cap);
  const WeightedCloud reduced = cloud_from_points(cloud, reduce_points(cloud, params, ball_tol));
  r.reduced = partial_diameter_exact(reduced, kappa, cap);
  r.bound_ok = r.direct <= r.reduced + params.eps + 1e-9;
  return r;
}

ProjectedReduceBound lpball_reduce_bound_projected(const WeightedCloud& cloud,
                                                   const ReductionParams& params, double kappa,
                                                   double ball_tol) {
  check_cloud_in_ball(cloud, params, ball_tol);
  const std::vector<LpVector> reduced = reduce_points(cloud, params, ball_tol);
  const std::size_t dim = static_cast<std::size_t>(cloud.dim);

  // Dominant coordinate of the reduced cloud: largest mass-weighted |value|.
  std::vector<double> energy(dim, 0.0);
  for (std::size_t i = 0; i < reduced.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j)
      energy[j] += cloud.weights[i] * std::fabs(reduced[i][j]);
  std::size_t c = 0;
  for (std::size_t j = 1; j < dim; ++j)
    if (energy[j] > energy[c]) c = j;

  std::vector<double> direct_vals(cloud.points.size());
  std::vector<double> reduced_vals(cloud.points.size());
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    direct_vals[i] = cloud.points[i][c];
    reduced_vals[i] = reduced[i][c];
  }

  ProjectedReduceBound r;
  r.coordinate = static_cast<int>(c);
  WeightedCloud direct_line = WeightedCloud::real_line(direct_vals, cloud.weights);
  direct_line.total_mass = cloud.total_mass;
  WeightedCloud reduced_line = WeightedCloud::real_line(reduced_vals, cloud.weights);
  reduced_line.total_mass = cloud.total_mass;
  r.direct = partial_diameter_exact(direct_line, kappa);
  r.reduced = partial_diameter_exact(reduced_line, kappa);
  r.bound_ok = r.direct <= r.reduced + params.eps + 1e-9;
  return r;
}

double antipodal_lower(const SphereSampleSet& S, double q, double kappa) {
  if (!S.symmetrized)
    throw std::invalid_argument("antipodal_lower: requires a symmetrized sample");
  if (!(kappa < 0.5))
    throw std::invalid_argument(
        "antipodal_lower: requires kappa < 1/2 (subsets must be forced past half mass)");
  if (!(q >= 1.0) || !(q <= S.p))
    throw std::invalid_argument(
        "antipodal_lower: requires 1 <= q <= p (the lq distance must dominate lp on the sphere)");
  if (S.points.size() < 2 || S.points.size() % 2 != 0)
    throw std::invalid_argument("antipodal_lower: malformed symmetrized sample");

  double best = kInf;
  for (std::size_t i = 0; i + 1 < S.points.size(); i += 2) {
    const auto& a = S.points[i];
    const auto& b = S.points[i + 1];
    for (std::size_t j = 0; j < a.size(); ++j)
      if (b[j] != -a[j])
        throw std::invalid_argument("antipodal_lower: points are not exact antipodal pairs");
    best = std::min(best, lq_dist(a, b, q));
  }
  return best;
}

namespace {

constexpr double kIneqTol = 1e-9;
constexpr double kDisplacementTol = 1e-12;

CheckRecord make_record(std::string name, std::uint64_t seed, double lhs, double rhs, double tol) {
  CheckRecord r;
  r.name = std::move(name);
  r.seed = seed;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = r.margin >= -tol;
  return r;
}

LpVector random_ball_point(rng::Engine& eng, int dim, double p) {
  LpVector x(static_cast<std::size_t>(dim));
  for (auto& c : x) c = eng.sign() * std::pow(eng.gamma(1.0 / p), 1.0 / p);
  const double norm = lp_norm(x, p);
  const double radius = std::pow(eng.uniform01(), 1.0 / dim);
  if (norm == 0.0) return LpVector(static_cast<std::size_t>(dim), 0.0);
  for (auto& c : x) c = c / norm * radius;
  return x;
}

LpVector perturb_in_ball(rng::Engine& eng, const LpVector& x, double p) {
  LpVector y = x;
  const double delta = 0.05 * eng.uniform01();
  for (auto& c : y) c += delta * eng.normal();
  const double norm = lp_norm(y, p);
  if (norm > 1.0) {
    const double shrink = norm * (1.0 + 1e-13);
    for (auto& c : y) c /= shrink;
  }
  return y;
}

struct ReductionCombo {
  double p;
  double q;
};

void run_trial(std::uint64_t trial_seed, const SuiteOptions& opts,
               std::vector<CheckRecord>& out) {
  rng::Engine eng(trial_seed);

  // --- random mm-space checks -------------------------------------------
  const int n = eng.uniform_int(3, 10);
  const FiniteMMSpace X = make_random_mmspace(eng, n);
  const double m = X.total_mass;

  // pushforward contraction: Sep(Y) <= alpha * Sep(X) for Y = f_*(mu_X)
  {
    const std::array<double, 3> rs = {1.0, 2.0, kInf};
    const double r = rs[static_cast<std::size_t>(eng.uniform_int(0, 2))];
    std::vector<LpVector> images(static_cast<std::size_t>(n));
    for (auto& img : images) img = {eng.uniform01(), eng.uniform01()};
    double alpha = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double dx = X.d(i, j);
        if (dx > 1e-12)
          alpha = std::max(alpha, lq_dist(images[static_cast<std::size_t>(i)],
                                          images[static_cast<std::size_t>(j)], r) /
                                      dx);
      }
    const double k1 = eng.uniform(0.02, 0.7) * m;
    const double k2 = eng.uniform(0.02, 0.7) * m;
    const WeightedCloud push = pushforward(X, images, 2, r);
    const FiniteMMSpace Y = cloud_as_mmspace(push);
    const double lhs = sep_exact(Y, {k1, k2});
    const double sep_x = sep_exact(X, {k1, k2});
    out.push_back(
        make_record("sep_pushforward_contraction", trial_seed, lhs, alpha * sep_x, kIneqTol));

    // greedy lower bound on the same instance (margin 0 marks equality)
    const double greedy = sep_lower_greedy(X, {k1, k2});
    out.push_back(make_record("sep_greedy_lower_bound", trial_seed, greedy, sep_x, 0.0));
  }

  // distance-function family vs separation (needs kappa > kappa')
  {
    const double kp = eng.uniform(0.05, 0.45) * m;
    const double k = kp * (1.0 + eng.uniform(0.1, 1.5));
    const double lhs = sep_exact(X, {k, k});
    const double rhs = obsdiam_family_lower(X, kp);
    out.push_back(make_record("obsdiam_family_lower_vs_sep", trial_seed, lhs, rhs, kIneqTol));
  }

  // --- real-line cloud: diam(nu, m - 2kappa) <= Sep(nu; kappa, kappa) ----
  {
    const int support = eng.uniform_int(2, 12);
    const WeightedCloud nu = make_random_line_cloud(eng, support);
    const double kappa = eng.uniform(0.01, 0.5) * nu.total_mass;
    const double lhs = partial_diameter_exact(nu, 2.0 * kappa);
    const double rhs = sep_exact(cloud_as_mmspace(nu), {kappa, kappa});
    out.push_back(make_record("line_partial_diameter_vs_sep", trial_seed, lhs, rhs, kIneqTol));
  }

  // --- coordinate cloud: diam(nu, m-kappa) <= k^{1/r} Sep(nu; kappa/2k, kappa/2k)
  {
    const int dim = eng.uniform_int(1, 4);
    const std::array<double, 4> rs = {1.0, 2.0, 3.0, kInf};
    const double r = rs[static_cast<std::size_t>(eng.uniform_int(0, 3))];
    const int support = eng.uniform_int(2, 12);
    const WeightedCloud nu = make_random_coord_cloud(eng, support, dim, r);
    const double kappa = eng.uniform(0.02, 0.6) * nu.total_mass;
    const double lhs = partial_diameter_exact(nu, kappa);
    const double factor = std::isinf(r) ? 1.0 : std::pow(static_cast<double>(dim), 1.0 / r);
    const double half = kappa / (2.0 * dim);
    const double rhs = factor * sep_exact(cloud_as_mmspace(nu), {half, half});
    out.push_back(make_record("cube_partial_diameter_vs_sep", trial_seed, lhs, rhs, kIneqTol));
  }

  // --- reduction map certificates ----------------------------------------
  {
    const std::array<ReductionCombo, 3> combos = {{{1.0, 2.0}, {1.0, kInf}, {2.0, 3.0}}};
    const ReductionCombo combo = combos[static_cast<std::size_t>(eng.uniform_int(0, 2))];
    const ReductionParams params = ReductionParams::make(combo.p, combo.q, 1.0);
    const int dim = eng.uniform_int(1, 2 * params.k + 2);
    const LpVector x = random_ball_point(eng, dim, params.p);
    const LpVector y = eng.uniform01() < 0.5 ? random_ball_point(eng, dim, params.p)
                                             : perturb_in_ball(eng, x, params.p);

    const LpVector fx = reduce_F(x, params);
    const LpVector fy = reduce_F(y, params);
    out.push_back(make_record("reduction_displacement", trial_seed, lq_dist(x, fx, params.q),
                              params.eps / 2.0, kDisplacementTol));

    double constant = reduce_lipschitz_bound(params);
    if (opts.inject_lipschitz_fault) constant *= 1e-3;
    out.push_back(make_record("reduction_lipschitz", trial_seed, lq_dist(fx, fy, params.q),
                              constant * lq_dist(x, y, params.q), kIneqTol));
  }
}

} // namespace

SuiteReport run_inequality_suite(const SuiteOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("run_inequality_suite: trials must be >= 1");

  std::vector<std::vector<CheckRecord>> slots(opts.trials);
  parallel_for(opts.trials, [&](std::size_t t) {
    run_trial(rng::derive_stream(opts.seed, t), opts, slots[t]);
  });

  SuiteReport report;
  for (auto& slot : slots)
    for (auto& rec : slot) report.records.push_back(std::move(rec));
  for (const auto& rec : report.records)
    (rec.pass ? report.pass_count : report.fail_count) += 1;
  return report;
}

} // namespace mmconc::certify
