#include "mmconc/mmspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mmconc/kernels.hpp"
#include "mmconc/lp_geometry.hpp"

namespace mmconc {

namespace {

constexpr int kHardCapLimit = 26; // 2^26 table entries; beyond this exact mode is unreasonable

void check_cap(int cap) {
  if (cap < 1 || cap > kHardCapLimit)
    throw std::invalid_argument("enumeration cap must be in [1, 26]");
}

double accumulate_mass(const std::vector<double>& w) {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

void check_weights(const std::vector<double>& w) {
  for (double x : w)
    if (!(x >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
}

/// Shared exact partial diameter over an abstract finite metric, by subset
/// enumeration with incremental diameter/mass tables.
template <typename DistFn>
double partial_diameter_subsets(int n, DistFn&& d, const std::vector<double>& w, double total,
                                double kappa, int cap) {
  check_cap(cap);
  if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative");
  if (kappa >= total) return 0.0;
  if (n > cap)
    throw CapExceededError(
        "partial_diameter_exact: instance too large for exact mode (support > cap); "
        "subsample or use the real-line branch");
  const double target = total - kappa;
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> diam(full, 0.0);
  std::vector<double> mass(full, 0.0);
  double best = kInf;
  for (std::size_t s = 1; s < full; ++s) {
    const int h = 63 - std::countl_zero(static_cast<std::uint64_t>(s));
    const std::size_t rest = s ^ (std::size_t{1} << h);
    double md = 0.0;
    for (std::size_t t = rest; t != 0;) {
      const int i = std::countr_zero(static_cast<std::uint64_t>(t));
      t &= t - 1;
      const double dd = d(h, i);
      if (dd > md) md = dd;
    }
    diam[s] = std::max(diam[rest], md);
    mass[s] = mass[rest] + w[static_cast<std::size_t>(h)];
    if (mass[s] >= target && diam[s] < best) best = diam[s];
  }
  // kappa >= 0 makes the full support admissible; reachable only through
  // roundoff on the mass comparison.
  if (best == kInf) best = diam[full - 1];
  return best;
}

double partial_diameter_line_impl(std::span<const double> values, std::span<const double> w,
                                  double total, double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative");
  if (kappa >= total) return 0.0;
  const std::size_t n = values.size();
  const double target = total - kappa;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = prefix[t] + w[idx[t]];

  double best = kInf;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && prefix[j + 1] - prefix[i] < target) ++j;
    if (j == n) break;
    best = std::min(best, values[idx[j]] - values[idx[i]]);
  }
  if (best == kInf && n > 0) best = values[idx[n - 1]] - values[idx[0]];
  return best == kInf ? 0.0 : best;
}

WeightedCloud merge_atoms(WeightedCloud::Target target, int dim, double r,
                          const std::vector<LpVector>& images, const std::vector<double>& w,
                          double total) {
  std::map<LpVector, std::size_t> seen;
  WeightedCloud out;
  out.target = target;
  out.dim = dim;
  out.r = r;
  for (std::size_t i = 0; i < images.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(images[i], out.points.size());
    if (inserted) {
      out.points.push_back(images[i]);
      out.weights.push_back(w[i]);
    } else {
      out.weights[it->second] += w[i];
    }
  }
  out.total_mass = total;
  return out;
}

} // namespace

FiniteMMSpace FiniteMMSpace::create(int n, std::vector<double> flat_dist,
                                    std::vector<double> weights, double tri_tol) {
  if (n < 1) throw std::invalid_argument("FiniteMMSpace: need at least one point");
  if (flat_dist.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("FiniteMMSpace: distance matrix must be n x n");
  if (weights.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("FiniteMMSpace: weights size must match n");
  check_weights(weights);

  FiniteMMSpace X;
  X.n = n;
  X.dist = std::move(flat_dist);
  X.weights = std::move(weights);
  X.total_mass = accumulate_mass(X.weights);

  for (int i = 0; i < n; ++i) {
    if (std::fabs(X.d(i, i)) > tri_tol)
      throw std::invalid_argument("FiniteMMSpace: nonzero diagonal entry");
    for (int j = 0; j < n; ++j) {
      const double dij = X.d(i, j);
      if (!(dij >= 0.0)) throw std::invalid_argument("FiniteMMSpace: negative distance");
      if (std::fabs(dij - X.d(j, i)) > tri_tol)
        throw std::invalid_argument("FiniteMMSpace: distance matrix not symmetric");
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto ri = X.row(i);
    for (int j = i + 1; j < n; ++j) {
      const auto rj = X.row(j);
      const double through = kernels::min_plus(ri.data(), rj.data(), static_cast<std::size_t>(n));
      if (through < X.d(i, j) - tri_tol)
        throw std::invalid_argument("FiniteMMSpace: triangle inequality violated");
    }
  }
  return X;
}

FiniteMMSpace FiniteMMSpace::create(const std::vector<std::vector<double>>& dist_rows,
                                    std::vector<double> weights, double tri_tol) {
  const int n = static_cast<int>(dist_rows.size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : dist_rows) {
    if (row.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("FiniteMMSpace: distance matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return create(n, std::move(flat), std::move(weights), tri_tol);
}

WeightedCloud WeightedCloud::real_line(std::vector<double> values, std::vector<double> weights) {
  if (values.size() != weights.size())
    throw std::invalid_argument("WeightedCloud: values/weights size mismatch");
  check_weights(weights);
  WeightedCloud out;
  out.target = Target::RealLine;
  out.dim = 1;
  out.r = kInf;
  out.points.reserve(values.size());
  for (double v : values) out.points.push_back({v});
  out.weights = std::move(weights);
  out.total_mass = accumulate_mass(out.weights);
  return out;
}

WeightedCloud WeightedCloud::coordinate_space(int dim, double r, std::vector<LpVector> points,
                                              std::vector<double> weights) {
  if (dim < 1) throw std::invalid_argument("WeightedCloud: dimension must be positive");
  if (!(r >= 1.0)) throw std::invalid_argument("WeightedCloud: exponent r must be >= 1");
  if (points.size() != weights.size())
    throw std::invalid_argument("WeightedCloud: points/weights size mismatch");
  for (const auto& pt : points)
    if (pt.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("WeightedCloud: point dimension mismatch");
  check_weights(weights);
  WeightedCloud out;
  out.target = Target::CoordinateSpace;
  out.dim = dim;
  out.r = r;
  out.points = std::move(points);
  out.weights = std::move(weights);
  out.total_mass = accumulate_mass(out.weights);
  return out;
}

double WeightedCloud::dist(std::size_t i, std::size_t j) const {
  if (target == Target::RealLine) return std::fabs(points[i][0] - points[j][0]);
  return lq_dist(points[i], points[j], r);
}

double partial_diameter_exact(const WeightedCloud& nu, double kappa, int cap) {
  if (nu.target == WeightedCloud::Target::RealLine) {
    std::vector<double> values(nu.support_size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = nu.value(i);
    return partial_diameter_line_impl(values, nu.weights, nu.total_mass, kappa);
  }
  const int s = static_cast<int>(nu.support_size());
  // Dense pairwise distances once; the enumeration touches them heavily.
  std::vector<double> mat(static_cast<std::size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      const double dd = nu.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      mat[static_cast<std::size_t>(i) * s + j] = dd;
      mat[static_cast<std::size_t>(j) * s + i] = dd;
    }
  return partial_diameter_subsets(
      s, [&](int i, int j) { return mat[static_cast<std::size_t>(i) * s + j]; }, nu.weights,
      nu.total_mass, kappa, cap);
}

double partial_diameter_exact(const FiniteMMSpace& X, double kappa, int cap) {
  return partial_diameter_subsets(
      X.n, [&](int i, int j) { return X.d(i, j); }, X.weights, X.total_mass, kappa, cap);
}

namespace {

/// Feasibility of a separation threshold t: search for a labeling of the
/// points into {A, B, out} with all cross distances >= t and both mass
/// thresholds met. Points are visited in descending weight order; the
/// search prunes when the remaining mass cannot cover the deficits.
class SepSearch {
public:
  SepSearch(const FiniteMMSpace& X, double k1, double k2)
      : n_(X.n), k1_(k1), k2_(k2), X_(X) {
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (X.weights[static_cast<std::size_t>(a)] != X.weights[static_cast<std::size_t>(b)])
        return X.weights[static_cast<std::size_t>(a)] > X.weights[static_cast<std::size_t>(b)];
      return a < b;
    });
    suffix_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
    for (int i = n_ - 1; i >= 0; --i)
      suffix_[static_cast<std::size_t>(i)] =
          suffix_[static_cast<std::size_t>(i) + 1] + X.weights[static_cast<std::size_t>(order_[i])];
    slack_ = 1e-12 * std::max(1.0, X.total_mass);
  }

  bool feasible(double t) {
    conflict_.assign(static_cast<std::size_t>(n_), 0u);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (X_.d(order_[static_cast<std::size_t>(a)], order_[static_cast<std::size_t>(b)]) < t)
          conflict_[static_cast<std::size_t>(a)] |= (1u << b);
    return dfs(0, 0u, 0u, 0.0, 0.0);
  }

private:
  bool dfs(int idx, std::uint32_t maskA, std::uint32_t maskB, double massA, double massB) {
    if (massA >= k1_ && massB >= k2_ && maskA != 0 && maskB != 0) return true;
    if (idx == n_) return false;
    const double needA = massA < k1_ ? k1_ - massA : 0.0;
    const double needB = massB < k2_ ? k2_ - massB : 0.0;
    if (needA + needB > suffix_[static_cast<std::size_t>(idx)] + slack_) return false;

    const std::uint32_t bit = 1u << idx;
    const double w = X_.weights[static_cast<std::size_t>(order_[static_cast<std::size_t>(idx)])];
    const std::uint32_t cf = conflict_[static_cast<std::size_t>(idx)];
    if ((cf & maskB) == 0 && dfs(idx + 1, maskA | bit, maskB, massA + w, massB)) return true;
    if ((cf & maskA) == 0 && dfs(idx + 1, maskA, maskB | bit, massA, massB + w)) return true;
    return dfs(idx + 1, maskA, maskB, massA, massB);
  }

  int n_;
  double k1_, k2_;
  const FiniteMMSpace& X_;
  std::vector<int> order_;
  std::vector<double> suffix_;
  std::vector<std::uint32_t> conflict_;
  double slack_ = 0.0;
};

std::vector<double> distinct_positive_distances(const FiniteMMSpace& X) {
  std::vector<double> out;
  for (int i = 0; i < X.n; ++i)
    for (int j = i + 1; j < X.n; ++j)
      if (X.d(i, j) > 0.0) out.push_back(X.d(i, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_sep_query(const SepQuery& q) {
  if (!(q.kappa1 >= 0.0) || !(q.kappa2 >= 0.0))
    throw std::invalid_argument("SepQuery: thresholds must be nonnegative");
}

} // namespace

double sep_exact(const FiniteMMSpace& X, const SepQuery& q, int cap) {
  check_sep_query(q);
  if (cap < 1 || cap > 30) throw std::invalid_argument("sep_exact: cap must be in [1, 30]");
  if (X.n > cap)
    throw CapExceededError("sep_exact: instance too large for exact mode; use sep_lower_greedy");
  if (q.kappa1 > X.total_mass || q.kappa2 > X.total_mass) return 0.0;

  const std::vector<double> cand = distinct_positive_distances(X);
  if (cand.empty()) return 0.0;

  SepSearch search(X, q.kappa1, q.kappa2);
  // Feasibility is monotone (any labeling valid at t stays valid below t),
  // so bisect for the largest feasible candidate.
  std::size_t lo = 0, hi = cand.size() - 1;
  std::ptrdiff_t ans = -1;
  while (lo <= hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (search.feasible(cand[mid])) {
      ans = static_cast<std::ptrdiff_t>(mid);
      lo = mid + 1;
    } else {
      if (mid == 0) break;
      hi = mid - 1;
    }
  }
  return ans < 0 ? 0.0 : cand[static_cast<std::size_t>(ans)];
}

double sep_lower_greedy(const FiniteMMSpace& X, const SepQuery& q) {
  check_sep_query(q);
  const double m = X.total_mass;
  if (q.kappa1 > m || q.kappa2 > m) return 0.0;
  if (q.kappa1 + q.kappa2 > m) return 0.0; // disjoint sets cannot both reach their thresholds

  const int n = X.n;
  const std::vector<double> cand = distinct_positive_distances(X);

  constexpr std::size_t kMaxSeeds = 32;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    const double wa = X.weights[static_cast<std::size_t>(a.first)] +
                      X.weights[static_cast<std::size_t>(a.second)];
    const double wb = X.weights[static_cast<std::size_t>(b.first)] +
                      X.weights[static_cast<std::size_t>(b.second)];
    if (wa != wb) return wa > wb;
    return a < b;
  });

  std::vector<double> min_to_a(static_cast<std::size_t>(n));
  std::vector<double> min_to_b(static_cast<std::size_t>(n));
  std::vector<char> assigned(static_cast<std::size_t>(n));

  for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
    const double t = *it;
    std::size_t seeds = 0;
    for (const auto& [i, j] : pairs) {
      if (X.d(i, j) < t) continue;
      if (++seeds > kMaxSeeds) break;

      double massA = X.weights[static_cast<std::size_t>(i)];
      double massB = X.weights[static_cast<std::size_t>(j)];
      std::fill(assigned.begin(), assigned.end(), 0);
      assigned[static_cast<std::size_t>(i)] = 1;
      assigned[static_cast<std::size_t>(j)] = 1;
      for (int x = 0; x < n; ++x) {
        min_to_a[static_cast<std::size_t>(x)] = X.d(x, i);
        min_to_b[static_cast<std::size_t>(x)] = X.d(x, j);
      }

      while (massA < q.kappa1 || massB < q.kappa2) {
        int best = -1;
        bool to_a = false;
        double best_w = -1.0;
        for (int u = 0; u < n; ++u) {
          if (assigned[static_cast<std::size_t>(u)]) continue;
          const double w = X.weights[static_cast<std::size_t>(u)];
          if (massA < q.kappa1 && min_to_b[static_cast<std::size_t>(u)] >= t && w > best_w) {
            best = u;
            to_a = true;
            best_w = w;
          }
          if (massB < q.kappa2 && min_to_a[static_cast<std::size_t>(u)] >= t && w > best_w) {
            best = u;
            to_a = false;
            best_w = w;
          }
        }
        if (best < 0) break;
        assigned[static_cast<std::size_t>(best)] = 1;
        if (to_a) {
          massA += best_w;
          for (int x = 0; x < n; ++x)
            min_to_a[static_cast<std::size_t>(x)] =
                std::min(min_to_a[static_cast<std::size_t>(x)], X.d(x, best));
        } else {
          massB += best_w;
          for (int x = 0; x < n; ++x)
            min_to_b[static_cast<std::size_t>(x)] =
                std::min(min_to_b[static_cast<std::size_t>(x)], X.d(x, best));
        }
      }
      if (massA >= q.kappa1 && massB >= q.kappa2) return t;
    }
  }
  return 0.0;
}

double concentration_function(const FiniteMMSpace& X, double r, int cap) {
  check_cap(cap);
  if (!(r > 0.0)) throw std::invalid_argument("concentration_function: r must be positive");
  if (X.n > cap)
    throw CapExceededError(
        "concentration_function: instance too large for exact mode; "
        "use the Monte Carlo profile (median_concentration_profile)");
  const int n = X.n;
  const double half = X.total_mass / 2.0;

  // ball[x]: points strictly within r of x (the open neighborhood test).
  std::vector<std::uint32_t> ball(static_cast<std::size_t>(n), 0u);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      if (X.d(x, a) < r) ball[static_cast<std::size_t>(x)] |= (1u << a);

  const std::size_t full = std::size_t{1} << n;
  std::vector<double> mass(full, 0.0);
  double alpha = 0.0;
  for (std::size_t s = 0; s < full; ++s) {
    if (s != 0) {
      const int h = std::countr_zero(static_cast<std::uint64_t>(s));
      mass[s] = mass[s & (s - 1)] + X.weights[static_cast<std::size_t>(h)];
    }
    if (mass[s] < half) continue;
    double outside = 0.0;
    for (int x = 0; x < n; ++x)
      if ((ball[static_cast<std::size_t>(x)] & s) == 0)
        outside += X.weights[static_cast<std::size_t>(x)];
    if (outside > alpha) alpha = outside;
  }
  return alpha;
}

WeightedCloud pushforward_line(const FiniteMMSpace& X, std::span<const double> images) {
  if (images.size() != static_cast<std::size_t>(X.n))
    throw std::invalid_argument("pushforward: one image per point required");
  std::vector<LpVector> pts;
  pts.reserve(images.size());
  for (double v : images) pts.push_back({v});
  return merge_atoms(WeightedCloud::Target::RealLine, 1, kInf, pts, X.weights, X.total_mass);
}

WeightedCloud pushforward_line(const FiniteMMSpace& X, const std::function<double(int)>& f) {
  std::vector<double> images(static_cast<std::size_t>(X.n));
  for (int i = 0; i < X.n; ++i) images[static_cast<std::size_t>(i)] = f(i);
  return pushforward_line(X, images);
}

WeightedCloud pushforward(const FiniteMMSpace& X, const std::vector<LpVector>& images, int dim,
                          double r) {
  if (images.size() != static_cast<std::size_t>(X.n))
    throw std::invalid_argument("pushforward: one image per point required");
  if (dim < 1) throw std::invalid_argument("pushforward: dimension must be positive");
  if (!(r >= 1.0)) throw std::invalid_argument("pushforward: exponent r must be >= 1");
  for (const auto& img : images)
    if (img.size() != static_cast<std::size_t>(dim))
      throw std::invalid_argument("pushforward: image dimension mismatch with declared target");
  return merge_atoms(WeightedCloud::Target::CoordinateSpace, dim, r, images, X.weights,
                     X.total_mass);
}

WeightedCloud pushforward(const FiniteMMSpace& X, const std::function<LpVector(int)>& f, int dim,
                          double r) {
  std::vector<LpVector> images(static_cast<std::size_t>(X.n));
  for (int i = 0; i < X.n; ++i) images[static_cast<std::size_t>(i)] = f(i);
  return pushforward(X, images, dim, r);
}

FiniteMMSpace cloud_as_mmspace(const WeightedCloud& nu) {
  const int s = static_cast<int>(nu.support_size());
  if (s < 1) throw std::invalid_argument("cloud_as_mmspace: empty support");
  std::vector<double> flat(static_cast<std::size_t>(s) * s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      const double dd = nu.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      flat[static_cast<std::size_t>(i) * s + j] = dd;
      flat[static_cast<std::size_t>(j) * s + i] = dd;
    }
  return FiniteMMSpace::create(s, std::move(flat), nu.weights);
}

namespace {

std::vector<double> normalized_uniform_weights(rng::Engine& eng, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& x : w) {
    x = eng.uniform01();
    sum += x;
  }
  if (sum == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / n);
  } else {
    for (auto& x : w) x /= sum;
  }
  return w;
}

} // namespace

FiniteMMSpace make_random_mmspace(rng::Engine& eng, int n) {
  if (n < 1) throw std::invalid_argument("make_random_mmspace: n must be positive");
  std::vector<LpVector> pts(static_cast<std::size_t>(n));
  for (auto& pt : pts) {
    pt.resize(3);
    for (auto& c : pt) c = eng.uniform01();
  }
  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dd = kernels::linf_dist(pts[static_cast<std::size_t>(i)].data(),
                                           pts[static_cast<std::size_t>(j)].data(), 3);
      flat[static_cast<std::size_t>(i) * n + j] = dd;
      flat[static_cast<std::size_t>(j) * n + i] = dd;
    }
  return FiniteMMSpace::create(n, std::move(flat), normalized_uniform_weights(eng, n));
}

WeightedCloud make_random_line_cloud(rng::Engine& eng, int support) {
  if (support < 1) throw std::invalid_argument("make_random_line_cloud: support must be positive");
  std::vector<double> values(static_cast<std::size_t>(support));
  for (auto& v : values) v = eng.uniform01();
  return WeightedCloud::real_line(std::move(values), normalized_uniform_weights(eng, support));
}

WeightedCloud make_random_coord_cloud(rng::Engine& eng, int support, int dim, double r) {
  if (support < 1) throw std::invalid_argument("make_random_coord_cloud: support must be positive");
  std::vector<LpVector> pts(static_cast<std::size_t>(support));
  for (auto& pt : pts) {
    pt.resize(static_cast<std::size_t>(dim));
    for (auto& c : pt) c = eng.uniform01();
  }
  return WeightedCloud::coordinate_space(dim, r, std::move(pts),
                                         normalized_uniform_weights(eng, support));
}

} // namespace mmconc
