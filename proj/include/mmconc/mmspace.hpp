#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mmconc/common.hpp"
#include "mmconc/rng.hpp"

namespace mmconc {

/// Finite metric measure space: a full symmetric distance matrix plus
/// nonnegative point weights. Construction validates the matrix (symmetry,
/// zero diagonal, nonnegativity, triangle inequality within `tri_tol`), so
/// downstream solvers can assume a genuine metric.
struct FiniteMMSpace {
  int n = 0;
  std::vector<double> dist;    // row-major n*n
  std::vector<double> weights; // size n
  double total_mass = 0.0;     // sum of weights, accumulated in index order

  double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
  std::span<const double> row(int i) const {
    return {dist.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n)};
  }

  static FiniteMMSpace create(int n, std::vector<double> flat_dist, std::vector<double> weights,
                              double tri_tol = 1e-9);
  static FiniteMMSpace create(const std::vector<std::vector<double>>& dist_rows,
                              std::vector<double> weights, double tri_tol = 1e-9);
};

/// Finitely supported measure on a concrete target: the real line or R^k
/// with an l^r distance. Holds pushforwards of mm-space measures.
struct WeightedCloud {
  enum class Target { RealLine, CoordinateSpace };

  Target target = Target::RealLine;
  int dim = 1;      // coordinate dimension (1 for the real line)
  double r = kInf;  // l^r exponent (ignored for the real line)
  std::vector<LpVector> points;
  std::vector<double> weights;
  double total_mass = 0.0;

  static WeightedCloud real_line(std::vector<double> values, std::vector<double> weights);
  static WeightedCloud coordinate_space(int dim, double r, std::vector<LpVector> points,
                                        std::vector<double> weights);

  std::size_t support_size() const { return points.size(); }
  double value(std::size_t i) const { return points[i][0]; } // real-line accessor
  double dist(std::size_t i, std::size_t j) const;
};

/// Mass thresholds for the separation distance.
struct SepQuery {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// Smallest diameter of a support subset carrying mass >= total - kappa.
/// Real-line clouds use an exact sliding-window scan over the sorted
/// support (an optimal subset can be taken inside a closed interval with
/// support endpoints), so they have no size cap. Other targets enumerate
/// subsets and are limited to `cap` support points.
/// Returns 0 when kappa >= total (the empty set is allowed, diam {} := 0).
double partial_diameter_exact(const WeightedCloud& nu, double kappa, int cap = 22);
double partial_diameter_exact(const FiniteMMSpace& X, double kappa, int cap = 22);

/// Exact separation distance: the largest t such that two disjoint nonempty
/// point sets A, B exist with all cross distances >= t and masses reaching
/// the thresholds. Feasibility at a threshold is decided by an exhaustive
/// three-way labeling with branch-and-bound pruning on remaining mass;
/// feasibility is monotone in t, so the scan over the sorted distinct
/// distances takes the largest feasible candidate. Returns 0 when no
/// feasible pair exists (supremum over the empty family := 0).
double sep_exact(const FiniteMMSpace& X, const SepQuery& q, int cap = 14);

/// Greedy lower bound for sep_exact, no size cap: for each candidate
/// threshold t (descending) seeds A and B from pairs at distance >= t and
/// absorbs mass-maximal points that keep all cross distances >= t.
/// Always <= sep_exact.
double sep_lower_greedy(const FiniteMMSpace& X, const SepQuery& q);

/// Largest mass outside the open r-neighborhood of a half-mass subset
/// (strict d(x, A) < r). Exact subset enumeration, capped.
double concentration_function(const FiniteMMSpace& X, double r, int cap = 22);

/// Pushforward of the space's measure under a pointwise map (given either
/// as a callable on point indices or as materialized images). Exactly equal
/// image points are merged (weights accumulate in first-occurrence order);
/// total_mass is carried over unchanged.
WeightedCloud pushforward_line(const FiniteMMSpace& X, std::span<const double> images);
WeightedCloud pushforward_line(const FiniteMMSpace& X,
                               const std::function<double(int)>& f);
WeightedCloud pushforward(const FiniteMMSpace& X, const std::vector<LpVector>& images, int dim,
                          double r);
WeightedCloud pushforward(const FiniteMMSpace& X, const std::function<LpVector(int)>& f, int dim,
                          double r);

/// The cloud viewed as a finite mm-space (its own metric, its weights).
FiniteMMSpace cloud_as_mmspace(const WeightedCloud& nu);

/// Random test instances: n points uniform in the unit cube of dimension 3
/// under the sup distance, weights uniform then normalized to sum 1.
FiniteMMSpace make_random_mmspace(rng::Engine& eng, int n);
WeightedCloud make_random_line_cloud(rng::Engine& eng, int support);
WeightedCloud make_random_coord_cloud(rng::Engine& eng, int support, int dim, double r);

} // namespace mmconc
