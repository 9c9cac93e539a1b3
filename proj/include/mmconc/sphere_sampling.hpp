#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mmconc/common.hpp"
#include "mmconc/mmspace.hpp"

namespace mmconc {

/// Seeded sample from the cone measure on the unit l^p sphere in R^n.
/// With `symmetrized` set, points come in adjacent antipodal pairs
/// (points[2i+1] == -points[2i] exactly).
struct SphereSampleSet {
  int n = 0;
  double p = 2.0;
  std::uint64_t seed = 0;
  bool symmetrized = false;
  std::vector<LpVector> points;
};

/// Draws `count` cone-measure samples (2*count points if symmetrized; the
/// cone measure is symmetric, so adding antipodes keeps the law). Each
/// coordinate is drawn with density proportional to exp(-|t|^p) — magnitude
/// G^{1/p} with G Gamma(1/p), uniform sign — and the vector is normalized
/// to unit l^p norm. Deterministic given (seed, parameters): point i uses
/// substream i of the master seed.
SphereSampleSet sample_cone(int n, double p, std::size_t count, std::uint64_t seed,
                            bool symmetrize);

/// Empirical mm-space: pairwise l^q distances over the samples, uniform
/// weights 1/|points|. Quadratic in the number of points; desk scale only.
FiniteMMSpace empirical_mmspace(const SphereSampleSet& S, double q);

/// Median of the two central order statistics (their midpoint) for even
/// counts; the middle value for odd counts.
double midpoint_median(std::vector<double> values);

/// For each r in r_grid, the fraction of values at distance >= r from the
/// empirical median. Nonincreasing in r; profile(0) == 1.
std::vector<double> median_concentration_profile(const std::vector<double>& values,
                                                 std::span<const double> r_grid);

/// Values of coordinate `coord` across the sample.
std::vector<double> coordinate_values(const SphereSampleSet& S, int coord);

} // namespace mmconc
