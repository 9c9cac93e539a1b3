#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmconc/common.hpp"
#include "mmconc/lp_geometry.hpp"
#include "mmconc/mmspace.hpp"
#include "mmconc/sphere_sampling.hpp"

namespace mmconc::certify {

/// Two-sided enclosure of the real-valued observable diameter. The true
/// supremum over all 1-Lipschitz maps is not computable from a finite
/// family, so results are always reported as a bracket.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_witness;
  std::string upper_witness;
};

/// Best lower bound from the distance-function family: the largest partial
/// diameter at mass >= total - kappa_prime of the pushforward by x -> d(x, A)
/// (and its reflection -d(x, A), which has the same partial diameter), over
/// all nonempty subsets A. Every member is 1-Lipschitz, so each value is a
/// valid lower bound. If witness_subset is non-null it receives the argmax A.
double obsdiam_family_lower(const FiniteMMSpace& X, double kappa_prime, int cap = 22,
                            std::uint64_t* witness_subset = nullptr);

/// Default separation-threshold grid for the bracket lower bound: a few
/// multiples of kappa_prime plus total/4 and total/2, restricted to values
/// strictly above kappa_prime.
std::vector<double> default_kappa_grid(double kappa_prime, double total_mass);

/// Bracket for the observable diameter into the real line at deficit
/// kappa_prime. Lower side: the distance-function family, and separation
/// distances at grid thresholds kappa > kappa_prime. Upper side: the
/// separation distance at kappa_prime / 2.
Bracket obsdiam_bracket_R(const FiniteMMSpace& X, double kappa_prime,
                          std::span<const double> kappa_grid = {}, int subset_cap = 22,
                          int sep_cap = 14);

struct ReduceBound {
  double direct = 0.0;   // partial diameter of the cloud
  double reduced = 0.0;  // partial diameter of the cloud mapped through reduce_F
  bool bound_ok = false; // direct <= reduced + eps + 1e-9
};

/// Compares the partial diameter of a cloud in the unit l^p ball (with the
/// l^q distance) against the same cloud mapped pointwise through reduce_F.
/// Since the reduction moves every point by at most eps/2, the direct value
/// can exceed the reduced one by at most eps.
ReduceBound lpball_reduce_bound(const WeightedCloud& cloud, const ReductionParams& params,
                                double kappa, int cap = 22, double ball_tol = 1e-9);

struct ProjectedReduceBound {
  double direct = 0.0;
  double reduced = 0.0;
  int coordinate = 0; // projection coordinate used for both sides
  bool bound_ok = false;
};

/// Scalable surrogate for lpball_reduce_bound: projects both clouds onto
/// the dominant coordinate of the reduced cloud (largest mass-weighted
/// absolute value; ties toward the lowest index) and takes exact real-line
/// partial diameters there. Coordinate projections are 1-Lipschitz and move
/// by at most eps/2 under the reduction, so the chain inequality
/// direct <= reduced + eps survives the projection.
ProjectedReduceBound lpball_reduce_bound_projected(const WeightedCloud& cloud,
                                                   const ReductionParams& params, double kappa,
                                                   double ball_tol = 1e-9);

/// Certified lower bound on the partial diameter at mass >= 1 - kappa of a
/// symmetrized sphere sample under the l^q distance: any subset of mass
/// > 1/2 contains an antipodal pair, so the partial diameter is at least
/// the minimum antipodal distance min_i d_q(x_i, -x_i). Requires a
/// symmetrized sample, q <= p, kappa < 1/2.
double antipodal_lower(const SphereSampleSet& S, double q, double kappa);

struct CheckRecord {
  std::string name;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0; // rhs - lhs
  bool pass = false;
};

struct SuiteReport {
  std::vector<CheckRecord> records;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  bool all_pass() const { return fail_count == 0; }
};

struct SuiteOptions {
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  /// Test hook: shrinks the certified Lipschitz constant so the
  /// reduction_lipschitz records fail; exercises failure reporting.
  bool inject_lipschitz_fault = false;
};

/// Runs the inequality checks on seeded random instances: pushforward
/// contraction of the separation distance, the distance-family lower bound
/// against separation, partial diameter vs separation on the line and in
/// l^r cubes, and the displacement / Lipschitz certificates of the
/// reduction map. Deterministic given the seed; trial t uses substream t.
SuiteReport run_inequality_suite(const SuiteOptions& opts);

} // namespace mmconc::certify
