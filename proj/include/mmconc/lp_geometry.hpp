#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mmconc/common.hpp"

namespace mmconc {

/// l^r distance between two coordinate vectors, r in [1, inf]. The shorter
/// vector is read as zero-padded, so vectors of different length compare as
/// finitely supported sequences.
double lq_dist(std::span<const double> x, std::span<const double> y, double r);

/// l^p norm, p in [1, inf].
double lp_norm(std::span<const double> x, double p);

std::size_t nonzero_count(std::span<const double> x);

/// Element of the group of coordinate sign flips and permutations acting on
/// R^k. `perm[i]` is the position index i is sent to; `signs[i]` multiplies
/// the coordinate that lands at position i. The action is
///   (g.x)[i] = signs[i] * x[perm^{-1}(i)],
/// which preserves every l^r distance.
struct SignedPermutation {
  std::vector<std::int8_t> signs; // entries +1 / -1
  std::vector<int> perm;          // a bijection of {0, ..., k-1}

  std::size_t size() const { return perm.size(); }
  static SignedPermutation identity(std::size_t k);
  bool is_identity() const;
  /// Checks the structural invariants (perm bijective, signs in {-1,+1}).
  void validate() const;
};

LpVector group_apply(const SignedPermutation& g, std::span<const double> x);

/// Group product g*h (h acts first): signs_n = g.signs[n] * h.signs[g.perm^{-1}(n)].
SignedPermutation group_compose(const SignedPermutation& g, const SignedPermutation& h);
SignedPermutation group_inverse(const SignedPermutation& g);

/// k(eps) = ceil((2/eps)^{pq/(q-p)}) - 1. For q = inf the exponent is read
/// as its limit p. Requires 1 <= p < q <= inf, eps > 0.
int k_eps(double p, double q, double eps);

/// Parameter bundle for the reduction map. Immutable once built.
struct ReductionParams {
  double p;
  double q;
  double eps;
  int k; // k(eps)

  static ReductionParams make(double p, double q, double eps);
};

/// True if y is nonincreasing and nonnegative (the fundamental domain of
/// the signed-permutation action on the positive cone).
bool in_lambda(std::span<const double> y);

/// Moves x into the fundamental domain: returns (g, y) with y = g.x,
/// y nonincreasing and nonnegative. Signs take sign(0) := +1 and the sort
/// by descending absolute value is stable (ties keep original order), so
/// the result is deterministic.
std::pair<SignedPermutation, LpVector> canonicalize(std::span<const double> x);

/// For y in the fundamental domain: subtracts the (k+1)-th coordinate from
/// the first k and zeroes the rest. Inputs shorter than k+1 are read as
/// zero-padded (so they are fixed points). Throws if y is not nonincreasing
/// and nonnegative.
LpVector f_trunc(std::span<const double> y, int k);

/// The reduction map: canonicalize, truncate at k(eps), undo the
/// canonicalization. Output has the same length as x, at most k(eps)
/// nonzero coordinates, l^p norm no larger than x's, and moves x by at
/// most eps/2 in l^q. Requires |x|_p <= 1 + ball_tol.
LpVector reduce_F(std::span<const double> x, const ReductionParams& params,
                  double ball_tol = 1e-12);

/// Certified Lipschitz constant of reduce_F w.r.t. the l^q distance:
/// 1 + k^{1/q}, with k^{1/q} := 1 for q = inf.
double reduce_lipschitz_bound(const ReductionParams& params);

struct ProjectionResult {
  LpVector y;
  double dist;
};

/// Nearest point of the set of vectors with at most k nonzero coordinates,
/// in the l^q distance: keeps the k largest-magnitude nonzero coordinates
/// of x (ties broken toward lower index) and zeroes the rest. The returned
/// distance is the true minimum over that set.
ProjectionResult project_Ak(std::span<const double> x, int k, double q);

} // namespace mmconc
