#pragma once

#include <cstdint>
#include <optional>

#include "ctb/blocker.hpp"

namespace ctb {

enum class Method { ClosedForm, ProjectedGradient, BruteForce };

struct OptimizeResult {
  Vector u_star;
  double q_star = 0.0;        // <u*, Sigma u*>
  double bound = 1.0;         // q* / (1 + q*)
  double kkt_residual = 0.0;  // ||u - P_R(u - a grad)|| / a, ProjectedGradient only
  long iterations = 0;
  Method method = Method::ProjectedGradient;
  bool hit_iteration_cap = false;
};

// Minimizes q(u) = <u, Sigma u> over the blocker region by projected gradient
// descent with fixed step 1/(2 lambda_max(Sigma)). The minimizer is unique
// because q is strictly convex and the region is closed convex.
OptimizeResult minimize_over_region(const SymMatrix& sigma,
                                    const BlockerRegion& region,
                                    const Tolerances& tol = {});

// Mahalanobis fast path: with w = Sigma^{-1} b, if w lies in C* the optimum
// is u* = w / <b, w> and the bound is 1 / (1 + <b, w>). Returns nothing when
// the membership precondition fails; the caller falls back to the optimizer.
std::optional<OptimizeResult> closed_form_bound(const SymMatrix& sigma,
                                                const Vector& b,
                                                const ConeDescriptor& cone,
                                                const Tolerances& tol = {});

struct DualNormValue {
  double value = 0.0;
  Vector maximizer;  // attains sup <u,v>/sqrt(<u,Au>)
};

// Dual of the norm sqrt(<v, A v>): value sqrt(<v, A^{-1} v>), maximizer
// A^{-1} v / value.
DualNormValue dual_norm(const SymMatrix& A, const Vector& v,
                        const Tolerances& tol = {});

// Independent randomized oracle: seeded random draws mapped into the region,
// best value kept. Guarded to ambient dimension <= 6.
OptimizeResult brute_force_search(const SymMatrix& sigma,
                                  const BlockerRegion& region, long budget,
                                  std::uint64_t seed,
                                  const Tolerances& tol = {});

}  // namespace ctb
