#include "ctb/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctb/rng.hpp"

namespace ctb {
namespace {

double bound_from_q(double q) { return q / (1.0 + q); }

Vector gaussian_vector(CounterRng& rng, int dim) {
  Vector z(dim);
  for (int i = 0; i < dim; ++i) z[i] = rng.normal();
  return z;
}

// A region point to start from. For slices, projecting b onto C* and
// rescaling always works when the region is nonempty (the projection has
// positive pairing with b); the polyhedral form has the row average.
Vector region_witness(const BlockerRegion& region, const Tolerances& tol) {
  if (const auto* cs = std::get_if<ConeSlice>(&region)) {
    const Vector p = project(cs->cstar, cs->b, tol);
    const double pb = dot(p, cs->b);
    if (pb > 1e-12 * (1.0 + norm(p) * norm(cs->b))) return scaled(p, 1.0 / pb);
    CounterRng rng(0x5eedULL);
    for (int draw = 0; draw < 10000; ++draw) {
      const Vector u =
          project(cs->cstar, gaussian_vector(rng, int(cs->b.size())), tol);
      const double ub = dot(u, cs->b);
      if (ub > 1e-10 * (1.0 + norm(u) * norm(cs->b)))
        return scaled(u, 1.0 / ub);
    }
    throw InfeasibleRegion("region_witness: no feasible point found");
  }
  const auto& blk = std::get<PolyhedralBlocker>(region);
  Vector u(blk.rows.front().size(), 0.0);
  for (const auto& r : blk.rows) u = add(u, r);
  return scaled(u, 1.0 / double(blk.rows.size()));
}

OptimizeResult pgd_cone_slice(const SymMatrix& sigma, const ConeSlice& slice,
                              const BlockerRegion& region,
                              const Tolerances& tol) {
  (void)slice;
  const double lmax = sym_eigen(sigma, tol).values.front();
  const double step = 1.0 / (2.0 * lmax);

  Vector u = region_witness(region, tol);
  OptimizeResult res;
  res.method = Method::ProjectedGradient;
  long it = 0;
  double residual = std::numeric_limits<double>::infinity();
  for (; it < tol.iter_cap; ++it) {
    const Vector grad = scaled(sigma.apply(u), 2.0);
    const Vector next = project_region(region, sub(u, scaled(grad, step)), tol);
    residual = norm(sub(u, next)) / step;
    u = next;
    if (residual <= tol.kkt) break;
  }
  res.hit_iteration_cap = (it >= tol.iter_cap);
  res.iterations = it;
  res.u_star = u;
  res.q_star = quadratic_form(u, sigma);
  res.bound = bound_from_q(res.q_star);
  // final stationarity certificate
  const Vector grad = scaled(sigma.apply(u), 2.0);
  res.kkt_residual =
      norm(sub(u, project_region(region, sub(u, scaled(grad, step)), tol))) /
      step;
  return res;
}

OptimizeResult pgd_polyhedral(const SymMatrix& sigma,
                              const PolyhedralBlocker& blk,
                              const BlockerRegion& region,
                              const Tolerances& tol) {
  const int m = static_cast<int>(blk.rows.size());
  const int n = static_cast<int>(blk.rows.front().size());
  const double lmax = sym_eigen(sigma, tol).values.front();

  double row_sq = 0.0;
  for (const auto& r : blk.rows) row_sq += norm2(r);
  const double step = 1.0 / (2.0 * lmax * (row_sq + 1.0));

  Vector lambda(m, 1.0 / m);
  Vector s(n, 0.0);
  auto make_u = [&]() {
    Vector u = s;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) u[j] += lambda[i] * blk.rows[i][j];
    return u;
  };

  long it = 0;
  for (; it < tol.iter_cap; ++it) {
    const Vector u = make_u();
    const Vector gu = scaled(sigma.apply(u), 2.0);
    Vector gl(m, 0.0);
    for (int i = 0; i < m; ++i) gl[i] = dot(blk.rows[i], gu);

    Vector nl(m), ns(n);
    for (int i = 0; i < m; ++i) nl[i] = lambda[i] - step * gl[i];
    nl = project_simplex(nl);
    for (int j = 0; j < n; ++j) ns[j] = std::max(0.0, s[j] - step * gu[j]);

    double shift = 0.0;
    for (int i = 0; i < m; ++i) shift += (nl[i] - lambda[i]) * (nl[i] - lambda[i]);
    for (int j = 0; j < n; ++j) shift += (ns[j] - s[j]) * (ns[j] - s[j]);
    lambda = nl;
    s = ns;
    if (std::sqrt(shift) / step <= tol.kkt) break;
  }

  OptimizeResult res;
  res.method = Method::ProjectedGradient;
  res.hit_iteration_cap = (it >= tol.iter_cap);
  res.iterations = it;
  res.u_star = make_u();
  res.q_star = quadratic_form(res.u_star, sigma);
  res.bound = bound_from_q(res.q_star);
  const double alpha = 1.0 / (2.0 * lmax);
  const Vector grad = scaled(sigma.apply(res.u_star), 2.0);
  res.kkt_residual =
      norm(sub(res.u_star,
               project_region(region, sub(res.u_star, scaled(grad, alpha)),
                              tol))) /
      alpha;
  return res;
}

}  // namespace

OptimizeResult minimize_over_region(const SymMatrix& sigma,
                                    const BlockerRegion& region,
                                    const Tolerances& tol) {
  if (sigma.order() != region_dim(region))
    throw DimensionMismatch("minimize_over_region: sigma/region mismatch");
  (void)cholesky(sigma, tol);  // certify positive definiteness
  if (const auto* cs = std::get_if<ConeSlice>(&region))
    return pgd_cone_slice(sigma, *cs, region, tol);
  return pgd_polyhedral(sigma, std::get<PolyhedralBlocker>(region), region, tol);
}

std::optional<OptimizeResult> closed_form_bound(const SymMatrix& sigma,
                                                const Vector& b,
                                                const ConeDescriptor& cone,
                                                const Tolerances& tol) {
  if (norm(b) == 0.0) throw ZeroThreshold("closed_form_bound: b must be nonzero");
  const Vector w = solve_spd(sigma, b, tol);
  if (!contains(dual(cone), w, tol.membership).inside) return std::nullopt;
  const double m = dot(b, w);  // squared Mahalanobis norm of b
  OptimizeResult res;
  res.method = Method::ClosedForm;
  res.u_star = scaled(w, 1.0 / m);
  res.q_star = 1.0 / m;
  res.bound = 1.0 / (1.0 + m);
  res.kkt_residual = 0.0;
  res.iterations = 0;
  return res;
}

DualNormValue dual_norm(const SymMatrix& A, const Vector& v,
                        const Tolerances& tol) {
  DualNormValue out;
  if (norm(v) == 0.0) {
    out.maximizer.assign(A.order(), 0.0);
    (void)cholesky(A, tol);
    return out;
  }
  const Vector w = solve_spd(A, v, tol);
  out.value = std::sqrt(dot(v, w));
  out.maximizer = scaled(w, 1.0 / out.value);
  return out;
}

OptimizeResult brute_force_search(const SymMatrix& sigma,
                                  const BlockerRegion& region, long budget,
                                  std::uint64_t seed, const Tolerances& tol) {
  const int dim = region_dim(region);
  if (dim > 6)
    throw DimensionGuard("brute_force_search: ambient dimension above 6");
  if (sigma.order() != dim)
    throw DimensionMismatch("brute_force_search: sigma/region mismatch");

  CounterRng rng(seed);
  OptimizeResult best;
  best.method = Method::BruteForce;
  best.u_star = region_witness(region, tol);
  best.q_star = quadratic_form(best.u_star, sigma);

  const long global = std::max<long>(1, (budget * 3) / 5);
  auto consider = [&](const Vector& u) {
    const double q = quadratic_form(u, sigma);
    if (q < best.q_star) {
      best.q_star = q;
      best.u_star = u;
    }
  };

  if (const auto* cs = std::get_if<ConeSlice>(&region)) {
    const double bn = norm(cs->b);
    for (long k = 0; k < budget; ++k) {
      Vector z;
      if (k < global) {
        z = gaussian_vector(rng, dim);
      } else {
        // local refinement: shrinking random perturbations of the incumbent
        const double t = double(k - global) / double(budget - global);
        const double scale = 0.3 * std::pow(1e-6 / 0.3, t) * (1.0 + norm(best.u_star));
        z = add(best.u_star, scaled(gaussian_vector(rng, dim), scale));
      }
      const Vector p = project(cs->cstar, z, tol);
      const double pb = dot(p, cs->b);
      if (pb <= 1e-12 * (1.0 + norm(p) * bn)) continue;
      consider(scaled(p, 1.0 / pb));  // homogeneity rescaling onto the blocker
    }
  } else {
    const auto& blk = std::get<PolyhedralBlocker>(region);
    const int m = static_cast<int>(blk.rows.size());
    Vector best_lambda(m, 1.0 / m), best_s(dim, 0.0);
    auto assemble = [&](const Vector& lam, const Vector& s) {
      Vector u = s;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < dim; ++j) u[j] += lam[i] * blk.rows[i][j];
      return u;
    };
    double best_q = quadratic_form(assemble(best_lambda, best_s), sigma);
    for (long k = 0; k < budget; ++k) {
      Vector lam(m), s(dim);
      if (k < global) {
        double tot = 0.0;
        for (int i = 0; i < m; ++i) {
          lam[i] = -std::log(rng.uniform());
          tot += lam[i];
        }
        for (int i = 0; i < m; ++i) lam[i] /= tot;
        const bool add_slack = rng.uniform() < 0.5;
        for (int j = 0; j < dim; ++j)
          s[j] = add_slack ? std::max(0.0, rng.normal()) : 0.0;
      } else {
        const double t = double(k - global) / double(budget - global);
        const double scale = 0.3 * std::pow(1e-6 / 0.3, t);
        for (int i = 0; i < m; ++i) lam[i] = best_lambda[i] + scale * rng.normal();
        lam = project_simplex(lam);
        for (int j = 0; j < dim; ++j)
          s[j] = std::max(0.0, best_s[j] + scale * rng.normal());
      }
      const Vector u = assemble(lam, s);
      const double q = quadratic_form(u, sigma);
      if (q < best_q) {
        best_q = q;
        best_lambda = lam;
        best_s = s;
      }
    }
    best.u_star = assemble(best_lambda, best_s);
    best.q_star = best_q;
  }

  best.bound = bound_from_q(best.q_star);
  best.iterations = budget;
  best.kkt_residual = 0.0;
  return best;
}

}  // namespace ctb
