#include "ctb/blocker.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>

#include "ctb/rng.hpp"

namespace ctb {
namespace {

Vector gaussian_vector(CounterRng& rng, int dim) {
  Vector z(dim);
  for (int i = 0; i < dim; ++i) z[i] = rng.normal();
  return z;
}

// Projection onto {u : <u, b> >= 1}.
Vector project_threshold_halfspace(const Vector& b, const Vector& u) {
  const double v = dot(b, u);
  if (v >= 1.0) return u;
  return add(u, scaled(b, (1.0 - v) / norm2(b)));
}

// Two-set Dykstra: dual cone and threshold halfspace.
Vector project_cone_slice(const ConeSlice& slice, const Vector& x,
                          const Tolerances& tol) {
  // polyhedral duals make the slice a small halfspace intersection that can
  // be projected exactly
  std::vector<Vector> rows;
  if (const auto* orth = std::get_if<NonnegativeOrthant>(&slice.cstar)) {
    for (int i = 0; i < orth->dim; ++i) {
      Vector e(orth->dim, 0.0);
      e[i] = 1.0;
      rows.push_back(e);
    }
  } else if (const auto* h = std::get_if<PolyhedralInequalities>(&slice.cstar)) {
    rows = h->normals;
  }
  if (!rows.empty() && rows.size() <= 16) {
    Vector offsets(rows.size(), 0.0);
    rows.push_back(slice.b);
    offsets.push_back(1.0);
    if (auto exact = project_halfspaces_exact(rows, offsets, x)) return *exact;
  }
  Vector cur = x;
  Vector p(x.size(), 0.0), q(x.size(), 0.0);
  for (int cycle = 0; cycle < tol.dykstra_cap; ++cycle) {
    Vector z = add(cur, p);
    Vector y = project(slice.cstar, z, tol);
    p = sub(z, y);

    z = add(y, q);
    Vector next = project_threshold_halfspace(slice.b, z);
    q = sub(z, next);

    // stop only when the iterate has stabilized AND the two half-iterates
    // agree: shifts alone can stall while infeasible, agreement alone can
    // fire at a feasible point that is not yet the nearest one
    const double shift = norm(sub(next, cur));
    cur = next;
    if (std::max(shift, norm(sub(next, y))) <=
        tol.dykstra_step * (1.0 + norm(x)))
      return cur;
  }
  throw NoConvergence("project_region: Dykstra cap reached");
}

double largest_gram_eigenvalue(const std::vector<Vector>& rows) {
  // power iteration on A A^T (m x m); rows are small here
  const int m = static_cast<int>(rows.size());
  std::vector<Vector> gram(m, Vector(m, 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram[i][j] = dot(rows[i], rows[j]);
  Vector v(m, 1.0 / std::sqrt(double(m)));
  double lam = 1.0;
  for (int it = 0; it < 100; ++it) {
    Vector w(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) w[i] += gram[i][j] * v[j];
    lam = norm(w);
    if (lam == 0.0) break;
    v = scaled(w, 1.0 / lam);
  }
  return lam;
}

Vector combine(const std::vector<Vector>& rows, const Vector& lambda,
               const Vector& s) {
  Vector u = s;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) u[j] += lambda[i] * rows[i][j];
  return u;
}

// Nearest point of conv(rows) + R^n_+ to x, solved in the (lambda, s)
// parametrization with FISTA over the simplex-cross-orthant constraint.
Vector project_polyhedral_blocker(const PolyhedralBlocker& blk, const Vector& x,
                                  const Tolerances& tol) {
  const int m = static_cast<int>(blk.rows.size());
  const int n = static_cast<int>(x.size());
  const double lip = 2.0 * (largest_gram_eigenvalue(blk.rows) + 1.0);
  const double step = 1.0 / lip;

  Vector lambda(m, 1.0 / m);
  Vector s(n, 0.0);
  {
    Vector u0 = combine(blk.rows, lambda, s);
    for (int j = 0; j < n; ++j) s[j] = std::max(0.0, x[j] - u0[j]);
  }
  Vector yl = lambda, ys = s;
  double t = 1.0;
  for (int it = 0; it < tol.dykstra_cap; ++it) {
    const Vector u = combine(blk.rows, yl, ys);
    const Vector r = sub(u, x);  // gradient of 0.5||u - x||^2 wrt u
    Vector gl(m, 0.0);
    for (int i = 0; i < m; ++i) gl[i] = dot(blk.rows[i], r);

    Vector nl(m), ns(n);
    for (int i = 0; i < m; ++i) nl[i] = yl[i] - 2.0 * step * gl[i];
    nl = project_simplex(nl);
    for (int j = 0; j < n; ++j) ns[j] = std::max(0.0, ys[j] - 2.0 * step * r[j]);

    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / tn;
    for (int i = 0; i < m; ++i) yl[i] = nl[i] + beta * (nl[i] - lambda[i]);
    for (int j = 0; j < n; ++j) ys[j] = ns[j] + beta * (ns[j] - s[j]);

    double shift = 0.0;
    for (int i = 0; i < m; ++i) shift += (nl[i] - lambda[i]) * (nl[i] - lambda[i]);
    for (int j = 0; j < n; ++j) shift += (ns[j] - s[j]) * (ns[j] - s[j]);
    lambda = nl;
    s = ns;
    t = tn;
    if (std::sqrt(shift) <= tol.dykstra_step * (1.0 + norm(x)))
      return combine(blk.rows, lambda, s);
  }
  throw NoConvergence("project_region: polyhedral-blocker solve cap reached");
}

}  // namespace

int region_dim(const BlockerRegion& region) {
  if (const auto* cs = std::get_if<ConeSlice>(&region))
    return static_cast<int>(cs->b.size());
  return static_cast<int>(std::get<PolyhedralBlocker>(region).rows.front().size());
}

FeasibilityVerdict feasibility(const Vector& b, const ConeDescriptor& cone,
                               const Tolerances& tol, std::uint64_t seed) {
  validate_cone(cone);
  check_finite(b, "feasibility");
  if (norm(b) == 0.0) throw ZeroThreshold("feasibility: b must be nonzero");
  if (ambient_dim(cone) != static_cast<int>(b.size()))
    throw DimensionMismatch("feasibility: b/cone dimension mismatch");

  FeasibilityVerdict verdict;
  verdict.feasible = !contains(cone, scaled(b, -1.0), tol.membership).inside;
  if (!verdict.feasible) return verdict;

  const ConeDescriptor cstar = dual(cone);
  const Vector p = project(cstar, b, tol);
  const double pb = dot(p, b);
  if (pb > 1e-12 * (1.0 + norm(p) * norm(b))) {
    verdict.witness = scaled(p, 1.0 / pb);
    return verdict;
  }
  CounterRng rng(seed);
  for (int draw = 0; draw < 10000; ++draw) {
    const Vector u = project(cstar, gaussian_vector(rng, int(b.size())), tol);
    const double ub = dot(u, b);
    if (ub > 1e-10 * (1.0 + norm(u) * norm(b))) {
      verdict.witness = scaled(u, 1.0 / ub);
      return verdict;
    }
  }
  throw WitnessSearchFailed("feasibility: verdict feasible but no witness found");
}

BlockerRegion blocker_of_shifted_cone(const Vector& b,
                                      const ConeDescriptor& cone,
                                      const Tolerances& tol) {
  if (!feasibility(b, cone, tol).feasible)
    throw InfeasibleRegion("blocker_of_shifted_cone: blocker is empty");
  return ConeSlice{dual(cone), b};
}

BlockerRegion blocker_of_polyhedron(const std::vector<Vector>& rows) {
  if (rows.empty()) throw EmptyRowSet("blocker_of_polyhedron: no rows");
  for (const auto& r : rows) {
    check_finite(r, "blocker_of_polyhedron");
    if (r.size() != rows.front().size())
      throw DimensionMismatch("blocker_of_polyhedron: inconsistent rows");
    for (double e : r)
      if (e < 0.0) throw NegativeEntry("blocker_of_polyhedron: negative entry");
    if (norm(r) == 0.0)
      throw InvalidValue("blocker_of_polyhedron: zero row");
  }
  return PolyhedralBlocker{rows};
}

bool region_contains(const BlockerRegion& region, const Vector& u, double tol) {
  if (region_dim(region) != static_cast<int>(u.size()))
    throw DimensionMismatch("region_contains: dimension mismatch");
  if (const auto* cs = std::get_if<ConeSlice>(&region)) {
    return contains(cs->cstar, u, tol).inside && dot(u, cs->b) >= 1.0 - tol;
  }
  const Vector p = project_region(region, u);
  return norm(sub(u, p)) <= tol;
}

Vector project_region(const BlockerRegion& region, const Vector& x,
                      const Tolerances& tol) {
  if (region_dim(region) != static_cast<int>(x.size()))
    throw DimensionMismatch("project_region: dimension mismatch");
  if (const auto* cs = std::get_if<ConeSlice>(&region))
    return project_cone_slice(*cs, x, tol);
  return project_polyhedral_blocker(std::get<PolyhedralBlocker>(region), x, tol);
}

Vector project_simplex(const Vector& v) {
  const int n = static_cast<int>(v.size());
  Vector u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    cum += u[j];
    const double cand = (cum - 1.0) / (j + 1);
    if (u[j] - cand > 0.0) {
      rho = j + 1;
      theta = cand;
    }
  }
  (void)rho;
  Vector y(n);
  for (int j = 0; j < n; ++j) y[j] = std::max(0.0, v[j] - theta);
  return y;
}

}  // namespace ctb
