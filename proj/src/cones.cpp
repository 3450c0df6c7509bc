#include "ctb/cones.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <type_traits>

namespace ctb {
namespace {

void require_dim(const ConeDescriptor& cone, const Vector& x) {
  if (ambient_dim(cone) != static_cast<int>(x.size()))
    throw DimensionMismatch("cone: point dimension does not match ambient dimension");
}

void check_rows(const std::vector<Vector>& rows, const char* what) {
  if (rows.empty()) throw InvalidValue(std::string(what) + ": empty row set");
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d)
      throw DimensionMismatch(std::string(what) + ": inconsistent row dimensions");
    check_finite(r, what);
    if (norm(r) == 0.0)
      throw InvalidValue(std::string(what) + ": zero row");
  }
}

Vector clamp_nonnegative(const Vector& x) {
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::max(0.0, x[i]);
  return y;
}

// Projection onto the halfspace {x : <h, x> >= 0}.
Vector project_halfspace(const Vector& h, const Vector& x) {
  const double v = dot(h, x);
  if (v >= 0.0) return x;
  return add(x, scaled(h, -v / norm2(h)));
}

// Projection onto {x : <h_i, x> >= 0 for all i}: exact active-set solve for
// small row counts, Dykstra's alternating projections otherwise.
Vector project_inequality_cone(const std::vector<Vector>& normals,
                               const Vector& x, const Tolerances& tol);

// Dykstra's alternating projections onto an intersection of halfspaces
// {x : <h_i, x> >= 0}. Converges to the exact nearest point.
Vector dykstra_halfspaces(const std::vector<Vector>& normals, const Vector& x,
                          const Tolerances& tol) {
  const std::size_t m = normals.size();
  Vector cur = x;
  std::vector<Vector> increments(m, Vector(x.size(), 0.0));
  for (int cycle = 0; cycle < tol.dykstra_cap; ++cycle) {
    double shift = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector z = add(cur, increments[i]);
      const Vector next = project_halfspace(normals[i], z);
      increments[i] = sub(z, next);
      shift += norm(sub(next, cur));
      cur = next;
    }
    // successive-iterate shifts can stall while still infeasible, so gate the
    // stop on the worst constraint violation as well
    double violation = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      violation = std::max(violation, -dot(normals[i], cur) / norm(normals[i]));
    if (shift + std::max(0.0, violation) <=
        tol.dykstra_step * (1.0 + norm(x)))
      return cur;
  }
  throw NoConvergence("dykstra: iteration cap reached");
}

Vector project_inequality_cone(const std::vector<Vector>& normals,
                               const Vector& x, const Tolerances& tol) {
  if (normals.size() <= 16) {
    if (auto exact = project_halfspaces_exact(
            normals, Vector(normals.size(), 0.0), x))
      return *exact;
  }
  return dykstra_halfspaces(normals, x, tol);
}

Vector project_psd(int order, const Vector& x, const Tolerances& tol) {
  EigenDecomposition e = sym_eigen(smat(x), tol);
  SymMatrix s(order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.0;
      for (int k = 0; k < order; ++k) {
        const double lam = std::max(0.0, e.values[k]);
        v += lam * e.vectors[k][i] * e.vectors[k][j];
      }
      s.set(i, j, v);
    }
  return svec(s);
}

Vector project_soc(const Vector& x) {
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
  tail = std::sqrt(tail);
  const double t = x[0];
  if (t >= tail) return x;
  if (t <= -tail) return Vector(x.size(), 0.0);
  const double a = 0.5 * (t + tail);
  Vector y(x.size(), 0.0);
  y[0] = a;
  for (std::size_t i = 1; i < x.size(); ++i) y[i] = a * x[i] / tail;
  return y;
}

}  // namespace

void validate_cone(const ConeDescriptor& cone) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegativeOrthant>) {
          if (c.dim <= 0) throw InvalidValue("orthant: dim must be positive");
        } else if constexpr (std::is_same_v<T, PolyhedralGenerators>) {
          check_rows(c.generators, "generators");
        } else if constexpr (std::is_same_v<T, PolyhedralInequalities>) {
          check_rows(c.normals, "inequalities");
        } else if constexpr (std::is_same_v<T, PositiveSemidefinite>) {
          if (c.order <= 0) throw InvalidValue("psd: order must be positive");
        } else {
          if (c.dim <= 0) throw InvalidValue("soc: dim must be positive");
        }
      },
      cone);
}

int ambient_dim(const ConeDescriptor& cone) {
  return std::visit(
      [](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonnegativeOrthant>) return c.dim;
        else if constexpr (std::is_same_v<T, PolyhedralGenerators>)
          return static_cast<int>(c.generators.front().size());
        else if constexpr (std::is_same_v<T, PolyhedralInequalities>)
          return static_cast<int>(c.normals.front().size());
        else if constexpr (std::is_same_v<T, PositiveSemidefinite>)
          return svec_dim(c.order);
        else return c.dim;
      },
      cone);
}

MembershipVerdict contains(const ConeDescriptor& cone, const Vector& x,
                           double tol) {
  require_dim(cone, x);
  MembershipVerdict v;
  if (const auto* o = std::get_if<NonnegativeOrthant>(&cone)) {
    (void)o;
    v.margin = *std::min_element(x.begin(), x.end());
    v.inside = v.margin >= -tol;
  } else if (const auto* g = std::get_if<PolyhedralGenerators>(&cone)) {
    (void)g;
    const Vector p = project(cone, x);
    const double dist = norm(sub(x, p));
    v.margin = -dist;
    v.inside = dist <= tol * (1.0 + norm(x));
  } else if (const auto* h = std::get_if<PolyhedralInequalities>(&cone)) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& row : h->normals) m = std::min(m, dot(row, x) / norm(row));
    v.margin = m;
    v.inside = m >= -tol * (1.0 + norm(x));
  } else if (const auto* p = std::get_if<PositiveSemidefinite>(&cone)) {
    (void)p;
    const EigenDecomposition e = sym_eigen(smat(x));
    v.margin = e.values.back();
    v.inside = v.margin >= -tol;
  } else {
    double tail = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) tail += x[i] * x[i];
    v.margin = x[0] - std::sqrt(tail);
    v.inside = v.margin >= -tol;
  }
  return v;
}

ConeDescriptor dual(const ConeDescriptor& cone) {
  validate_cone(cone);
  if (const auto* g = std::get_if<PolyhedralGenerators>(&cone))
    return PolyhedralInequalities{g->generators};
  if (const auto* h = std::get_if<PolyhedralInequalities>(&cone))
    return PolyhedralGenerators{h->normals};
  return cone;  // orthant, PSD and second-order cones are self-dual
}

Vector project(const ConeDescriptor& cone, const Vector& x,
               const Tolerances& tol) {
  require_dim(cone, x);
  if (std::holds_alternative<NonnegativeOrthant>(cone))
    return clamp_nonnegative(x);
  if (const auto* g = std::get_if<PolyhedralGenerators>(&cone)) {
    // Moreau: x = proj_C(x) + proj_{-C*}(x), and -C* is the inequality cone
    // with flipped normals.
    std::vector<Vector> flipped;
    flipped.reserve(g->generators.size());
    for (const auto& row : g->generators) flipped.push_back(scaled(row, -1.0));
    return sub(x, project_inequality_cone(flipped, x, tol));
  }
  if (const auto* h = std::get_if<PolyhedralInequalities>(&cone))
    return project_inequality_cone(h->normals, x, tol);
  if (const auto* p = std::get_if<PositiveSemidefinite>(&cone))
    return project_psd(p->order, x, tol);
  return project_soc(x);
}

ConeDescriptor dual_of_linear_image(const ConeDescriptor& cone,
                                    const Matrix& M) {
  validate_cone(cone);
  const int n = ambient_dim(cone);
  if (M.rows != n || M.cols != n)
    throw DimensionMismatch("dual_of_linear_image: map/cone dimension mismatch");

  auto image_generators = [&](const std::vector<Vector>& gens) {
    std::vector<Vector> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(M.apply(g));
    return out;
  };

  if (const auto* g = std::get_if<PolyhedralGenerators>(&cone)) {
    // M C has generators {M g}; its dual is the inequality cone on the same rows.
    // Invertibility certified up front so singular maps fail loudly.
    (void)solve_general(M, Vector(n, 1.0));
    return PolyhedralInequalities{image_generators(g->generators)};
  }
  if (std::holds_alternative<NonnegativeOrthant>(cone)) {
    std::vector<Vector> cols;
    for (int j = 0; j < n; ++j) {
      Vector e(n, 0.0);
      e[j] = 1.0;
      cols.push_back(M.apply(e));
    }
    (void)solve_general(M, Vector(n, 1.0));
    return PolyhedralInequalities{cols};
  }
  if (const auto* h = std::get_if<PolyhedralInequalities>(&cone)) {
    // C* = cone(H); (M C)* = M^{-T} C*, generated by M^{-T} h.
    const Matrix Mt = M.transposed();
    std::vector<Vector> gens;
    gens.reserve(h->normals.size());
    for (const auto& row : h->normals) gens.push_back(solve_general(Mt, row));
    return PolyhedralGenerators{gens};
  }
  throw InvalidValue("dual_of_linear_image: cone must be polyhedral");
}

std::optional<Vector> project_halfspaces_exact(
    const std::vector<Vector>& normals, const Vector& offsets,
    const Vector& x) {
  const int m = static_cast<int>(normals.size());
  double scale = 1.0 + norm(x);
  for (const auto& r : normals) scale = std::max(scale, norm(r));

  // the projection is x + H_S^T lambda for the unique active set S with
  // lambda >= 0 and every constraint satisfied
  for (int k = 0; k <= m; ++k) {
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != k) continue;
      std::vector<int> active;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) active.push_back(i);

      Vector u = x;
      if (k > 0) {
        Matrix gram(k, k);
        Vector rhs(k);
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b)
            gram.at(a, b) = dot(normals[active[a]], normals[active[b]]);
          rhs[a] = offsets[active[a]] - dot(normals[active[a]], x);
        }
        Vector lambda;
        try {
          lambda = solve_general(gram, rhs);
        } catch (const SingularMap&) {
          continue;  // redundant active set
        }
        bool dual_ok = true;
        for (double l : lambda)
          if (l < -1e-10 * scale) dual_ok = false;
        if (!dual_ok) continue;
        for (int a = 0; a < k; ++a)
          u = add(u, scaled(normals[active[a]], lambda[a]));
      }
      bool primal_ok = true;
      for (int i = 0; i < m && primal_ok; ++i)
        if (dot(normals[i], u) < offsets[i] - 1e-9 * scale) primal_ok = false;
      if (primal_ok) return u;
    }
  }
  return std::nullopt;
}

}  // namespace ctb
