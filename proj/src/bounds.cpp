#include "ctb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ctb {

const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::Scalar1D: return "scalar_1d";
    case BoundMethod::ClosedForm: return "closed_form";
    case BoundMethod::Optimizer: return "optimizer";
    case BoundMethod::RowEvaluation: return "row_evaluation";
    case BoundMethod::Vacuous: return "vacuous";
  }
  return "unknown";
}

double cantelli_1d(double sigma2, double b) {
  if (!(sigma2 > 0.0)) throw NonPositiveInput("cantelli_1d: sigma2 must be positive");
  if (!(b > 0.0)) throw NonPositiveInput("cantelli_1d: b must be positive");
  return sigma2 / (b * b + sigma2);
}

double scalarized_bound(const SymMatrix& sigma, const Vector& b,
                        const Vector& u) {
  const double ub = dot(u, b);
  if (!(ub > 0.0))
    throw NonPositivePairing("scalarized_bound: <u,b> must be positive");
  const double q = quadratic_form(u, sigma);
  return q / (ub * ub + q);
}

BoundReport tail_bound_cone(const SymMatrix& sigma, const Vector& b,
                            const ConeDescriptor& cone,
                            const Tolerances& tol) {
  validate_cone(cone);
  if (norm(b) == 0.0) throw ZeroThreshold("tail_bound_cone: b must be nonzero");
  (void)cholesky(sigma, tol);

  BoundReport report;
  const FeasibilityVerdict feas = feasibility(b, cone, tol);
  if (!feas.feasible) {
    report.bound = 1.0;
    report.method = BoundMethod::Vacuous;
    report.feasible = false;
    return report;
  }
  report.feasible = true;

  if (sigma.order() == 1 && std::holds_alternative<NonnegativeOrthant>(cone)) {
    report.method = BoundMethod::Scalar1D;
    report.bound = cantelli_1d(sigma(0, 0), b[0]);
    report.u_star = Vector{1.0 / b[0]};
    report.diagnostics["m"] = b[0] * b[0] / sigma(0, 0);
    return report;
  }

  if (auto cf = closed_form_bound(sigma, b, cone, tol)) {
    report.method = BoundMethod::ClosedForm;
    report.bound = cf->bound;
    report.u_star = cf->u_star;
    report.diagnostics["m"] = 1.0 / cf->q_star;
    return report;
  }

  const BlockerRegion region = blocker_of_shifted_cone(b, cone, tol);
  const OptimizeResult res = minimize_over_region(sigma, region, tol);
  report.method = BoundMethod::Optimizer;
  report.bound = res.bound;
  report.u_star = res.u_star;
  report.diagnostics["kkt_residual"] = res.kkt_residual;
  report.diagnostics["iterations"] = double(res.iterations);
  return report;
}

BoundReport tail_bound_set(const SymMatrix& sigma,
                           const std::vector<Vector>& rows,
                           const Tolerances& tol) {
  (void)cholesky(sigma, tol);
  const BlockerRegion region = blocker_of_polyhedron(rows);
  const OptimizeResult res = minimize_over_region(sigma, region, tol);

  double best_row = 1.0;
  for (const auto& row : rows) {
    const double q = quadratic_form(row, sigma);
    best_row = std::min(best_row, q / (1.0 + q));
  }

  BoundReport report;
  report.feasible = true;
  report.method = BoundMethod::Optimizer;
  report.bound = res.bound;
  report.u_star = res.u_star;
  report.diagnostics["best_row_bound"] = best_row;
  report.diagnostics["kkt_residual"] = res.kkt_residual;
  report.diagnostics["iterations"] = double(res.iterations);
  return report;
}

double psd_spherical_bound(double sigma2, const SymMatrix& b,
                           const Tolerances& tol) {
  if (!(sigma2 > 0.0))
    throw NonPositiveVariance("psd_spherical_bound: sigma2 must be positive");
  (void)cholesky(b, tol);  // threshold must be positive definite
  const double trace_b2 = b.frobenius_norm() * b.frobenius_norm();
  return sigma2 / (trace_b2 + sigma2);
}

void validate_graph(const Graph& g) {
  if (g.n <= 0) throw InvalidValue("graph: vertex count must be positive");
  if (g.edges.empty()) throw InvalidValue("graph: no edges");
  std::set<std::pair<int, int>> seen;
  std::vector<int> degree(g.n, 0);
  for (auto [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.n || b >= g.n)
      throw InvalidValue("graph: edge endpoint out of range");
    if (a == b) throw InvalidValue("graph: loop edge");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw InvalidValue("graph: duplicate edge");
    ++degree[a];
    ++degree[b];
  }
  for (int v = 0; v < g.n; ++v)
    if (degree[v] == 0) throw InvalidValue("graph: isolated vertex " + std::to_string(v));
}

BoundReport graph_matching_bound(
    const Graph& g, double sigma2,
    const std::vector<std::pair<int, int>>& matching) {
  validate_graph(g);
  if (!(sigma2 > 0.0))
    throw NonPositiveVariance("graph_matching_bound: sigma2 must be positive");
  if (g.n % 2 != 0) throw OddOrder("graph_matching_bound: odd vertex count");

  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : g.edges) edge_set.insert(std::minmax(a, b));
  std::vector<int> covered(g.n, 0);
  for (auto [a, b] : matching) {
    auto key = std::minmax(a, b);
    if (!edge_set.count(key))
      throw NotAMatching("graph_matching_bound: matching edge not in graph");
    if (covered[a] || covered[b])
      throw NotAMatching("graph_matching_bound: matching edges share a vertex");
    covered[a] = covered[b] = 1;
  }
  for (int v = 0; v < g.n; ++v)
    if (!covered[v])
      throw NotPerfect("graph_matching_bound: vertex " + std::to_string(v) +
                       " uncovered");

  // Matching incidence rows sum to the all-ones vector, so (2/n) 1_n is a
  // convex combination of rows and lies in the blocker.
  const int n = g.n;
  const double q_match = 4.0 * sigma2 / double(n);
  const double g_match = q_match / (1.0 + q_match);
  const double q_row = 2.0 * sigma2;
  const double g_row = q_row / (1.0 + q_row);

  BoundReport report;
  report.feasible = true;
  report.method = BoundMethod::RowEvaluation;
  if (g_match <= g_row) {
    report.bound = g_match;
    report.u_star = Vector(n, 2.0 / double(n));
  } else {
    report.bound = g_row;
    Vector row(n, 0.0);
    row[g.edges.front().first] = 1.0;
    row[g.edges.front().second] = 1.0;
    report.u_star = row;
  }
  report.diagnostics["matching_combination_bound"] = g_match;
  report.diagnostics["best_row_bound"] = g_row;
  report.diagnostics["published_constant"] = sigma2 / (4.0 * n + sigma2);
  report.diagnostics["n_times_bound"] = n * report.bound;
  return report;
}

}  // namespace ctb
