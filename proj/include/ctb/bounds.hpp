#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ctb/optimize.hpp"

namespace ctb {

enum class BoundMethod { Scalar1D, ClosedForm, Optimizer, RowEvaluation, Vacuous };

const char* to_string(BoundMethod m);

struct BoundReport {
  double bound = 1.0;  // in (0, 1]
  std::optional<Vector> u_star;
  BoundMethod method = BoundMethod::Vacuous;
  bool feasible = false;
  std::map<std::string, double> diagnostics;
};

// Eq-style scalar Cantelli bound sigma^2 / (b^2 + sigma^2).
double cantelli_1d(double sigma2, double b);

// Per-direction bound f(u) = q(u) / (<u,b>^2 + q(u)); requires <u,b> > 0.
double scalarized_bound(const SymMatrix& sigma, const Vector& b,
                        const Vector& u);

// Tail bound for the event X >=_C b. Vacuous (bound 1) when -b lies in C;
// closed form when Sigma^{-1} b lies in C*; optimizer otherwise.
BoundReport tail_bound_cone(const SymMatrix& sigma, const Vector& b,
                            const ConeDescriptor& cone,
                            const Tolerances& tol = {});

// Bound on P{A X >= 1, X >= 0} for nonnegative A: minimize q over the exact
// polyhedral blocker conv(rows) + orthant; per-row bounds in diagnostics.
BoundReport tail_bound_set(const SymMatrix& sigma,
                           const std::vector<Vector>& rows,
                           const Tolerances& tol = {});

// Weakly spherical PSD-cone bound sigma^2 / (trace(b^2) + sigma^2) for a
// positive definite matrix threshold.
double psd_spherical_bound(double sigma2, const SymMatrix& b,
                           const Tolerances& tol = {});

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

void validate_graph(const Graph& g);

// Bound on the probability that a centered weakly spherical vector satisfies
// the incidence system of g at threshold 1, via the matching-based convex
// combination of rows and the best single row.
BoundReport graph_matching_bound(const Graph& g, double sigma2,
                                 const std::vector<std::pair<int, int>>& matching);

}  // namespace ctb
