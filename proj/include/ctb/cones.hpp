#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ctb/linalg.hpp"

namespace ctb {

// Structured closed convex cone descriptors. Every variant lives in a flat
// coordinate space; the PSD cone is embedded via svec so one optimizer
// serves all of them.

struct NonnegativeOrthant {
  int dim = 0;
};

// C = { sum_i lambda_i g_i : lambda_i >= 0 }
struct PolyhedralGenerators {
  std::vector<Vector> generators;
};

// C = { x : <h_i, x> >= 0 for all i }
struct PolyhedralInequalities {
  std::vector<Vector> normals;
};

// Symmetric PSD matrices of the given order, in svec coordinates.
struct PositiveSemidefinite {
  int order = 0;
};

// C = { x : x_1 >= ||(x_2..x_n)|| }
struct SecondOrder {
  int dim = 0;
};

using ConeDescriptor =
    std::variant<NonnegativeOrthant, PolyhedralGenerators,
                 PolyhedralInequalities, PositiveSemidefinite, SecondOrder>;

// Validates nonemptiness/nontriviality and consistent dimensions; throws
// InvalidValue / DimensionMismatch.
void validate_cone(const ConeDescriptor& cone);

int ambient_dim(const ConeDescriptor& cone);

struct MembershipVerdict {
  bool inside = false;
  double margin = 0.0;  // signed distance proxy: min slack or min eigenvalue
};

MembershipVerdict contains(const ConeDescriptor& cone, const Vector& x,
                           double tol = 1e-9);

ConeDescriptor dual(const ConeDescriptor& cone);

// Euclidean projection onto the cone. Polyhedral-inequality cones use
// Dykstra over halfspaces; generator cones go through the Moreau
// decomposition x = proj_C(x) + proj_{-C*}(x).
Vector project(const ConeDescriptor& cone, const Vector& x,
               const Tolerances& tol = {});

// Exact nearest point of {u : <normals_i, u> >= offsets_i} to x by
// active-set enumeration (the unique KKT-certified active set). Meant for
// small constraint counts; returns nothing when every subset is rejected
// numerically, in which case callers fall back to Dykstra.
std::optional<Vector> project_halfspaces_exact(
    const std::vector<Vector>& normals, const Vector& offsets, const Vector& x);

// Dual of the linear image M*C for an invertible M and polyhedral C:
// (M C)* = { u : M^T u in C* }.
ConeDescriptor dual_of_linear_image(const ConeDescriptor& cone,
                                    const Matrix& M);

}  // namespace ctb
