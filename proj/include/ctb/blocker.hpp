#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "ctb/cones.hpp"

namespace ctb {

// The blocker of the shifted cone b + C: the set C* ∩ {u : <u,b> >= 1},
// stored with the dual cone already taken.
struct ConeSlice {
  ConeDescriptor cstar;
  Vector b;
};

// conv(rows) + nonnegative orthant; rows must be nonnegative and nonzero.
struct PolyhedralBlocker {
  std::vector<Vector> rows;
};

using BlockerRegion = std::variant<ConeSlice, PolyhedralBlocker>;

int region_dim(const BlockerRegion& region);

struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<Vector> witness;  // a region point when feasible
};

// The blocker of b + C is nonempty iff -b is outside C. The witness is a
// point of the blocker, found by projecting b onto C* and rescaling, with a
// seeded random fallback for near-degenerate geometry.
FeasibilityVerdict feasibility(const Vector& b, const ConeDescriptor& cone,
                               const Tolerances& tol = {},
                               std::uint64_t seed = 0x5eedULL);

BlockerRegion blocker_of_shifted_cone(const Vector& b,
                                      const ConeDescriptor& cone,
                                      const Tolerances& tol = {});

BlockerRegion blocker_of_polyhedron(const std::vector<Vector>& rows);

bool region_contains(const BlockerRegion& region, const Vector& u,
                     double tol = 1e-7);

// Exact Euclidean projection onto the region. ConeSlice uses Dykstra
// alternating between the dual cone and the threshold halfspace; the
// polyhedral form solves the nearest-point problem in the (lambda, s)
// parametrization u = A^T lambda + s.
Vector project_region(const BlockerRegion& region, const Vector& x,
                      const Tolerances& tol = {});

// Sort-based exact projection onto the probability simplex.
Vector project_simplex(const Vector& v);

}  // namespace ctb
