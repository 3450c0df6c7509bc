#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "ctb/bounds.hpp"
#include "ctb/montecarlo.hpp"

namespace ctb {

using nlohmann::json;

// Cone schema: {"type": "orthant"|"generators"|"inequalities"|"psd"|"soc",
//               "dim": n, "data": [[...], ...]}
// For "psd", "dim" is the matrix order; the ambient svec dimension is
// n(n+1)/2. "data" is required for the polyhedral variants only.
json cone_to_json(const ConeDescriptor& cone);
ConeDescriptor cone_from_json(const json& j);

// Accepts a full square matrix (symmetry verified within 1e-12) or the rows
// of the lower triangle.
SymMatrix sym_from_json(const json& j);
json sym_to_json(const SymMatrix& s);

Vector vector_from_json(const json& j);

struct ProblemInstance {
  SymMatrix sigma;
  Vector b;  // already svec'd when the cone is psd and b was given as a matrix
  ConeDescriptor cone;
  Tolerances tol;
  std::uint64_t seed = 12345;
  long samples = 100000;
};

// Parses and validates {"sigma": ..., "b": ..., "cone": ..., "options": ...};
// throws SchemaError with a description on any shape problem.
ProblemInstance parse_instance(const json& j);

json bound_report_to_json(const BoundReport& report);
json estimate_to_json(const TailEstimate& est);

// FNV-1a over the compact dump, as a stable input fingerprint.
std::string fingerprint(const json& j);

}  // namespace ctb
