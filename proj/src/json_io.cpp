#include "ctb/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace ctb {
namespace {

Vector number_array(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw SchemaError(std::string(what) + ": expected numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

std::vector<Vector> row_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw SchemaError(std::string(what) + ": expected a nonempty array of rows");
  std::vector<Vector> rows;
  rows.reserve(j.size());
  for (const auto& r : j) rows.push_back(number_array(r, what));
  return rows;
}

}  // namespace

json cone_to_json(const ConeDescriptor& cone) {
  json j;
  if (const auto* o = std::get_if<NonnegativeOrthant>(&cone)) {
    j["type"] = "orthant";
    j["dim"] = o->dim;
  } else if (const auto* g = std::get_if<PolyhedralGenerators>(&cone)) {
    j["type"] = "generators";
    j["dim"] = static_cast<int>(g->generators.front().size());
    j["data"] = g->generators;
  } else if (const auto* h = std::get_if<PolyhedralInequalities>(&cone)) {
    j["type"] = "inequalities";
    j["dim"] = static_cast<int>(h->normals.front().size());
    j["data"] = h->normals;
  } else if (const auto* p = std::get_if<PositiveSemidefinite>(&cone)) {
    j["type"] = "psd";
    j["dim"] = p->order;
  } else {
    j["type"] = "soc";
    j["dim"] = std::get<SecondOrder>(cone).dim;
  }
  return j;
}

ConeDescriptor cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw SchemaError("cone: expected an object with a \"type\" string");
  const std::string type = j["type"].get<std::string>();
  auto need_dim = [&]() -> int {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
      throw SchemaError("cone: \"" + type + "\" requires an integer \"dim\"");
    return j["dim"].get<int>();
  };
  ConeDescriptor cone;
  if (type == "orthant") {
    cone = NonnegativeOrthant{need_dim()};
  } else if (type == "generators") {
    if (!j.contains("data")) throw SchemaError("cone: \"generators\" requires \"data\"");
    cone = PolyhedralGenerators{row_list(j["data"], "cone data")};
  } else if (type == "inequalities") {
    if (!j.contains("data")) throw SchemaError("cone: \"inequalities\" requires \"data\"");
    cone = PolyhedralInequalities{row_list(j["data"], "cone data")};
  } else if (type == "psd") {
    cone = PositiveSemidefinite{need_dim()};
  } else if (type == "soc") {
    cone = SecondOrder{need_dim()};
  } else {
    throw SchemaError("cone: unknown type \"" + type + "\"");
  }
  try {
    validate_cone(cone);
  } catch (const Error& e) {
    throw SchemaError(std::string("cone: ") + e.what());
  }
  return cone;
}

SymMatrix sym_from_json(const json& j) {
  const std::vector<Vector> rows = row_list(j, "symmetric matrix");
  const std::size_t n = rows.size();
  bool triangular = true;
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != i + 1) triangular = false;
  try {
    if (triangular && n > 1) {
      SymMatrix s(static_cast<int>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
          s.set(static_cast<int>(i), static_cast<int>(k), rows[i][k]);
      return s;
    }
    return SymMatrix::from_full(rows);
  } catch (const Error& e) {
    throw SchemaError(std::string("symmetric matrix: ") + e.what());
  }
}

json sym_to_json(const SymMatrix& s) { return json(s.to_full()); }

Vector vector_from_json(const json& j) { return number_array(j, "vector"); }

ProblemInstance parse_instance(const json& j) {
  if (!j.is_object()) throw SchemaError("instance: expected a JSON object");
  for (const char* key : {"sigma", "b", "cone"})
    if (!j.contains(key))
      throw SchemaError(std::string("instance: missing \"") + key + "\"");

  ProblemInstance inst;
  inst.cone = cone_from_json(j["cone"]);
  inst.sigma = sym_from_json(j["sigma"]);

  const json& bj = j["b"];
  if (bj.is_array() && !bj.empty() && bj.front().is_array()) {
    if (!std::holds_alternative<PositiveSemidefinite>(inst.cone))
      throw SchemaError("instance: matrix-valued b requires a psd cone");
    inst.b = svec(sym_from_json(bj));
  } else {
    inst.b = vector_from_json(bj);
  }

  if (ambient_dim(inst.cone) != static_cast<int>(inst.b.size()) ||
      inst.sigma.order() != static_cast<int>(inst.b.size()))
    throw SchemaError("instance: sigma, b and cone dimensions disagree");

  if (j.contains("options")) {
    const json& opt = j["options"];
    if (!opt.is_object()) throw SchemaError("instance: \"options\" must be an object");
    if (opt.contains("seed")) inst.seed = opt["seed"].get<std::uint64_t>();
    if (opt.contains("samples")) inst.samples = opt["samples"].get<long>();
    if (opt.contains("tol")) {
      const double t = opt["tol"].get<double>();
      if (!(t > 0.0)) throw SchemaError("instance: tol must be positive");
      inst.tol.membership = t;
    }
    if (opt.contains("kkt_tol")) inst.tol.kkt = opt["kkt_tol"].get<double>();
  }
  return inst;
}

json bound_report_to_json(const BoundReport& report) {
  json j;
  j["bound"] = report.bound;
  j["method"] = to_string(report.method);
  j["feasible"] = report.feasible;
  if (report.u_star) j["u_star"] = *report.u_star;
  j["diagnostics"] = report.diagnostics;
  return j;
}

json estimate_to_json(const TailEstimate& est) {
  json j;
  j["p_hat"] = est.p_hat;
  j["stderr"] = est.stderr_;
  j["n_samples"] = est.n_samples;
  j["seed"] = est.seed;
  return j;
}

std::string fingerprint(const json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ctb
