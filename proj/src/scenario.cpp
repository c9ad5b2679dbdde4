#include "sib/scenario.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sib {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseError(path + ": " + message);
}

const json& require(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) fail(path + "." + key, "missing field");
  return *it;
}

const json* optional_field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  const auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double read_number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

long read_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<long>();
}

Vector read_vector(const json& value, const std::string& path, Eigen::Index dimension) {
  if (!value.is_array()) fail(path, "expected an array of numbers");
  if (static_cast<Eigen::Index>(value.size()) != dimension) {
    fail(path, "expected " + std::to_string(dimension) + " coordinates, got " +
                   std::to_string(value.size()));
  }
  Vector v(dimension);
  for (Eigen::Index j = 0; j < dimension; ++j) {
    v[j] = read_number(value[static_cast<std::size_t>(j)], path + "[" + std::to_string(j) + "]");
  }
  return v;
}

std::vector<Halfspace> read_halfspaces(const json& value, const std::string& path, Eigen::Index n) {
  if (!value.is_array() || value.empty()) fail(path, "expected a nonempty array of halfspaces");
  std::vector<Halfspace> faces;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string item = path + "[" + std::to_string(i) + "]";
    faces.push_back({read_vector(require(value[i], "a", item), item + ".a", n),
                     read_number(require(value[i], "b", item), item + ".b")});
  }
  return faces;
}

// Builds a body, prefixing validation failures with the JSON path.
template <typename Make>
ConvexBody make_body(const std::string& path, Make&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

ConvexBody read_body(const json& value, const std::string& path, Eigen::Index n) {
  const json& type_field = require(value, "type", path);
  if (!type_field.is_string()) fail(path + ".type", "expected a string");
  const std::string type = type_field.get<std::string>();

  if (type == "point") {
    Vector p = read_vector(require(value, "p", path), path + ".p", n);
    return make_body(path, [&] { return ConvexBody::point(p); });
  }
  if (type == "ball") {
    Vector c = read_vector(require(value, "center", path), path + ".center", n);
    const double r = read_number(require(value, "radius", path), path + ".radius");
    return make_body(path, [&] { return ConvexBody::ball(c, r); });
  }
  if (type == "box") {
    if (optional_field(value, "center", path) != nullptr) {
      Vector c = read_vector(require(value, "center", path), path + ".center", n);
      const double r = read_number(require(value, "radius", path), path + ".radius");
      return make_body(path, [&] { return ConvexBody::box_centered(c, r); });
    }
    Vector lo = read_vector(require(value, "lower", path), path + ".lower", n);
    Vector hi = read_vector(require(value, "upper", path), path + ".upper", n);
    return make_body(path, [&] { return ConvexBody::box(lo, hi); });
  }
  if (type == "halfspaces") {
    std::vector<Halfspace> faces = read_halfspaces(require(value, "halfspaces", path), path + ".halfspaces", n);
    return make_body(path, [&] { return ConvexBody::halfspaces(faces); });
  }
  fail(path + ".type", "unknown body type '" + type + "' (point, box, ball, halfspaces)");
}

StepSchedule read_step(const json& value, const std::string& path) {
  StepSchedule step;
  const json& kind = require(value, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  if (kind == "one_over_k") {
    step.kind = StepKind::kOneOverK;
  } else if (kind == "c_over_k_plus_k0") {
    step.kind = StepKind::kCOverKPlusK0;
  } else {
    fail(path + ".kind", "expected one_over_k or c_over_k_plus_k0");
  }
  if (const json* c = optional_field(value, "c", path)) step.c = read_number(*c, path + ".c");
  if (const json* k0 = optional_field(value, "k0", path)) step.k0 = read_integer(*k0, path + ".k0");
  return step;
}

json write_vector(const Vector& v) {
  json out = json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(v[j]);
  return out;
}

json write_halfspaces(const std::vector<Halfspace>& faces) {
  json out = json::array();
  for (const Halfspace& h : faces) out.push_back({{"a", write_vector(h.normal)}, {"b", h.offset}});
  return out;
}

json write_body(const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::kPoint:
      return {{"type", "point"}, {"p", write_vector(body.as<Point>().p)}};
    case BodyKind::kBox:
      return {{"type", "box"},
              {"lower", write_vector(body.as<Box>().lower)},
              {"upper", write_vector(body.as<Box>().upper)}};
    case BodyKind::kBall:
      return {{"type", "ball"},
              {"center", write_vector(body.as<Ball>().center)},
              {"radius", body.as<Ball>().radius}};
    case BodyKind::kHalfspaces:
      return {{"type", "halfspaces"},
              {"halfspaces", write_halfspaces(body.as<HalfspaceIntersection>().faces)}};
  }
  return {};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("$", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "expected an object");

  // Dimension comes from the explicit field or, failing that, the first face.
  const json& dynamic = require(doc, "dynamic", "$");
  const json& faces_json = require(dynamic, "halfspaces", "$.dynamic");
  Eigen::Index n = 0;
  if (const json* dim = optional_field(doc, "dimension", "$")) {
    n = read_integer(*dim, "$.dimension");
    if (n < 1) fail("$.dimension", "must be >= 1");
  } else if (faces_json.is_array() && !faces_json.empty() && faces_json[0].is_object() &&
             faces_json[0].contains("a") && faces_json[0]["a"].is_array()) {
    n = static_cast<Eigen::Index>(faces_json[0]["a"].size());
  } else {
    fail("$.dimension", "missing field");
  }

  std::vector<Halfspace> faces = read_halfspaces(faces_json, "$.dynamic.halfspaces", n);
  std::optional<PolyhedralDynamic> dyn;
  try {
    dyn.emplace(std::move(faces));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("$.dynamic: ") + e.what());
  }

  const json& targets_json = require(doc, "targets", "$");
  if (!targets_json.is_array() || targets_json.empty()) fail("$.targets", "expected a nonempty array");
  std::vector<ConvexBody> targets;
  for (std::size_t i = 0; i < targets_json.size(); ++i) {
    const std::string path = "$.targets[" + std::to_string(i) + "]";
    ConvexBody body = read_body(targets_json[i], path, n);
    if (!body.is_bounded()) {
      throw ValidationError(path + ": targets must be bounded (point, box or ball)");
    }
    targets.push_back(std::move(body));
  }
  ConvexBody constraint = read_body(require(doc, "constraint", "$"), "$.constraint", n);

  Tolerances tolerances;
  if (const json* tol = optional_field(doc, "tolerances", "$")) {
    if (const json* v = optional_field(*tol, "active", "$.tolerances")) tolerances.active = read_number(*v, "$.tolerances.active");
    if (const json* v = optional_field(*tol, "zero", "$.tolerances")) tolerances.zero = read_number(*v, "$.tolerances.zero");
    if (const json* v = optional_field(*tol, "membership", "$.tolerances")) tolerances.membership = read_number(*v, "$.tolerances.membership");
  }
  InnerConfig inner;
  if (const json* in = optional_field(doc, "inner", "$")) {
    if (const json* v = optional_field(*in, "max_iters", "$.inner")) inner.max_inner = static_cast<int>(read_integer(*v, "$.inner.max_iters"));
    if (const json* v = optional_field(*in, "step", "$.inner")) inner.step_scale = read_number(*v, "$.inner.step");
  }

  SolverConfig solver;
  const json& solver_json = require(doc, "solver", "$");
  solver.x0 = read_vector(require(solver_json, "x0", "$.solver"), "$.solver.x0", n);
  if (const json* v = optional_field(solver_json, "step", "$.solver")) solver.step = read_step(*v, "$.solver.step");
  if (const json* v = optional_field(solver_json, "max_iters", "$.solver")) solver.max_iters = read_integer(*v, "$.solver.max_iters");
  if (const json* v = optional_field(solver_json, "trace_every", "$.solver")) solver.trace_every = read_integer(*v, "$.solver.trace_every");
  if (const json* v = optional_field(solver_json, "seed", "$.solver")) solver.seed = static_cast<std::uint64_t>(read_integer(*v, "$.solver.seed"));
  if (const json* v = optional_field(solver_json, "check_nondegeneracy", "$.solver")) {
    if (!v->is_boolean()) fail("$.solver.check_nondegeneracy", "expected a boolean");
    solver.check_nondegeneracy = v->get<bool>();
  }
  if (solver.max_iters < 1) throw ValidationError("$.solver.max_iters: must be >= 1");
  if (solver.trace_every < 1) throw ValidationError("$.solver.trace_every: must be >= 1");
  if (solver.step.kind == StepKind::kCOverKPlusK0 && !(solver.step.c > 0.0)) {
    throw ValidationError("$.solver.step.c: must be > 0");
  }
  if (solver.step.k0 < 0) throw ValidationError("$.solver.step.k0: must be >= 0");

  OracleConfig oracle;
  if (const json* o = optional_field(doc, "oracle", "$")) {
    if (const json* v = optional_field(*o, "grid", "$.oracle")) oracle.grid = read_number(*v, "$.oracle.grid");
    if (!(oracle.grid > 0.0)) throw ValidationError("$.oracle.grid: must be > 0");
  }

  return Scenario{SibProblem(std::move(*dyn), std::move(targets), std::move(constraint), tolerances, inner),
                  std::move(solver), oracle};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  const SibProblem& p = scenario.problem;
  const SolverConfig& s = scenario.solver;
  json targets = json::array();
  for (const ConvexBody& t : p.targets) targets.push_back(write_body(t));

  json step = {{"kind", s.step.kind == StepKind::kOneOverK ? "one_over_k" : "c_over_k_plus_k0"},
               {"c", s.step.c},
               {"k0", s.step.k0}};
  json doc = {
      {"dimension", p.dimension()},
      {"dynamic", {{"halfspaces", write_halfspaces(p.dynamic.faces())}}},
      {"targets", targets},
      {"constraint", write_body(p.constraint)},
      {"tolerances",
       {{"active", p.tolerances.active}, {"zero", p.tolerances.zero}, {"membership", p.tolerances.membership}}},
      {"inner", {{"max_iters", p.inner.max_inner}, {"step", p.inner.step_scale}}},
      {"solver",
       {{"x0", write_vector(s.x0)},
        {"step", step},
        {"max_iters", s.max_iters},
        {"trace_every", s.trace_every},
        {"seed", s.seed},
        {"check_nondegeneracy", s.check_nondegeneracy}}},
      {"oracle", {{"grid", scenario.oracle.grid}}},
  };
  return doc.dump(2) + "\n";
}

void write_trace(const SolveReport& report, std::ostream& out, int precision) {
  const Eigen::Index n = report.x_best.size();
  out << "k";
  for (Eigen::Index j = 1; j <= n; ++j) out << ",x_" << j;
  out << ",T,V_k,active_index,alpha_k\n";
  out << std::fixed << std::setprecision(precision);
  for (const TraceRow& row : report.trace) {
    out << row.k;
    for (Eigen::Index j = 0; j < row.x.size(); ++j) out << ',' << row.x[j];
    out << ',' << row.value << ',' << row.best << ',' << row.active_index << ',' << row.alpha << '\n';
  }
}

void emit_trace(const SolveReport& report, const std::filesystem::path& path, int precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write trace file " + path.string());
  write_trace(report, out, precision);
  if (!out) throw Error("failed writing trace file " + path.string());
}

}  // namespace sib
