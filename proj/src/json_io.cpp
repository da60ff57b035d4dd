#include "cohomlab/json_io.hpp"

#include <sstream>

namespace cohomlab {

namespace {

std::int64_t integer_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw InvalidInput(std::string("field '") + key + "' must be an integer");
  }
  return doc[key].get<std::int64_t>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

MatGroup parse_group_spec(const Json& doc, std::size_t cap) {
  if (!doc.is_object()) throw InvalidInput("group spec must be a JSON object");
  std::int64_t p = integer_field(doc, "p");
  std::int64_t n = integer_field(doc, "n");
  if (n < 1 || n > 30) throw InvalidInput("n out of range");
  std::optional<ModulusContext> ctx;
  try {
    ctx.emplace(p, static_cast<int>(n));
  } catch (const InvalidContext& e) {
    throw InvalidInput(e.what());
  }
  if (!doc.contains("generators") || !doc["generators"].is_array()) {
    throw InvalidInput("field 'generators' must be an array");
  }
  std::vector<Mat2> gens;
  for (const Json& g : doc["generators"]) {
    bool shape = g.is_array() && g.size() == 2 && g[0].is_array() && g[1].is_array() && g[0].size() == 2 &&
                 g[1].size() == 2;
    if (!shape) throw InvalidInput("each generator must be a 2x2 array");
    std::int64_t e[4];
    for (int i = 0; i < 4; ++i) {
      const Json& x = g[static_cast<std::size_t>(i / 2)][static_cast<std::size_t>(i % 2)];
      if (!x.is_number_integer()) throw InvalidInput("matrix entries must be integers");
      e[i] = x.get<std::int64_t>();
      if (e[i] < 0 || e[i] >= ctx->modulus()) throw InvalidInput("matrix entry out of range [0, p^n)");
    }
    gens.emplace_back(*ctx, e[0], e[1], e[2], e[3]);
  }
  return close_group(gens, *ctx, cap);
}

Json to_json(const Mat2& m) { return Json::array({Json::array({m.a(), m.b()}), Json::array({m.c(), m.d()})}); }

Json to_json(const MatGroup& g) {
  Json gens = Json::array();
  for (const Mat2& s : g.generators()) gens.push_back(to_json(s));
  return Json{{"p", g.context().p()}, {"n", g.context().n()}, {"order", g.order()}, {"generators", gens}};
}

Json to_json(const Submodule& s) {
  Json gens = Json::array();
  for (const ResidueVector& v : s.generators()) gens.push_back(v.entries());
  return gens;
}

Json to_json(const CohomologyReport& r) {
  Json witnesses = Json::array();
  for (const Cocycle& w : r.witnesses) {
    Json values = Json::array();
    for (const ResidueVector& v : w.values) values.push_back(v.entries());
    witnesses.push_back(values);
  }
  return Json{{"z1", r.z1}, {"b1", r.b1}, {"h1", r.h1}, {"h1loc", r.h1loc}, {"witnesses", witnesses}};
}

Json to_json(const ConditionReport& r) {
  Json order_p = Json::array(), order_p2 = Json::array();
  for (const Submodule& s : r.stable_cyclic_order_p) order_p.push_back(to_json(s));
  for (const Submodule& s : r.stable_cyclic_order_p2) order_p2.push_back(to_json(s));
  return Json{{"hasFixedPointOfExactOrderP", r.has_fixed_point_of_exact_order_p},
              {"detImageOrderMod_p", r.det_image_order_mod_p},
              {"detKernelTrivialMod_p", r.det_kernel_trivial_mod_p},
              {"stableCyclicOrderP", order_p},
              {"stableCyclicOrderP2", order_p2},
              {"isogenyConditionP3", r.isogeny_condition_p3},
              {"zetaConditionHolds", r.zeta_condition_holds}};
}

Json to_json(const ExperimentVerdict& v) {
  Json params = Json::object();
  for (const auto& [k, x] : v.parameters) params[k] = x;
  Json checks = Json::array();
  for (const Check& c : v.checks) {
    checks.push_back(Json{{"description", c.description}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok}});
  }
  Json counterexamples = Json::array();
  for (const Counterexample& c : v.counterexamples) {
    Json g = to_json(c.group);
    g["reason"] = c.reason;
    counterexamples.push_back(g);
  }
  return Json{{"name", v.name},
              {"parameters", params},
              {"passed", v.passed()},
              {"checks", checks},
              {"counterexamples", counterexamples},
              {"elapsed_ms", v.elapsed_ms}};
}

std::string to_csv(const ExperimentVerdict& v) {
  std::ostringstream os;
  os << "experiment,description,expected,actual,ok\n";
  for (const Check& c : v.checks) {
    os << csv_field(v.name) << ',' << csv_field(c.description) << ',' << csv_field(c.expected) << ','
       << csv_field(c.actual) << ',' << (c.ok ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace cohomlab
