#include "hassett/json_io.hpp"

#include <stdexcept>

namespace hassett::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("malformed JSON: " + what); }

void expect_schema(const json& j, const std::string& schema) {
  if (j.contains("schema") && j.at("schema") != schema) {
    bad("expected schema " + schema + ", got " + j.at("schema").dump());
  }
}

Rational rational_from(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rational must be a \"p/q\" string or an integer, got " + j.dump());
}

json permutation_to_json(const Permutation& p) {
  json out = json::array();
  for (auto x : p) out.push_back(x + 1);
  return out;
}

Permutation permutation_from_json(const json& j) {
  Permutation p;
  for (const auto& x : j) {
    const long v = x.get<long>();
    if (v < 1) bad("permutation images are 1-based");
    p.push_back(static_cast<std::uint32_t>(v - 1));
  }
  return p;
}

json order_to_json(const mpz_class& order) {
  if (order.fits_slong_p()) return order.get_si();
  return order.get_str();
}

}  // namespace

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

static std::vector<Rational> rationals_from_json_raw(const json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

json subset_to_json(Subset s) { return labels_of(s); }

static Subset subset_from_json_raw(const json& j) {
  if (!j.is_array()) bad("expected an array of marking labels");
  return subset_from_labels(j.get<std::vector<int>>());
}

json to_json(const WeightData& w) { return {{"genus", w.genus}, {"weights", rationals_to_json(w.weights)}}; }

static WeightData weight_data_from_json_raw(const json& j) {
  expect_schema(j, "weight-data/1");
  if (!j.is_object() || !j.contains("genus") || !j.contains("weights")) bad("weight data needs genus and weights");
  return {j.at("genus").get<int>(), rationals_from_json(j.at("weights"))};
}

json to_json(const StableTree& t) {
  json vertices = json::array();
  for (int g : t.vertex_genus) vertices.push_back({{"genus", g}});
  json edges = json::array();
  for (const auto& [a, b] : t.edges) edges.push_back({std::min(a, b), std::max(a, b)});
  json markings = json::object();
  for (std::size_t i = 0; i < t.marking_vertex.size(); ++i) {
    if (t.marking_vertex[i]) markings[std::to_string(i + 1)] = *t.marking_vertex[i];
  }
  json clusters = json::array();
  for (const auto& part : t.clusters) {
    json classes = json::array();
    for (Subset c : part) classes.push_back(subset_to_json(c));
    clusters.push_back(classes);
  }
  json out = {{"schema", "stable-tree/1"},
              {"vertices", vertices},
              {"edges", edges},
              {"markings", markings},
              {"clusters", clusters}};
  if (!t.node_markings.empty()) {
    json nodes = json::object();
    for (const auto& [m, e] : t.node_markings) nodes[std::to_string(m + 1)] = e;
    out["node_markings"] = nodes;
  }
  return out;
}

static StableTree stable_tree_from_json_raw(const json& j) {
  expect_schema(j, "stable-tree/1");
  StableTree t;
  for (const auto& v : j.at("vertices")) t.vertex_genus.push_back(v.at("genus").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) bad("edge must be a pair of vertex ids");
    t.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  std::size_t n = 0;
  auto label = [&](const std::string& key) {
    std::size_t pos = 0;
    const long v = std::stol(key, &pos);
    if (pos != key.size() || v < 1) bad("marking keys are 1-based labels, got '" + key + "'");
    return static_cast<std::size_t>(v);
  };
  for (const auto& [key, v] : j.at("markings").items()) n = std::max(n, label(key));
  if (j.contains("node_markings")) {
    for (const auto& [key, v] : j.at("node_markings").items()) n = std::max(n, label(key));
  }
  t.marking_vertex.assign(n, std::nullopt);
  for (const auto& [key, v] : j.at("markings").items()) t.marking_vertex[label(key) - 1] = v.get<std::size_t>();
  if (j.contains("node_markings")) {
    for (const auto& [key, v] : j.at("node_markings").items()) t.node_markings[label(key) - 1] = v.get<std::size_t>();
  }
  for (const auto& part : j.at("clusters")) {
    std::vector<Subset> classes;
    for (const auto& c : part) classes.push_back(subset_from_json(c));
    t.clusters.push_back(std::move(classes));
  }
  return t;
}

json to_json(const BoundaryDivisor& d, const WeightData& w) {
  json out = {{"kind", divisor_kind_name(d.kind)}};
  switch (d.kind) {
    case DivisorKind::kNodal:
      out["side"] = subset_to_json(d.side);
      out["side_genus"] = d.side_genus;
      out["other_genus"] = d.other_genus;
      break;
    case DivisorKind::kIrreducible:
      break;
    case DivisorKind::kCoincidence:
      out["pair"] = subset_to_json(d.pair);
      break;
  }
  out["curve"] = to_json(divisor_curve(w, d));
  out["description"] = describe(d, w.size());
  return out;
}

static BoundaryDivisor boundary_divisor_from_json_raw(const json& j) {
  BoundaryDivisor d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "nodal") {
    d.kind = DivisorKind::kNodal;
    d.side = subset_from_json(j.at("side"));
    d.side_genus = j.at("side_genus").get<int>();
    d.other_genus = j.at("other_genus").get<int>();
  } else if (kind == "irreducible") {
    d.kind = DivisorKind::kIrreducible;
  } else if (kind == "coincidence") {
    d.kind = DivisorKind::kCoincidence;
    d.pair = subset_from_json(j.at("pair"));
  } else {
    bad("unknown divisor kind '" + kind + "'");
  }
  return d;
}

json to_json(const LinearSystem& sys) {
  json constraints = json::array();
  for (const auto& c : sys.constraints()) {
    constraints.push_back({{"coefficients", rationals_to_json(c.coefficients)},
                           {"relation", relation_symbol(c.relation)},
                           {"bound", c.bound.str()}});
  }
  return {{"schema", "linear-system/1"}, {"variables", sys.variables()}, {"constraints", constraints}};
}

static LinearSystem linear_system_from_json_raw(const json& j) {
  expect_schema(j, "linear-system/1");
  LinearSystem sys(j.at("variables").get<std::size_t>());
  for (const auto& c : j.at("constraints")) {
    const std::string rel = c.at("relation").get<std::string>();
    auto coeffs = rationals_from_json(c.at("coefficients"));
    const Rational bound = rational_from(c.at("bound"));
    if (rel == "<=") {
      sys.add(std::move(coeffs), Relation::kLessEqual, bound);
    } else if (rel == "<") {
      sys.add(std::move(coeffs), Relation::kLess, bound);
    } else if (rel == "=") {
      sys.add(std::move(coeffs), Relation::kEqual, bound);
    } else if (rel == ">=") {
      sys.add_greater_equal(std::move(coeffs), bound);
    } else if (rel == ">") {
      sys.add_greater(std::move(coeffs), bound);
    } else {
      bad("unknown relation '" + rel + "'");
    }
  }
  return sys;
}

json to_json(const AutDescription& d) {
  json gens = json::array();
  for (const auto& g : d.finite.generators) gens.push_back(permutation_to_json(g));
  json orbits = json::array();
  for (const auto& o : d.finite.orbits) {
    json labels = json::array();
    for (std::size_t x : o) labels.push_back(x + 1);
    orbits.push_back(labels);
  }
  return {{"schema", "aut-description/1"},
          {"torus_rank", d.torus_rank},
          {"degree", d.finite.degree},
          {"finite_order", order_to_json(d.finite.order)},
          {"finite_generators", gens},
          {"orbits", orbits},
          {"label", d.label},
          {"special", d.special == SpecialLabel::kNone ? json(nullptr) : json(special_label_name(d.special))},
          {"stack_note", d.stack_note ? json(*d.stack_note) : json(nullptr)},
          {"provenance", d.provenance}};
}

static AutDescription aut_description_from_json_raw(const json& j) {
  expect_schema(j, "aut-description/1");
  AutDescription d;
  d.torus_rank = j.at("torus_rank").get<int>();
  std::vector<Permutation> gens;
  for (const auto& g : j.at("finite_generators")) gens.push_back(permutation_from_json(g));
  d.finite = generate_group(gens, j.at("degree").get<std::size_t>());
  const json& order = j.at("finite_order");
  const mpz_class stated(order.is_string() ? order.get<std::string>() : std::to_string(order.get<long>()));
  if (stated != d.finite.order) bad("finite_order does not match the generators");
  d.label = j.at("label").get<std::string>();
  const json& special = j.at("special");
  d.special = SpecialLabel::kNone;
  if (!special.is_null()) {
    const std::string s = special.get<std::string>();
    for (auto k : {SpecialLabel::kPGL2, SpecialLabel::kTorusOnly, SpecialLabel::kTrivial}) {
      if (special_label_name(k) == s) d.special = k;
    }
    if (d.special == SpecialLabel::kNone) bad("unknown special label '" + s + "'");
  }
  if (!j.at("stack_note").is_null()) d.stack_note = j.at("stack_note").get<std::string>();
  d.provenance = j.at("provenance").get<std::string>();
  return d;
}

json to_json(const BlowupSchedule& s) {
  json steps = json::array();
  for (const auto& step : s.steps) {
    json centers = json::array();
    for (const auto& c : step.centers) {
      centers.push_back({{"points", c.points}, {"dimension", c.dimension}, {"locus", c.locus}});
    }
    steps.push_back({{"step", step.index}, {"description", step.description}, {"centers", centers}});
  }
  return {{"schema", "blowup-schedule/1"},
          {"construction", construction_name(s.construction)},
          {"n", s.n},
          {"ambient", s.ambient},
          {"steps", steps}};
}

static BlowupSchedule blowup_schedule_from_json_raw(const json& j) {
  expect_schema(j, "blowup-schedule/1");
  BlowupSchedule s;
  s.construction = parse_construction(j.at("construction").get<std::string>());
  s.n = j.at("n").get<int>();
  s.ambient = j.at("ambient").get<std::string>();
  for (const auto& step : j.at("steps")) {
    BlowupStep out{step.at("step").get<int>(), step.at("description").get<std::string>(), {}};
    for (const auto& c : step.at("centers")) {
      out.centers.push_back(
          {c.at("points").get<std::vector<int>>(), c.at("dimension").get<int>(), c.at("locus").get<std::string>()});
    }
    s.steps.push_back(std::move(out));
  }
  return s;
}

json to_json(const Classification& c) {
  json slots = json::array();
  for (std::size_t s : c.slots) slots.push_back(s + 1);
  return {{"family", format_family(c.family)}, {"slots", slots}};
}

json to_json(const KeelChainReport& r) {
  json checks = json::array();
  for (const auto& c : r.reductions) {
    json heavy = json::array();
    for (std::size_t s : c.heavy_slots) heavy.push_back(s + 1);
    checks.push_back({{"h", c.h},
                      {"passed", c.passed},
                      {"mode", c.mode == EquivalenceMode::kFine ? "fine" : "coarse"},
                      {"source", to_json(c.source)},
                      {"target", c.target ? to_json(*c.target) : json(nullptr)},
                      {"witness", c.witness ? to_json(*c.witness) : json(nullptr)},
                      {"heavy_slots", heavy}});
  }
  json out = {{"n", r.n},
              {"reductions", checks},
              {"second_phase_empty", r.second_phase_empty},
              {"notes", r.notes},
              {"passed", r.passed}};
  out["y_first_second_phase_is_a22"] =
      r.y_first_second_phase_is_a22 ? json(*r.y_first_second_phase_is_a22) : json(nullptr);
  out["a22_witness"] = r.a22_witness ? to_json(*r.a22_witness) : json(nullptr);
  return out;
}

json error_object(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}


// Library errors surface as std::invalid_argument, whatever the JSON layer throws.
template <class F>
auto guarded(F f, const json& j) -> decltype(f(j)) {
  try {
    return f(j);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

std::vector<Rational> rationals_from_json(const json& j) { return guarded(rationals_from_json_raw, j); }
Subset subset_from_json(const json& j) { return guarded(subset_from_json_raw, j); }
WeightData weight_data_from_json(const json& j) { return guarded(weight_data_from_json_raw, j); }
StableTree stable_tree_from_json(const json& j) { return guarded(stable_tree_from_json_raw, j); }
BoundaryDivisor boundary_divisor_from_json(const json& j) { return guarded(boundary_divisor_from_json_raw, j); }
LinearSystem linear_system_from_json(const json& j) { return guarded(linear_system_from_json_raw, j); }
AutDescription aut_description_from_json(const json& j) { return guarded(aut_description_from_json_raw, j); }
BlowupSchedule blowup_schedule_from_json(const json& j) { return guarded(blowup_schedule_from_json_raw, j); }

}  // namespace hassett::json_io
