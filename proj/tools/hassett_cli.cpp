// hassett: command-line front end to the weighted stable curve engine.
//
// Exit status: 0 success, 1 domain error or NotCovered (JSON error object on
// stdout), 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hassett/autgroup.hpp"
#include "hassett/constructions.hpp"
#include "hassett/errors.hpp"
#include "hassett/json_io.hpp"
#include "hassett/strata.hpp"
#include "hassett/weights.hpp"

using namespace hassett;
using json_io::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain failure that still carries a structured result.
struct Refusal {
  std::string kind;
  std::string message;
  json extra;
};

struct Options {
  int genus = 0;
  std::string weights;
  bool weights_given = false;  // --weights "" means n = 0
  std::string input;
  std::string format = "json";
  std::string mode = "fine";
  std::string method = "auto";
  bool strict_atrans = false;
  bool distinct_atrans = false;
  // verb specific
  std::string from, to, family, construction;
  int i = 0, j = 0, n = 0;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

WeightData weights_from_file(const std::string& path) {
  try {
    return json_io::weight_data_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

WeightData input_weights(const Options& o) {
  if (!o.input.empty()) return weights_from_file(o.input);
  if (!o.weights_given) throw UsageError("give --weights or --input");
  try {
    return {o.genus, parse_weight_list(o.weights)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--weights: ") + e.what());
  }
}

EquivalenceMode mode_of(const Options& o) {
  return o.mode == "coarse" ? EquivalenceMode::kCoarse : EquivalenceMode::kFine;
}

AtransReading reading_of(const Options& o) {
  return o.distinct_atrans ? AtransReading::kDistinct : AtransReading::kStrict;
}

json walls_json(const WeightData& w) {
  json out = json::array();
  if (w.size() <= kMaxEnumeratedMarkings) {
    for (Subset s : wall_sets(w)) out.push_back(json_io::subset_to_json(s));
  }
  return out;
}

std::string join_subsets(const json& sets) {
  std::string out;
  for (const auto& s : sets) {
    if (!out.empty()) out += " ";
    out += "{";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + s[k].dump();
    out += "}";
  }
  return out.empty() ? "(none)" : out;
}

// Each verb returns its JSON result plus a text rendering.
struct Output {
  json data;
  std::string text;
};

Output run_validate(const Options& o) {
  const WeightData w = input_weights(o);
  const auto report = validate(w);
  json data = {{"ok", report.ok}, {"violations", report.violations}, {"weights", json_io::to_json(w)}};
  std::string text = report.ok ? "ok\n" : "invalid\n";
  for (const auto& v : report.violations) text += "  " + v + "\n";
  if (report.ok) {
    data["walls"] = walls_json(w);
    if (!data["walls"].empty()) text += "  weight sum exactly 1 on: " + join_subsets(data["walls"]) + "\n";
  } else {
    throw Refusal{"InvalidWeights", report.violations.front(), data};
  }
  return {data, text};
}

Output run_signature(const Options& o) {
  const WeightData w = input_weights(o);
  require_valid(w);
  const auto sig = chamber_signature(w);
  json sets = json::array();
  for (Subset s : sig.small_sets) sets.push_back(json_io::subset_to_json(s));
  json data = {{"n", sig.n}, {"small_sets", sets}, {"walls", walls_json(w)}};
  std::string text = "n = " + std::to_string(sig.n) + ", " + std::to_string(sets.size()) + " small sets\n  " +
                     join_subsets(sets) + "\n";
  if (!data["walls"].empty()) text += "  weight sum exactly 1 on: " + join_subsets(data["walls"]) + "\n";
  return {data, text};
}

Output run_divisors(const Options& o) {
  const WeightData w = input_weights(o);
  const auto divisors = enumerate_boundary_divisors(w);
  json list = json::array();
  std::map<std::string, int> counts = {{"nodal", 0}, {"irreducible", 0}, {"coincidence", 0}};
  std::string text;
  for (const auto& d : divisors) {
    list.push_back(json_io::to_json(d, w));
    ++counts[divisor_kind_name(d.kind)];
    text += "  " + describe(d, w.size()) + "\n";
  }
  text = std::to_string(counts["nodal"]) + " nodal, " + std::to_string(counts["irreducible"]) + " irreducible, " +
         std::to_string(counts["coincidence"]) + " coincidence\n" + text;
  return {{{"divisors", list}, {"counts", counts}}, text};
}

Output run_contract(const Options& o) {
  if (o.from.empty() || o.to.empty()) throw UsageError("contract needs --from and --to");
  const WeightData a = weights_from_file(o.from);
  const WeightData b = weights_from_file(o.to);
  const auto census = reduction_census(a, b);
  auto list = [&](const std::vector<BoundaryDivisor>& ds) {
    json out = json::array();
    for (const auto& d : ds) out.push_back(json_io::to_json(d, a));
    return out;
  };
  json data = {{"contracted", list(census.contracted)},
               {"to_coincidence", list(census.to_coincidence)},
               {"surviving", census.surviving.size()}};
  std::string text = std::to_string(census.contracted.size()) + " contracted divisor(s)\n";
  for (const auto& d : census.contracted) text += "  collapsed side " + format_subset(d.side) + "\n";
  text += std::to_string(census.to_coincidence.size()) + " become coincidence loci, " +
          std::to_string(census.surviving.size()) + " survive\n";
  return {data, text};
}

Output run_admissible(const Options& o) {
  const WeightData w = input_weights(o);
  require_valid(w);
  const auto reading = reading_of(o);
  json data = {{"reading", o.distinct_atrans ? "distinct" : "strict"}};
  std::string text;
  if (o.i != 0 || o.j != 0) {
    if (o.i < 1 || o.j < 1) throw UsageError("--i and --j are 1-based marking labels");
    const auto r = is_admissible(w, static_cast<std::size_t>(o.i - 1), static_cast<std::size_t>(o.j - 1), reading);
    data["i"] = o.i;
    data["j"] = o.j;
    data["admissible"] = r.admissible;
    data["witness"] = r.witness ? json_io::subset_to_json(*r.witness) : json(nullptr);
    text = std::to_string(o.i) + "<->" + std::to_string(o.j) + (r.admissible ? " admissible\n" : " not admissible");
    if (r.witness) text += ", separated by T = " + format_subset(*r.witness) + "\n";
  } else {
    json gens = json::array();
    for (const auto& g : admissible_generators(w, reading)) {
      json pair = json::array();
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (g[k] != k) pair.push_back(k + 1);
      }
      gens.push_back(pair);
      text += "  " + cycle_string(g) + "\n";
    }
    data["transpositions"] = gens;
    text = std::to_string(gens.size()) + " admissible transposition(s)\n" + text;
  }
  return {data, text};
}

Output run_aut(const Options& o) {
  const WeightData w = input_weights(o);
  const AutResult r = aut_group(w, reading_of(o));
  if (const auto* nc = std::get_if<NotCovered>(&r)) {
    throw Refusal{"NotCovered", nc->reason, {{"detail", nc->detail}}};
  }
  const auto& d = std::get<AutDescription>(r);
  std::string text = d.label + "\n  torus rank " + std::to_string(d.torus_rank) + ", finite order " +
                     d.finite.order.get_str() + "\n";
  for (const auto& g : d.finite.generators) text += "  generator " + cycle_string(g) + "\n";
  if (d.stack_note) text += "  " + *d.stack_note + "\n";
  text += "  by: " + d.provenance + "\n";
  return {json_io::to_json(d), text};
}

Output run_classify(const Options& o) {
  const WeightData w = input_weights(o);
  require_valid(w);
  const auto all = classify_all(w, mode_of(o));
  json list = json::array();
  for (const auto& c : all) list.push_back(json_io::to_json(c));
  json data = {{"classification", all.empty() ? json(nullptr) : list.front()}, {"all", list}, {"mode", o.mode}};
  std::string text;
  if (all.empty()) text = "no family\n";
  for (const auto& c : all) text += format_family(c.family) + "  slots " + json_io::to_json(c)["slots"].dump() + "\n";
  return {data, text};
}

Output run_factors(const Options& o) {
  const WeightData w = input_weights(o);
  const auto r = factors_kapranov(w);
  json data = {{"factors", r.factors},
               {"heavy_slot", r.heavy_slot ? json(*r.heavy_slot + 1) : json(nullptr)},
               {"source", r.source ? json_io::to_json(*r.source) : json(nullptr)},
               {"witness", r.witness ? json_io::to_json(*r.witness) : json(nullptr)}};
  std::string text = r.factors ? "factors Kapranov" : "does not factor Kapranov";
  if (r.heavy_slot) text += " (weight-one slot " + std::to_string(*r.heavy_slot + 1) + ")";
  return {data, text + "\n"};
}

Output run_schedule(const Options& o) {
  Construction c;
  try {
    c = parse_construction(o.construction);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto s = blowup_schedule(c, o.n);
  std::string text = construction_name(c) + " on " + s.ambient + "\n";
  for (const auto& step : s.steps) {
    const std::size_t count = step.centers.size();
    text += "  step " + std::to_string(step.index) + ": " + step.description + " (" + std::to_string(count) +
            (count == 1 ? " center)\n" : " centers)\n");
    for (const auto& ctr : step.centers) {
      text += "    " + ctr.locus + "  points " + format_subset(subset_from_labels(ctr.points)) + "  dim " +
              std::to_string(ctr.dimension) + "\n";
    }
  }
  return {json_io::to_json(s), text};
}

Output run_verify_keel(const Options& o) {
  const auto r = verify_keel_chain(o.n);
  std::string text = "n = " + std::to_string(r.n) + ": " + (r.passed ? "pass" : "FAIL") + "\n";
  for (const auto& c : r.reductions) {
    text += "  Y_" + std::to_string(c.h) + " -> A_{2,1}: " + (c.passed ? "pass" : "fail");
    if (c.witness) text += " via " + format_weights(*c.witness);
    text += "\n";
  }
  if (r.y_first_second_phase_is_a22) {
    text += std::string("  Y_{n-3} realized by A_{2,2}: ") + (*r.y_first_second_phase_is_a22 ? "yes" : "no") + "\n";
  }
  for (const auto& note : r.notes) text += "  " + note + "\n";
  return {json_io::to_json(r), text};
}

Output run_feasible(const Options& o) {
  LinearSystem sys;
  json data;
  if (!o.family.empty()) {
    FamilyParams p;
    try {
      p = parse_family(o.family);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    sys = family_conditions(p);
    data["family"] = format_family(p);
  } else if (!o.input.empty()) {
    try {
      sys = json_io::linear_system_from_json(read_json_file(o.input));
    } catch (const json::exception& e) {
      throw UsageError("'" + o.input + "': " + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError("'" + o.input + "': " + e.what());
    }
  } else {
    throw UsageError("feasible needs --family or --input");
  }
  const FeasibilityMethod method = o.method == "fm"        ? FeasibilityMethod::kFourierMotzkin
                                  : o.method == "simplex" ? FeasibilityMethod::kSimplex
                                                          : FeasibilityMethod::kAuto;
  const auto r = solve_feasibility(sys, method);
  data["feasible"] = r.feasible;
  data["constraints"] = sys.constraints().size();
  data["witness"] = r.feasible ? json_io::rationals_to_json(r.witness) : json(nullptr);
  std::string text = r.feasible ? "feasible: " + data["witness"].dump() + "\n" : "infeasible\n";
  return {data, text};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for Hassett weighted stable curve moduli"};
  app.require_subcommand(1);
  Options o;

  auto weight_flags = [&](CLI::App* sub) {
    sub->add_option("--genus", o.genus, "Genus g (default 0)");
    sub->add_option_function<std::string>(
        "--weights",
        [&](const std::string& v) {
          o.weights = v;
          o.weights_given = true;
        },
        "Comma-separated weights, e.g. 1/3,1/3,2/3,1 (empty for no markings)");
    sub->add_option("--input", o.input, "Weight data JSON file");
  };
  auto atrans_flags = [&](CLI::App* sub) {
    auto* strict = sub->add_flag("--strict-atrans", o.strict_atrans,
                                 "Auxiliary indices range over all markings, i and j included (default)");
    sub->add_flag("--distinct-atrans", o.distinct_atrans, "Auxiliary indices exclude i and j")->excludes(strict);
  };
  std::map<CLI::App*, std::function<Output(const Options&)>> verbs;
  auto verb = [&](const std::string& name, const std::string& help, std::function<Output(const Options&)> f) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    verbs[sub] = std::move(f);
    return sub;
  };

  weight_flags(verb("validate", "Check the weight-data invariants", run_validate));
  weight_flags(verb("signature", "List subsets of size >= 2 with weight sum <= 1", run_signature));
  weight_flags(verb("divisors", "Enumerate boundary divisors", run_divisors));
  {
    auto* sub = verb("contract", "Divisors contracted by a reduction morphism", run_contract);
    sub->add_option("--from", o.from, "Source weight data JSON")->required();
    sub->add_option("--to", o.to, "Target weight data JSON")->required();
  }
  {
    auto* sub = verb("admissible", "Admissible transpositions", run_admissible);
    weight_flags(sub);
    sub->add_option("--i", o.i, "First marking (1-based)");
    sub->add_option("--j", o.j, "Second marking (1-based)");
    atrans_flags(sub);
  }
  {
    auto* sub = verb("aut", "Automorphism group of the coarse moduli space", run_aut);
    weight_flags(sub);
    atrans_flags(sub);
  }
  {
    auto* sub = verb("classify", "Match genus-0 weights against the blow-up families", run_classify);
    weight_flags(sub);
    sub->add_option("--mode", o.mode, "fine or coarse")->check(CLI::IsMember({"fine", "coarse"}));
  }
  weight_flags(verb("factors-kapranov", "Does the space sit between M_0,n and P^{n-3}", run_factors));
  {
    auto* sub = verb("schedule", "Blow-up centers of a construction", run_schedule);
    sub->add_option("--construction", o.construction, "kblu, kblusym or con2")->required();
    sub->add_option("--n", o.n, "Number of markings")->required();
  }
  {
    auto* sub = verb("verify-l1", "Check that every Y_h[n] reduces to A_{2,1}[n]", run_verify_keel);
    sub->add_option("--n", o.n, "Number of markings")->required();
  }
  {
    auto* sub = verb("feasible", "Exact feasibility of a linear system", run_feasible);
    sub->add_option("--family", o.family, "kapranov:r=R,s=S,n=N | sym:k=K,n=N | keel:h=H,n=N");
    sub->add_option("--input", o.input, "linear-system/1 JSON file");
    sub->add_option("--method", o.method, "auto (elimination, simplex past a row budget), fm or simplex")
        ->check(CLI::IsMember({"auto", "fm", "simplex"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const bool text = o.format == "text";
  try {
    const Output out = verbs.at(chosen)(o);
    if (text) {
      std::cout << out.text;
    } else {
      std::cout << out.data.dump(2) << "\n";
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Refusal& r) {
    json err = json_io::error_object(r.kind, r.message);
    if (!r.extra.is_null()) {
      for (const auto& [k, v] : r.extra.items()) err["error"][k] = v;
    }
    if (text) {
      std::cout << r.kind << ": " << r.message << "\n";
      if (r.extra.contains("detail")) std::cout << "  " << r.extra["detail"].get<std::string>() << "\n";
    } else {
      std::cout << err.dump(2) << "\n";
    }
    return 1;
  } catch (const DomainError& e) {
    if (text) {
      std::cout << "DomainError: " << e.what() << "\n";
    } else {
      std::cout << json_io::error_object("DomainError", e.what()).dump(2) << "\n";
    }
    return 1;
  }
}
