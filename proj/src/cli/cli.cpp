#include "attainrisk/cli/cli.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "attainrisk/errors.hpp"

namespace attainrisk::cli {
namespace {

using io::Json;

void check_atoms(const SpacePtr& space, const AnalysisRequest& request) {
  if (space->size() > request.max_atoms) {
    throw PreconditionError("input has " + std::to_string(space->size()) +
                            " atoms, above --max-atoms " + std::to_string(request.max_atoms));
  }
}

RandomVariable point_on(const SpacePtr& space, const AnalysisRequest& request) {
  if (!request.point) throw ValidationError(request.command + " requires --point");
  RationalVector values;
  try {
    values = io::parse_csv(*request.point);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("--point: ") + e.what());
  }
  if (values.size() != space->size()) {
    throw ValidationError("--point has " + std::to_string(values.size()) + " entries, input has " +
                          std::to_string(space->size()) + " atoms");
  }
  return RandomVariable(space, std::move(values));
}

const char* mode_name(ExtensionMode mode) {
  return mode == ExtensionMode::kFull ? "full" : "monotone";
}

Json optional_json(const std::optional<RandomVariable>& v) {
  return v ? io::to_json(*v) : Json(nullptr);
}

Json extremum_json(const Extremum& e) {
  return Json{{"value", io::to_json(e.value)}, {"measure", io::to_json(e.measure)}};
}

AbsolutelyConvexBody load_body(const AnalysisRequest& r) {
  auto body = io::body_from_json(io::load_file(r.input));
  check_atoms(body.space(), r);
  return body;
}

PolyhedralRiskFunction load_risk(const AnalysisRequest& r, const Json& doc) {
  auto phi = io::risk_from_json(doc);
  check_atoms(phi.space(), r);
  return phi;
}

MarketTree load_market(const AnalysisRequest& r) {
  auto tree = io::market_from_json(io::load_file(r.input));
  check_atoms(tree.space(), r);
  return tree;
}

void require_viable(const MarketTree& tree) {
  if (!viability(tree).viable) {
    throw PreconditionError("market is not viable: no equivalent martingale measure exists");
  }
}

Json set_gauge(const AnalysisRequest& r) {
  const auto body = load_body(r);
  const auto f = point_on(body.space(), r);
  const auto rep = gauge_representation(body, f);
  const auto value = gauge(body, f);
  return Json{{"point", io::to_json(f)},
              {"gauge", io::to_json(value)},
              {"member", value <= ExtendedValue(Rational(1))},
              {"representation", rep ? io::to_json(*rep) : Json(nullptr)}};
}

Json set_polar(const AnalysisRequest& r) {
  const auto body = load_body(r);
  const auto g = point_on(body.space(), r);
  const auto value = polar_gauge(body, g);
  return Json{{"point", io::to_json(g)}, {"polar_gauge", io::to_json(value)}, {"in_polar", value <= 1}};
}

Json set_solid_hull(const AnalysisRequest& r) {
  const auto body = load_body(r);
  const auto f = point_on(body.space(), r);
  const auto out = solid_hull_member(body, f);
  return Json{{"point", io::to_json(f)}, {"member", out.member}, {"witness", optional_json(out.witness)}};
}

Json set_solid_check(const AnalysisRequest& r) {
  const auto body = load_body(r);
  const auto out = solid_check(body);
  return Json{{"solid", out.solid}, {"counterexample", optional_json(out.counterexample)}};
}

Json risk_eval(const AnalysisRequest& r) {
  const auto phi = load_risk(r, io::load_file(r.input));
  const auto f = point_on(phi.space(), r);
  return Json{{"point", io::to_json(f)}, {"value", io::to_json(evaluate(phi, f))}};
}

Json risk_conjugate(const AnalysisRequest& r) {
  const auto phi = load_risk(r, io::load_file(r.input));
  const auto g = point_on(phi.space(), r);
  return Json{{"point", io::to_json(g)}, {"value", io::to_json(conjugate(phi, g))}};
}

Json risk_extend(const AnalysisRequest& r) {
  const auto phi = load_risk(r, io::load_file(r.input));
  const auto f = point_on(phi.space(), r);
  return Json{{"point", io::to_json(f)},
              {"mode", mode_name(r.mode)},
              {"value", io::to_json(extend(phi, f, r.mode))}};
}

// The input file carries, next to the risk function, a sequence prefix, its
// limit and the gauge bound the sequence must respect.
Json risk_fatou(const AnalysisRequest& r) {
  const auto doc = io::load_file(r.input);
  const auto phi = load_risk(r, doc);
  for (const char* key : {"sequence", "limit", "bound"}) {
    if (!doc.contains(key)) throw ValidationError(std::string("risk-fatou input needs \"") + key + "\"");
  }
  if (!doc["sequence"].is_array()) throw ValidationError("sequence: expected an array");
  std::vector<RandomVariable> sequence;
  for (std::size_t k = 0; k < doc["sequence"].size(); ++k) {
    sequence.push_back(
        io::variable_from_json(phi.space(), doc["sequence"][k], "sequence[" + std::to_string(k) + "]"));
  }
  const auto limit = io::variable_from_json(phi.space(), doc["limit"], "limit");
  const auto bound = io::rational_from_json(doc["bound"], "bound");
  const auto mode = r.mode;
  const Evaluator psi = [&phi, mode](const RandomVariable& f) { return extend(phi, f, mode); };
  const auto out = fatou_probe(psi, phi.body(), sequence, limit, bound);
  return Json{{"mode", mode_name(mode)},
              {"passed", out.passed},
              {"limit_value", io::to_json(out.limit_value)},
              {"tail_minimum", io::to_json(out.tail_minimum)},
              {"secant_limit", out.secant_limit ? io::to_json(*out.secant_limit) : Json(nullptr)}};
}

Json market_emm(const AnalysisRequest& r) {
  const auto tree = load_market(r);
  const auto set = emm_set(tree);
  const auto v = viability(tree);
  return Json{{"atoms", tree.space()->labels()},
              {"viable", v.viable},
              {"margin", v.margin ? io::to_json(*v.margin) : Json(nullptr)},
              {"measure", v.maximizer ? io::to_json(*v.maximizer) : Json(nullptr)},
              {"dimension", set.affine_dimension()}};
}

Json market_complete(const AnalysisRequest& r) {
  const auto tree = load_market(r);
  const auto v = viability(tree);
  if (!v.viable) throw PreconditionError("market is not viable: no equivalent martingale measure exists");
  const auto dimension = emm_set(tree).affine_dimension();
  const bool complete = dimension == 0;
  return Json{{"atoms", tree.space()->labels()},
              {"complete", complete},
              {"emm_dimension", dimension},
              {"unique_emm", complete ? io::to_json(*v.maximizer) : Json(nullptr)}};
}

Json market_witness(const AnalysisRequest& r) {
  const auto tree = load_market(r);
  require_viable(tree);
  const auto w = nonsolidity_witness(tree);
  if (!w) return Json{{"complete", true}, {"witness", nullptr}};
  Json event = Json::array();
  for (auto atom : w->event) event.push_back(tree.space()->labels()[atom]);
  return Json{{"complete", false},
              {"witness", Json{{"event", std::move(event)},
                               {"indicator", io::to_json(w->indicator)},
                               {"lower", extremum_json(w->lower)},
                               {"upper", extremum_json(w->upper)}}}};
}

Json market_attainable(const AnalysisRequest& r) {
  const auto tree = load_market(r);
  const auto xi = point_on(tree.space(), r);
  require_viable(tree);
  const auto out = attainable(tree, xi);
  Json replication = nullptr;
  if (out.replication) {
    Json holdings = Json::object();
    for (auto v : tree.internal_nodes()) {
      holdings[tree.nodes()[v].id] = io::to_json(out.replication->holdings[v]);
    }
    replication = Json{{"initial", io::to_json(out.replication->initial)}, {"holdings", std::move(holdings)}};
  }
  return Json{{"claim", io::to_json(xi)},
              {"attainable", out.attainable},
              {"lower", io::to_json(out.lower)},
              {"upper", io::to_json(out.upper)},
              {"replication", std::move(replication)}};
}

Json market_ball(const AnalysisRequest& r) {
  const auto tree = load_market(r);
  require_viable(tree);
  const auto ball = attainable_ball(tree);
  Json basis = Json::array();
  for (const auto& b : ball.span.basis()) basis.push_back(io::to_json(b));
  Json generators = Json::array();
  for (const auto& g : ball.body.generators()) generators.push_back(io::to_json(g));
  return Json{{"dimension", ball.span.dimension()},
              {"span_basis", std::move(basis)},
              {"generators", std::move(generators)}};
}

using Handler = std::function<Json(const AnalysisRequest&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"set-gauge", set_gauge},
      {"set-polar", set_polar},
      {"set-solid-hull", set_solid_hull},
      {"set-solid-check", set_solid_check},
      {"risk-eval", risk_eval},
      {"risk-conjugate", risk_conjugate},
      {"risk-extend", risk_extend},
      {"risk-fatou", risk_fatou},
      {"market-emm", market_emm},
      {"market-complete", market_complete},
      {"market-witness", market_witness},
      {"market-attainable", market_attainable},
      {"market-ball", market_ball},
  };
  return table;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render(value, path.empty() ? key : path + "." + key, out);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
    if (flat) {
      out << path << ": (";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar_text(j[i]);
      out << ")\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << path << ": " << scalar_text(j) << "\n";
}

Json error_report(const std::string& command, const char* status, const std::string& message) {
  return Json{{"command", command}, {"status", status}, {"error", message}};
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, handler] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

Json run(const AnalysisRequest& request) {
  const auto it = handlers().find(request.command);
  if (it == handlers().end()) throw ValidationError("unknown command \"" + request.command + "\"");
  return Json{{"command", request.command}, {"status", "ok"}, {"result", it->second(request)}};
}

std::string render_human(const Json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of absolutely convex bodies, polyhedral risk functions and finite markets",
               "attainrisk"};
  AnalysisRequest request;
  std::string mode = "full";
  std::string format = "human";
  app.add_option("command", request.command, "Analysis to run")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--input", request.input, "JSON input file")->required();
  app.add_option("--point", request.point, "Comma separated rationals, e.g. \"1/2,0,-1\"");
  app.add_option("--mode", mode, "Extension mode")->check(CLI::IsMember({"full", "monotone"}));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--max-atoms", request.max_atoms, "Reject inputs with more atoms than this")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }
  request.mode = mode == "monotone" ? ExtensionMode::kMonotone : ExtensionMode::kFull;
  request.format = format == "json" ? Format::kJson : Format::kHuman;

  auto emit = [&](const Json& report) {
    if (request.format == Format::kJson) {
      out << report.dump(2) << "\n";
    } else {
      out << render_human(report);
    }
  };
  auto fail = [&](int code, const char* status, const std::exception& e) {
    err << "error (" << status << "): " << e.what() << "\n";
    if (request.format == Format::kJson) emit(error_report(request.command, status, e.what()));
    return code;
  };
  try {
    emit(run(request));
    return kExitOk;
  } catch (const IoError& e) {
    return fail(kExitIo, "io_error", e);
  } catch (const ValidationError& e) {
    return fail(kExitValidation, "validation_error", e);
  } catch (const PreconditionError& e) {
    return fail(kExitPrecondition, "precondition_failed", e);
  }
}

}  // namespace attainrisk::cli
