#include "attainrisk/io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "attainrisk/errors.hpp"

namespace attainrisk::io {
namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const auto& a = field(j, key, where);
  if (!a.is_array()) throw ValidationError(where + "." + key + ": expected an array");
  return a;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read input file \"" + path.string() + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading \"" + path.string() + "\"");
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError("\"" + path.string() + "\" is not valid JSON: " + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(trim(j.get<std::string>()));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
  }
  throw ValidationError(where + ": rationals must be \"p/q\" strings or integers, got " + j.dump());
}

RationalVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of rationals");
  RationalVector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

RationalVector parse_csv(std::string_view text) {
  RationalVector out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SpacePtr space_from_json(const Json& j) {
  const auto& atoms = array_field(j, "atoms", "space");
  std::vector<std::string> labels;
  for (const auto& a : atoms) {
    if (!a.is_string()) throw ValidationError("space.atoms: atom labels must be strings");
    labels.push_back(a.get<std::string>());
  }
  return FiniteProbabilitySpace::create(std::move(labels),
                                        vector_from_json(array_field(j, "weights", "space"),
                                                         "space.weights"));
}

RandomVariable variable_from_json(const SpacePtr& space, const Json& j, const std::string& where) {
  auto values = vector_from_json(j, where);
  if (values.size() != space->size()) {
    throw ValidationError(where + ": has " + std::to_string(values.size()) + " entries, space has " +
                          std::to_string(space->size()) + " atoms");
  }
  return RandomVariable(space, std::move(values));
}

namespace {

lp::Relation relation_from_json(const Json& j, const std::string& where) {
  if (j == "<=") return lp::Relation::kLessEqual;
  if (j == ">=") return lp::Relation::kGreaterEqual;
  if (j == "=") return lp::Relation::kEqual;
  throw ValidationError(where + ": expected \"<=\", \">=\" or \"=\"");
}

// Without an explicit space, the first row fixes the atom count (uniform weights).
SpacePtr body_space(const Json& j, const Json& rows, const char* key) {
  if (j.contains("space")) return space_from_json(j["space"]);
  const Json& first = rows.empty() ? Json() : (rows[0].is_object() ? rows[0].value("coefficients", Json()) : rows[0]);
  if (!first.is_array()) {
    throw ValidationError(std::string("body: without a space the first entry of ") + key + " fixes the atom count");
  }
  return FiniteProbabilitySpace::uniform(first.size());
}

AbsolutelyConvexBody halfspace_body_from_json(const Json& j) {
  const auto& list = array_field(j, "halfspaces", "body");
  const auto space = body_space(j, list, "halfspaces");
  std::vector<lp::Constraint> rows;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto where = "body.halfspaces[" + std::to_string(k) + "]";
    auto coefficients = vector_from_json(array_field(list[k], "coefficients", where), where + ".coefficients");
    if (coefficients.size() != space->size()) {
      throw ValidationError(where + ".coefficients: expected " + std::to_string(space->size()) + " entries");
    }
    rows.push_back({std::move(coefficients), relation_from_json(field(list[k], "relation", where), where + ".relation"),
                    rational_from_json(field(list[k], "rhs", where), where + ".rhs")});
  }
  return body_from_halfspaces(space, std::move(rows));
}

}  // namespace

AbsolutelyConvexBody body_from_json(const Json& j) {
  if (j.is_object() && j.contains("halfspaces") && !j.contains("generators")) return halfspace_body_from_json(j);
  const auto& gens = array_field(j, "generators", "body");
  const auto space = body_space(j, gens, "generators");
  std::vector<RandomVariable> generators;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    generators.push_back(variable_from_json(space, gens[k], "body.generators[" + std::to_string(k) + "]"));
  }
  return AbsolutelyConvexBody(space, std::move(generators));
}

PolyhedralRiskFunction risk_from_json(const Json& j) {
  auto body = std::make_shared<const AbsolutelyConvexBody>(body_from_json(field(j, "body", "risk")));
  const auto& list = array_field(j, "scenarios", "risk");
  std::vector<Scenario> scenarios;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto where = "risk.scenarios[" + std::to_string(k) + "]";
    scenarios.push_back({variable_from_json(body->space(), field(list[k], "g", where), where + ".g"),
                         rational_from_json(field(list[k], "alpha", where), where + ".alpha")});
  }
  return PolyhedralRiskFunction(std::move(body), std::move(scenarios));
}

MarketTree market_from_json(const Json& j) {
  const auto& list = array_field(j, "nodes", "market");
  std::vector<MarketNode> nodes;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto where = "market.nodes[" + std::to_string(k) + "]";
    const auto& entry = list[k];
    MarketNode node;
    const auto& id = field(entry, "id", where);
    if (!id.is_string()) throw ValidationError(where + ".id: expected a string");
    node.id = id.get<std::string>();
    if (entry.contains("parent") && !entry["parent"].is_null()) {
      if (!entry["parent"].is_string()) throw ValidationError(where + ".parent: expected a string or null");
      node.parent = entry["parent"].get<std::string>();
    }
    const auto& time = field(entry, "time", where);
    if (!time.is_number_integer()) throw ValidationError(where + ".time: expected an integer");
    node.time = time.get<int>();
    node.prices = vector_from_json(array_field(entry, "prices", where), where + ".prices");
    nodes.push_back(std::move(node));
  }
  const auto& weights = field(j, "leaf_weights", "market");
  if (!weights.is_object()) throw ValidationError("market.leaf_weights: expected an object");
  std::map<std::string, Rational> leaf_weights;
  for (const auto& [id, w] : weights.items()) {
    leaf_weights.emplace(id, rational_from_json(w, "market.leaf_weights." + id));
  }
  return MarketTree(std::move(nodes), leaf_weights);
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const ExtendedValue& v) { return to_string(v); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const RandomVariable& v) { return to_json(v.values()); }

Json to_json(const Measure& m) { return to_json(m.weights()); }

Json to_json(const FiniteProbabilitySpace& space) {
  return Json{{"atoms", space.labels()}, {"weights", to_json(space.weights())}};
}

Json to_json(const AbsolutelyConvexBody& body) {
  Json gens = Json::array();
  for (const auto& g : body.generators()) gens.push_back(to_json(g));
  return Json{{"space", to_json(*body.space())}, {"generators", std::move(gens)}};
}

Json to_json(const PolyhedralRiskFunction& phi) {
  Json scenarios = Json::array();
  for (const auto& s : phi.scenarios()) {
    scenarios.push_back(Json{{"g", to_json(s.density)}, {"alpha", to_json(s.penalty)}});
  }
  return Json{{"body", to_json(phi.body())}, {"scenarios", std::move(scenarios)}};
}

Json to_json(const MarketTree& tree) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) {
    nodes.push_back(Json{{"id", n.id},
                         {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
                         {"time", n.time},
                         {"prices", to_json(n.prices)}});
  }
  Json weights = Json::object();
  for (std::size_t atom = 0; atom < tree.leaves().size(); ++atom) {
    weights[tree.nodes()[tree.leaves()[atom]].id] = to_string(tree.space()->weight(atom));
  }
  return Json{{"nodes", std::move(nodes)}, {"leaf_weights", std::move(weights)}};
}

}  // namespace attainrisk::io
