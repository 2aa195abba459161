#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "attainrisk/core/probability_space.hpp"
#include "attainrisk/extended_value.hpp"
#include "attainrisk/geometry/convex_body.hpp"
#include "attainrisk/market/market_tree.hpp"
#include "attainrisk/rational.hpp"
#include "attainrisk/risk/risk_function.hpp"

namespace attainrisk::io {

using Json = nlohmann::json;

// Reads and parses a JSON document. IoError if the file cannot be read,
// ValidationError if it is not JSON.
Json load_file(const std::filesystem::path& path);

// Schema errors raise ValidationError with the offending path in the message.
Rational rational_from_json(const Json& j, const std::string& where = "value");
RationalVector vector_from_json(const Json& j, const std::string& where = "vector");
// Comma separated rationals, e.g. "1/2, -3, 0".
RationalVector parse_csv(std::string_view text);

SpacePtr space_from_json(const Json& j);
RandomVariable variable_from_json(const SpacePtr& space, const Json& j,
                                  const std::string& where = "vector");
// {"space": {...}, "generators": [[...], ...]}. A missing space means the
// uniform space on as many atoms as the first generator has entries.
AbsolutelyConvexBody body_from_json(const Json& j);
PolyhedralRiskFunction risk_from_json(const Json& j);
MarketTree market_from_json(const Json& j);

Json to_json(const Rational& r);
Json to_json(const ExtendedValue& v);
Json to_json(const RationalVector& v);
Json to_json(const RandomVariable& v);
Json to_json(const Measure& m);
Json to_json(const FiniteProbabilitySpace& space);
Json to_json(const AbsolutelyConvexBody& body);
Json to_json(const PolyhedralRiskFunction& phi);
Json to_json(const MarketTree& tree);

}  // namespace attainrisk::io
