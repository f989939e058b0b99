#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "ksmooth/extremal.hpp"
#include "ksmooth/operator.hpp"
#include "ksmooth/space.hpp"

namespace ksmooth {

using Json = nlohmann::ordered_json;

struct ParsedSpace {
    Space space;
    std::vector<std::string> warnings;
};

struct ParsedOperator {
    Operator op;
    std::vector<std::string> warnings;
};

// Syntax errors report line and column; semantic errors name the offending
// field as a JSON pointer.
ParsedSpace parse_space(std::string_view text);
ParsedSpace parse_space_json(const Json& doc, const std::string& where = "");
ParsedOperator parse_operator(std::string_view text);
ParsedOperator parse_operator_json(const Json& doc);
ParsedSpace load_space(const std::string& path);
ParsedOperator load_operator(const std::string& path);

// "a/b,c/d,..." into a vector.
Vec parse_point(std::string_view text);

Json vector_json(std::span<const Rational> v);
Json scalar_json(const Scalar& s);
Json space_json(const Space& space);
Json operator_json(const Operator& t);

Json attainment_json(const NormAttainment& att);
Json smoothness_json(const SmoothnessReport& report);
Json support_face_json(const SupportFace& face);
Json extreme_json(const ExtremeCriterion& c);

// Indented "key: value" rendering of a report object.
std::string render_text(const Json& report);
std::string render(const Json& report, bool as_json);

}  // namespace ksmooth
