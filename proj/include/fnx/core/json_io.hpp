#pragma once

#include <string>

#include "json.hpp"

#include "fnx/core/matrix.hpp"
#include "fnx/core/support.hpp"

namespace fnx {

using Json = nlohmann::ordered_json;

// Rationals travel as integers when they fit, "p/q" strings otherwise.
Json to_json(const Rational& q);
Json to_json(const RatVector& v);
Json to_json(const Matrix& m);
Rational rational_from_json(const Json& j);
RatVector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

// {"n":int,"support":[[rat,...],...],"coeffs":[[rat,...],...]}
FewnomialSystem system_from_json(const Json& j);
Json system_to_json(const FewnomialSystem& sys);
// Throws ParseError for unreadable files or malformed content.
Json read_json_file(const std::string& path);
FewnomialSystem read_system_file(const std::string& path);

}  // namespace fnx
