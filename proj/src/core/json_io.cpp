#include "fnx/core/json_io.hpp"

#include <fstream>

#include "fnx/core/errors.hpp"

namespace fnx {

Json to_json(const Rational& q) {
  if (is_integer(q) && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(to_string(q));
}

Json to_json(const RatVector& v) {
  Json arr = Json::array();
  for (const auto& q : v) arr.push_back(to_json(q));
  return arr;
}

Json to_json(const Matrix& m) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(to_json(m.row(i)));
  return arr;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix, got " + j.dump());
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix");
  return Matrix::from_rows(rows);
}

FewnomialSystem system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("support") || !j.contains("coeffs"))
    throw ParseError("system JSON needs keys n, support, coeffs");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw ParseError("n must be a positive integer");
  FewnomialSystem sys;
  sys.n = static_cast<int>(j["n"].get<long long>());
  sys.support.n = sys.n;
  for (const auto& p : j["support"]) {
    RatVector v = vector_from_json(p);
    if (static_cast<int>(v.size()) != sys.n) throw ParseError("support point of wrong dimension");
    sys.support.points.push_back(std::move(v));
  }
  sys.coeffs = matrix_from_json(j["coeffs"]);
  if (static_cast<int>(sys.coeffs.rows()) != sys.n) throw ParseError("coeffs must have n rows");
  if (sys.coeffs.cols() != sys.support.size()) throw ParseError("coeffs row length must equal support size");
  return sys;
}

Json system_to_json(const FewnomialSystem& sys) {
  Json j;
  j["n"] = sys.n;
  Json pts = Json::array();
  for (const auto& p : sys.support.points) pts.push_back(to_json(p));
  j["support"] = pts;
  j["coeffs"] = to_json(sys.coeffs);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

FewnomialSystem read_system_file(const std::string& path) { return system_from_json(read_json_file(path)); }

}  // namespace fnx
