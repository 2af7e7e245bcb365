#pragma once

// JSON and CSV forms. Matrices: {"n": int, "entries": [[[w,x,y,z], ...], ...]}
// row-major. Doubles are written in shortest round-trip form, so
// parse(emit(A)) == A bit for bit.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspec/berberian.hpp"
#include "qspec/commutator.hpp"
#include "qspec/error.hpp"
#include "qspec/matrix.hpp"
#include "qspec/sspec.hpp"

namespace qspec {

using Json = nlohmann::ordered_json;

namespace detail {

inline double json_number(const Json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " is not a number");
  return v.get<double>();
}

}  // namespace detail

inline Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

inline Quaternion quaternion_from_json(const Json& v) {
  if (!v.is_array() || v.size() != 4) throw ParseError("quaternion must be an array of four numbers");
  return {detail::json_number(v[0], "w"), detail::json_number(v[1], "x"), detail::json_number(v[2], "y"),
          detail::json_number(v[3], "z")};
}

inline Json matrix_to_json(const QMatrix& a) {
  if (!a.square()) throw DimensionError("matrix file format holds square matrices only");
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["n"] = a.rows();
  out["entries"] = std::move(rows);
  return out;
}

inline QMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
  if (!j.contains("n") || !j.contains("entries")) throw ParseError("matrix document needs \"n\" and \"entries\"");
  const Json& nv = j["n"];
  if (!nv.is_number_integer() || nv.get<long long>() < 0) throw ParseError("\"n\" must be a non-negative integer");
  const auto n = static_cast<std::size_t>(nv.get<long long>());
  if (n == 0) throw DimensionError("empty matrix");
  const Json& rows = j["entries"];
  if (!rows.is_array()) throw ParseError("\"entries\" must be an array of rows");
  if (rows.size() != n) throw DimensionError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()));
  QMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array()) throw ParseError("row " + std::to_string(r) + " is not an array");
    if (rows[r].size() != n)
      throw DimensionError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) a(r, c) = quaternion_from_json(rows[r][c]);
  }
  return a;
}

inline QMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline QMatrix parse_matrix_file(const std::string& path) { return parse_matrix(read_file(path)); }

inline std::string emit_matrix(const QMatrix& a) { return matrix_to_json(a).dump(); }

/// "w,x,y,z".
inline Quaternion parse_quaternion(const std::string& text) {
  std::vector<std::string> fields(1);
  for (char ch : text) {
    if (ch == ',') fields.emplace_back();
    else fields.back() += ch;
  }
  if (fields.size() != 4) throw ParseError("quaternion '" + text + "' needs four comma-separated numbers");
  double v[4];
  for (int k = 0; k < 4; ++k) {
    try {
      std::size_t used = 0;
      v[k] = std::stod(fields[k], &used);
      if (used != fields[k].size() || !std::isfinite(v[k])) throw std::invalid_argument(fields[k]);
    } catch (const std::exception&) {
      throw ParseError("bad quaternion component '" + fields[k] + "'");
    }
  }
  return {v[0], v[1], v[2], v[3]};
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- reports ----------------------------------------------------------------

inline Json sphere_json(const SpectralSphere& s, const char* cls = nullptr) {
  Json o;
  o["re"] = s.a;
  o["im"] = s.r;
  o["mult"] = s.mult;
  if (cls) o["class"] = cls;
  return o;
}

inline Json spectrum_json(const SpectrumReport& rep) {
  Json sph = Json::array();
  for (std::size_t k = 0; k < rep.spheres.size(); ++k)
    sph.push_back(sphere_json(rep.spheres[k], to_string(k < rep.classes.size() ? rep.classes[k] : SpectralClass::point)));
  Json out;
  out["spheres"] = std::move(sph);
  out["tol"] = rep.tol;
  return out;
}

inline std::string spectrum_csv(const SpectrumReport& rep) {
  std::string out = "re,im,mult\n";
  for (const auto& s : rep.spheres)
    out += format_double(s.a) + "," + format_double(s.r) + "," + std::to_string(s.mult) + "\n";
  return out;
}

inline Json check_json(const CheckReport& rep) {
  Json w = Json::array();
  for (const auto& s : rep.witnesses) w.push_back(sphere_json(s));
  Json u = Json::array();
  for (const auto& b : rep.uncovered) u.push_back(Json{{"re", b.a}, {"im_min", b.rmin}, {"im_max", b.rmax}});
  Json sp = Json::array();
  for (const auto& s : rep.spectrum) sp.push_back(sphere_json(s));
  Json out;
  out["inclusion"] = rep.inclusion;
  out["endpoint"] = rep.endpoint;
  out["equality"] = rep.equality;
  out["witnesses"] = std::move(w);
  out["uncovered_bands"] = std::move(u);
  out["spectrum"] = std::move(sp);
  out["tol"] = rep.tol;
  return out;
}

inline Json cop1_json(const Cop1Report& rep) {
  Json w = Json::array();
  for (const auto& s : rep.witnesses) w.push_back(sphere_json(s));
  Json sp = Json::array();
  for (const auto& s : rep.spectrum) sp.push_back(sphere_json(s));
  Json out;
  out["commuting"] = rep.commuting;
  out["inclusion"] = rep.inclusion;
  out["apo"] = rep.apo;
  out["sus"] = rep.sus;
  out["witnesses"] = std::move(w);
  out["spectrum"] = std::move(sp);
  out["tol"] = rep.tol;
  return out;
}

inline Json cert_json(const CertReport& rep) {
  Json table = Json::array();
  for (const auto& d : rep.decay_table) table.push_back(Json::array({d.n, d.value}));
  Json sections = Json::array();
  for (const auto& d : rep.section_margins) sections.push_back(Json::array({d.n, d.value}));
  Json out;
  out["q"] = to_json(rep.q);
  out["decay_table"] = std::move(table);
  out["glim"] = rep.glim;
  out["verdict"] = rep.verdict;
  out["route"] = rep.route;
  out["min_section_margin"] = rep.min_section_margin;
  out["section_margins"] = std::move(sections);
  return out;
}

inline std::string decay_csv(const CertReport& rep) {
  std::string out = "n,norm\n";
  for (const auto& d : rep.decay_table) out += std::to_string(d.n) + "," + format_double(d.value) + "\n";
  return out;
}

}  // namespace qspec
