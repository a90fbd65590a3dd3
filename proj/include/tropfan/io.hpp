#pragma once

#include <tropfan/matroid.hpp>
#include <tropfan/weighted_fan.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tropfan {

using Json = nlohmann::json;

namespace detail {

inline Integer json_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw InputError(where + ": expected an integer");
}

inline std::size_t json_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Rational json_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(json_integer(j, where));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find('/') == std::string::npos) return Rational(json_integer(j, where));
    Rational q;
    if (s.find_first_not_of("-0123456789/") != std::string::npos ||
        q.set_str(s, 10) != 0)
      throw InputError(where + ": expected an integer or a fraction \"a/b\"");
    if (q.get_den() == 0) throw InputError(where + ": zero denominator");
    q.canonicalize();
    return q;
  }
  throw InputError(where + ": expected an integer or a fraction \"a/b\"");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw InputError(std::string("field '") + key + "' must be an array");
  return a;
}

inline IndexSet json_index_set(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of indices");
  IndexSet s;
  for (std::size_t i = 0; i < j.size(); ++i) s.push_back(json_index(j[i], where + "[" + std::to_string(i) + "]"));
  return s;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Json rational_json(const Rational& q) {
  if (q.get_den() == 1) return integer_json(q.get_num());
  return Json(q.get_str());
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file '" + path + "'");
  out << text;
}

/// One key per line, keys sorted, values compact. Numbers are integers only.
inline std::string canonical_dump(const Json& j) {
  if (!j.is_object() || j.empty()) return j.dump() + "\n";
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    out += (first ? "" : ",\n");
    out += "  " + Json(key).dump() + ": " + value.dump();
    first = false;
  }
  return out + "\n}\n";
}

/// Parses a fan document. `ring_override`, when given, replaces the ring
/// stored in the document.
inline WeightedFan parse_fan(const std::string& text, const std::optional<RingTag>& ring_override = std::nullopt) {
  const Json j = detail::parse_json(text);
  if (!j.is_object()) throw InputError("fan document must be a JSON object");
  const std::size_t n = detail::json_index(detail::field(j, "ambient_rank"), "ambient_rank");

  std::vector<IntVector> rays;
  const Json& jr = detail::array_field(j, "rays");
  for (std::size_t r = 0; r < jr.size(); ++r) {
    const std::string where = "rays[" + std::to_string(r) + "]";
    if (!jr[r].is_array()) throw InputError(where + ": expected an array");
    IntVector v;
    for (std::size_t i = 0; i < jr[r].size(); ++i)
      v.push_back(detail::json_integer(jr[r][i], where + "[" + std::to_string(i) + "]"));
    rays.push_back(std::move(v));
  }

  std::vector<IndexSet> cones;
  const Json& jc = detail::array_field(j, "maximal_cones");
  for (std::size_t c = 0; c < jc.size(); ++c)
    cones.push_back(detail::json_index_set(jc[c], "maximal_cones[" + std::to_string(c) + "]"));

  std::optional<ExplicitFaces> ex;
  if (j.contains("faces")) {
    ExplicitFaces e;
    const Json& jf = detail::array_field(j, "faces");
    for (std::size_t f = 0; f < jf.size(); ++f)
      e.faces.push_back(detail::json_index_set(jf[f], "faces[" + std::to_string(f) + "]"));
    if (j.contains("covers")) {
      std::vector<std::pair<std::size_t, std::size_t>> cov;
      const Json& jv = detail::array_field(j, "covers");
      for (std::size_t k = 0; k < jv.size(); ++k) {
        const IndexSet pr = detail::json_index_set(jv[k], "covers[" + std::to_string(k) + "]");
        if (pr.size() != 2) throw InputError("covers[" + std::to_string(k) + "]: expected a pair");
        cov.emplace_back(pr[0], pr[1]);
      }
      e.covers = std::move(cov);
    }
    ex = std::move(e);
  } else if (j.contains("covers")) {
    throw InputError("'covers' given without 'faces'");
  }

  RingTag ring = RingTag::integers();
  if (j.contains("ring")) {
    if (!j.at("ring").is_string()) throw InputError("ring: expected a string");
    ring = RingTag::parse(j.at("ring").get<std::string>());
  }
  if (ring_override) ring = *ring_override;

  std::vector<Rational> weights(cones.size(), Rational(1));
  if (j.contains("weights")) {
    weights.clear();
    const Json& jw = detail::array_field(j, "weights");
    for (std::size_t w = 0; w < jw.size(); ++w) {
      const std::string where = "weights[" + std::to_string(w) + "]";
      Rational q = detail::json_rational(jw[w], where);
      if (q.get_den() != 1 && ring.kind() != RingTag::Kind::rationals)
        throw InputError(where + ": rational weights need ring Q");
      weights.push_back(q);
    }
  }

  Fan fan = Fan::build(n, std::move(rays), std::move(cones), ex);
  return WeightedFan(std::move(fan), ring, weights);
}

inline WeightedFan parse_fan_file(const std::string& path, const std::optional<RingTag>& ring_override = std::nullopt) {
  try {
    return parse_fan(read_file(path), ring_override);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Json fan_to_json(const WeightedFan& wf) {
  const Fan& fan = wf.fan();
  Json j;
  j["ambient_rank"] = fan.ambient_rank();
  Json rays = Json::array();
  for (const auto& r : fan.rays()) {
    Json v = Json::array();
    for (const auto& x : r) v.push_back(detail::integer_json(x));
    rays.push_back(v);
  }
  j["rays"] = rays;
  Json cones = Json::array();
  for (FaceId c : fan.input_cones()) cones.push_back(fan.face(c).rays);
  j["maximal_cones"] = cones;
  if (!fan.is_simplicial()) {
    const auto& inputs = fan.input_cones();
    Json faces = Json::array();
    for (FaceId f = 1; f < fan.size(); ++f)
      if (fan.face(f).dim >= 2 && std::find(inputs.begin(), inputs.end(), f) == inputs.end())
        faces.push_back(fan.face(f).rays);
    j["faces"] = faces;
  }
  Json w = Json::array();
  for (const auto& q : wf.input_weights()) w.push_back(detail::rational_json(q));
  j["weights"] = w;
  j["ring"] = wf.ring().to_string();
  return j;
}

inline std::string serialize_fan(const WeightedFan& wf) { return canonical_dump(fan_to_json(wf)); }

inline Matroid parse_matroid(const std::string& text) {
  const Json j = detail::parse_json(text);
  if (!j.is_object()) throw InputError("matroid document must be a JSON object");
  const std::size_t n = detail::json_index(detail::field(j, "ground_size"), "ground_size");
  std::vector<IndexSet> bases;
  const Json& jb = detail::array_field(j, "bases");
  for (std::size_t b = 0; b < jb.size(); ++b)
    bases.push_back(detail::json_index_set(jb[b], "bases[" + std::to_string(b) + "]"));
  return Matroid::from_bases(n, std::move(bases));
}

inline Matroid parse_matroid_file(const std::string& path) {
  try {
    return parse_matroid(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string serialize_matroid(const Matroid& m) {
  Json j;
  j["ground_size"] = m.ground_size();
  j["bases"] = m.bases();
  return canonical_dump(j);
}

/// A simplicial fan whose support is the geometric star of gamma: the lattice
/// of gamma is cut into orthants ±b_1, ..., ±b_k by its basis, and each
/// maximal α ⪰ γ contributes the cones orthant + (rays of α not in γ), with
/// weight w(α).
inline WeightedFan subdivided_star(const WeightedFan& wf, FaceId gamma) {
  const Fan& fan = wf.fan();
  if (!fan.is_simplicial()) throw InputError("star export requires a simplicial fan");
  const Face& g = fan.face(gamma);
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < g.dim; ++i) {
    IntVector b = g.basis.column(i), nb(b.size());
    for (std::size_t r = 0; r < b.size(); ++r) nb[r] = -b[r];
    rays.push_back(b);
    rays.push_back(nb);
  }
  std::map<std::size_t, std::size_t> renumber;
  for (FaceId a : fan.maximal_cofaces(gamma))
    for (auto r : fan.face(a).rays)
      if (!std::binary_search(g.rays.begin(), g.rays.end(), r) && !renumber.count(r)) {
        renumber[r] = 0;
      }
  for (auto& [old, idx] : renumber) {
    idx = rays.size();
    rays.push_back(fan.rays()[old]);
  }
  std::vector<IndexSet> cones;
  std::vector<Rational> weights;
  for (FaceId a : fan.maximal_cofaces(gamma))
    for (std::size_t mask = 0; mask < (std::size_t(1) << g.dim); ++mask) {
      IndexSet c;
      for (std::size_t i = 0; i < g.dim; ++i) c.push_back(2 * i + (mask >> i & 1));
      for (auto r : fan.face(a).rays)
        if (!std::binary_search(g.rays.begin(), g.rays.end(), r)) c.push_back(renumber.at(r));
      cones.push_back(std::move(c));
      weights.push_back(wf.weight(a));
    }
  return WeightedFan(Fan::build(fan.ambient_rank(), std::move(rays), std::move(cones)), wf.ring(), weights);
}

}  // namespace tropfan
