#pragma once
/** @file json_io.hpp
 *  JSON reading and writing for quivers, automorphisms, species,
 *  representations and Hall elements. Unknown fields are rejected.
 */

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quiverbench/hall.hpp"
#include "quiverbench/representations.hpp"
#include "quiverbench/species.hpp"

namespace qb::io {

using nlohmann::json;

/// Reads a JSON document from a file, or standard input for "-".
inline json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Parse, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline void expect_keys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                        const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Parse, where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!required.count(k) && !optional.count(k)) fail(ErrorKind::Parse, where + ": unknown field \"" + k + "\"");
  for (const auto& k : required)
    if (!j.contains(k)) fail(ErrorKind::Parse, where + ": missing field \"" + k + "\"");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::Parse, where + ": field \"" + key + "\" has the wrong type");
  }
}

inline const json& array_at(const json& j, const std::string& key, const std::string& where) {
  if (!j.at(key).is_array()) fail(ErrorKind::Parse, where + ": field \"" + key + "\" must be an array");
  return j.at(key);
}

// Quivers

/// Relative quivers carry dij/dji on arrows; without arrows, vertices lacking
/// "d" decide.
inline bool is_relative(const json& j) {
  if (!j.is_object() || !j.contains("arrows") || !j["arrows"].is_array()) return false;
  for (const auto& a : j["arrows"])
    if (a.is_object() && (a.contains("dij") || a.contains("dji"))) return true;
  if (!j["arrows"].empty() || !j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty()) return false;
  for (const auto& v : j["vertices"])
    if (!v.is_object() || v.contains("d")) return false;
  return true;
}

inline AbsValuedQuiver abs_quiver_from_json(const json& j) {
  expect_keys(j, {"vertices", "arrows"}, {}, "quiver");
  std::vector<std::string> vs;
  std::map<std::string, std::int64_t> d, m;
  std::vector<Arrow> as;
  for (const auto& v : array_at(j, "vertices", "quiver")) {
    expect_keys(v, {"id", "d"}, {}, "vertex");
    const auto id = get<std::string>(v, "id", "vertex");
    vs.push_back(id);
    d[id] = get<std::int64_t>(v, "d", "vertex " + id);
  }
  for (const auto& a : array_at(j, "arrows", "quiver")) {
    expect_keys(a, {"id", "tail", "head", "m"}, {}, "arrow");
    const auto id = get<std::string>(a, "id", "arrow");
    as.push_back(Arrow{id, get<std::string>(a, "tail", "arrow " + id), get<std::string>(a, "head", "arrow " + id)});
    m[id] = get<std::int64_t>(a, "m", "arrow " + id);
  }
  AbsValuedQuiver g{Quiver::make(vs, as), {}, {}};
  for (const auto& v : g.quiver.vertices) g.d.push_back(d[v]);
  for (const auto& a : g.quiver.arrows) g.m.push_back(m[a.id]);
  return g;
}

inline RelValuedQuiver rel_quiver_from_json(const json& j) {
  expect_keys(j, {"vertices", "arrows"}, {}, "quiver");
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> val;
  for (const auto& v : array_at(j, "vertices", "quiver")) {
    expect_keys(v, {"id"}, {}, "vertex");
    vs.push_back(get<std::string>(v, "id", "vertex"));
  }
  for (const auto& a : array_at(j, "arrows", "quiver")) {
    expect_keys(a, {"id", "tail", "head", "dij", "dji"}, {}, "arrow");
    const auto id = get<std::string>(a, "id", "arrow");
    as.push_back(Arrow{id, get<std::string>(a, "tail", "arrow " + id), get<std::string>(a, "head", "arrow " + id)});
    val[id] = {get<std::int64_t>(a, "dij", "arrow " + id), get<std::int64_t>(a, "dji", "arrow " + id)};
  }
  RelValuedQuiver r{Quiver::make(vs, as), {}};
  for (const auto& a : r.quiver.arrows) r.dval.push_back(val[a.id]);
  return r;
}

inline json to_json(const AbsValuedQuiver& g) {
  json vs = json::array(), as = json::array();
  for (std::size_t i = 0; i < g.quiver.vertices.size(); ++i) vs.push_back({{"id", g.quiver.vertices[i]}, {"d", g.d[i]}});
  for (std::size_t k = 0; k < g.quiver.arrows.size(); ++k) {
    const auto& a = g.quiver.arrows[k];
    as.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"m", g.m[k]}});
  }
  return {{"vertices", vs}, {"arrows", as}};
}

inline json to_json(const RelValuedQuiver& r) {
  json vs = json::array(), as = json::array();
  for (const auto& v : r.quiver.vertices) vs.push_back({{"id", v}});
  for (std::size_t k = 0; k < r.quiver.arrows.size(); ++k) {
    const auto& a = r.quiver.arrows[k];
    as.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"dij", r.dval[k].first}, {"dji", r.dval[k].second}});
  }
  return {{"vertices", vs}, {"arrows", as}};
}

inline json to_json(const Quiver& q) { return to_json(trivially_valued(q)); }

inline QuiverAutomorphism automorphism_from_json(const json& j) {
  expect_keys(j, {"vertex_map", "arrow_map"}, {}, "automorphism");
  QuiverAutomorphism s;
  s.vertex_map = get<std::map<std::string, std::string>>(j, "vertex_map", "automorphism");
  s.arrow_map = get<std::map<std::string, std::string>>(j, "arrow_map", "automorphism");
  return s;
}

inline json to_json(const QuiverAutomorphism& s) { return {{"vertex_map", s.vertex_map}, {"arrow_map", s.arrow_map}}; }

// Species

inline FqSpecies species_from_json(const json& j) {
  expect_keys(j, {"vertices", "arrows", "base"}, {}, "species");
  const auto& base = j.at("base");
  expect_keys(base, {"p", "e"}, {}, "base");
  FqSpecies s;
  s.p = get<unsigned>(base, "p", "base");
  s.e = get<unsigned>(base, "e", "base");
  json plain = {{"vertices", j.at("vertices")}, {"arrows", json::array()}};
  std::map<std::string, std::vector<Bimodule>> sums;
  for (const auto& a : array_at(j, "arrows", "species")) {
    if (!a.is_object()) fail(ErrorKind::Parse, "arrow must be an object");
    const auto id = get<std::string>(a, "id", "arrow");
    const std::string where = "arrow " + id;
    std::vector<Bimodule> list;
    if (a.contains("summands")) {
      expect_keys(a, {"id", "tail", "head", "summands"}, {}, where);
      for (const auto& b : array_at(a, "summands", where)) {
        expect_keys(b, {"m", "ltwist", "rtwist"}, {}, where + " summand");
        list.push_back(Bimodule{get<std::int64_t>(b, "m", where), get<std::int64_t>(b, "ltwist", where),
                                get<std::int64_t>(b, "rtwist", where)});
      }
    } else {
      expect_keys(a, {"id", "tail", "head", "m", "ltwist", "rtwist"}, {}, where);
      list.push_back(Bimodule{get<std::int64_t>(a, "m", where), get<std::int64_t>(a, "ltwist", where),
                              get<std::int64_t>(a, "rtwist", where)});
    }
    std::int64_t total = 0;
    for (const auto& b : list) total += b.m;
    plain["arrows"].push_back({{"id", id}, {"tail", a.at("tail")}, {"head", a.at("head")}, {"m", total}});
    sums[id] = list;
  }
  s.shape = abs_quiver_from_json(plain);
  for (const auto& a : s.shape.quiver.arrows) s.summands.push_back(sums[a.id]);
  return s;
}

inline json to_json(const FqSpecies& s) {
  json out = to_json(s.shape);
  out["base"] = {{"p", s.p}, {"e", s.e}};
  for (std::size_t k = 0; k < s.summands.size(); ++k) {
    auto& a = out["arrows"][k];
    if (s.summands[k].size() == 1) {
      a["ltwist"] = s.summands[k][0].ltwist;
      a["rtwist"] = s.summands[k][0].rtwist;
    } else {
      a.erase("m");
      json list = json::array();
      for (const auto& b : s.summands[k]) list.push_back({{"m", b.m}, {"ltwist", b.ltwist}, {"rtwist", b.rtwist}});
      a["summands"] = list;
    }
  }
  return out;
}

/// A species file, or a plain valued quiver made untwisted over GF(q).
inline FqSpecies species_or_quiver_from_json(const json& j, std::uint64_t q) {
  if (j.is_object() && j.contains("base")) return species_from_json(j);
  const auto [p, e] = prime_power(q);
  return untwisted_species(abs_quiver_from_json(j), p, e);
}

// Field elements and representations

inline json elem_to_json(const Field& K, Elem x) {
  json c = json::array();
  for (unsigned k = 0; k < K.degree(); ++k) c.push_back(K.digit(x, k));
  return c;
}

inline Elem elem_from_json(const Field& K, const json& j) {
  if (j.is_number_unsigned()) {
    if (K.degree() != 1 || j.get<std::uint64_t>() >= K.p()) fail(ErrorKind::Parse, "field element out of range");
    return j.get<Elem>();
  }
  if (!j.is_array() || j.size() > K.degree()) fail(ErrorKind::Parse, "field element must be a coefficient array");
  std::vector<unsigned> c;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<unsigned>() >= K.p()) fail(ErrorKind::Parse, "bad field coefficient");
    c.push_back(x.get<unsigned>());
  }
  c.resize(K.degree(), 0);
  Elem code = 0;
  for (std::size_t k = c.size(); k-- > 0;) code = code * K.p() + c[k];
  return code;
}

inline Representation representation_from_json(const SpeciesRef& ctx, const json& j) {
  expect_keys(j, {"dims", "matrices"}, {}, "representation");
  const auto& q = ctx->quiver();
  std::vector<std::size_t> dims(q.vertices.size(), 0);
  const auto& jd = j.at("dims");
  if (!jd.is_object()) fail(ErrorKind::Parse, "dims must map vertex ids to dimensions");
  for (const auto& [v, n] : jd.items()) {
    if (!n.is_number_unsigned()) fail(ErrorKind::Parse, "dimension of " + v + " must be a natural number");
    auto i = q.find_vertex(v);
    if (!i) fail(ErrorKind::Parse, "unknown vertex " + v);
    dims[*i] = n.get<std::size_t>();
  }
  Representation rep = zero_representation(ctx, dims);
  const auto& jm = j.at("matrices");
  if (!jm.is_object()) fail(ErrorKind::Parse, "matrices must map arrow labels to matrices");
  std::set<std::string> seen;
  const auto& chans = ctx->channels();
  for (const auto& [label, mat] : jm.items()) {
    std::size_t k = 0;
    while (k < chans.size() && chans[k].label != label) ++k;
    if (k == chans.size()) fail(ErrorKind::Parse, "unknown arrow " + label);
    seen.insert(label);
    const auto& K = *ctx->field(chans[k].head);
    auto& M = rep.maps[k];
    if (!mat.is_array() || mat.size() != M.rows) fail(ErrorKind::IndexMismatch, "matrix " + label + " has the wrong row count");
    for (std::size_t r = 0; r < M.rows; ++r) {
      if (!mat[r].is_array() || mat[r].size() != M.cols)
        fail(ErrorKind::IndexMismatch, "matrix " + label + " has the wrong column count");
      for (std::size_t c = 0; c < M.cols; ++c) M(r, c) = elem_from_json(K, mat[r][c]);
    }
  }
  for (const auto& c : chans)
    if (!seen.count(c.label) && !rep.maps[&c - chans.data()].a.empty())
      fail(ErrorKind::Parse, "missing matrix for " + c.label);
  return rep;
}

inline json to_json(const Representation& v) {
  json dims = json::object(), mats = json::object();
  const auto& q = v.ctx->quiver();
  for (std::size_t i = 0; i < v.dims.size(); ++i) dims[q.vertices[i]] = v.dims[i];
  const auto& chans = v.ctx->channels();
  for (std::size_t k = 0; k < chans.size(); ++k) {
    const auto& K = *v.ctx->field(chans[k].head);
    json rows = json::array();
    for (std::size_t r = 0; r < v.maps[k].rows; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < v.maps[k].cols; ++c) row.push_back(elem_to_json(K, v.maps[k](r, c)));
      rows.push_back(row);
    }
    mats[chans[k].label] = rows;
  }
  return {{"dims", dims}, {"matrices", mats}};
}

// Hall algebra

inline std::string rational_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "malformed rational " + s);
  }
}

inline json to_json(const HallScalar& x) { return {{"a", rational_str(x.a)}, {"b", rational_str(x.b)}}; }

inline json to_json(const HallElement& x) {
  json terms = json::array();
  for (const auto& [l, c] : x) {
    json t = to_json(c);
    t["class"] = l.str();
    terms.push_back(t);
  }
  return {{"terms", terms}};
}

inline json to_json(const HallTensor& x) {
  json terms = json::array();
  for (const auto& [l, c] : x) {
    json t = to_json(c);
    t["left"] = l.first.str();
    t["right"] = l.second.str();
    terms.push_back(t);
  }
  return {{"terms", terms}};
}

inline HallElement hall_element_from_json(const json& j, std::int64_t q) {
  expect_keys(j, {"terms"}, {}, "Hall element");
  HallElement x;
  for (const auto& t : array_at(j, "terms", "Hall element")) {
    expect_keys(t, {"class", "a", "b"}, {}, "term");
    add_term(x, IsoClassLabel::parse(get<std::string>(t, "class", "term")),
             HallScalar{rational_from(get<std::string>(t, "a", "term")), rational_from(get<std::string>(t, "b", "term")), q});
  }
  return x;
}

inline json to_json(const DimVector& x) { return json(std::vector<std::int64_t>(x.begin(), x.end())); }

}  // namespace qb::io
