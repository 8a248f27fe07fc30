#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvar/classify.hpp"
#include "tvar/section_ring.hpp"
#include "tvar/toric.hpp"

namespace tvar {

using Json = nlohmann::ordered_json;

inline Json to_json(const Int& i) {
  if (i >= Int(std::numeric_limits<long long>::min()) && i <= Int(std::numeric_limits<long long>::max()))
    return static_cast<long long>(i);
  return to_string(i);
}

inline Json to_json(const Rat& r) { return to_string(r); }

inline Json to_json(const LatticeVec& v) {
  auto a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const RatVec& v) {
  auto a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

// ---- input documents ------------------------------------------------------

struct BaseSpec {
  std::string kind;  // P1, elliptic, abstract, affine_line, affine_space
  Rat a = 0, b = 0;  // elliptic
  unsigned genus = 0;
  bool proper = true;  // abstract
  unsigned dim = 0;    // affine_space
  friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

struct CoefficientSpec {
  PrimeDivisor point;
  std::vector<RatVec> vertices;
  std::vector<LatticeVec> extra_rays;
  friend bool operator==(const CoefficientSpec&, const CoefficientSpec&) = default;
};

struct ProblemSpec {
  std::size_t lattice_rank = 0;
  std::vector<LatticeVec> tail_rays;
  BaseSpec base;
  std::vector<CoefficientSpec> coefficients;
  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key \"") + key + "\"");
  return *it;
}

inline Int json_to_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    Int v;
    if (parse_int_token(j.get<std::string>(), v)) return v;
  }
  schema_error(where, "expected an integer");
}

inline Rat json_to_rat(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) schema_error(where, "expected a rational string \"p/q\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

inline unsigned json_to_unsigned(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    schema_error(where, "expected a nonnegative integer");
  return j.get<unsigned>();
}

inline const Json& array_field(const Json& obj, const char* key, const std::string& where) {
  const Json& a = field(obj, key, where);
  if (!a.is_array()) schema_error(where + "." + key, "expected an array");
  return a;
}

inline LatticeVec parse_ray(const Json& j, std::size_t rank, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an integer array");
  LatticeVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_to_int(j[i], where + "[" + std::to_string(i) + "]"));
  if (v.size() != rank)
    throw Error(ErrorKind::DimensionMismatch, where + ": length " + std::to_string(v.size()) + ", lattice rank " +
                                                  std::to_string(rank));
  if (is_zero(v)) throw Error(ErrorKind::Invalid, where + ": zero ray");
  return v;
}

inline PrimeDivisor parse_point(const Json& j, const BaseSpec& base, const std::string& where) {
  if (base.kind == "P1") {
    if (j.is_string() && (j == "inf" || j == "infinity")) return CurvePoint{p1_infinity()};
    return CurvePoint{p1_affine(json_to_rat(j, where))};
  }
  if (base.kind == "elliptic") {
    if (j.is_string() && j == "O") return CurvePoint{ec_identity()};
    return CurvePoint{ec_point(json_to_rat(field(j, "x", where), where + ".x"),
                               json_to_rat(field(j, "y", where), where + ".y"))};
  }
  if (base.kind == "affine_space") {
    auto i = json_to_unsigned(field(j, "hyperplane", where), where + ".hyperplane");
    return Hyperplane{i};
  }
  if (!j.is_string()) schema_error(where, "expected a point label");
  return CurvePoint{LabelPoint{j.get<std::string>()}};
}

inline Json point_to_json(const PrimeDivisor& p) {
  if (auto* h = std::get_if<Hyperplane>(&p)) return Json{{"hyperplane", h->index}};
  const auto& c = std::get<CurvePoint>(p);
  if (auto* e = std::get_if<EllipticPoint>(&c)) {
    if (e->is_identity()) return "O";
    return Json{{"x", to_string(e->at->first)}, {"y", to_string(e->at->second)}};
  }
  return to_string(c);
}

}  // namespace detail

/// Parses a problem document. Syntax and schema problems raise Parse; zero
/// rays and length mismatches raise the corresponding semantic kind.
inline ProblemSpec parse_input(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  ProblemSpec s;
  s.lattice_rank = detail::json_to_unsigned(detail::field(doc, "lattice_rank", "document"), "lattice_rank");

  const Json& rays = detail::array_field(detail::field(doc, "tail_cone", "document"), "rays", "tail_cone");
  for (std::size_t i = 0; i < rays.size(); ++i)
    s.tail_rays.push_back(detail::parse_ray(rays[i], s.lattice_rank, "tail_cone.rays[" + std::to_string(i) + "]"));

  const Json& base = detail::field(doc, "base", "document");
  const Json& kind = detail::field(base, "kind", "base");
  if (!kind.is_string()) detail::schema_error("base.kind", "expected a string");
  s.base.kind = kind.get<std::string>();
  if (s.base.kind == "elliptic") {
    s.base.a = detail::json_to_rat(detail::field(base, "a", "base"), "base.a");
    s.base.b = detail::json_to_rat(detail::field(base, "b", "base"), "base.b");
  } else if (s.base.kind == "abstract") {
    s.base.genus = detail::json_to_unsigned(detail::field(base, "genus", "base"), "base.genus");
    const Json& proper = detail::field(base, "proper", "base");
    if (!proper.is_boolean()) detail::schema_error("base.proper", "expected a boolean");
    s.base.proper = proper.get<bool>();
    if (!s.base.proper) s.base.genus = 0;
  } else if (s.base.kind == "affine_space") {
    s.base.dim = detail::json_to_unsigned(detail::field(base, "dim", "base"), "base.dim");
  } else if (s.base.kind != "P1" && s.base.kind != "affine_line") {
    detail::schema_error("base.kind", "unknown kind \"" + s.base.kind + "\"");
  }

  const Json& coeffs = detail::array_field(doc, "coefficients", "document");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string where = "coefficients[" + std::to_string(i) + "]";
    CoefficientSpec c;
    c.point = detail::parse_point(detail::field(coeffs[i], "point", where), s.base, where + ".point");
    const Json& verts = detail::array_field(coeffs[i], "vertices", where);
    if (verts.empty()) throw Error(ErrorKind::Invalid, where + ".vertices: empty");
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const std::string w = where + ".vertices[" + std::to_string(k) + "]";
      if (!verts[k].is_array()) detail::schema_error(w, "expected an array");
      RatVec v;
      for (std::size_t t = 0; t < verts[k].size(); ++t)
        v.push_back(detail::json_to_rat(verts[k][t], w + "[" + std::to_string(t) + "]"));
      if (v.size() != s.lattice_rank)
        throw Error(ErrorKind::DimensionMismatch, w + ": length " + std::to_string(v.size()));
      c.vertices.push_back(std::move(v));
    }
    if (coeffs[i].contains("extra_rays")) {
      const Json& extra = detail::array_field(coeffs[i], "extra_rays", where);
      for (std::size_t k = 0; k < extra.size(); ++k)
        c.extra_rays.push_back(
            detail::parse_ray(extra[k], s.lattice_rank, where + ".extra_rays[" + std::to_string(k) + "]"));
    }
    for (const auto& prev : s.coefficients)
      if (prev.point == c.point) throw Error(ErrorKind::Invalid, where + ": point listed twice");
    s.coefficients.push_back(std::move(c));
  }
  return s;
}

inline Json to_json(const ProblemSpec& s) {
  Json base{{"kind", s.base.kind}};
  if (s.base.kind == "elliptic") {
    base["a"] = to_string(s.base.a);
    base["b"] = to_string(s.base.b);
  } else if (s.base.kind == "abstract") {
    base["genus"] = s.base.genus;
    base["proper"] = s.base.proper;
  } else if (s.base.kind == "affine_space") {
    base["dim"] = s.base.dim;
  }
  auto rays = Json::array();
  for (const auto& r : s.tail_rays) rays.push_back(to_json(r));
  auto coeffs = Json::array();
  for (const auto& c : s.coefficients) {
    Json j{{"point", detail::point_to_json(c.point)}, {"vertices", Json::array()}};
    for (const auto& v : c.vertices) {
      auto a = Json::array();
      for (const auto& x : v) a.push_back(to_string(x));
      j["vertices"].push_back(a);
    }
    if (!c.extra_rays.empty()) {
      j["extra_rays"] = Json::array();
      for (const auto& r : c.extra_rays) j["extra_rays"].push_back(to_json(r));
    }
    coeffs.push_back(std::move(j));
  }
  return Json{{"lattice_rank", s.lattice_rank}, {"tail_cone", {{"rays", rays}}}, {"base", base}, {"coefficients", coeffs}};
}

inline std::string emit_input(const ProblemSpec& s) { return to_json(s).dump(2) + "\n"; }

/// Builds the divisor. Coefficients whose extra rays leave the tail get the
/// enlarged tail, which validate_input then reports as a tail mismatch.
inline PolyhedralDivisor to_divisor(const ProblemSpec& s) {
  Base base = [&]() -> Base {
    if (s.base.kind == "P1") return CurveModel{P1{}};
    if (s.base.kind == "elliptic") return CurveModel{make_elliptic(s.base.a, s.base.b)};
    if (s.base.kind == "abstract")
      return s.base.proper ? CurveModel{AbstractProjective{s.base.genus}} : CurveModel{AbstractAffine{}};
    if (s.base.kind == "affine_line") return CurveModel{AffineLine{}};
    return AffineSpace{s.base.dim};
  }();
  Cone tail = make_cone(s.tail_rays, s.lattice_rank);
  PolyhedralDivisor d(std::move(base), tail);
  for (const auto& c : s.coefficients) {
    Cone t = tail;
    if (std::any_of(c.extra_rays.begin(), c.extra_rays.end(), [&](const LatticeVec& r) { return !tail.contains(r); })) {
      auto rays = s.tail_rays;
      rays.insert(rays.end(), c.extra_rays.begin(), c.extra_rays.end());
      t = make_cone(std::move(rays), s.lattice_rank);
    }
    d.set(c.point, TailedPolyhedron(c.vertices, std::move(t)));
  }
  return d;
}

// ---- reports --------------------------------------------------------------

inline Json to_json(const std::vector<Violation>& vs) {
  auto a = Json::array();
  for (const auto& v : vs) a.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
  return a;
}

inline const char* to_string(ProperStatus s) {
  switch (s) {
    case ProperStatus::Proper: return "yes";
    case ProperStatus::NotProper: return "no";
    case ProperStatus::Unknown: return "unknown";
  }
  return "?";
}

inline Json to_json(const ProperVerdict& v) {
  Json j{{"verdict", to_string(v.status)}, {"reason", v.reason}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline Json to_json(const VerdictEntry& v) {
  Json j{{"verdict", to_string(v.verdict)}, {"criterion", v.criterion}, {"reason", v.reason}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

inline Json to_json(const GorensteinVerdict& v) {
  Json j = to_json(static_cast<const VerdictEntry&>(v));
  if (v.data) {
    j["m_G"] = to_json(v.data->m_G);
    j["D_G"] = to_string(v.data->D_G);
    j["integral"] = v.data->integral;
    j["principal_check"] = to_string(v.data->principal_check);
  }
  return j;
}

inline Json to_json(const EllipticVerdict& v) {
  Json j = to_json(static_cast<const VerdictEntry&>(v));
  if (v.witness_m) j["witness_m"] = to_json(*v.witness_m);
  j["minimal"] = to_string(v.minimal);
  if (v.verdict != Verdict::NotApplicable && v.bound > 0) j["bound"] = to_json(v.bound);
  return j;
}

inline Json to_json(const H1Report& r) {
  auto entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"m", to_json(e.m)}, {"h1", e.h1 ? to_json(*e.h1) : Json("unknown")}});
  return Json{{"entries", entries},
              {"total", r.total ? to_json(*r.total) : Json("unknown")},
              {"bound", to_json(r.bound)},
              {"period", to_json(r.period)},
              {"increment", to_json(r.increment)}};
}

inline Json to_json(const FloorProfile& p) {
  auto values = Json::array();
  for (std::size_t m = 0; m < p.values.size(); ++m) values.push_back({{"m", m}, {"deg", to_json(p.values[m])}});
  return Json{{"values", values}, {"period", to_json(p.period)}, {"increment", to_json(p.increment)}};
}

inline Json to_json(const ClassificationReport& r) {
  Json j = Json::object();
  if (!r.violations.empty()) {
    j["violations"] = to_json(r.violations);
    return j;
  }
  if (r.proper) j["proper"] = to_json(*r.proper);
  if (r.rational) j["rational"] = to_json(*r.rational);
  if (r.cohen_macaulay) j["cohen_macaulay"] = to_json(*r.cohen_macaulay);
  if (r.gorenstein) j["gorenstein"] = to_json(*r.gorenstein);
  if (r.elliptic) j["elliptic"] = to_json(*r.elliptic);
  if (r.h1) j["h1"] = to_json(*r.h1);
  if (!r.checks.empty()) {
    j["checks"] = Json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  return j;
}

inline Json toric_json(const Cone& c) {
  auto rays = Json::array();
  for (const auto& r : c.rays()) rays.push_back(to_json(r));
  auto diag = cone_diagnostics(c);
  Json d{{"kind", to_string(diag.kind)}};
  if (diag.kind != ConeDiagnostics::NonSimplicial) d["index"] = to_json(diag.index);
  return Json{{"ambient_rank", c.rank()}, {"rays", rays}, {"diagnostics", d}};
}

inline Json ring_json(const PolyhedralDivisor& d, const Int& max_degree) {
  auto hs = Json::array();
  for (const auto& x : hilbert_series(d, max_degree)) hs.push_back(to_json(x));
  auto gens = minimal_generators(d, max_degree);
  auto g = Json::array();
  for (const auto& x : gens.generators) g.push_back({{"degree", to_json(x.degree)}, {"basis_index", x.basis_index}});
  auto rels = Json::array();
  for (const auto& b : relations(d, max_degree)) {
    auto monos = Json::array(), vecs = Json::array(), eqs = Json::array();
    for (const auto& m : b.monomials) monos.push_back(to_json(m));
    for (const auto& r : b.relations) {
      vecs.push_back(to_json(r));
      eqs.push_back(relation_string(b.monomials, r));
    }
    rels.push_back({{"degree", to_json(b.degree)},
                    {"kernel_dim", b.kernel_dim},
                    {"monomials", monos},
                    {"relations", vecs},
                    {"equations", eqs}});
  }
  return Json{{"hilbert", hs},
              {"generators", g},
              {"generator_bound", to_json(gens.bound)},
              {"beyond_bound", gens.beyond_bound},
              {"relations", rels}};
}

/// Does any verdict in the document read "unknown"?
inline bool mentions_unknown(const Json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if ((it.key() == "verdict" || it.key() == "minimal" || it.key() == "total") && it.value() == "unknown")
        return true;
      if (mentions_unknown(it.value())) return true;
    }
  } else if (j.is_array()) {
    for (const auto& x : j)
      if (mentions_unknown(x)) return true;
  }
  return false;
}

namespace detail {

inline void render_text(const Json& j, const std::string& prefix, std::string& out) {
  const bool scalar_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return !x.is_object(); });
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !scalar_array) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace detail

enum class Format { Json, Text };

/// Deterministic serialization of a report document.
inline std::string emit_report(const Json& report, Format f) {
  if (f == Format::Json) return report.dump(2) + "\n";
  std::string out;
  detail::render_text(report, "", out);
  return out;
}

inline std::string emit_report(const ClassificationReport& r, Format f) { return emit_report(to_json(r), f); }

}  // namespace tvar
