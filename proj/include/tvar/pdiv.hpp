#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tvar/chamber_fan.hpp"
#include "tvar/curve.hpp"

namespace tvar {

/// Affine n-space; prime divisors are the coordinate hyperplanes H_1..H_n.
struct AffineSpace {
  unsigned dim = 1;
  friend bool operator==(const AffineSpace&, const AffineSpace&) = default;
};

using Base = std::variant<CurveModel, AffineSpace>;

/// Coordinate hyperplane H_index of an affine space, 1-based.
struct Hyperplane {
  unsigned index = 1;
  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

using PrimeDivisor = std::variant<CurvePoint, Hyperplane>;

inline std::string to_string(const PrimeDivisor& p) {
  if (auto* h = std::get_if<Hyperplane>(&p)) return "H" + std::to_string(h->index);
  return to_string(std::get<CurvePoint>(p));
}

inline std::string describe(const Base& b) {
  if (auto* a = std::get_if<AffineSpace>(&b)) return "affine space of dimension " + std::to_string(a->dim);
  return describe(std::get<CurveModel>(b));
}

/// Sum of polyhedral coefficients over prime divisors of the base, all with
/// the common tail cone. Coefficients equal to the tail itself are omitted.
class PolyhedralDivisor {
 public:
  PolyhedralDivisor(Base base, Cone tail) : base_(std::move(base)), tail_(std::move(tail)) {}

  const Base& base() const { return base_; }
  std::size_t rank() const { return tail_.rank(); }
  const Cone& tail() const { return tail_; }
  const std::map<PrimeDivisor, TailedPolyhedron>& coefficients() const { return coeffs_; }

  /// Curve model of the base, or nullptr for an affine space.
  const CurveModel* curve() const { return std::get_if<CurveModel>(&base_); }

  bool projective_base() const { return curve() && is_projective(*curve()); }

  /// Sets the coefficient at p; passing the tail cone removes it.
  PolyhedralDivisor& set(const PrimeDivisor& p, TailedPolyhedron delta) {
    if (delta.is_neutral() && delta.tail() == tail_)
      coeffs_.erase(p);
    else
      coeffs_.insert_or_assign(p, std::move(delta));
    return *this;
  }

  /// Convenience for rank-one data: coefficient {value} + tail.
  PolyhedralDivisor& set_point(const PrimeDivisor& p, const Rat& value) {
    return set(p, TailedPolyhedron({RatVec{value}}, tail_));
  }

  std::vector<TailedPolyhedron> polyhedra() const {
    std::vector<TailedPolyhedron> out;
    for (const auto& [p, delta] : coeffs_) out.push_back(delta);
    return out;
  }

  /// Weight cone sigma^vee.
  Cone weight_cone() const { return dual_cone(tail_); }

  /// Is the tail the ray Q>=0 in rank one?
  bool rank_one_positive() const { return rank() == 1 && tail_.rays() == std::vector<LatticeVec>{{Int(1)}}; }

 private:
  Base base_;
  Cone tail_;
  std::map<PrimeDivisor, TailedPolyhedron> coeffs_;
};

// ---- validation -----------------------------------------------------------

enum class ViolationKind {
  TailNotPointed,
  TailMismatch,
  RankMismatch,
  PointNotOnCurve,
  UnsupportedSupport,
  SingularCurve,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::TailNotPointed: return "TailNotPointed";
    case ViolationKind::TailMismatch: return "TailMismatch";
    case ViolationKind::RankMismatch: return "RankMismatch";
    case ViolationKind::PointNotOnCurve: return "PointNotOnCurve";
    case ViolationKind::UnsupportedSupport: return "UnsupportedSupport";
    case ViolationKind::SingularCurve: return "SingularCurve";
  }
  return "Violation";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

inline std::vector<Violation> validate_input(const PolyhedralDivisor& d) {
  std::vector<Violation> out;
  if (!d.tail().pointed()) out.push_back({ViolationKind::TailNotPointed, "tail cone is not pointed"});
  if (auto* c = d.curve()) {
    if (auto* e = std::get_if<EllipticQ>(c); e && 4 * e->a * e->a * e->a + 27 * e->b * e->b == 0)
      out.push_back({ViolationKind::SingularCurve, describe(*c) + " is singular"});
  }
  for (const auto& [p, delta] : d.coefficients()) {
    const std::string where = "coefficient at " + to_string(p);
    if (delta.rank() != d.rank()) {
      out.push_back({ViolationKind::RankMismatch, where + " has rank " + std::to_string(delta.rank())});
      continue;
    }
    if (!(delta.tail() == d.tail())) out.push_back({ViolationKind::TailMismatch, where + " has a different tail"});
    if (auto* c = d.curve()) {
      auto* cp = std::get_if<CurvePoint>(&p);
      if (!cp)
        out.push_back({ViolationKind::UnsupportedSupport, where + ": hyperplane on a curve base"});
      else if (!valid_point(*c, *cp))
        out.push_back({ViolationKind::PointNotOnCurve, where + " is not a point of " + describe(*c)});
    } else {
      const auto& space = std::get<AffineSpace>(d.base());
      auto* h = std::get_if<Hyperplane>(&p);
      if (!h || h->index < 1 || h->index > space.dim)
        out.push_back({ViolationKind::UnsupportedSupport,
                       where + ": only coordinate hyperplanes H1..H" + std::to_string(space.dim) + " are supported"});
    }
  }
  return out;
}

// ---- evaluation -----------------------------------------------------------

inline void require_in_weight_cone(const PolyhedralDivisor& d, const RatVec& m) {
  require_same_length(m.size(), d.rank(), "evaluate");
  for (const auto& r : d.tail().rays())
    if (dot(r, m) < 0)
      throw Error(ErrorKind::OutsideWeightCone,
                  "m = " + to_string(m) + " pairs negatively with tail ray " + to_string(r));
}

/// Coefficient h_D(m) for every listed prime divisor, zeros dropped.
inline std::map<PrimeDivisor, Rat> evaluate_coefficients(const PolyhedralDivisor& d, const RatVec& m) {
  require_in_weight_cone(d, m);
  std::map<PrimeDivisor, Rat> out;
  for (const auto& [p, delta] : d.coefficients()) {
    Rat v = support_value(delta, m);
    if (v != 0) out.emplace(p, std::move(v));
  }
  return out;
}

/// D(m) = sum_D h_D(m) D on a curve base.
inline QDivisor evaluate(const PolyhedralDivisor& d, const RatVec& m) {
  const CurveModel* c = d.curve();
  if (!c) throw Error(ErrorKind::WrongShape, "evaluate to a curve divisor needs a curve base");
  QDivisor out(*c);
  for (auto& [p, v] : evaluate_coefficients(d, m)) out.add(std::get<CurvePoint>(p), v);
  return out;
}

inline QDivisor evaluate(const PolyhedralDivisor& d, const LatticeVec& m) { return evaluate(d, to_rat(m)); }

/// deg D(m) as the sum of support values (projective base).
inline Rat degree_at(const PolyhedralDivisor& d, const RatVec& m) {
  if (!d.projective_base()) throw Error(ErrorKind::AffineCurve, "degree needs a projective curve base");
  require_in_weight_cone(d, m);
  Rat s = 0;
  for (const auto& [p, delta] : d.coefficients()) s += support_value(delta, m);
  return s;
}

/// deg D: Minkowski sum of all coefficients (the tail if there are none).
inline TailedPolyhedron deg_pdiv(const PolyhedralDivisor& d) {
  if (!d.projective_base()) throw Error(ErrorKind::AffineCurve, "deg D is undefined over " + describe(d.base()));
  TailedPolyhedron acc = TailedPolyhedron::neutral(d.tail());
  for (const auto& [p, delta] : d.coefficients()) acc = minkowski_sum(acc, delta);
  return acc;
}

/// Chamber fan of all coefficient support functions over the weight cone.
inline ChamberFan coefficient_fan(const PolyhedralDivisor& d) {
  auto polys = d.polyhedra();
  return chamber_fan(polys, d.weight_cone());
}

// ---- properness -----------------------------------------------------------

enum class ProperStatus { Proper, NotProper, Unknown };

struct ProperVerdict {
  ProperStatus status = ProperStatus::Unknown;
  std::optional<RatVec> witness;  // always set for NotProper
  std::string reason;
};

inline ProperVerdict is_proper(const PolyhedralDivisor& d) {
  if (!d.projective_base())
    return {ProperStatus::Proper, std::nullopt, "affine base: every evaluation is semiample and big"};

  if (d.tail().rays().empty())
    return {ProperStatus::NotProper, RatVec(d.rank(), Rat(0)),
            "weight cone is a linear space; m = 0 lies in its relative interior and D(0) = 0 is not big"};

  const ChamberFan fan = coefficient_fan(d);
  const auto rays = fan.rays();
  RatVec interior(d.rank(), Rat(0));
  std::vector<LatticeVec> flat;
  for (const auto& u : rays) {
    Rat deg = degree_at(d, to_rat(u));
    if (deg < 0)
      return {ProperStatus::NotProper, to_rat(u), "deg D(m) = " + to_string(deg) + " < 0, not semiample"};
    if (deg == 0) flat.push_back(u);
    interior = interior + to_rat(u);
  }
  Rat deg0 = degree_at(d, interior);
  if (deg0 <= 0)
    return {ProperStatus::NotProper, interior, "deg D(m) = " + to_string(deg0) + " at an interior weight, not big"};

  bool unknown = false;
  std::string unknown_reason;
  for (const auto& u : flat) {
    QDivisor du = evaluate(d, u);
    Int r = 1;
    for (const auto& [p, c] : du.terms()) r = lcm(r, denom(c));
    auto t = is_torsion_class(Rat(r) * du);
    if (t.status == Tri::No)
      return {ProperStatus::NotProper, to_rat(u), "degree-zero evaluation " + to_string(du) + " is not torsion"};
    if (t.status == Tri::Unknown) {
      unknown = true;
      unknown_reason = "torsion of the degree-zero class " + to_string(du) + " cannot be decided on " +
                       describe(*d.curve());
    }
  }
  if (unknown) return {ProperStatus::Unknown, std::nullopt, unknown_reason};
  return {ProperStatus::Proper, std::nullopt, "nonnegative degree on the weight cone, positive inside, torsion on degree-zero rays"};
}

// ---- contraction in codimension one ---------------------------------------

struct ContractionVerdict {
  Tri status = Tri::Unknown;
  std::optional<LatticeVec> ray;     // extremal ray of the tail whose dual facet fails
  std::optional<RatVec> sample;      // relative-interior point of that facet
  std::string reason;
};

/// Is the canonical contraction an isomorphism in codimension one? Only the
/// facet bigness condition remains over a curve.
inline ContractionVerdict contraction_iso_codim1(const PolyhedralDivisor& d) {
  const CurveModel* c = d.curve();
  if (!c) throw Error(ErrorKind::WrongShape, "contraction criterion needs a curve base");
  if (!is_projective(*c)) return {Tri::Yes, std::nullopt, std::nullopt, "affine base: the contraction is an isomorphism"};

  const Cone weights = d.weight_cone();
  for (const auto& rho : d.tail().rays()) {
    RatVec sample(d.rank(), Rat(0));
    for (const auto& g : weights.rays())
      if (dot(g, rho) == 0) sample = sample + to_rat(g);
    Rat deg = degree_at(d, sample);
    if (deg <= 0)
      return {Tri::No, rho, sample,
              "deg D(m) = " + to_string(deg) + " on the facet of the weight cone orthogonal to " + to_string(rho)};
  }
  return {Tri::Yes, std::nullopt, std::nullopt, "every facet of the weight cone has big evaluations"};
}

}  // namespace tvar
