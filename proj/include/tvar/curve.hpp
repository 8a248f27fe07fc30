#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "tvar/rational.hpp"

namespace tvar {

// ---- curve models --------------------------------------------------------

struct P1 {
  friend bool operator==(const P1&, const P1&) = default;
};

/// y^2 = x^3 + a x + b over Q, nonsingular.
struct EllipticQ {
  Rat a, b;
  friend bool operator==(const EllipticQ&, const EllipticQ&) = default;
};

/// Smooth projective curve known only through its genus.
struct AbstractProjective {
  unsigned genus = 0;
  friend bool operator==(const AbstractProjective&, const AbstractProjective&) = default;
};

struct AffineLine {
  friend bool operator==(const AffineLine&, const AffineLine&) = default;
};

struct AbstractAffine {
  friend bool operator==(const AbstractAffine&, const AbstractAffine&) = default;
};

using CurveModel = std::variant<P1, EllipticQ, AbstractProjective, AffineLine, AbstractAffine>;

inline EllipticQ make_elliptic(Rat a, Rat b) {
  if (4 * a * a * a + 27 * b * b == 0)
    throw Error(ErrorKind::SingularCurve, "4a^3 + 27b^2 = 0 for a=" + to_string(a) + ", b=" + to_string(b));
  return EllipticQ{std::move(a), std::move(b)};
}

inline bool is_projective(const CurveModel& c) {
  return std::holds_alternative<P1>(c) || std::holds_alternative<EllipticQ>(c) ||
         std::holds_alternative<AbstractProjective>(c);
}

/// Genus of a projective model; affine models have none.
inline unsigned genus(const CurveModel& c) {
  if (std::holds_alternative<P1>(c)) return 0;
  if (std::holds_alternative<EllipticQ>(c)) return 1;
  if (auto* a = std::get_if<AbstractProjective>(&c)) return a->genus;
  throw Error(ErrorKind::AffineCurve, "genus requested for an affine curve model");
}

/// Degree-determined behaves like P^1: genus zero.
inline bool is_rational_projective(const CurveModel& c) { return is_projective(c) && genus(c) == 0; }

inline std::string describe(const CurveModel& c) {
  struct V {
    std::string operator()(const P1&) const { return "P1"; }
    std::string operator()(const EllipticQ& e) const {
      return "elliptic y^2=x^3+(" + to_string(e.a) + ")x+(" + to_string(e.b) + ")";
    }
    std::string operator()(const AbstractProjective& a) const {
      return "abstract projective curve of genus " + std::to_string(a.genus);
    }
    std::string operator()(const AffineLine&) const { return "affine line"; }
    std::string operator()(const AbstractAffine&) const { return "abstract affine curve"; }
  };
  return std::visit(V{}, c);
}

// ---- points ---------------------------------------------------------------

/// Point (a:b) of P^1, primitive, b >= 0, and (1:0) for infinity. Finite
/// points order by the value a/b; infinity comes last.
struct P1Point {
  Int a, b;
  friend bool operator==(const P1Point&, const P1Point&) = default;
  friend bool operator<(const P1Point& l, const P1Point& r) {
    if (l.b == 0 || r.b == 0) return r.b == 0 && l.b != 0;
    return l.a * r.b < r.a * l.b;
  }
};

inline P1Point make_p1_point(Int a, Int b) {
  if (a == 0 && b == 0) throw Error(ErrorKind::Invalid, "(0:0) is not a point of P1");
  Int g = gcd(a, b);
  a /= g;
  b /= g;
  if (b < 0 || (b == 0 && a < 0)) {
    a = -a;
    b = -b;
  }
  return P1Point{a, b};
}

inline P1Point p1_affine(const Rat& t) { return make_p1_point(numer(t), denom(t)); }
inline P1Point p1_infinity() { return P1Point{1, 0}; }

/// Affine point (x, y) of a Weierstrass curve, or O when `at` is empty.
struct EllipticPoint {
  std::optional<std::pair<Rat, Rat>> at;

  bool is_identity() const { return !at.has_value(); }
  friend bool operator==(const EllipticPoint&, const EllipticPoint&) = default;
  friend bool operator<(const EllipticPoint& l, const EllipticPoint& r) {
    if (l.at.has_value() != r.at.has_value()) return !l.at.has_value();
    return l.at.has_value() && *l.at < *r.at;
  }
};

inline EllipticPoint ec_identity() { return {}; }
inline EllipticPoint ec_point(Rat x, Rat y) { return EllipticPoint{std::make_pair(std::move(x), std::move(y))}; }

/// Formal point of a curve without a coordinate model.
struct LabelPoint {
  std::string label;
  friend auto operator<=>(const LabelPoint&, const LabelPoint&) = default;
};

using CurvePoint = std::variant<P1Point, EllipticPoint, LabelPoint>;

inline bool on_curve(const EllipticQ& e, const EllipticPoint& p) {
  if (p.is_identity()) return true;
  const auto& [x, y] = *p.at;
  return y * y == x * x * x + e.a * x + e.b;
}

inline bool valid_point(const CurveModel& c, const CurvePoint& p) {
  if (std::holds_alternative<P1>(c)) return std::holds_alternative<P1Point>(p);
  if (auto* e = std::get_if<EllipticQ>(&c)) {
    auto* q = std::get_if<EllipticPoint>(&p);
    return q && on_curve(*e, *q);
  }
  return std::holds_alternative<LabelPoint>(p);
}

inline std::string to_string(const CurvePoint& p) {
  if (auto* q = std::get_if<P1Point>(&p)) {
    if (q->b == 0) return "inf";
    return to_string(Rat(q->a, q->b));
  }
  if (auto* e = std::get_if<EllipticPoint>(&p)) {
    if (e->is_identity()) return "O";
    return "(" + to_string(e->at->first) + "," + to_string(e->at->second) + ")";
  }
  return std::get<LabelPoint>(p).label;
}

// ---- divisors -------------------------------------------------------------

/// Finite Q-linear combination of points; zero coefficients are never stored.
class QDivisor {
 public:
  explicit QDivisor(CurveModel curve) : curve_(std::move(curve)) {}

  const CurveModel& curve() const { return curve_; }
  const std::map<CurvePoint, Rat>& terms() const { return terms_; }

  Rat coefficient(const CurvePoint& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// Adds c * [p].
  QDivisor& add(const CurvePoint& p, const Rat& c) {
    if (!valid_point(curve_, p))
      throw Error(ErrorKind::PointNotOnCurve, to_string(p) + " on " + describe(curve_));
    Rat& slot = terms_[p];
    slot += c;
    if (slot == 0) terms_.erase(p);
    return *this;
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_integral() const {
    for (const auto& [p, c] : terms_)
      if (!tvar::is_integer(c)) return false;
    return true;
  }

  friend QDivisor operator+(QDivisor a, const QDivisor& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, c);
    return a;
  }
  friend QDivisor operator-(QDivisor a, const QDivisor& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, -c);
    return a;
  }
  friend QDivisor operator*(const Rat& s, const QDivisor& d) {
    QDivisor out(d.curve_);
    if (s == 0) return out;
    for (const auto& [p, c] : d.terms_) out.terms_[p] = s * c;
    return out;
  }
  friend bool operator==(const QDivisor& a, const QDivisor& b) {
    return a.curve_ == b.curve_ && a.terms_ == b.terms_;
  }

 private:
  CurveModel curve_;
  std::map<CurvePoint, Rat> terms_;
};

inline std::string to_string(const QDivisor& d) {
  if (d.is_zero()) return "0";
  std::string s;
  for (const auto& [p, c] : d.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Rat a = c < 0 ? Rat(-c) : c;
    if (a != 1) s += to_string(a);
    s += "[" + to_string(p) + "]";
  }
  return s;
}

inline QDivisor floor_divisor(const QDivisor& d) {
  QDivisor out(d.curve());
  for (const auto& [p, c] : d.terms()) {
    Int f = floor(c);
    if (f != 0) out.add(p, Rat(f));
  }
  return out;
}

inline void require_projective(const CurveModel& c, const char* what) {
  if (!is_projective(c)) throw Error(ErrorKind::AffineCurve, std::string(what) + " is undefined on " + describe(c));
}

inline Rat degree(const QDivisor& d) {
  require_projective(d.curve(), "degree");
  Rat s = 0;
  for (const auto& [p, c] : d.terms()) s += c;
  return s;
}

/// Canonical class of a curve known only by its genus.
struct FormalClass {
  Rat degree;
  friend bool operator==(const FormalClass&, const FormalClass&) = default;
};

using CanonicalDivisor = std::variant<QDivisor, FormalClass>;

inline CanonicalDivisor canonical_divisor(const CurveModel& c) {
  require_projective(c, "canonical divisor");
  if (std::holds_alternative<P1>(c)) return QDivisor(c).add(p1_infinity(), -2);
  if (std::holds_alternative<EllipticQ>(c)) return QDivisor(c);
  return FormalClass{Rat(2 * static_cast<long>(std::get<AbstractProjective>(c).genus) - 2)};
}

inline Rat degree(const CanonicalDivisor& k) {
  if (auto* d = std::get_if<QDivisor>(&k)) return degree(*d);
  return std::get<FormalClass>(k).degree;
}

// ---- elliptic group law ---------------------------------------------------

inline EllipticPoint ec_neg(const EllipticPoint& p) {
  if (p.is_identity()) return p;
  return ec_point(p.at->first, -p.at->second);
}

/// Chord-tangent addition with O as identity.
inline EllipticPoint ec_add(const EllipticQ& e, const EllipticPoint& p, const EllipticPoint& q) {
  if (!on_curve(e, p) || !on_curve(e, q))
    throw Error(ErrorKind::PointNotOnCurve, "ec_add operand not on curve");
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  const auto& [x1, y1] = *p.at;
  const auto& [x2, y2] = *q.at;
  Rat lambda;
  if (x1 == x2) {
    if (y1 != y2 || y1 == 0) return ec_identity();
    lambda = (3 * x1 * x1 + e.a) / (2 * y1);
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  Rat x3 = lambda * lambda - x1 - x2;
  Rat y3 = lambda * (x1 - x3) - y1;
  return ec_point(std::move(x3), std::move(y3));
}

/// n * p by double-and-add; negative n uses -p.
inline EllipticPoint ec_mul(const EllipticQ& e, Int n, EllipticPoint p) {
  if (n < 0) {
    n = -n;
    p = ec_neg(p);
  }
  EllipticPoint acc = ec_identity();
  while (n > 0) {
    if (n % 2 == 1) acc = ec_add(e, acc, p);
    n /= 2;
    if (n > 0) p = ec_add(e, p, p);
  }
  return acc;
}

/// Group-law image sum n_i P_i of an integral divisor on an elliptic curve.
inline EllipticPoint ec_sum(const QDivisor& d) {
  const auto& e = std::get<EllipticQ>(d.curve());
  EllipticPoint s = ec_identity();
  for (const auto& [p, c] : d.terms()) s = ec_add(e, s, ec_mul(e, numer(c), std::get<EllipticPoint>(p)));
  return s;
}

// ---- principality, torsion, Riemann-Roch ----------------------------------

enum class Tri { Yes, No, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

inline void require_integral(const QDivisor& d, const char* what) {
  if (!d.is_integral()) throw Error(ErrorKind::NonIntegral, std::string(what) + " of " + to_string(d));
}

inline Tri is_principal(const QDivisor& d) {
  require_integral(d, "is_principal");
  require_projective(d.curve(), "is_principal");
  if (d.is_zero()) return Tri::Yes;
  Rat deg = degree(d);
  if (std::holds_alternative<P1>(d.curve())) return deg == 0 ? Tri::Yes : Tri::No;
  if (std::holds_alternative<EllipticQ>(d.curve())) {
    if (deg != 0) return Tri::No;
    return ec_sum(d).is_identity() ? Tri::Yes : Tri::No;
  }
  if (deg != 0) return Tri::No;
  return genus(d.curve()) == 0 ? Tri::Yes : Tri::Unknown;
}

/// Largest possible order of a rational torsion point on an elliptic curve over Q.
inline constexpr int kMaxRationalTorsionOrder = 12;

struct TorsionAnswer {
  Tri status = Tri::Unknown;
  int order = 0;  // meaningful when status == Yes
};

inline TorsionAnswer is_torsion_class(const QDivisor& d) {
  require_integral(d, "is_torsion_class");
  require_projective(d.curve(), "is_torsion_class");
  if (degree(d) != 0) throw Error(ErrorKind::NonZeroDegree, "torsion test of " + to_string(d));
  if (std::holds_alternative<P1>(d.curve())) return {Tri::Yes, 1};
  if (auto* e = std::get_if<EllipticQ>(&d.curve())) {
    const EllipticPoint s = ec_sum(d);
    EllipticPoint k = s;
    for (int order = 1; order <= kMaxRationalTorsionOrder; ++order) {
      if (k.is_identity()) return {Tri::Yes, order};
      k = ec_add(*e, k, s);
    }
    return {Tri::No, 0};
  }
  if (genus(d.curve()) == 0) return {Tri::Yes, 1};
  return {Tri::Unknown, 0};
}

/// Dimension of H^0 of an integral divisor; nullopt where the model cannot tell.
inline std::optional<Int> h0_dim(const QDivisor& d) {
  require_integral(d, "h0_dim");
  require_projective(d.curve(), "h0_dim");
  const Int deg = numer(degree(d));
  if (std::holds_alternative<P1>(d.curve())) return deg + 1 > 0 ? Int(deg + 1) : Int(0);
  if (std::holds_alternative<EllipticQ>(d.curve())) {
    if (deg > 0) return deg;
    if (deg < 0) return Int(0);
    return is_principal(d) == Tri::Yes ? Int(1) : Int(0);
  }
  const Int g = genus(d.curve());
  if (d.is_zero()) return Int(1);
  if (deg < 0) return Int(0);
  if (deg > 2 * g - 2) return Int(deg + 1 - g);
  return std::nullopt;
}

inline std::optional<Int> h1_dim(const QDivisor& d) {
  require_integral(d, "h1_dim");
  require_projective(d.curve(), "h1_dim");
  const Int deg = numer(degree(d));
  if (std::holds_alternative<P1>(d.curve())) return -deg - 1 > 0 ? Int(-deg - 1) : Int(0);
  if (std::holds_alternative<EllipticQ>(d.curve())) {
    if (deg > 0) return Int(0);
    if (deg < 0) return Int(-deg);
    return is_principal(d) == Tri::Yes ? Int(1) : Int(0);
  }
  const Int g = genus(d.curve());
  if (d.is_zero()) return g;
  if (deg > 2 * g - 2) return Int(0);
  if (deg < 0) return Int(g - 1 - deg);
  return std::nullopt;
}

}  // namespace tvar
