#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvar/pdiv.hpp"

namespace tvar {

enum class Verdict { Yes, No, Unknown, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

inline Verdict to_verdict(Tri t) {
  return t == Tri::Yes ? Verdict::Yes : (t == Tri::No ? Verdict::No : Verdict::Unknown);
}

// ---- rank-one shape -------------------------------------------------------

/// One nonzero coefficient p/q of D(1), in lowest terms with q > 0.
struct Slope {
  CurvePoint point;
  Int p;
  Int q;
};

using RaySlopeData = std::vector<Slope>;

namespace detail {

inline void require_rank_one(const PolyhedralDivisor& d, const char* what) {
  if (!d.rank_one_positive() || !d.curve())
    throw Error(ErrorKind::WrongShape, std::string(what) + " needs rank 1 with tail Q>=0 over a curve");
}

inline void require_rank_one_projective(const PolyhedralDivisor& d, const char* what) {
  require_rank_one(d, what);
  require_projective(*d.curve(), what);
}

inline void require_not_nonproper(const PolyhedralDivisor& d) {
  auto v = is_proper(d);
  if (v.status == ProperStatus::NotProper) throw Error(ErrorKind::NotProper, v.reason);
}

inline Int ceil_div(const Rat& a, const Rat& b) { return ceil(a / b); }

}  // namespace detail

inline RaySlopeData ray_slope_data(const PolyhedralDivisor& d) {
  detail::require_rank_one(d, "ray_slope_data");
  RaySlopeData out;
  for (const auto& [p, delta] : d.coefficients()) {
    Rat v = support_value(delta, RatVec{Rat(1)});
    if (v != 0) out.push_back({std::get<CurvePoint>(p), numer(v), denom(v)});
  }
  return out;
}

/// deg D(1) for rank-one data.
inline Rat slope_degree(const RaySlopeData& s) {
  Rat deg = 0;
  for (const auto& e : s) deg += Rat(e.p, e.q);
  return deg;
}

inline Int slope_period(const RaySlopeData& s) {
  Int q = 1;
  for (const auto& e : s) q = lcm(q, e.q);
  return q;
}

/// deg floor(m D(1)).
inline Int floor_degree(const RaySlopeData& s, const Int& m) {
  Int total = 0;
  for (const auto& e : s) total += floor_div(m * e.p, e.q);
  return total;
}

// ---- floor-degree profile -------------------------------------------------

struct FloorProfile {
  std::vector<Int> values;  // values[m] = deg floor(m D(1)), m = 0..m_max
  Int period;               // lcm of the denominators
  Rat increment;            // change of the profile over one period
};

inline FloorProfile floor_degree_profile(const PolyhedralDivisor& d, std::size_t m_max) {
  detail::require_rank_one_projective(d, "floor_degree_profile");
  const auto s = ray_slope_data(d);
  FloorProfile out{{}, slope_period(s), {}};
  out.increment = Rat(out.period) * slope_degree(s);
  for (std::size_t m = 0; m <= m_max; ++m) out.values.push_back(floor_degree(s, Int(m)));
  return out;
}

// ---- deciding sum of floors >= c over the weight cone ---------------------

struct FloorBound {
  bool holds = true;
  std::optional<LatticeVec> witness;  // violation of least L1 norm found, then lexicographically least
  Int witness_value = 0;              // sum of floors at the witness
  std::size_t points_examined = 0;
};

namespace detail {

inline Int l1(const LatticeVec& v) {
  Int s = 0;
  for (const auto& x : v) s += x < 0 ? Int(-x) : x;
  return s;
}

/// Integer adjugate of the square matrix whose columns are `cols`, so that
/// adj * U = det * I.
inline std::vector<LatticeVec> adjugate(const std::vector<LatticeVec>& cols, Int& det) {
  const std::size_t n = cols.size();
  RatMatrix u(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i][j] = cols[j][i];
  det = numer(determinant(u));
  std::vector<LatticeVec> adj(n, LatticeVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n, Rat(0));
    e[i] = 1;
    auto x = solve(u, e);
    if (!x) throw Error(ErrorKind::Invalid, "degenerate chamber");
    for (std::size_t j = 0; j < n; ++j) adj[j][i] = numer((*x)[j] * Rat(det));
  }
  return adj;
}

}  // namespace detail

/// Decides whether sum_z floor(h_z(m)) >= c for every lattice point m of the
/// weight cone. Each violation satisfies sum_z h_z(m) < l + c - 1 with l the
/// number of coefficients that are not integral on the chamber, so inside a
/// simplicial chamber only a bounded parallelepiped needs checking; along a
/// degree-zero generator the floor sum is periodic.
inline FloorBound decide_floor_bound(const PolyhedralDivisor& d, const Int& c) {
  if (!d.projective_base()) throw Error(ErrorKind::AffineCurve, "decide_floor_bound needs a projective curve base");
  const auto polys = d.polyhedra();
  const ChamberFan fan = chamber_fan(polys, d.weight_cone());
  FloorBound out;

  auto consider = [&](const LatticeVec& m, const Int& value) {
    if (!out.witness || std::make_pair(detail::l1(m), m) < std::make_pair(detail::l1(*out.witness), *out.witness)) {
      out.holds = false;
      out.witness = m;
      out.witness_value = value;
    }
  };

  for (const auto& ch : fan.chambers) {
    const auto& gens = ch.cone.rays();
    const std::size_t n = gens.size();
    std::vector<RatVec> verts;
    Int frac = 0;
    for (std::size_t z = 0; z < polys.size(); ++z) {
      verts.push_back(polys[z].vertices()[ch.vertex[z]]);
      if (common_denominator(verts.back()) != 1) ++frac;
    }
    const Int slack = frac + c - 1;  // violations have g(m) < slack
    for (const auto& u : gens) {
      Rat g = 0;
      for (const auto& v : verts) g += dot(u, v);
      if (g < 0) throw Error(ErrorKind::NotProper, "negative degree along weight " + to_string(u));
    }
    if (slack <= 0) continue;

    // lambda_j < bound[j] in the coordinates m = sum lambda_j u_j
    std::vector<Rat> bound;
    for (const auto& u : gens) {
      Rat g = 0;
      Int period = 1;
      for (const auto& v : verts) {
        Rat h = dot(u, v);
        g += h;
        period = lcm(period, denom(h));
      }
      bound.push_back(g > 0 ? Rat(slack) / g : Rat(period));
    }

    Int det;
    const auto adj = detail::adjugate(gens, det);
    const Int sdet = det < 0 ? Int(-det) : det;
    const int sgn = det < 0 ? -1 : 1;

    LatticeVec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rat a = 0, b = 0;
      for (std::size_t j = 0; j < n; ++j) {
        Rat t = bound[j] * Rat(gens[j][i]);
        (t < 0 ? a : b) += t;
      }
      lo[i] = floor(a);
      hi[i] = ceil(b);
    }

    LatticeVec m = lo;
    while (true) {
      bool inside = true;
      for (std::size_t j = 0; j < n && inside; ++j) {
        Int scaled = dot(adj[j], m) * sgn;  // lambda_j * |det|
        inside = scaled >= 0 && Rat(scaled) < bound[j] * Rat(sdet);
      }
      if (inside) {
        ++out.points_examined;
        Int f = 0;
        for (const auto& v : verts) f += floor(dot(m, v));
        if (f < c) consider(m, f);
      }
      std::size_t k = 0;
      while (k < n && m[k] == hi[k]) m[k] = lo[k], ++k;
      if (k == n) break;
      ++m[k];
    }
  }
  return out;
}

// ---- verdicts -------------------------------------------------------------

struct VerdictEntry {
  Verdict verdict = Verdict::Unknown;
  std::string criterion;
  std::string reason;
  std::optional<LatticeVec> witness;
};

/// Rational singularities over a curve or coordinate affine space.
inline VerdictEntry rational_singularities(const PolyhedralDivisor& d) {
  const CurveModel* c = d.curve();
  if (!c || !is_projective(*c))
    return {Verdict::Yes, "affine-base-toroidal", "affine base: the variety is toroidal", std::nullopt};

  auto proper = is_proper(d);
  if (proper.status == ProperStatus::NotProper) throw Error(ErrorKind::NotProper, proper.reason);
  const LatticeVec zero(d.rank(), 0);
  if (genus(*c) >= 1)
    return {Verdict::No, "structure-sheaf-acyclicity",
            "base of genus " + std::to_string(genus(*c)) + " has H^1(O_Y) != 0 in degree m = 0", zero};
  if (proper.status == ProperStatus::Unknown)
    return {Verdict::Unknown, "p1-floor-degree-at-least-minus-one", proper.reason, std::nullopt};

  auto fb = decide_floor_bound(d, -1);
  if (fb.holds)
    return {Verdict::Yes, "p1-floor-degree-at-least-minus-one", "deg floor D(m) >= -1 on the whole weight cone",
            std::nullopt};
  return {Verdict::No, "p1-floor-degree-at-least-minus-one",
          "deg floor D(m) = " + to_string(fb.witness_value) + " < -1 at m = " + to_string(*fb.witness), fb.witness};
}

struct H1Entry {
  Int m;
  std::optional<Int> h1;
};

struct H1Report {
  std::vector<H1Entry> entries;  // m = 0..max(bound, requested)
  std::optional<Int> total;      // nullopt when some term cannot be decided
  Int bound;                     // h1 vanishes for m > bound
  Int period;
  Rat increment;
};

inline H1Report h1_report(const PolyhedralDivisor& d, std::optional<Int> m_max = std::nullopt) {
  detail::require_rank_one_projective(d, "h1_report");
  detail::require_not_nonproper(d);
  const auto s = ray_slope_data(d);
  const Rat deg = slope_degree(s);
  const Int ell = static_cast<long>(s.size());
  const Int g = genus(*d.curve());

  H1Report out;
  out.period = slope_period(s);
  out.increment = Rat(out.period) * deg;
  // beyond the bound deg floor(m D1) > m deg D1 - l >= 2g - 2
  out.bound = std::max({detail::ceil_div(Rat(ell), deg), detail::ceil_div(Rat(ell - 2), deg),
                        detail::ceil_div(Rat(ell + 2 * g - 2), deg), out.period});
  const Int last = m_max ? std::max(*m_max, out.bound) : out.bound;
  Int total = 0;
  bool known = true;
  for (Int m = 0; m <= last; ++m) {
    auto h = h1_dim(floor_divisor(evaluate(d, RatVec{Rat(m)})));
    if (m <= out.bound) {
      if (h) total += *h;
      else known = false;
    }
    if (!m_max || m <= *m_max) out.entries.push_back({m, h});
  }
  if (known) out.total = total;
  return out;
}

/// Cohen-Macaulay rule cascade; `isolated` is the caller's assertion that the
/// singularities are isolated.
inline VerdictEntry cohen_macaulay(const PolyhedralDivisor& d, bool isolated) {
  const CurveModel* c = d.curve();
  if (!c || !is_projective(*c)) return {Verdict::Yes, "affine-base-toroidal", "rational singularities are CM", std::nullopt};
  detail::require_not_nonproper(d);
  if (d.rank() == 1) return {Verdict::Yes, "normal-surface-serre-s2", "every normal surface is CM", std::nullopt};

  auto follow_rational = [&](const char* criterion, const std::string& why) {
    auto r = rational_singularities(d);
    return VerdictEntry{r.verdict, criterion, why + "; CM agrees with rationality: " + r.reason, r.witness};
  };
  const auto deg = deg_pdiv(d);
  const auto& rays = d.tail().rays();
  if (std::none_of(rays.begin(), rays.end(), [&](const LatticeVec& r) { return ray_meets(deg, r); }))
    return follow_rational("deg-avoids-extremal-rays", "deg D misses every extremal ray of the tail");
  if (isolated) return follow_rational("isolated-singularities-rank-at-least-2", "isolated singularities asserted");
  return {Verdict::Unknown, "none", "deg D meets an extremal ray and isolatedness was not asserted", std::nullopt};
}

struct CanonicalEntry {
  CurvePoint point;
  Int multiplicity;  // q - 1, coefficient of the invariant divisor in K_X
  Int p;             // f chi^m vanishes to order m p along it, on top of the pullback of div f
};

struct CanonicalData {
  std::vector<CanonicalEntry> entries;
  CanonicalDivisor base_canonical;
};

inline CanonicalData canonical_data(const PolyhedralDivisor& d) {
  detail::require_rank_one_projective(d, "canonical_data");
  CanonicalData out{{}, canonical_divisor(*d.curve())};
  for (const auto& e : ray_slope_data(d)) out.entries.push_back({e.point, e.q - 1, e.p});
  return out;
}

struct GorensteinData {
  Rat m_G;
  QDivisor D_G;
  bool integral = false;
  Tri principal_check = Tri::Unknown;  // is D_G - K_Y principal
};

struct GorensteinVerdict : VerdictEntry {
  std::optional<GorensteinData> data;
};

inline GorensteinVerdict gorenstein(const PolyhedralDivisor& d) {
  GorensteinVerdict out;
  out.criterion = "canonical-divisor-principal";
  if (!d.projective_base()) {
    out.verdict = Verdict::NotApplicable;
    out.reason = "criterion covers projective curve bases only";
    return out;
  }
  detail::require_rank_one_projective(d, "gorenstein");
  detail::require_not_nonproper(d);
  const CurveModel& curve = *d.curve();
  const auto s = ray_slope_data(d);
  const auto k = canonical_divisor(curve);

  Rat corr = 0;
  for (const auto& e : s) corr += Rat(e.q - 1, e.q);
  const Rat m_g = (degree(k) + corr) / slope_degree(s);
  QDivisor dg(curve);
  for (const auto& e : s) dg.add(e.point, (Rat(e.p) * m_g + 1) / Rat(e.q) - 1);

  GorensteinData data{m_g, dg, is_integer(m_g) && dg.is_integral(), Tri::No};
  if (data.integral) {
    if (auto* kd = std::get_if<QDivisor>(&k))
      data.principal_check = is_principal(dg - *kd);
    else if (genus(curve) <= 1)  // K_Y is trivial in genus one
      data.principal_check = genus(curve) == 0 ? Tri::Yes : is_principal(dg);
    else
      data.principal_check = Tri::Unknown;
  }
  out.data = data;

  if (!is_integer(m_g)) {
    out.verdict = Verdict::No;
    out.reason = "m_G = " + to_string(m_g) + " is not integral";
  } else if (!dg.is_integral()) {
    out.verdict = Verdict::No;
    for (const auto& [p, c] : dg.terms())
      if (!is_integer(c)) {
        out.reason = "coefficient " + to_string(c) + " of D_G at " + to_string(p) + " is not integral";
        break;
      }
  } else {
    out.verdict = to_verdict(data.principal_check);
    out.reason = data.principal_check == Tri::Yes ? "D_G - K_Y is principal"
                 : data.principal_check == Tri::No ? "D_G - K_Y is not principal"
                                                   : "principality of D_G - K_Y cannot be decided on " + describe(curve);
  }
  return out;
}

struct EllipticVerdict : VerdictEntry {
  std::optional<Int> witness_m;  // the unique m with deg floor(m D1) = -2 over P1
  Verdict minimal = Verdict::NotApplicable;
  Int bound = 0;                 // last m inspected
};

inline EllipticVerdict elliptic_singularity(const PolyhedralDivisor& d) {
  EllipticVerdict out;
  if (!d.projective_base()) {
    out.verdict = Verdict::NotApplicable;
    out.criterion = "affine-base-toroidal";
    out.reason = "affine base gives rational singularities";
    return out;
  }
  detail::require_rank_one_projective(d, "elliptic_singularity");
  detail::require_not_nonproper(d);
  const CurveModel& curve = *d.curve();
  const auto s = ray_slope_data(d);
  const Rat deg = slope_degree(s);
  const Int ell = static_cast<long>(s.size());
  const unsigned g = genus(curve);

  if (g >= 2) {
    out.verdict = Verdict::No;
    out.criterion = "genus-at-most-one";
    out.reason = "base of genus " + std::to_string(g) + " gives h1 >= 2 in degree 0";
    return out;
  }

  if (g == 0) {
    out.criterion = "p1-unique-minus-two";
    out.bound = std::max(detail::ceil_div(Rat(ell - 2), deg), slope_period(s));
    std::vector<Int> hits;
    for (Int m = 1; m <= out.bound; ++m) {
      Int v = floor_degree(s, m);
      if (v < -2) {
        out.verdict = Verdict::No;
        out.reason = "deg floor(m D1) = " + to_string(v) + " < -2 at m = " + to_string(m);
        out.witness = LatticeVec{m};
        return out;
      }
      if (v == -2) hits.push_back(m);
    }
    if (hits.size() != 1) {
      out.verdict = Verdict::No;
      out.reason = hits.empty() ? "the value -2 is never attained"
                                : "the value -2 is attained at m = " + to_string(hits[0]) + " and m = " +
                                      to_string(hits[1]);
      return out;
    }
    out.verdict = Verdict::Yes;
    out.witness_m = hits[0];
    out.witness = LatticeVec{hits[0]};
    out.reason = "deg floor(m D1) >= -2 with equality only at m = " + to_string(hits[0]);
  } else {
    out.criterion = "elliptic-base-nonprincipal-floors";
    out.bound = std::max(detail::ceil_div(Rat(ell), deg), Int(1));
    out.verdict = Verdict::Yes;
    out.reason = "floor(m D1) has degree >= 0 and is not principal for m >= 1";
    for (Int m = 1; m <= out.bound; ++m) {
      QDivisor f = floor_divisor(evaluate(d, RatVec{Rat(m)}));
      Rat v = degree(f);
      if (v < 0) {
        out.verdict = Verdict::No;
        out.reason = "deg floor(m D1) = " + to_string(v) + " < 0 at m = " + to_string(m);
        out.witness = LatticeVec{m};
        return out;
      }
      if (v > 0) continue;
      Tri p = is_principal(f);
      if (p == Tri::Yes) {
        out.verdict = Verdict::No;
        out.reason = "floor(m D1) is principal at m = " + to_string(m);
        out.witness = LatticeVec{m};
        return out;
      }
      if (p == Tri::Unknown) {
        out.verdict = Verdict::Unknown;
        out.reason = "principality of floor(m D1) at m = " + to_string(m) + " cannot be decided on " + describe(curve);
      }
    }
    if (out.verdict != Verdict::Yes) return out;
  }
  out.minimal = gorenstein(d).verdict;
  return out;
}

// ---- aggregate report -----------------------------------------------------

struct ConsistencyCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ClassificationReport {
  std::vector<Violation> violations;  // nonempty means nothing else was computed
  std::optional<ProperVerdict> proper;
  std::optional<VerdictEntry> rational;
  std::optional<VerdictEntry> cohen_macaulay;
  std::optional<GorensteinVerdict> gorenstein;
  std::optional<EllipticVerdict> elliptic;
  std::optional<H1Report> h1;
  std::vector<ConsistencyCheck> checks;

  bool has_unknown() const {
    auto unk = [](const auto& v) { return v && v->verdict == Verdict::Unknown; };
    return (proper && proper->status == ProperStatus::Unknown) || unk(rational) || unk(cohen_macaulay) ||
           unk(gorenstein) || unk(elliptic) || (elliptic && elliptic->minimal == Verdict::Unknown);
  }
  bool consistent() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConsistencyCheck& c) { return c.ok; });
  }
};

inline ClassificationReport classify_report(const PolyhedralDivisor& d, bool isolated) {
  ClassificationReport r;
  r.violations = validate_input(d);
  if (!r.violations.empty()) return r;
  r.proper = is_proper(d);
  if (r.proper->status == ProperStatus::NotProper) return r;

  r.rational = rational_singularities(d);
  r.cohen_macaulay = cohen_macaulay(d, isolated);

  const bool rank_one_projective = d.projective_base() && d.rank_one_positive();
  if (rank_one_projective || !d.projective_base()) {
    r.gorenstein = gorenstein(d);
    r.elliptic = elliptic_singularity(d);
  } else {
    GorensteinVerdict gv;
    gv.verdict = Verdict::NotApplicable;
    gv.criterion = "canonical-divisor-principal";
    gv.reason = "criterion needs rank 1 with tail Q>=0";
    r.gorenstein = gv;
    EllipticVerdict ev;
    ev.verdict = Verdict::NotApplicable;
    ev.criterion = "p1-unique-minus-two";
    ev.reason = "criterion needs rank 1 with tail Q>=0";
    r.elliptic = ev;
  }

  if (rank_one_projective && r.proper->status == ProperStatus::Proper) {
    r.h1 = h1_report(d);
    if (r.elliptic->verdict == Verdict::Yes)
      r.checks.push_back({"elliptic-implies-not-rational", r.rational->verdict == Verdict::No,
                          "rational: " + std::string(to_string(r.rational->verdict))});
    if (r.h1->total && r.rational->verdict != Verdict::Unknown)
      r.checks.push_back({"rational-iff-h1-vanishes", (*r.h1->total == 0) == (r.rational->verdict == Verdict::Yes),
                          "h1 total " + to_string(*r.h1->total)});
    if (r.gorenstein->data) {
      Rat dk = degree(canonical_divisor(*d.curve()));
      Rat dg = degree(r.gorenstein->data->D_G);
      r.checks.push_back({"gorenstein-degree-identity", dk == dg,
                          "deg D_G = " + to_string(dg) + ", deg K_Y = " + to_string(dk)});
    }
    const auto s = ray_slope_data(d);
    const Int q = slope_period(s);
    const Rat inc = Rat(q) * slope_degree(s);
    bool periodic = true;
    for (Int m = 0; m <= q && periodic; ++m)
      periodic = Rat(floor_degree(s, m + q)) == Rat(floor_degree(s, m)) + inc;
    r.checks.push_back({"quasi-periodicity", periodic, "period " + to_string(q) + ", increment " + to_string(inc)});
  }
  return r;
}

}  // namespace tvar
