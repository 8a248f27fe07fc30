// Acceptance suite: one PASS/FAIL line per criterion. Oracles here avoid the
// library's evaluation path where possible (int64 floors, vertex minima,
// hand-assembled cone generators).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "random_data.hpp"
#include "tvar/tvar.hpp"

using namespace tvar;
using namespace tvar::testing;

namespace {

using i64 = std::int64_t;

struct Check {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << what;
    ok = ok && cond;
  }
};

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

// Rank-one divisor on P1 kept alongside its plain integer data.
struct RankOne {
  std::vector<std::pair<i64, i64>> coeffs;  // p/q per support point, q > 0
  PolyhedralDivisor d{CurveModel{P1{}}, orthant(1)};

  i64 floor_deg(i64 m) const {
    i64 s = 0;
    for (auto [p, q] : coeffs) s += floor_div(m * p, q);
    return s;
  }
  i64 lcm() const {
    i64 l = 1;
    for (auto [p, q] : coeffs) l = std::lcm(l, q);
    return l;
  }
  // deg D1 as the fraction num / lcm
  i64 deg_num() const {
    i64 l = lcm(), n = 0;
    for (auto [p, q] : coeffs) n += p * (l / q);
    return n;
  }
};

RankOne random_rank_one(Gen& g, i64 max_range) {
  const std::vector<CurvePoint> pts{p1_affine(0), p1_affine(1), p1_infinity(), p1_affine(2), p1_affine(-1)};
  for (;;) {
    RankOne r;
    for (const auto& pt : pts) {
      if (!g.coin()) continue;
      i64 p = g.uniform(-12, 12), q = g.uniform(1, 8);
      const i64 c = std::gcd(p, q);
      if (p == 0) continue;
      p /= c;
      q /= c;
      r.coeffs.push_back({p, q});
      r.d.set_point(pt, Rat(p, q));
    }
    const i64 l = r.lcm(), dn = r.deg_num();
    if (dn <= 0) continue;
    // m = 0..10 * lcm * ceil(points / deg)
    const i64 range = 10 * l * ceil_div(static_cast<i64>(r.coeffs.size()) * l, dn);
    if (range <= max_range) return r;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string show(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---- criteria -------------------------------------------------------------

void golden(Check& c) {
  struct Expect {
    const char* name;
    PolyhedralDivisor d;
    long witness_m;
    long m_g;
    Verdict minimal;
    Verdict gor;
  };
  std::vector<Expect> cases{{"(i)", example_i(), 1, 1, Verdict::Yes, Verdict::Yes},
                            {"(ii)", example_ii(), 1, 1, Verdict::Yes, Verdict::Yes},
                            {"(iii)", example_iii(), 2, 3, Verdict::No, Verdict::No}};
  for (auto& e : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = classify_report(e.d, false);
    const std::string n = e.name;
    c.expect(r.violations.empty() && r.proper && r.proper->status == ProperStatus::Proper, n + " not proper; ");
    c.expect(r.rational->verdict == Verdict::No, n + " rational; ");
    c.expect(r.cohen_macaulay->verdict == Verdict::Yes, n + " not CM; ");
    c.expect(r.elliptic->verdict == Verdict::Yes, n + " not elliptic; ");
    c.expect(r.elliptic->witness_m && *r.elliptic->witness_m == e.witness_m, n + " elliptic witness; ");
    c.expect(r.elliptic->minimal == e.minimal, n + " minimality; ");
    c.expect(r.gorenstein->verdict == e.gor, n + " gorenstein; ");
    c.expect(r.gorenstein->data.has_value(), n + " gorenstein data; ");
    if (r.gorenstein->data) {
      c.expect(r.gorenstein->data->m_G == e.m_g, n + " m_G; ");
      if (e.gor == Verdict::No) {
        // d_1 = (p m_G + 1)/q - 1 with p/q = -2/3
        c.expect(r.gorenstein->data->D_G.coefficient(p1_affine(0)) == Rat(-8, 3), n + " d_1; ");
        c.expect(!r.gorenstein->data->integral, n + " integrality; ");
      }
    }
    if (e.witness_m == 1)
      c.expect(r.rational->witness && (*r.rational->witness)[0] == 1, n + " rational witness; ");
    c.expect(r.consistent(), n + " consistency; ");
    c.expect(seconds_since(t0) < 1.0, n + " slower than 1 s; ");
  }
}

void rank_one_oracle(Check& c, int& count) {
  Gen g(20240601);
  const auto t0 = std::chrono::steady_clock::now();
  for (count = 0; count < 150; ++count) {
    RankOne r = random_rank_one(g, 2'000'000);
    const i64 l = r.lcm(), dn = r.deg_num();
    const i64 range = 10 * l * ceil_div(static_cast<i64>(r.coeffs.size()) * l, dn);
    i64 lowest = 0;
    for (i64 m = 0; m <= range; ++m) lowest = std::min(lowest, r.floor_deg(m));
    auto fb = decide_floor_bound(r.d, -1);
    c.expect(fb.holds == (lowest >= -1), "decision differs at instance " + std::to_string(count) + "; ");
    if (!fb.holds && fb.witness)
      c.expect(r.floor_deg(static_cast<i64>((*fb.witness)[0])) < -1, "witness does not violate; ");
  }
  c.expect(seconds_since(t0) < 10.0, "slower than 10 s; ");
}

void rank_two_box(Check& c, int& count) {
  Gen g(7331);
  const std::vector<CurvePoint> pts{p1_affine(0), p1_affine(1), p1_infinity()};
  const auto t0 = std::chrono::steady_clock::now();
  count = 0;
  int attempts = 0;
  while (count < 24 && attempts < 10000) {
    ++attempts;
    Cone tail = g.coin() ? orthant(2) : g.pointed_full_cone(2, 2);
    PolyhedralDivisor d(CurveModel{P1{}}, tail);
    std::vector<std::vector<RatVec>> verts;
    for (const auto& p : pts) {
      auto poly = g.polyhedron(tail, 2, 3, 3);
      verts.push_back(poly.vertices());
      d.set(p, poly);
    }
    if (is_proper(d).status != ProperStatus::Proper) continue;
    ++count;

    // floor degree at m: sum over points of floor(min over vertices <m, v>)
    auto floor_deg = [&](const LatticeVec& m) {
      Int s = 0;
      const RatVec mq = to_rat(m);
      for (const auto& vs : verts) {
        Rat h = dot(mq, vs.front());
        for (const auto& v : vs) h = std::min(h, dot(mq, v));
        s += floor(h);
      }
      return s;
    };
    bool box_holds = true;
    for (long a = -50; a <= 50; ++a)
      for (long b = -50; b <= 50; ++b) {
        LatticeVec m{a, b};
        if (tail.in_dual(to_rat(m)) && floor_deg(m) < -1) box_holds = false;
      }
    auto fb = decide_floor_bound(d, -1);
    if (fb.holds != box_holds) {
      std::ostringstream os;
      os << "decision differs from box search (tail";
      for (const auto& ray : tail.rays()) os << " " << show(to_rat(ray));
      for (std::size_t i = 0; i < verts.size(); ++i) {
        os << "; P" << i << ":";
        for (const auto& v : verts[i]) os << " " << show(v);
      }
      os << "; holds " << fb.holds << ")";
      c.expect(false, os.str());
    }
    if (!fb.holds && fb.witness) c.expect(floor_deg(*fb.witness) < -1, "witness does not violate; ");
  }
  c.expect(count >= 20, "too few proper instances; ");
  c.expect(seconds_since(t0) < 60.0, "slower than 60 s; ");
}

void h1_totals(Check& c) {
  for (auto [name, d] : {std::pair{"(i)", example_i()}, {"(ii)", example_ii()}, {"(iii)", example_iii()}}) {
    auto rep = h1_report(d);
    c.expect(rep.total && *rep.total == 1, std::string(name) + " total; ");
  }
}

void toric_fuzz(Check& c) {
  Gen g(424242);
  const auto t0 = std::chrono::steady_clock::now();
  for (int inst = 0; inst < 50; ++inst) {
    const unsigned n = static_cast<unsigned>(g.uniform(1, 3));
    const std::size_t rank = static_cast<std::size_t>(g.uniform(1, 2));
    Cone tail = g.pointed_full_cone(rank, 2);
    PolyhedralDivisor d(AffineSpace{n}, tail);
    // generators of the cone, assembled by hand
    std::vector<RatVec> gens;
    for (const auto& ray : tail.rays()) {
      RatVec v = to_rat(ray);
      v.resize(rank + n, Rat(0));
      gens.push_back(v);
    }
    for (unsigned i = 1; i <= n; ++i) {
      std::vector<RatVec> vs{RatVec(rank, Rat(0))};
      if (g.coin()) {
        auto poly = g.polyhedron(tail, 3, 3, 4);
        vs = poly.vertices();
        d.set(Hyperplane{i}, poly);
      }
      for (auto v : vs) {
        v.resize(rank + n, Rat(0));
        v[rank + i - 1] = 1;
        gens.push_back(v);
      }
    }
    const auto built = toric_cone(d).rays();
    for (int k = 0; k < 1000; ++k) {
      LatticeVec m = g.lattice_vec(rank, 6), r = g.lattice_vec(n, 6);
      RatVec mr = to_rat(m);
      for (const auto& x : r) mr.push_back(Rat(x));
      bool by_hand = true, by_rays = true;
      for (const auto& gen : gens) by_hand = by_hand && dot(mr, gen) >= 0;
      for (const auto& ray : built) by_rays = by_rays && dot(mr, to_rat(ray)) >= 0;
      const bool by_ineq = weight_membership(d, m, r);
      if (by_ineq != by_hand || by_ineq != by_rays) {
        c.expect(false, "membership mismatch at instance " + std::to_string(inst) + "; ");
        break;
      }
    }
  }
  c.expect(seconds_since(t0) < 10.0, "slower than 10 s; ");
}

void quasi_periodicity(Check& c) {
  Gen g(99991);
  std::vector<PolyhedralDivisor> ds{example_i(), example_ii(), example_iii()};
  for (int i = 0; i < 100; ++i) ds.push_back(random_rank_one(g, 2'000'000).d);
  for (const auto& d : ds) {
    const auto s = ray_slope_data(d);
    const Int q = slope_period(s);
    const Rat inc = Rat(q) * slope_degree(s);
    for (Int m = 0; m <= 10 * q; ++m)
      if (Rat(floor_degree(s, m + q)) != Rat(floor_degree(s, m)) + inc) {
        c.expect(false, "identity fails at m = " + to_string(m) + "; ");
        break;
      }
  }
}

void section_ring_audit(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  auto d = example_i();
  const std::vector<Int> want{1, 0, 0, 1, 2, 0, 1, 2, 3, 1, 2, 3, 4};
  c.expect(hilbert_series(d, 12) == want, "Hilbert coefficients; ");
  std::vector<Int> degs;
  for (const auto& gen : minimal_generators(d, 12).generators) degs.push_back(gen.degree);
  c.expect(degs == std::vector<Int>{3, 4, 4}, "generator degrees; ");
  auto rels = relations(d, 12);
  const RelationBlock* first = nullptr;
  for (const auto& b : rels)
    if (b.kernel_dim > 0) {
      first = &b;
      break;
    }
  c.expect(first && first->degree == 12 && first->kernel_dim == 1, "first relation; ");
  c.expect(seconds_since(t0) < 5.0, "slower than 5 s; ");
}

void riemann_roch(Check& c) {
  Gen g(31337);
  const std::vector<CurvePoint> p1pts{p1_affine(0), p1_affine(1), p1_infinity(), p1_affine(Rat(-2, 3)), p1_affine(7)};
  const std::vector<CurvePoint> ecpts{ec_identity(), ec_point(0, 0), ec_point(1, 0), ec_point(-1, 0)};
  const EllipticQ e = make_elliptic(-1, 0);
  for (int i = 0; i < 2000; ++i) {
    const bool elliptic = i % 2 == 1;
    QDivisor d = elliptic ? QDivisor{e} : QDivisor{P1{}};
    for (const auto& p : elliptic ? ecpts : p1pts) d.add(p, g.uniform(-5, 5));
    auto h0 = h0_dim(d), h1 = h1_dim(d);
    if (!h0 || !h1) {
      c.expect(false, "undetermined h0/h1 for " + to_string(d) + "; ");
      break;
    }
    if (*h0 - *h1 != numer(degree(d)) + 1 - genus(d.curve())) {
      c.expect(false, "fails on " + to_string(d) + "; ");
      break;
    }
  }
}

void torsion(Check& c) {
  const EllipticQ e = make_elliptic(-1, 0);
  const std::vector<std::pair<EllipticPoint, int>> want{
      {ec_identity(), 1}, {ec_point(0, 0), 2}, {ec_point(1, 0), 2}, {ec_point(-1, 0), 2}};
  for (const auto& [p, order] : want) {
    const std::string name = to_string(CurvePoint{p});
    QDivisor d{e};
    d.add(p, 1).add(ec_identity(), -1);
    auto t = is_torsion_class(d);
    c.expect(t.status == Tri::Yes && t.order == order, name + " order; ");
    // group-law oracle: smallest k with k P = O
    EllipticPoint acc = p;
    int k = 1;
    while (acc.at && k < 12) {
      acc = ec_add(e, acc, p);
      ++k;
    }
    c.expect(!acc.at && k == order, name + " group law; ");
  }
}

void consistency(Check& c, int& count) {
  Gen g(8675309);
  for (count = 0; count < 220; ++count) {
    const auto d = random_rank_one(g, 2'000'000).d;
    auto r = classify_report(d, false);
    if (!r.violations.empty() || !r.proper || r.proper->status != ProperStatus::Proper) {
      c.expect(false, "generated instance not proper; ");
      break;
    }
    c.expect(r.consistent(), "report consistency check failed; ");
    if (r.elliptic->verdict == Verdict::Yes) c.expect(r.rational->verdict == Verdict::No, "elliptic and rational; ");
    c.expect(r.h1 && r.h1->total, "h1 total missing; ");
    if (r.h1 && r.h1->total)
      c.expect((r.rational->verdict == Verdict::Yes) == (*r.h1->total == 0), "rational vs h1 total; ");
    if (r.gorenstein->verdict == Verdict::Yes)
      c.expect(r.gorenstein->data && degree(r.gorenstein->data->D_G) == degree(canonical_divisor(P1{})),
               "deg D_G differs from deg K; ");
  }
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs = seconds_since(t0);
    if (!c.ok) ++failures;
    std::printf("%s %2d  %-52s %7.3f s%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                c.ok ? "" : "  ", c.note.str().c_str());
    std::fflush(stdout);
  };

  int n2 = 0, n3 = 0, n10 = 0;
  report(1, "golden examples (i)-(iii)", golden);
  report(2, "rank-1 floor bound vs int64 brute force", [&](Check& c) { rank_one_oracle(c, n2); });
  report(3, "rank-2 floor bound vs box |m| <= 50", [&](Check& c) { rank_two_box(c, n3); });
  report(4, "h1 totals of the golden examples", h1_totals);
  report(5, "toric duality fuzz (50 x 1000)", toric_fuzz);
  report(6, "quasi-periodicity up to 10q", quasi_periodicity);
  report(7, "section ring of example (i)", section_ring_audit);
  report(8, "Riemann-Roch on P1 and y^2 = x^3 - x", riemann_roch);
  report(9, "torsion of y^2 = x^3 - x", torsion);
  report(10, "classification consistency invariants", [&](Check& c) { consistency(c, n10); });
  std::printf("instances: rank-1 %d, rank-2 %d, consistency %d\n", n2, n3, n10);
  return failures == 0 ? 0 : 1;
}
