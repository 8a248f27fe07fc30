#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tvar/classify.hpp"

namespace tvar {

// Over P1 with affine coordinate t, write E_m = floor(m D1) = sum e_z(m) z.
// Every section of O(E_m) is N(t) * prod_{z finite} (b_z t - a_z)^(-e_z(m))
// with N a polynomial of degree <= deg E_m, so A_m is identified with the
// polynomials of that degree.

using Poly = std::vector<Rat>;  // coefficient of t^k at index k

namespace detail {

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_pow(const Poly& a, const Int& e) {
  Poly out{Rat(1)};
  for (Int i = 0; i < e; ++i) out = poly_mul(out, a);
  return out;
}

inline void require_graded_base(const PolyhedralDivisor& d, const char* what) {
  require_rank_one_projective(d, what);
  const CurveModel& c = *d.curve();
  if (!std::holds_alternative<P1>(c) && !std::holds_alternative<EllipticQ>(c) && genus(c) != 0)
    throw Error(ErrorKind::WrongShape, std::string(what) + " needs P1, an explicit elliptic curve or genus 0");
  require_not_nonproper(d);
}

inline void require_p1(const PolyhedralDivisor& d, const char* what) {
  require_graded_base(d, what);
  if (!std::holds_alternative<P1>(*d.curve()))
    throw Error(ErrorKind::WrongShape, std::string(what) + " needs the base P1");
}

}  // namespace detail

inline Int graded_dim(const PolyhedralDivisor& d, const Int& m) {
  detail::require_graded_base(d, "graded_dim");
  if (m < 0) throw Error(ErrorKind::OutsideWeightCone, "negative degree " + to_string(m));
  auto h = h0_dim(floor_divisor(evaluate(d, RatVec{Rat(m)})));
  if (!h) throw Error(ErrorKind::WrongShape, "h0 cannot be decided on " + describe(*d.curve()));
  return *h;
}

inline std::vector<Int> hilbert_series(const PolyhedralDivisor& d, const Int& max_degree) {
  std::vector<Int> out;
  for (Int m = 0; m <= max_degree; ++m) out.push_back(graded_dim(d, m));
  return out;
}

/// Basis t^k * prod (b_z t - a_z)^(-e_z), k = 0..deg E_m, of A_m over P1.
struct GradedPiece {
  Int m;
  QDivisor floor;                               // E_m
  std::vector<std::pair<CurvePoint, Int>> factor;  // finite support points with exponent -e_z(m)
  std::vector<Int> t_powers;

  std::size_t size() const { return t_powers.size(); }
};

inline GradedPiece monomial_basis(const PolyhedralDivisor& d, const Int& m) {
  detail::require_p1(d, "monomial_basis");
  GradedPiece out{m, floor_divisor(evaluate(d, RatVec{Rat(m)})), {}, {}};
  for (const auto& [p, c] : out.floor.terms())
    if (std::get<P1Point>(p).b != 0) out.factor.emplace_back(p, -numer(c));
  const Int deg = numer(degree(out.floor));
  for (Int k = 0; k <= deg; ++k) out.t_powers.push_back(k);
  return out;
}

/// Homogeneous element of the section ring: its numerator polynomial in A_m.
struct GradedElement {
  Int m;
  Poly numerator;
};

/// Multiplication in A[Y, D] for rank-one data over P1.
class SectionRing {
 public:
  explicit SectionRing(const PolyhedralDivisor& d) : slopes_(ray_slope_data(d)) {
    detail::require_p1(d, "section ring");
  }

  /// e_z(m) for the finite support points, in slope order.
  Int floor_coefficient(std::size_t i, const Int& m) const { return floor_div(m * slopes_[i].p, slopes_[i].q); }

  Int dim(const Int& m) const { return std::max(Int(0), floor_degree(slopes_, m) + 1); }

  GradedElement multiply(const GradedElement& x, const GradedElement& y) const {
    Poly n = detail::poly_mul(x.numerator, y.numerator);
    const Int m = x.m + y.m;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
      const auto& pt = std::get<P1Point>(slopes_[i].point);
      if (pt.b == 0) continue;
      Int e = floor_coefficient(i, m) - floor_coefficient(i, x.m) - floor_coefficient(i, y.m);
      if (e > 0) n = detail::poly_mul(n, detail::poly_pow(Poly{Rat(-pt.a), Rat(pt.b)}, e));
    }
    return {m, std::move(n)};
  }

  /// Coordinates of x in the basis t^0..t^(dim-1).
  RatVec coordinates(const GradedElement& x) const {
    const Int n = dim(x.m);
    RatVec out(static_cast<std::size_t>(n), Rat(0));
    for (std::size_t k = 0; k < x.numerator.size(); ++k) {
      if (x.numerator[k] == 0) continue;
      if (k >= out.size()) throw Error(ErrorKind::Invalid, "section exceeds the pole bound in degree " + to_string(x.m));
      out[k] = x.numerator[k];
    }
    return out;
  }

  GradedElement basis(const Int& m, std::size_t k) const {
    Poly p(k + 1, Rat(0));
    p[k] = 1;
    return {m, std::move(p)};
  }

  const RaySlopeData& slopes() const { return slopes_; }

 private:
  RaySlopeData slopes_;
};

struct Generator {
  Int degree;
  std::size_t basis_index;  // t^basis_index in the degree-m basis
};

struct GeneratorSet {
  std::vector<Generator> generators;
  Int bound;                  // degrees above this are flagged
  bool beyond_bound = false;  // some generator exceeds the bound
};

namespace detail {

/// Incrementally tracks the row space of a set of vectors.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t cols) : cols_(cols) {}

  /// Adds v and reports whether it enlarged the span.
  bool add(RatVec v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (v[p] != 0) {
        const Rat f = v[p];
        for (std::size_t j = 0; j < cols_; ++j) v[j] -= f * rows_[r][j];
      }
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rat& x) { return x != 0; });
    if (it == v.end()) return false;
    const std::size_t p = static_cast<std::size_t>(it - v.begin());
    const Rat lead = v[p];
    for (auto& x : v) x /= lead;
    for (auto& row : rows_)
      if (row[p] != 0) {
        const Rat f = row[p];
        for (std::size_t j = 0; j < cols_; ++j) row[j] -= f * v[j];
      }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t cols_;
  std::vector<RatVec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

inline GeneratorSet minimal_generators(const PolyhedralDivisor& d, const Int& max_degree) {
  const SectionRing ring(d);
  const auto& s = ring.slopes();
  GeneratorSet out;
  out.bound = slope_period(s) * (1 + ceil(Rat(static_cast<long>(s.size())) / slope_degree(s)));
  for (Int m = 1; m <= max_degree; ++m) {
    const Int n = ring.dim(m);
    if (n == 0) continue;
    detail::SpanTracker span(static_cast<std::size_t>(n));
    for (const auto& g : out.generators) {
      const Int rest = m - g.degree;
      for (std::size_t k = 0; k < static_cast<std::size_t>(ring.dim(rest)); ++k)
        span.add(ring.coordinates(ring.multiply(ring.basis(g.degree, g.basis_index), ring.basis(rest, k))));
    }
    for (std::size_t k = 0; k < static_cast<std::size_t>(n) && span.rank() < n; ++k) {
      RatVec e(static_cast<std::size_t>(n), Rat(0));
      e[k] = 1;
      if (span.add(std::move(e))) {
        out.generators.push_back({m, k});
        if (m > out.bound) out.beyond_bound = true;
      }
    }
  }
  return out;
}

/// Relations first appearing in one degree.
struct RelationBlock {
  Int degree;
  std::size_t kernel_dim = 0;                // full kernel of the evaluation map in this degree
  std::vector<std::vector<Int>> monomials;   // exponent vectors over the generators, lex descending
  std::vector<std::vector<Int>> relations;   // new relations, primitive integer coefficient vectors
};

namespace detail {

inline void monomials_of_degree(const std::vector<Generator>& gens, std::size_t i, Int left, std::vector<Int>& cur,
                                std::vector<std::vector<Int>>& out) {
  if (i == gens.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (Int e = left / gens[i].degree; e >= 0; --e) {
    cur[i] = e;
    monomials_of_degree(gens, i + 1, left - e * gens[i].degree, cur, out);
  }
  cur[i] = 0;
}

inline std::vector<Int> primitive_integer(const RatVec& v) {
  LatticeVec p = primitive(v);
  auto lead = std::find_if(p.begin(), p.end(), [](const Int& x) { return x != 0; });
  if (lead != p.end() && *lead < 0) p = -p;
  return p;
}

}  // namespace detail

inline std::vector<RelationBlock> relations(const PolyhedralDivisor& d, const Int& max_degree) {
  const SectionRing ring(d);
  const auto gens = minimal_generators(d, max_degree).generators;
  const std::size_t s = gens.size();

  std::map<std::vector<Int>, GradedElement> cache;
  cache.emplace(std::vector<Int>(s, 0), GradedElement{0, Poly{Rat(1)}});
  std::function<const GradedElement&(const std::vector<Int>&)> eval = [&](const std::vector<Int>& a)
      -> const GradedElement& {
    if (auto it = cache.find(a); it != cache.end()) return it->second;
    std::size_t i = 0;
    while (a[i] == 0) ++i;
    auto prev = a;
    --prev[i];
    GradedElement x = ring.multiply(eval(prev), ring.basis(gens[i].degree, gens[i].basis_index));
    return cache.emplace(a, std::move(x)).first->second;
  };

  std::vector<std::pair<Int, std::vector<Int>>> found;  // (degree, relation) with its monomial list
  std::map<Int, std::vector<std::vector<Int>>> monomial_lists;
  std::vector<RelationBlock> out;
  for (Int m = 1; m <= max_degree && s > 0; ++m) {
    std::vector<std::vector<Int>> monos;
    std::vector<Int> cur(s, 0);
    detail::monomials_of_degree(gens, 0, m, cur, monos);
    if (monos.size() < 2) {
      monomial_lists[m] = monos;
      continue;
    }
    const std::size_t n = static_cast<std::size_t>(ring.dim(m));
    RatMatrix eval_matrix(n, RatVec(monos.size(), Rat(0)));
    for (std::size_t j = 0; j < monos.size(); ++j) {
      RatVec c = ring.coordinates(eval(monos[j]));
      for (std::size_t i = 0; i < n; ++i) eval_matrix[i][j] = c[i];
    }
    auto kernel = nullspace(eval_matrix, monos.size());
    std::map<std::vector<Int>, std::size_t> index;
    for (std::size_t j = 0; j < monos.size(); ++j) index[monos[j]] = j;

    // consequences mu * r of relations found in lower degrees
    detail::SpanTracker span(monos.size());
    for (const auto& [deg, rel] : found) {
      std::vector<std::vector<Int>> shifts;
      std::vector<Int> c0(s, 0);
      detail::monomials_of_degree(gens, 0, m - deg, c0, shifts);
      const auto& lower = monomial_lists[deg];
      for (const auto& mu : shifts) {
        RatVec v(monos.size(), Rat(0));
        for (std::size_t j = 0; j < lower.size(); ++j) {
          if (rel[j] == 0) continue;
          auto target = lower[j];
          for (std::size_t i = 0; i < s; ++i) target[i] += mu[i];
          v[index.at(target)] = Rat(rel[j]);
        }
        span.add(std::move(v));
      }
    }

    RelationBlock block{m, kernel.size(), monos, {}};
    for (auto& k : kernel)
      if (span.add(k)) block.relations.push_back(detail::primitive_integer(k));
    for (const auto& r : block.relations) found.emplace_back(m, r);
    monomial_lists[m] = std::move(monos);
    if (!block.relations.empty()) out.push_back(std::move(block));
  }
  return out;
}

/// Renders a relation as a polynomial in generator names x1, x2, ...
inline std::string relation_string(const std::vector<std::vector<Int>>& monos, const std::vector<Int>& rel) {
  std::string s;
  for (std::size_t j = 0; j < monos.size(); ++j) {
    if (rel[j] == 0) continue;
    Int c = rel[j];
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (c < 0) c = -c;
    std::string mono;
    for (std::size_t i = 0; i < monos[j].size(); ++i) {
      if (monos[j][i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (monos[j][i] > 1) mono += "^" + to_string(monos[j][i]);
    }
    if (mono.empty()) mono = "1";
    s += c == 1 ? mono : to_string(c) + "*" + mono;
  }
  return s;
}

}  // namespace tvar
