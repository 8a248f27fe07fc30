#pragma once

#include <string>
#include <vector>

#include "tvar/pdiv.hpp"

namespace tvar {

namespace detail {

inline const AffineSpace& require_affine_space(const PolyhedralDivisor& d, const char* what) {
  auto* a = std::get_if<AffineSpace>(&d.base());
  if (!a) throw Error(ErrorKind::WrongShape, std::string(what) + " needs an affine space base");
  for (const auto& [p, delta] : d.coefficients()) {
    auto* h = std::get_if<Hyperplane>(&p);
    if (!h || h->index < 1 || h->index > a->dim)
      throw Error(ErrorKind::UnsupportedSupport, to_string(p) + " is not a coordinate hyperplane of A^" +
                                                     std::to_string(a->dim));
  }
  return *a;
}

}  // namespace detail

/// Cone in N x Z^n spanned by (sigma, 0) and (Delta_i, e_i); coordinates put
/// N first. A missing coefficient contributes (0, e_i).
inline Cone toric_cone(const PolyhedralDivisor& d) {
  const unsigned n = detail::require_affine_space(d, "toric_cone").dim;
  const std::size_t r = d.rank();
  std::vector<LatticeVec> gens;
  for (const auto& ray : d.tail().rays()) {
    LatticeVec g = ray;
    g.resize(r + n, 0);
    gens.push_back(std::move(g));
  }
  for (unsigned i = 1; i <= n; ++i) {
    auto it = d.coefficients().find(Hyperplane{i});
    std::vector<RatVec> verts = it == d.coefficients().end() ? std::vector<RatVec>{RatVec(r, Rat(0))}
                                                             : it->second.vertices();
    for (auto v : verts) {
      v.resize(r + n, Rat(0));
      v[r + i - 1] = 1;
      gens.push_back(primitive(v));
    }
  }
  return make_cone(std::move(gens), r + n);
}

/// (m, r) lies in the dual of toric_cone(d) iff m is a weight and
/// r_i >= -h_i(m) for every coordinate hyperplane.
inline bool weight_membership(const PolyhedralDivisor& d, const LatticeVec& m, const LatticeVec& r) {
  const unsigned n = detail::require_affine_space(d, "weight_membership").dim;
  require_same_length(m.size(), d.rank(), "weight_membership");
  require_same_length(r.size(), n, "weight_membership");
  const RatVec mq = to_rat(m);
  if (!d.tail().in_dual(mq)) return false;
  for (unsigned i = 1; i <= n; ++i) {
    auto it = d.coefficients().find(Hyperplane{i});
    Rat h = it == d.coefficients().end() ? Rat(0) : support_value(it->second, mq);
    if (Rat(r[i - 1]) < -h) return false;
  }
  return true;
}

struct ConeDiagnostics {
  enum Kind { Smooth, Simplicial, NonSimplicial } kind = NonSimplicial;
  Int index = 0;  // gcd of the maximal minors of the ray matrix; 1 when smooth
};

inline const char* to_string(ConeDiagnostics::Kind k) {
  switch (k) {
    case ConeDiagnostics::Smooth: return "smooth";
    case ConeDiagnostics::Simplicial: return "simplicial";
    case ConeDiagnostics::NonSimplicial: return "non_simplicial";
  }
  return "?";
}

inline ConeDiagnostics cone_diagnostics(const Cone& c) {
  const auto& rays = c.rays();
  const std::size_t k = rays.size(), d = c.rank();
  if (k == 0) return {ConeDiagnostics::Smooth, 1};
  if (rank_of(rays, d) < k) return {ConeDiagnostics::NonSimplicial, 0};

  // gcd over all k x k minors: choose k of the d columns
  Int g = 0;
  std::vector<bool> pick(d, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    RatMatrix minor;
    for (const auto& ray : rays) {
      RatVec row;
      for (std::size_t j = 0; j < d; ++j)
        if (pick[j]) row.push_back(Rat(ray[j]));
      minor.push_back(std::move(row));
    }
    g = gcd(g, numer(determinant(minor)));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (g < 0) g = -g;
  return {g == 1 ? ConeDiagnostics::Smooth : ConeDiagnostics::Simplicial, g};
}

}  // namespace tvar
