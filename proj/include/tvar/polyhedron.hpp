#pragma once

#include <algorithm>
#include <variant>
#include <vector>

#include "tvar/cone.hpp"

namespace tvar {

/// Result of minimizing a linear form that is unbounded below.
struct MinusInfinity {
  friend bool operator==(MinusInfinity, MinusInfinity) { return true; }
};

using SupportValue = std::variant<Rat, MinusInfinity>;

inline bool is_finite(const SupportValue& v) { return std::holds_alternative<Rat>(v); }

/// Polyhedron conv(vertices) + tail. Vertices are the extreme points, sorted.
class TailedPolyhedron {
 public:
  TailedPolyhedron(std::vector<RatVec> vertices, Cone tail);

  /// The tail cone itself, i.e. the neutral element for Minkowski sums.
  static TailedPolyhedron neutral(const Cone& tail) {
    return TailedPolyhedron({RatVec(tail.rank(), Rat(0))}, tail);
  }

  const std::vector<RatVec>& vertices() const { return vertices_; }
  const Cone& tail() const { return tail_; }
  std::size_t rank() const { return tail_.rank(); }

  bool is_neutral() const { return vertices_.size() == 1 && is_zero(vertices_.front()); }

  bool contains(const RatVec& p) const;

  friend bool operator==(const TailedPolyhedron& a, const TailedPolyhedron& b) {
    return a.tail_ == b.tail_ && a.vertices_ == b.vertices_;
  }

 private:
  std::vector<RatVec> vertices_;
  Cone tail_;
};

namespace detail {

/// p in conv(verts) + cone(rays) + Q>=0 * extra  (extra may be empty).
inline bool in_tailed_hull(const std::vector<RatVec>& verts, const std::vector<LatticeVec>& rays,
                           const RatVec& p, const LatticeVec* extra = nullptr) {
  if (verts.empty()) return false;
  const std::size_t d = p.size();
  const std::size_t nv = verts.size(), nr = rays.size();
  const std::size_t cols = nv + nr + (extra ? 1 : 0);
  RatMatrix a(d + 1, RatVec(cols, Rat(0)));
  for (std::size_t j = 0; j < nv; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = verts[j][i];
    a[d][j] = 1;
  }
  for (std::size_t j = 0; j < nr; ++j)
    for (std::size_t i = 0; i < d; ++i) a[i][nv + j] = rays[j][i];
  if (extra)
    for (std::size_t i = 0; i < d; ++i) a[i][nv + nr] = -(*extra)[i];
  RatVec b = p;
  if (extra) b = RatVec(d, Rat(0));
  b.push_back(1);
  return find_nonneg_solution(a, b, cols).has_value();
}

}  // namespace detail

inline TailedPolyhedron::TailedPolyhedron(std::vector<RatVec> vertices, Cone tail) : tail_(std::move(tail)) {
  if (vertices.empty()) throw Error(ErrorKind::Invalid, "polyhedron needs at least one vertex");
  for (const auto& v : vertices) require_same_length(v.size(), tail_.rank(), "polyhedron vertex");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (std::size_t i = vertices.size(); i-- > 0 && vertices.size() > 1;) {
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < vertices.size(); ++j)
      if (j != i) others.push_back(vertices[j]);
    if (detail::in_tailed_hull(others, tail_.rays(), vertices[i]))
      vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
  }
  vertices_ = std::move(vertices);
}

inline bool TailedPolyhedron::contains(const RatVec& p) const {
  require_same_length(p.size(), rank(), "polyhedron contains");
  return detail::in_tailed_hull(vertices_, tail_.rays(), p);
}

/// h(m) = min <m, p> over the polyhedron; MinusInfinity off the tail's dual.
inline SupportValue support_eval(const TailedPolyhedron& p, const RatVec& m) {
  require_same_length(m.size(), p.rank(), "support_eval");
  if (!p.tail().in_dual(m)) return MinusInfinity{};
  Rat best = dot(p.vertices().front(), m);
  for (std::size_t i = 1; i < p.vertices().size(); ++i) best = std::min(best, dot(p.vertices()[i], m));
  return best;
}

/// Finite support value; throws when m lies outside the tail's dual cone.
inline Rat support_value(const TailedPolyhedron& p, const RatVec& m) {
  auto v = support_eval(p, m);
  if (!is_finite(v)) throw Error(ErrorKind::OutsideWeightCone, "m = " + to_string(m) + " is outside the dual of the tail");
  return std::get<Rat>(v);
}

inline TailedPolyhedron minkowski_sum(const TailedPolyhedron& a, const TailedPolyhedron& b) {
  if (!(a.tail() == b.tail())) throw Error(ErrorKind::TailMismatch, "minkowski_sum needs identical tail cones");
  std::vector<RatVec> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) sums.push_back(u + v);
  return TailedPolyhedron(std::move(sums), a.tail());
}

/// Is there t >= 0 with t * ray in p?
inline bool ray_meets(const TailedPolyhedron& p, const LatticeVec& ray) {
  require_same_length(ray.size(), p.rank(), "ray_meets");
  return detail::in_tailed_hull(p.vertices(), p.tail().rays(), RatVec(p.rank(), Rat(0)), &ray);
}

}  // namespace tvar
