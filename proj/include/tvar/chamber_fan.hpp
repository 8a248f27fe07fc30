#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "tvar/polyhedron.hpp"

namespace tvar {

inline constexpr std::size_t kMaxChamberFanRank = 3;

/// A simplicial cone in M_Q on which every registered support function is
/// linear. `vertex[i]` indexes the vertex of polyhedron i realizing the
/// minimum throughout the chamber.
struct Chamber {
  Cone cone;
  std::vector<std::size_t> vertex;

  /// Sum of the generators; lies in the relative interior.
  RatVec interior_point() const {
    RatVec s(cone.rank(), Rat(0));
    for (const auto& r : cone.rays()) s = s + to_rat(r);
    return s;
  }
};

struct ChamberFan {
  std::size_t rank = 0;
  std::vector<Chamber> chambers;

  /// Distinct chamber generators across the fan.
  std::vector<LatticeVec> rays() const {
    std::vector<LatticeVec> out;
    for (const auto& c : chambers)
      for (const auto& r : c.cone.rays()) out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

namespace detail {

struct Region {
  std::vector<LatticeVec> normals;  // H-representation: <n, m> >= 0
  Cone cone;                        // V-representation
};

inline Region region_from_normals(std::vector<LatticeVec> normals, std::size_t rank) {
  Cone h = make_cone(normals, rank);
  return Region{std::move(normals), dual_cone(h)};
}

inline void split_regions(std::vector<Region>& regions, const LatticeVec& w, std::size_t rank) {
  std::vector<Region> next;
  for (auto& reg : regions) {
    bool pos = false, neg = false;
    for (const auto& r : reg.cone.rays()) {
      Int s = dot(r, w);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (!(pos && neg)) {
      next.push_back(std::move(reg));
      continue;
    }
    auto plus = reg.normals;
    plus.push_back(w);
    auto minus = reg.normals;
    minus.push_back(-w);
    next.push_back(region_from_normals(std::move(plus), rank));
    next.push_back(region_from_normals(std::move(minus), rank));
  }
  regions = std::move(next);
}

inline Int det3(const LatticeVec& a, const LatticeVec& b, const LatticeVec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Fan triangulation of a pointed full-dimensional cone of rank <= 3.
inline std::vector<Cone> triangulate(const Cone& c) {
  const auto& rays = c.rays();
  const std::size_t d = c.rank();
  if (d < 3 || rays.size() == d) return {c};

  // facets of a pointed 3-cone are pairs of rays with all others on one side
  const std::size_t k = rays.size();
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      bool pos = false, neg = false;
      for (std::size_t x = 0; x < k; ++x) {
        if (x == i || x == j) continue;
        Int s = det3(rays[i], rays[j], rays[x]);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (!(pos && neg)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  std::vector<std::size_t> cycle{0};
  std::vector<bool> seen(k, false);
  seen[0] = true;
  while (cycle.size() < k) {
    const auto& nb = adj[cycle.back()];
    auto it = std::find_if(nb.begin(), nb.end(), [&](std::size_t j) { return !seen[j]; });
    if (it == nb.end()) throw Error(ErrorKind::Invalid, "triangulate: rays do not bound a pointed 3-cone");
    seen[*it] = true;
    cycle.push_back(*it);
  }
  std::vector<Cone> out;
  for (std::size_t i = 1; i + 1 < k; ++i)
    out.push_back(make_cone({rays[cycle[0]], rays[cycle[i]], rays[cycle[i + 1]]}, d));
  return out;
}

}  // namespace detail

/// Common linearity refinement of the support functions of `polys` over
/// `weight_cone`, split into simplicial chambers.
inline ChamberFan chamber_fan(std::span<const TailedPolyhedron> polys, const Cone& weight_cone) {
  const std::size_t d = weight_cone.rank();
  if (d > kMaxChamberFanRank)
    throw Error(ErrorKind::UnsupportedRank, "chamber_fan supports rank <= " + std::to_string(kMaxChamberFanRank) +
                                                ", got " + std::to_string(d));
  if (!weight_cone.full_dimensional())
    throw Error(ErrorKind::DimensionMismatch, "chamber_fan needs a full-dimensional weight cone");
  for (const auto& p : polys) {
    require_same_length(p.rank(), d, "chamber_fan");
    if (!(p.tail() == polys.front().tail())) throw Error(ErrorKind::TailMismatch, "chamber_fan needs equal tails");
    for (const auto& r : weight_cone.rays())
      if (!p.tail().in_dual(to_rat(r)))
        throw Error(ErrorKind::OutsideWeightCone, "weight cone generator " + to_string(r) + " leaves the tail dual");
  }

  std::vector<LatticeVec> hyperplanes;
  for (const auto& p : polys) {
    const auto& vs = p.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        auto w = primitive(vs[i] - vs[j]);
        auto lead = std::find_if(w.begin(), w.end(), [](const Int& x) { return x != 0; });
        if (lead != w.end() && *lead < 0) w = -w;
        hyperplanes.push_back(std::move(w));
      }
  }
  std::sort(hyperplanes.begin(), hyperplanes.end());
  hyperplanes.erase(std::unique(hyperplanes.begin(), hyperplanes.end()), hyperplanes.end());

  Cone h0 = dual_cone(weight_cone);
  std::vector<detail::Region> regions{{h0.rays(), weight_cone}};
  for (const auto& w : hyperplanes) detail::split_regions(regions, w, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (std::all_of(regions.begin(), regions.end(), [](const detail::Region& r) { return r.cone.pointed(); }))
      break;
    LatticeVec e(d, 0);
    e[i] = 1;
    std::vector<detail::Region> keep, todo;
    for (auto& r : regions) (r.cone.pointed() ? keep : todo).push_back(std::move(r));
    detail::split_regions(todo, e, d);
    for (auto& r : todo) keep.push_back(std::move(r));
    regions = std::move(keep);
  }

  ChamberFan fan;
  fan.rank = d;
  for (const auto& reg : regions) {
    for (auto& cone : detail::triangulate(reg.cone)) {
      Chamber ch{std::move(cone), {}};
      RatVec x = ch.interior_point();
      for (const auto& p : polys) {
        std::size_t best = 0;
        Rat bv = dot(p.vertices()[0], x);
        for (std::size_t i = 1; i < p.vertices().size(); ++i) {
          Rat v = dot(p.vertices()[i], x);
          if (v < bv) {
            bv = v;
            best = i;
          }
        }
        ch.vertex.push_back(best);
      }
      fan.chambers.push_back(std::move(ch));
    }
  }
  return fan;
}

inline ChamberFan chamber_fan(const std::vector<TailedPolyhedron>& polys, const Cone& weight_cone) {
  return chamber_fan(std::span<const TailedPolyhedron>(polys), weight_cone);
}

}  // namespace tvar
