#pragma once

#include <algorithm>
#include <vector>

#include "tvar/linalg.hpp"

namespace tvar {

/// Highest ambient rank for which dual cones are computed.
inline constexpr std::size_t kMaxDualConeRank = 4;

/// Rational polyhedral cone given by primitive integer generators.
///
/// Generators are kept sorted and irredundant. For pointed cones this makes
/// the ray list canonical; for cones with lineality the list is one minimal
/// generating set among several.
class Cone {
 public:
  /// The zero cone {0} of the given rank.
  explicit Cone(std::size_t rank) : rank_(rank) {}

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVec>& rays() const { return rays_; }
  bool pointed() const { return pointed_; }

  /// Dimension of the linear span of the cone.
  std::size_t dim() const { return rank_of(rays_, rank_); }
  bool full_dimensional() const { return dim() == rank_; }

  bool contains(const RatVec& v) const;
  bool contains(const LatticeVec& v) const { return contains(to_rat(v)); }

  /// True iff <m, r> >= 0 for every generator r.
  bool in_dual(const RatVec& m) const {
    require_same_length(m.size(), rank_, "in_dual");
    return std::all_of(rays_.begin(), rays_.end(), [&](const LatticeVec& r) { return dot(r, m) >= 0; });
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_;
  }

  friend Cone make_cone(std::vector<LatticeVec> rays, std::size_t rank);

 private:
  std::size_t rank_;
  std::vector<LatticeVec> rays_;
  bool pointed_ = true;
};

namespace detail {

/// Is v a nonnegative combination of gens?
inline bool in_cone(const std::vector<LatticeVec>& gens, const RatVec& v) {
  if (gens.empty()) return is_zero(v);
  const std::size_t d = v.size();
  RatMatrix a(d, RatVec(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) a[i][j] = gens[j][i];
  return find_nonneg_solution(a, v, gens.size()).has_value();
}

inline bool is_pointed(const std::vector<LatticeVec>& gens, std::size_t d) {
  if (gens.empty()) return true;
  // a nonzero x >= 0 with sum(x)=1 and G x = 0 witnesses a line
  RatMatrix a(d + 1, RatVec(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = gens[j][i];
    a[d][j] = 1;
  }
  RatVec b(d + 1, Rat(0));
  b[d] = 1;
  return !find_nonneg_solution(a, b, gens.size()).has_value();
}

}  // namespace detail

inline bool Cone::contains(const RatVec& v) const {
  require_same_length(v.size(), rank_, "cone_contains");
  return detail::in_cone(rays_, v);
}

/// Builds a cone from arbitrary generators: drops zeros, primitivizes and
/// removes every generator that is a nonnegative combination of the rest.
inline Cone make_cone(std::vector<LatticeVec> rays, std::size_t rank) {
  Cone c(rank);
  std::vector<LatticeVec> gens;
  for (auto& r : rays) {
    require_same_length(r.size(), rank, "make_cone");
    if (is_zero(r)) continue;
    gens.push_back(primitive(r));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<LatticeVec> others;
    others.reserve(gens.size() - 1);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (detail::in_cone(others, to_rat(gens[i]))) gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
  }
  c.pointed_ = detail::is_pointed(gens, rank);
  c.rays_ = std::move(gens);
  return c;
}

inline Cone make_cone(std::vector<LatticeVec> rays) {
  if (rays.empty()) throw Error(ErrorKind::DimensionMismatch, "make_cone: rank unknown for empty ray list");
  const std::size_t rank = rays.front().size();
  return make_cone(std::move(rays), rank);
}

/// The nonnegative orthant of the given rank.
inline Cone orthant(std::size_t rank) {
  std::vector<LatticeVec> rays;
  for (std::size_t i = 0; i < rank; ++i) {
    LatticeVec e(rank, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  return make_cone(rays, rank);
}

/// Same set of points, regardless of which generators were chosen.
inline bool same_cone(const Cone& a, const Cone& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& r : a.rays())
    if (!b.contains(r)) return false;
  for (const auto& r : b.rays())
    if (!a.contains(r)) return false;
  return true;
}

/// Generators of {m : <m, v> >= 0 for all v in c}.
///
/// The lineality space ker(R) contributes +-basis vectors; the extreme rays
/// of the pointed remainder inside span(R) are found by letting dim-1
/// independent generators be tight.
inline Cone dual_cone(const Cone& c) {
  const std::size_t d = c.rank();
  if (d > kMaxDualConeRank)
    throw Error(ErrorKind::UnsupportedRank, "dual_cone supports rank <= " + std::to_string(kMaxDualConeRank) +
                                                ", got " + std::to_string(d));
  RatMatrix rows;
  for (const auto& r : c.rays()) rows.push_back(to_rat(r));
  auto lin = nullspace(rows, d);

  std::vector<LatticeVec> gens;
  for (const auto& l : lin) {
    auto p = primitive(l);
    gens.push_back(p);
    gens.push_back(-p);
  }
  const std::size_t t = d - lin.size();
  if (t == 0) return make_cone(gens, d);

  const auto& rays = c.rays();
  const std::size_t k = rays.size();
  const std::size_t choose = t - 1;
  std::vector<std::size_t> idx(choose);
  for (std::size_t i = 0; i < choose; ++i) idx[i] = i;

  auto visit = [&]() {
    RatMatrix eq;
    for (const auto& l : lin) eq.push_back(l);
    for (auto i : idx) eq.push_back(to_rat(rays[i]));
    auto ns = nullspace(eq, d);
    if (ns.size() != 1) return;
    auto w = ns.front();
    bool pos = false, neg = false;
    for (const auto& r : rays) {
      Rat s = dot(r, w);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (pos && neg) return;
    if (neg) w = Rat(-1) * w;
    gens.push_back(primitive(w));
  };

  if (choose > k) return make_cone(gens, d);
  for (;;) {
    visit();
    // next combination
    std::size_t i = choose;
    while (i > 0 && idx[i - 1] == k - choose + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < choose; ++j) idx[j] = idx[j - 1] + 1;
  }
  return make_cone(gens, d);
}

}  // namespace tvar
