#pragma once

#include <optional>
#include <vector>

#include "tvar/rational.hpp"

namespace tvar {

/// Dense row-major matrix over Q.
using RatMatrix = std::vector<RatVec>;

/// Reduced row echelon form in place, pivoting only among the first `cols`
/// columns; later columns (an augmented right-hand side) are carried along.
/// Returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][c];
    for (std::size_t k = c; k < a[row].size(); ++k) a[row][k] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = c; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix a, std::size_t cols) { return rref(a, cols).size(); }

inline std::size_t rank_of(const std::vector<LatticeVec>& vs, std::size_t dim) {
  RatMatrix a;
  for (const auto& v : vs) a.push_back(to_rat(v));
  return rank(std::move(a), dim);
}

/// Basis of {x : a x = 0}. An empty matrix yields the standard basis.
inline std::vector<RatVec> nullspace(RatMatrix a, std::size_t cols) {
  auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec x(cols, Rat(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -a[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Unique solution of a square nonsingular system, or nullopt if singular.
inline std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
  const std::size_t n = a.size();
  RatMatrix aug(n, RatVec(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    require_same_length(a[i].size(), n, "solve");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n] = b[i];
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline Rat determinant(RatMatrix a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Exact phase-one simplex: some x >= 0 with a x = b, or nullopt when the
/// system is infeasible. Bland's rule keeps it cycle-free.
inline std::optional<RatVec> find_nonneg_solution(const RatMatrix& a, const RatVec& b,
                                                  std::size_t cols) {
  const std::size_t m = a.size();
  require_same_length(b.size(), m, "find_nonneg_solution");
  if (m == 0) return RatVec(cols, Rat(0));

  const std::size_t width = cols + m;  // originals then artificials
  RatMatrix t(m, RatVec(width + 1, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    require_same_length(a[i].size(), cols, "find_nonneg_solution");
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
    t[i][cols + i] = 1;
    t[i][width] = flip ? Rat(-b[i]) : b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = cols + i;

  // reduced costs of the phase-one objective (sum of artificials)
  RatVec cost(width + 1, Rat(0));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  for (std::size_t i = 0; i < m; ++i) cost[width] -= t[i][width];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;

    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][width] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for phase one

    Rat inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t k = 0; k <= width; ++k) t[i][k] -= f * t[leave][k];
    }
    if (cost[enter] != 0) {
      Rat f = cost[enter];
      for (std::size_t k = 0; k <= width; ++k) cost[k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }

  if (cost[width] != 0) return std::nullopt;  // artificial sum stays positive
  RatVec x(cols, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < cols) x[basis[i]] = t[i][width];
  return x;
}

}  // namespace tvar
