#pragma once

// The three quasihomogeneous elliptic K*-surface examples and a few small
// hand-built divisors used across suites.

#include "tvar/tvar.hpp"

namespace tvar::testing {

inline PolyhedralDivisor rank_one_p1(const Rat& at0, const Rat& at1, const Rat& atinf) {
  PolyhedralDivisor d(CurveModel{P1{}}, orthant(1));
  d.set_point(CurvePoint{p1_affine(0)}, at0);
  d.set_point(CurvePoint{p1_affine(1)}, at1);
  d.set_point(CurvePoint{p1_infinity()}, atinf);
  return d;
}

/// D1 = -1/4[0] - 1/4[1] + 3/4[inf]
inline PolyhedralDivisor example_i() { return rank_one_p1(Rat(-1, 4), Rat(-1, 4), Rat(3, 4)); }

/// D1 = -1/3[0] - 1/3[1] + 3/4[inf]
inline PolyhedralDivisor example_ii() { return rank_one_p1(Rat(-1, 3), Rat(-1, 3), Rat(3, 4)); }

/// D1 = -2/3[0] - 2/3[1] + 17/12[inf]
inline PolyhedralDivisor example_iii() { return rank_one_p1(Rat(-2, 3), Rat(-2, 3), Rat(17, 12)); }

/// D1 = 1[0], the weighted cone over P1 with A = k[s,t].
inline PolyhedralDivisor free_plane() {
  PolyhedralDivisor d(CurveModel{P1{}}, orthant(1));
  d.set_point(CurvePoint{p1_affine(0)}, 1);
  return d;
}

inline RatVec m1(long m) { return RatVec{Rat(m)}; }

}  // namespace tvar::testing
