#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "random_data.hpp"
#include "tvar/tvar.hpp"

using namespace tvar;
using namespace tvar::testing;

namespace {

std::vector<long> as_long(const std::vector<Int>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(static_cast<long>(x));
  return out;
}

std::vector<long> generator_degrees(const GeneratorSet& g) {
  std::vector<long> out;
  for (const auto& x : g.generators) out.push_back(static_cast<long>(x.degree));
  return out;
}

}  // namespace

TEST(GradedDim, Examples) {
  EXPECT_EQ(as_long(hilbert_series(example_i(), 8)), (std::vector<long>{1, 0, 0, 1, 2, 0, 1, 2, 3}));
  EXPECT_EQ(graded_dim(example_i(), 0), 1);
  EXPECT_EQ(graded_dim(example_ii(), 3), 1);

  PolyhedralDivisor ell(CurveModel{make_elliptic(-1, 0)}, orthant(1));
  ell.set_point(CurvePoint{ec_point(0, 0)}, Rat(1, 2));
  ell.set_point(CurvePoint{ec_identity()}, Rat(-1, 4));
  // floor(D1) = -[O], floor(2 D1) = [(0,0)] - [O] is not principal, floor(4 D1) = 2[(0,0)] - [O]
  EXPECT_EQ(as_long(hilbert_series(ell, 4)), (std::vector<long>{1, 0, 0, 0, 1}));

  PolyhedralDivisor flat(CurveModel{P1{}}, orthant(1));
  EXPECT_THROW(graded_dim(flat, 1), Error);
}

TEST(HilbertSeries, Examples) {
  EXPECT_EQ(as_long(hilbert_series(example_i(), 12)), (std::vector<long>{1, 0, 0, 1, 2, 0, 1, 2, 3, 1, 2, 3, 4}));
  EXPECT_EQ(as_long(hilbert_series(example_iii(), 12)), (std::vector<long>{1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 0, 2}));
}

TEST(MonomialBasis, Examples) {
  auto b3 = monomial_basis(example_i(), 3);
  EXPECT_EQ(b3.size(), 1u);
  // floor(3 D1) = -[0] - [1] + 2[inf]: the section t(t - 1) has orders (1,1,-2)
  ASSERT_EQ(b3.factor.size(), 2u);
  EXPECT_EQ(b3.factor[0].second, 1);
  EXPECT_EQ(b3.factor[1].second, 1);
  EXPECT_EQ(monomial_basis(example_i(), 0).size(), 1u);
  EXPECT_EQ(monomial_basis(example_i(), 4).size(), 2u);

  PolyhedralDivisor ell(CurveModel{make_elliptic(-1, 0)}, orthant(1));
  ell.set_point(CurvePoint{ec_identity()}, 1);
  EXPECT_THROW(monomial_basis(ell, 1), Error);
}

TEST(MinimalGenerators, Examples) {
  EXPECT_EQ(generator_degrees(minimal_generators(example_i(), 12)), (std::vector<long>{3, 4, 4}));
  EXPECT_FALSE(minimal_generators(example_i(), 12).beyond_bound);
  EXPECT_EQ(generator_degrees(minimal_generators(free_plane(), 6)), (std::vector<long>{1, 1}));
  EXPECT_TRUE(minimal_generators(example_i(), 2).generators.empty());
}

TEST(Relations, Examples) {
  auto r = relations(example_i(), 12);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].degree, 12);
  EXPECT_EQ(r[0].kernel_dim, 1u);
  EXPECT_EQ(r[0].monomials.size(), 5u);
  ASSERT_EQ(r[0].relations.size(), 1u);
  EXPECT_TRUE(relations(example_i(), 11).empty());
  EXPECT_TRUE(relations(free_plane(), 8).empty());
}

TEST(Relations, ExampleTwoIsAHypersurface) {
  EXPECT_EQ(generator_degrees(minimal_generators(example_ii(), 30)), (std::vector<long>{3, 8, 12}));
  auto r = relations(example_ii(), 30);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].degree, 24);
  EXPECT_EQ(relation_string(r[0].monomials, r[0].relations[0]), "x1^4*x3 + x2^3 - x3^2");
}

TEST(Relations, ExampleThreeNeedsThreeRelations) {
  // four generators cut out by three quadrics in the sense of Hilbert-Burch:
  // not a complete intersection
  EXPECT_EQ(generator_degrees(minimal_generators(example_iii(), 40)), (std::vector<long>{3, 10, 12, 17}));
  auto r = relations(example_iii(), 40);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].degree, 20);
  EXPECT_EQ(relation_string(r[0].monomials, r[0].relations[0]), "x1*x4 - x2^2");
  EXPECT_EQ(r[1].degree, 27);
  EXPECT_EQ(r[2].degree, 34);
}

TEST(SectionRingProperties, BasisSizesAndClosure) {
  Gen g(8);
  const std::vector<CurvePoint> pts{p1_affine(0), p1_affine(1), p1_infinity(), p1_affine(Rat(-1, 2))};
  for (int trial = 0; trial < 25; ++trial) {
    PolyhedralDivisor d(CurveModel{P1{}}, orthant(1));
    for (const auto& p : pts)
      if (g.coin()) d.set_point(p, g.rat(6, 5));
    if (is_proper(d).status != ProperStatus::Proper) continue;
    SectionRing ring(d);
    for (Int m = 0; m <= 10; ++m) {
      EXPECT_EQ(Int(monomial_basis(d, m).size()), graded_dim(d, m));
      EXPECT_EQ(graded_dim(d, m), std::max(Int(0), numer(degree(floor_divisor(evaluate(d, RatVec{Rat(m)})))) + 1));
      for (Int k = 0; k <= m; ++k)
        for (std::size_t a = 0; a < monomial_basis(d, k).size(); ++a)
          for (std::size_t b = 0; b < monomial_basis(d, m - k).size(); ++b)
            EXPECT_NO_THROW(ring.coordinates(ring.multiply(ring.basis(k, a), ring.basis(m - k, b))));
    }
  }
}
