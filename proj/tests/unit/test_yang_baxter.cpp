#include <gtest/gtest.h>

#include "latticeforms/json_io.hpp"
#include "test_support.hpp"

using namespace latticeforms;
using lf_test::random_weights;

namespace {

const VertexWeights kIdentity = VertexWeights::identity();

TensorOperator swap23() {
  TensorOperator p(8, 8);
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned c = 0; c < 2; ++c) p(4 * a + 2 * c + b, 4 * a + 2 * b + c) = 1;
  return p;
}

FieldMatrix<Rational> random_4x4(std::mt19937_64& rng) {
  FieldMatrix<Rational> m(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = lf_test::random_rational(rng);
  return m;
}

}  // namespace

TEST(Weights, MatrixLayout) {
  EXPECT_EQ(weights_to_matrix(kIdentity).matrix(), FieldMatrix<Rational>::identity(4));
  VertexWeights w{};
  w.c_neg1 = 5;
  const auto m = weights_to_matrix(w).matrix();
  EXPECT_EQ(m(2, 1), 5);
  EXPECT_EQ(component(w, 0, 1, 1, 0), 5);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto r = random_weights(rng);
    EXPECT_EQ(matrix_to_weights(weights_to_matrix(r)), r);
    EXPECT_EQ(weights_to_matrix(matrix_to_weights(weights_to_matrix(r))).matrix(), weights_to_matrix(r).matrix());
  }
  auto bad = FieldMatrix<Rational>::identity(4);
  bad(0, 1) = 1;
  EXPECT_THROW(RMatrix{bad}, std::domain_error);
  EXPECT_THROW(RMatrix{FieldMatrix<Rational>::identity(3)}, std::invalid_argument);
}

TEST(Component, AllEightPositionsLocked) {
  const VertexWeights w{1, 2, 3, 4, 5, 6, 7, 8};
  // (nu, beta, theta, gamma) = (left, top, right, bottom)
  EXPECT_EQ(component(w, 0, 0, 0, 0), w.a1);
  EXPECT_EQ(component(w, 1, 1, 1, 1), w.a_neg1);
  EXPECT_EQ(component(w, 0, 1, 0, 1), w.b1);
  EXPECT_EQ(component(w, 1, 0, 1, 0), w.b_neg1);
  EXPECT_EQ(component(w, 1, 0, 0, 1), w.c1);
  EXPECT_EQ(component(w, 0, 1, 1, 0), w.c_neg1);
  EXPECT_EQ(component(w, 1, 1, 0, 0), w.d1);
  EXPECT_EQ(component(w, 0, 0, 1, 1), w.d_neg1);
  EXPECT_EQ(component(kIdentity, 0, 0, 0, 0), 1);
  const auto m = weights_to_matrix(w).matrix();
  int nonzero = 0;
  for (unsigned k = 0; k < 16; ++k) {
    const unsigned nu = k >> 3 & 1, beta = k >> 2 & 1, theta = k >> 1 & 1, gamma = k & 1;
    const auto c = component(w, nu, beta, theta, gamma);
    EXPECT_EQ(c, m(2 * theta + gamma, 2 * nu + beta));
    nonzero += sgn(c) != 0;
  }
  EXPECT_EQ(nonzero, 8);
  EXPECT_THROW(component(w, 2, 0, 0, 0), std::invalid_argument);
}

TEST(Embed, Examples) {
  for (auto slot : {Slot::s12, Slot::s13, Slot::s23})
    EXPECT_EQ(embed(weights_to_matrix(kIdentity), slot), TensorOperator::identity(8));

  FieldMatrix<Rational> single(4, 4);
  single(2, 1) = 7;  // ((1,0),(0,1))
  const auto e = embed(single, Slot::s12);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      const bool hit = (r == 4 && c == 2) || (r == 5 && c == 3);
      EXPECT_EQ(e(r, c), hit ? 7 : 0) << r << "," << c;
    }

  std::mt19937_64 rng(2);
  const auto p = swap23();
  for (int k = 0; k < 10; ++k) {
    const auto m = random_4x4(rng);
    EXPECT_EQ(embed(m, Slot::s13), p * embed(m, Slot::s12) * p);
  }
  EXPECT_THROW(embed(FieldMatrix<Rational>(3, 3), Slot::s12), std::invalid_argument);
}

TEST(Commutator, Examples) {
  EXPECT_TRUE(yb_commutator(kIdentity, kIdentity, kIdentity).is_zero());
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    auto d = random_weights(rng);
    d.c1 = d.c_neg1 = d.d1 = d.d_neg1 = 0;
    EXPECT_TRUE(yb_commutator(d, d, d).is_zero());
  }
  EXPECT_FALSE(yb_commutator(VertexWeights{1, 2, 3, 4, 5, 6, 7, 8}, VertexWeights{2, 1, 1, 3, 1, 2, 5, 1},
                             VertexWeights{1, 1, 2, 3, 5, 8, 13, 21})
                   .is_zero());
}

TEST(Commutator, LinearInR) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto r1 = random_weights(rng), r2 = random_weights(rng), s = random_weights(rng), t = random_weights(rng);
    auto a1 = r1.as_array(), a2 = r2.as_array();
    std::array<Rational, 8> sum, scaled;
    const Rational lambda = lf_test::random_rational(rng);
    for (std::size_t i = 0; i < 8; ++i) {
      sum[i] = a1[i] + a2[i];
      scaled[i] = lambda * a1[i];
    }
    EXPECT_EQ(yb_commutator(VertexWeights::from_array(sum), s, t), yb_commutator(r1, s, t) + yb_commutator(r2, s, t));
    auto expect = yb_commutator(r1, s, t);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) expect(r, c) *= lambda;
    EXPECT_EQ(yb_commutator(VertexWeights::from_array(scaled), s, t), expect);
  }
}

TEST(StarTriangle, Examples) {
  for (unsigned k = 0; k < 64; ++k)
    EXPECT_EQ(star_triangle_residual(kIdentity, kIdentity, kIdentity, BoundaryHex::from_index(k)), 0);
  VertexWeights a{};
  a.a1 = 2;
  EXPECT_EQ(star_triangle_residual(a, a, a, BoundaryHex{}), 0);
}

TEST(StarTriangle, EntriesAreSignedResiduals) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const auto r = random_weights(rng), s = random_weights(rng), t = random_weights(rng);
    const auto c = yb_commutator(r, s, t);
    std::set<std::pair<std::size_t, std::size_t>> cells;
    for (unsigned e = 0; e < 64; ++e) {
      const auto x = BoundaryHex::from_index(e);
      EXPECT_EQ(c(x.commutator_row(), x.commutator_col()), -star_triangle_residual(r, s, t, x));
      cells.insert({x.commutator_row(), x.commutator_col()});
    }
    EXPECT_EQ(cells.size(), 64u);
  }
}

TEST(Residuals28, Examples) {
  for (const auto& x : residuals28(kIdentity, kIdentity, kIdentity)) EXPECT_EQ(x, 0);
  // only c weights, c1 = 2, c-1 = 1: every equation but the first c-equation has a vanishing factor
  VertexWeights c{};
  c.c1 = 2;
  c.c_neg1 = 1;
  const auto res = residuals28(c, c, c);
  for (std::size_t k = 0; k < 28; ++k) EXPECT_EQ(sgn(res[k]) != 0, k == 24) << k;
  EXPECT_EQ(residual28_labels()[24].substr(0, 4), "eq7:");
  EXPECT_EQ(residual28_labels()[0].substr(0, 15), "eq1(i=1,j=1): a");
}

TEST(Residuals28, EveryNonzeroCommutatorEntryIsCovered) {
  // each residual equals +-1 times some commutator entry, and the 28 cover all entries that can be nonzero
  std::mt19937_64 rng(6);
  for (int k = 0; k < 30; ++k) {
    const auto r = random_weights(rng, true), s = random_weights(rng, true), t = random_weights(rng, true);
    const auto c = yb_commutator(r, s, t);
    std::set<std::vector<Rational>> entries;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (sgn(c(i, j)) != 0) entries.insert({abs(c(i, j))});
    std::set<std::vector<Rational>> res;
    for (const auto& x : residuals28(r, s, t))
      if (sgn(x) != 0) res.insert({abs(x)});
    EXPECT_EQ(entries, res);
  }
}

TEST(Invariants, F) {
  EXPECT_EQ(f_invariant(kIdentity), 2);
  EXPECT_EQ(f_invariant(VertexWeights::all_ones()), 0);
  EXPECT_EQ(f_invariant(VertexWeights{2, 3, 1, 1, 1, 2, 1, 1}), 4);
}

TEST(Invariants, G) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto s = random_weights(rng), t = random_weights(rng);
    EXPECT_EQ(g_invariant(1, s, s), 0);
    EXPECT_EQ(g_invariant(-1, t, t), 0);
    for (int i : {1, -1}) {
      const Rational expected = t.c(-i) * t.d(i) * s.b_neg1 * s.a1 + t.c(-i) * t.d(i) * s.a_neg1 * s.b1 -
                                s.c(-i) * s.d(i) * t.b_neg1 * t.a1 - s.c(-i) * s.d(i) * t.a_neg1 * t.b1;
      EXPECT_EQ(g_invariant(i, s, t), expected);
    }
    auto s0 = s, t0 = t;
    s0.c_neg1 = s0.d1 = t0.c_neg1 = t0.d1 = 0;
    EXPECT_EQ(g_invariant(1, s0, t0), 0);
  }
  EXPECT_THROW(g_invariant(0, kIdentity, kIdentity), std::invalid_argument);
}

TEST(Conditions, Examples) {
  const auto ones = VertexWeights::all_ones();
  const auto rep = check_necessary_conditions(ones, ones);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.F_S, 0);
  EXPECT_EQ(rep.G_plus, 0);

  // symmetric with F = 0: (i), (ii) hold, (iii) reads G_i^2 = 0
  const VertexWeights s{1, 1, 1, 1, 1, 1, 1, 1}, t{2, 2, 1, 1, 1, 1, 2, 2};
  ASSERT_EQ(f_invariant(t), 0);
  const auto sym = check_necessary_conditions(s, t);
  EXPECT_TRUE(sym.cond1);
  EXPECT_TRUE(sym.cond2);
  EXPECT_EQ(sym.cond3_plus, sgn(sym.G_plus) == 0);
  EXPECT_EQ(sym.cond3_minus, sgn(sym.G_minus) == 0);

  EXPECT_THROW(check_necessary_conditions(kIdentity, ones), std::domain_error);
}

TEST(Solve, IdentityAdmitsDiagonal) {
  const auto rep = solve_R(kIdentity, kIdentity);
  EXPECT_GE(rep.basis.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    std::array<Rational, 8> e{};
    e[k] = 1;
    EXPECT_TRUE(yb_commutator(VertexWeights::from_array(e), kIdentity, kIdentity).is_zero());
  }
  for (const auto& b : rep.basis) EXPECT_TRUE(yb_commutator(b, kIdentity, kIdentity).is_zero());
}

TEST(Solve, GenericPairsAndConditionFour) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const auto s = random_weights(rng, true), t = random_weights(rng, true);
    const auto rep = solve_R(s, t);
    for (const auto& b : rep.basis) EXPECT_TRUE(yb_commutator(b, s, t).is_zero());
    EXPECT_TRUE(yb_commutator(VertexWeights{}, s, t).is_zero());
    if (!check_necessary_conditions(s, t).cond4) {
      EXPECT_FALSE(rep.nonzero_cd_witness.has_value());
    }
  }
}

TEST(Solve, GeneratedPairsAreSolvableAndSatisfyTheTheorem) {
  lf_test::SolvablePairGenerator gen(9);
  for (int k = 0; k < 20; ++k) {
    const auto [s, t] = gen.next();
    ASSERT_TRUE(s.all_nonzero() && t.all_nonzero());
    const auto rep = solve_R(s, t);
    ASSERT_TRUE(rep.nonzero_cd_witness.has_value()) << to_json(s).dump() << to_json(t).dump();
    const auto& r = *rep.nonzero_cd_witness;
    EXPECT_TRUE(yb_commutator(r, s, t).is_zero());
    EXPECT_TRUE(check_necessary_conditions(s, t).all_hold());
    // the c and d ratios forced by the c/d-only equations
    for (int i : {1, -1}) {
      EXPECT_EQ(r.c(-i), r.c(i) * t.c(i) * s.c(-i) / (t.c(-i) * s.c(i)));
      EXPECT_EQ(r.d(-i), r.d(i) * t.d(-i) * s.c(-i) / (t.d(i) * s.c(i)));
    }
  }
}

TEST(Json, WeightsRoundTrip) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 20; ++k) {
    const auto w = random_weights(rng);
    EXPECT_EQ(weights_from_json(to_json(w)), w);
  }
  auto doc = to_json(kIdentity);
  doc["c1"] = 3;
  EXPECT_EQ(weights_from_json(doc).c1, 3);
  doc["c1"] = "x/2";
  EXPECT_THROW(weights_from_json(doc), ParseError);
  doc.erase("c1");
  EXPECT_THROW(weights_from_json(doc), ParseError);
}
