#include <gtest/gtest.h>

#include <random>

#include "latticeforms/field.hpp"
#include "latticeforms/matrix.hpp"

using namespace latticeforms;

namespace {

template <class F>
FieldMatrix<F> mat(std::size_t r, std::size_t c, std::initializer_list<long long> v) {
  std::vector<F> e;
  for (auto x : v) e.emplace_back(static_cast<long>(x));
  return FieldMatrix<F>(r, c, e);
}

template <class F>
FieldMatrix<F> random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  FieldMatrix<F> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = F(d(rng));
  return m;
}

}  // namespace

TEST(PrimeField, ReducesAndInverts) {
  EXPECT_EQ(GF3(-1).value(), 2u);
  EXPECT_EQ(GF3(7).value(), 1u);
  EXPECT_EQ(GF3(2) * GF3(2), GF3(1));
  EXPECT_EQ(GF3(2).inverse(), GF3(2));
  EXPECT_EQ(GF2(1) + GF2(1), GF2(0));
  EXPECT_THROW((void)GF3(0).inverse(), std::domain_error);
  EXPECT_EQ(GF3(1) / GF3(2), GF3(2));
}

TEST(Rational, ParseCanonicalises) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_THROW(parse_rational("4/-2"), std::invalid_argument);  // sign belongs on the numerator
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(Rational, SumMatchesIntegerRecomputation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
  for (int k = 0; k < 200; ++k) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational x(a, b), y(c, d);
    x.canonicalize();
    y.canonicalize();
    Rational expected(a * d + b * c, b * d);
    expected.canonicalize();
    const Rational sum = x + y;
    EXPECT_EQ(sum, expected);
    EXPECT_GT(sum.get_den(), 0);
    EXPECT_EQ(gcd(sum.get_num(), sum.get_den()), 1);
  }
}

TEST(Rref, Examples) {
  EXPECT_EQ(rref(FieldMatrix<Rational>::identity(3)), FieldMatrix<Rational>::identity(3));
  EXPECT_EQ(rref(FieldMatrix<GF3>(2, 4)), FieldMatrix<GF3>(2, 4));
  EXPECT_EQ(rref(mat<GF2>(2, 2, {1, 1, 1, 0})), FieldMatrix<GF2>::identity(2));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(FieldMatrix<GF2>::identity(4)), 4u);
  EXPECT_EQ(rank(FieldMatrix<Rational>(3, 5)), 0u);
  EXPECT_EQ(rank(mat<GF3>(2, 2, {1, 2, 2, 1})), 1u);  // second row is twice the first mod 3
  EXPECT_EQ(rank(mat<Rational>(2, 2, {1, 2, 2, 1})), 2u);
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace_basis(FieldMatrix<GF3>::identity(3)).empty());

  const auto zero_basis = nullspace_basis(FieldMatrix<GF2>(1, 3));
  ASSERT_EQ(zero_basis.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(zero_basis[k][j], GF2(j == k ? 1 : 0));

  const auto b = nullspace_basis(mat<GF2>(2, 3, {1, 1, 0, 0, 1, 1}));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], (Vector<GF2>{GF2(1), GF2(1), GF2(1)}));
}

TEST(Matmul, Examples) {
  std::mt19937_64 rng(3);
  const auto a = random_matrix<Rational>(3, 3, rng);
  EXPECT_EQ(FieldMatrix<Rational>::identity(3) * a, a);
  EXPECT_TRUE((a * FieldMatrix<Rational>(3, 2)).is_zero());
  const auto u = mat<GF2>(2, 2, {1, 1, 0, 1});
  EXPECT_EQ(u * u, FieldMatrix<GF2>::identity(2));
  EXPECT_THROW(matmul(FieldMatrix<GF2>(2, 3), FieldMatrix<GF2>(2, 3)), std::invalid_argument);
  EXPECT_THROW(FieldMatrix<GF2>(2, 2) + FieldMatrix<GF2>(2, 3), std::invalid_argument);
  EXPECT_THROW(FieldMatrix<GF2>(2, 2, {GF2(1)}), std::invalid_argument);
}

template <class F>
void check_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix<F>(dim(rng), dim(rng), rng);
    const auto r = rref(m);
    EXPECT_EQ(rref(r), r);
    const auto basis = nullspace_basis(m);
    EXPECT_EQ(rank(m) + basis.size(), m.cols());
    for (const auto& v : basis)
      for (const auto& x : apply(m, v)) EXPECT_TRUE(field_traits<F>::is_zero(x));
    // row space preserved: stacking rref on m does not raise the rank
    std::vector<F> stacked(m.entries());
    stacked.insert(stacked.end(), r.entries().begin(), r.entries().end());
    EXPECT_EQ(rank(FieldMatrix<F>(2 * m.rows(), m.cols(), stacked)), rank(m));
  }
}

TEST(Properties, GF2) { check_properties<GF2>(1); }
TEST(Properties, GF3) { check_properties<GF3>(2); }
TEST(Properties, Rational) { check_properties<Rational>(3); }
