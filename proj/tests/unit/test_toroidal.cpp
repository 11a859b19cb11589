#include <gtest/gtest.h>

#include "latticeforms/json_io.hpp"
#include "latticeforms/suites.hpp"
#include "test_support.hpp"

using namespace latticeforms;

namespace {

PeriodicField periodic(TorusShape shape, const std::function<long(long, long)>& v) {
  PeriodicField h(shape);
  for (long i = 1; i <= shape.m(); ++i)
    for (long j = 1; j <= shape.n(); ++j) h.at(i, j) = GF3(v(i, j));
  return h;
}

LatticeState constant_state(GridShape shape, unsigned f, unsigned g) {
  LatticeState s(shape, FieldTag::F3);
  for (int i = 1; i <= shape.m(); ++i)
    for (int j = 1; j <= shape.n() + 1; ++j) s.set_f(i, j, f);
  for (int i = 1; i <= shape.m() + 1; ++i)
    for (int j = 1; j <= shape.n(); ++j) s.set_g(i, j, g);
  return s;
}

}  // namespace

TEST(IndexReduce, Examples) {
  EXPECT_EQ(index_reduce(5, 5), 5);
  EXPECT_EQ(index_reduce(6, 5), 1);
  EXPECT_EQ(index_reduce(0, 5), 5);
  EXPECT_EQ(index_reduce(-1, 5), 4);
  EXPECT_EQ(index_reduce(-5, 5), 5);
  EXPECT_THROW(index_reduce(1, 0), std::invalid_argument);
}

TEST(TorusShape, RejectsMultiplesOfThree) {
  EXPECT_THROW(TorusShape(3, 2), std::domain_error);
  EXPECT_THROW(TorusShape(5, 3), std::domain_error);
  EXPECT_NO_THROW(TorusShape(4, 5));
}

TEST(ToroidalDerivatives, Examples) {
  const TorusShape shape(2, 2);
  EXPECT_EQ(toroidal_derivatives(periodic(shape, [](long, long) { return 2; })), ToroidalOneForm(shape));

  const auto d = toroidal_derivatives(periodic(shape, [](long i, long j) { return i == 1 && j == 1 ? 1 : 0; }));
  EXPECT_EQ(d.fx(1, 1), GF3(-1));
  EXPECT_EQ(d.fx(2, 1), GF3(1));
  EXPECT_EQ(d.fx(1, 2), GF3(0));
  EXPECT_EQ(d.gy(1, 1), GF3(-1));
  EXPECT_EQ(d.gy(1, 2), GF3(1));

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> v(0, 2), probe(-20, 20);
  const TorusShape big(4, 5);
  for (int k = 0; k < 20; ++k) {
    const auto h = periodic(big, [&](long, long) { return v(rng); });
    const auto w = toroidal_derivatives(h);
    for (long j = 1; j <= 5; ++j) {
      GF3 row(0);
      for (long i = 1; i <= 4; ++i) row += w.fx(i, j);
      EXPECT_EQ(row, GF3(0));
    }
    for (int p = 0; p < 10; ++p) {
      const long i = probe(rng), j = probe(rng);
      EXPECT_EQ(w.fx(i + 4, j), w.fx(i, j));
      EXPECT_EQ(w.gy(i, j + 5), w.gy(i, j));
    }
    EXPECT_TRUE(is_closed_toroidal(w));
  }
}

TEST(IsClosedToroidal, Examples) {
  const TorusShape shape(2, 4);
  EXPECT_TRUE(is_closed_toroidal(ToroidalOneForm(shape)));
  EXPECT_TRUE(is_closed_toroidal(constant_form(shape, GF3(1), GF3(0))));
  auto w = constant_form(shape, GF3(1), GF3(2));
  w.gy.at(2, 3) += GF3(1);
  EXPECT_FALSE(is_closed_toroidal(w));
}

TEST(Decompose, Examples) {
  const TorusShape shape(4, 2);
  const auto zero = decompose(ToroidalOneForm(shape));
  EXPECT_EQ(zero.r, GF3(0));
  EXPECT_EQ(zero.s, GF3(0));
  EXPECT_EQ(zero.h, PeriodicField(shape));
  const auto d = decompose(constant_form(shape, GF3(1), GF3(0)));
  EXPECT_EQ(d.r, GF3(1));
  EXPECT_EQ(d.s, GF3(0));
  EXPECT_EQ(d.h, PeriodicField(shape));
  auto bad = ToroidalOneForm(shape);
  bad.fx.at(1, 1) = GF3(1);
  EXPECT_THROW(decompose(bad), std::domain_error);
}

TEST(Decompose, Uniqueness) {
  // r dx + s dy exact only for r = s = 0: checked against every potential at (2,2)
  const TorusShape shape(2, 2);
  std::set<std::pair<unsigned, unsigned>> exact_classes;
  for_each_word(3, 4, [&](const std::vector<unsigned>& v) {
    PeriodicField h(shape);
    std::size_t k = 0;
    for (long i = 1; i <= 2; ++i)
      for (long j = 1; j <= 2; ++j) h.at(i, j) = GF3(v[k++]);
    const auto w = toroidal_derivatives(h);
    for (unsigned r = 0; r < 3; ++r)
      for (unsigned s = 0; s < 3; ++s)
        if (w == constant_form(shape, GF3(r), GF3(s))) exact_classes.insert({r, s});
  });
  EXPECT_EQ(exact_classes, (std::set<std::pair<unsigned, unsigned>>{{0, 0}}));
}

TEST(Decompose, ReconstructionSuites) {
  for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {4, 2}, {2, 4}}) {
    const auto r = suite_cohomology(TorusShape(m, n));
    EXPECT_TRUE(r.pass) << m << "x" << n;
    EXPECT_EQ(r.mode, "exhaustive");
  }
  const auto r = suite_cohomology(TorusShape(4, 4), {3, 300, {}, SuiteOptions::Mode::random});
  EXPECT_TRUE(r.pass);
}

TEST(ClosedToroidalParametrisation, CountsAllClosedForms) {
  const TorusShape shape(2, 2);
  std::set<std::vector<GF3>> from_params, by_filter;
  for_each_word(3, closed_toroidal_parameter_count(shape), [&](const std::vector<unsigned>& p) {
    const auto w = closed_toroidal_from_parameters(shape, p);
    ASSERT_TRUE(is_closed_toroidal(w));
    auto key = w.fx.values.values();
    key.insert(key.end(), w.gy.values.values().begin(), w.gy.values.values().end());
    from_params.insert(key);
  });
  for_each_word(3, 8, [&](const std::vector<unsigned>& v) {
    ToroidalOneForm w(shape);
    std::size_t k = 0;
    for (auto& x : w.fx.values.values()) x = GF3(v[k++]);
    for (auto& x : w.gy.values.values()) x = GF3(v[k++]);
    if (!is_closed_toroidal(w)) return;
    auto key = w.fx.values.values();
    key.insert(key.end(), w.gy.values.values().begin(), w.gy.values.values().end());
    by_filter.insert(key);
  });
  EXPECT_EQ(from_params.size(), 243u);
  EXPECT_EQ(from_params, by_filter);
}

TEST(IsSparse, Examples) {
  const TorusShape shape(2, 2);
  EXPECT_TRUE(is_sparse(PeriodicField(shape)));
  // the coordinate x has h(1,1) = 1
  EXPECT_FALSE(is_sparse(periodic(shape, [](long i, long) { return i; })));
  EXPECT_FALSE(is_sparse(periodic(TorusShape(4, 2), [](long i, long) { return i; })));
  EXPECT_FALSE(is_sparse(periodic(shape, [](long i, long j) { return i == 1 && j == 1 ? 1 : 0; })));
  // x - 1 is normalised; on a 2-periodic torus D_x takes only 1 and 2
  EXPECT_TRUE(is_sparse(periodic(shape, [](long i, long) { return i - 1; })));
  // on a 4-periodic torus D_x(x - 1) takes 1 and the wrap value 1 - 4 = 0, so {0, 1}: still not onto
  EXPECT_TRUE(is_sparse(periodic(TorusShape(4, 2), [](long i, long) { return i - 1; })));
}

TEST(StateToSparse, Examples) {
  const GridShape shape(2, 4);
  EXPECT_EQ(state_to_sparse(LatticeState(shape, FieldTag::F3)), PeriodicField(TorusShape(shape)));
  const auto ones = constant_state(shape, 1, 1);
  ASSERT_TRUE(is_admissible_six(ones));
  EXPECT_EQ(state_to_sparse(ones), PeriodicField(TorusShape(shape)));
  const auto d = decompose(toroidal_form_of(ones));
  EXPECT_EQ(d.r, GF3(1));
  EXPECT_EQ(d.s, GF3(1));

  LatticeState not_toroidal(shape, FieldTag::F3);
  not_toroidal.set_f(1, 1, 1);
  EXPECT_THROW(state_to_sparse(not_toroidal), std::domain_error);

  for (const auto& s : enumerate_toroidal_six(TorusShape(4, 2))) EXPECT_TRUE(is_sparse(state_to_sparse(s)));
}

TEST(StateToSparse, Figure3ShapeIsOutsideTheTheorem) {
  const auto s = state_from_json(read_json_file(lf_test::data_path("figure3.json")));
  EXPECT_TRUE(is_admissible_six(s));
  EXPECT_TRUE(has_toroidal_boundary(s));
  // the figure's torus is 5 x 3 and 3 divides n
  EXPECT_THROW(state_to_sparse(s), std::domain_error);
}

TEST(SparseFibers, TwoByTwo) {
  const auto report = sparse_fibers(TorusShape(2, 2));
  const auto states = enumerate_toroidal_six(TorusShape(2, 2));
  EXPECT_EQ(report.state_count, states.size());
  std::size_t total = 0;
  for (const auto& f : report.fibers) {
    total += f.states.size();
    EXPECT_TRUE(is_sparse(f.h));
    for (const auto& s : f.states) EXPECT_EQ(state_to_sparse(s), f.h);
    EXPECT_EQ(f.states.size(), f.r_choices.size() * f.s_choices.size());
  }
  EXPECT_EQ(total, states.size());
  ASSERT_FALSE(report.fibers.empty());
  const auto& zero = report.fibers.front();
  EXPECT_EQ(zero.h, PeriodicField(TorusShape(2, 2)));
  EXPECT_EQ(zero.states.size(), 4u);
  EXPECT_EQ(zero.r_choices, (std::vector<GF3>{GF3(0), GF3(1)}));
  EXPECT_EQ(zero.s_choices, (std::vector<GF3>{GF3(0), GF3(1)}));
  for (const auto& s : zero.states) {
    const auto d = decompose(toroidal_form_of(s));
    EXPECT_EQ(toroidal_form_of(s), constant_form(TorusShape(2, 2), d.r, d.s));
  }
}

TEST(SparseFibers, SuitePasses) {
  const auto r = suite_sparse_fibers(TorusShape(2, 2));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.details["zero_fiber_size"], 4);
}
