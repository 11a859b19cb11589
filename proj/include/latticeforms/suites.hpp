#pragma once

// Property suites shared by the CLI `verify` command and the acceptance runner.
// Each returns a SuiteResult; a failing suite carries a counterexample document.

#include <algorithm>
#include <cmath>
#include <map>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eight_vertex.hpp"
#include "forms.hpp"
#include "json_io.hpp"
#include "toroidal.hpp"

namespace latticeforms {

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string name, std::string how = "") : suite(std::move(name)), mode(std::move(how)) {}

  std::string suite;
  bool pass = true;
  std::uint64_t checked = 0;
  std::string mode;  // "exhaustive" or "random"
  Json details = Json::object();
  std::optional<Json> counterexample;

  void fail(Json witness) {
    if (pass) counterexample = std::move(witness);
    pass = false;
  }
};

inline Json to_json(const SuiteResult& r) {
  Json out{{"suite", r.suite}, {"pass", r.pass}, {"checked", r.checked}, {"mode", r.mode}};
  for (auto it = r.details.begin(); it != r.details.end(); ++it) out[it.key()] = it.value();
  if (r.counterexample) out["counterexample"] = *r.counterexample;
  return out;
}

using Rng = std::mt19937_64;

// ---- samplers and exhaustive walkers ------------------------------------------------

/// Calls visit on every vector in {0..p-1}^len, last coordinate fastest.
inline void for_each_word(unsigned p, std::size_t len, const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> w(len, 0);
  for (;;) {
    visit(w);
    std::size_t k = len;
    while (k > 0 && w[k - 1] == p - 1) w[--k] = 0;
    if (k == 0) return;
    ++w[k - 1];
  }
}

inline OneForm form_from_word(GridShape shape, const std::vector<unsigned>& w) {
  OneForm out(shape);
  std::size_t k = 0;
  for (auto& v : out.fx.values()) v = GF3(w[k++]);
  for (auto& v : out.gy.values()) v = GF3(w[k++]);
  return out;
}

/// Uniform closed form: g and the bottom row f(.,1) are free; closedness fixes the rest of f.
inline OneForm random_closed_form(GridShape shape, Rng& rng) {
  std::uniform_int_distribution<int> d3(0, 2);
  OneForm w(shape);
  for (auto& v : w.gy.values()) v = GF3(d3(rng));
  const auto m = static_cast<std::size_t>(shape.m()), n = static_cast<std::size_t>(shape.n());
  for (std::size_t i = 1; i <= m; ++i) {
    w.fx(i, 1) = GF3(d3(rng));
    for (std::size_t j = 1; j <= n; ++j) w.fx(i, j + 1) = w.fx(i, j) + w.gy(i + 1, j) - w.gy(i, j);
  }
  return w;
}

/// Uniform proper colouring, filled column by column.
inline Coloring random_proper_coloring(std::size_t width, std::size_t height, Rng& rng) {
  Coloring c(width, height);
  for (std::size_t i = 1; i <= width; ++i)
    for (std::size_t j = 1; j <= height; ++j) {
      // not exactly uniform over colourings, but every proper colouring has positive probability
      std::vector<unsigned> allowed;
      for (unsigned v = 0; v < 3; ++v) {
        if (i > 1 && c(i - 1, j) == GF3(v)) continue;
        if (j > 1 && c(i, j - 1) == GF3(v)) continue;
        allowed.push_back(v);
      }
      c(i, j) = GF3(allowed[std::uniform_int_distribution<std::size_t>(0, allowed.size() - 1)(rng)]);
    }
  return c;
}

/// Closed toroidal forms are parametrised by g on [m]x[n] with equal row sums
/// sum_j g(i,j) plus the column f(.,1); there are 3^(mn+1) of them.
inline std::size_t closed_toroidal_parameter_count(TorusShape shape) { return shape.cells() + 1; }

inline ToroidalOneForm closed_toroidal_from_parameters(TorusShape shape, const std::vector<unsigned>& p) {
  const long m = shape.m(), n = shape.n();
  ToroidalOneForm w(shape);
  std::size_t k = 0;
  // row 1 of g is free, rows 2..m are free except the last entry, which matches the row-1 sum
  GF3 target(0);
  for (long j = 1; j <= n; ++j) {
    w.gy.at(1, j) = GF3(p[k++]);
    target += w.gy(1, j);
  }
  for (long i = 2; i <= m; ++i) {
    GF3 sum(0);
    for (long j = 1; j < n; ++j) {
      w.gy.at(i, j) = GF3(p[k++]);
      sum += w.gy(i, j);
    }
    w.gy.at(i, n) = target - sum;
  }
  for (long i = 1; i <= m; ++i) {
    w.fx.at(i, 1) = GF3(p[k++]);
    for (long j = 1; j < n; ++j) w.fx.at(i, j + 1) = w.fx(i, j) + w.gy(i + 1, j) - w.gy(i, j);
  }
  return w;
}

inline ToroidalOneForm random_closed_toroidal(TorusShape shape, Rng& rng) {
  std::uniform_int_distribution<unsigned> d3(0, 2);
  std::vector<unsigned> p(closed_toroidal_parameter_count(shape));
  for (auto& x : p) x = d3(rng);
  return closed_toroidal_from_parameters(shape, p);
}

/// Number of (r,s) for which w - (r dx + s dy) has vanishing periods, i.e. is exact.
inline int exact_class_count(const ToroidalOneForm& w) {
  const auto [px, py] = periods(w);
  int count = 0;
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned s = 0; s < 3; ++s)
      if (px == GF3(w.shape.m()) * GF3(r) && py == GF3(w.shape.n()) * GF3(s)) ++count;
  return count;
}

inline Json to_json(const OneForm& w) {
  return Json{{"m", w.shape.m()}, {"n", w.shape.n()}, {"field", "F3"},
              {"f", detail::gf3_grid_json(w.fx)}, {"g", detail::gf3_grid_json(w.gy)}};
}

inline Json to_json(const ToroidalOneForm& w) {
  return Json{{"m", w.shape.m()}, {"n", w.shape.n()}, {"f", detail::gf3_grid_json(w.fx.values)},
              {"g", detail::gf3_grid_json(w.gy.values)}};
}

// ---- suites ---------------------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  SizeGuard guard{};
  enum class Mode { automatic, exhaustive, random } mode = Mode::automatic;
};

inline bool fits(const SizeGuard& g, double log2_space) { return g.force || log2_space <= g.max_log2; }

/// Exhaustive unless forced random or the space is over the guard.
inline bool go_exhaustive(const SuiteOptions& opt, bool small) {
  if (opt.mode == SuiteOptions::Mode::random) return false;
  if (opt.mode == SuiteOptions::Mode::exhaustive) return true;
  return small;
}

/// d(antiderivative(w)) = w for closed w; antiderivative refuses non-closed w.
inline SuiteResult suite_poincare(GridShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("poincare");
  auto check = [&](const OneForm& w) {
    ++r.checked;
    if (is_closed(w)) {
      if (exterior_derivative(antiderivative(w)) != w) r.fail(to_json(w));
    } else {
      try {
        (void)antiderivative(w);
        r.fail(to_json(w));
      } catch (const std::domain_error&) {
      }
    }
  };
  const double space = static_cast<double>(shape.edge_count()) * std::log2(3.0);
  if (go_exhaustive(opt, fits(opt.guard, space))) {
    r.mode = "exhaustive";
    std::uint64_t closed = 0;
    for_each_word(3, shape.edge_count(), [&](const std::vector<unsigned>& word) {
      const auto w = form_from_word(shape, word);
      closed += is_closed(w) ? 1 : 0;
      check(w);
    });
    r.details["closed_forms"] = closed;
  } else {
    r.mode = "random";
    Rng rng(opt.seed);
    for (std::size_t k = 0; k < opt.samples; ++k) check(random_closed_form(shape, rng));
  }
  return r;
}

/// coloring_from_form and form_from_coloring are mutually inverse on
/// proper colourings of (m+1)x(n+1) and admissible states on (m,n) with t in F3.
inline SuiteResult suite_bijection(GridShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("bijection");
  const auto width = static_cast<std::size_t>(shape.m() + 1), height = static_cast<std::size_t>(shape.n() + 1);
  auto check_coloring = [&](const Coloring& c) {
    ++r.checked;
    const auto [w, t] = form_from_coloring(c);
    if (!is_closed(w) || !is_admissible_form(w) || coloring_from_form(w, t) != c) r.fail(Json{{"coloring", to_json(c)}});
  };
  auto check_state = [&](const LatticeState& s) {
    const auto w = state_to_form(s);
    for (unsigned t = 0; t < 3; ++t) {
      ++r.checked;
      const auto c = coloring_from_form(w, GF3(t));
      const auto back = form_from_coloring(c);
      if (!is_proper(c) || back.first != w || back.second != GF3(t))
        r.fail(Json{{"state", to_json(s)}, {"t", t}});
    }
  };
  const double coloring_space = static_cast<double>(width * height) * std::log2(3.0);
  const double state_space = static_cast<double>(shape.edge_count());
  if (go_exhaustive(opt, fits(opt.guard, coloring_space) && fits(opt.guard, state_space))) {
    r.mode = "exhaustive";
    for_each_coloring(width, height, check_coloring, opt.guard);
    for_each_six_vertex_state(shape, check_state, opt.guard);
  } else {
    r.mode = "random";
    Rng rng(opt.seed);
    for (std::size_t k = 0; k < opt.samples; ++k) check_coloring(random_proper_coloring(width, height, rng));
    // admissible states drawn from random closed forms with values in {0,1}, by rejection
    std::size_t drawn = 0;
    for (std::size_t tries = 0; drawn < opt.samples && tries < 1000 * opt.samples; ++tries) {
      const auto w = random_closed_form(shape, rng);
      if (!is_admissible_form(w)) continue;
      ++drawn;
      check_state(form_to_state(w));
    }
    r.details["states_sampled"] = drawn;
  }
  return r;
}

/// 3 count_six(m,n) = count_colorings(m+1,n+1), both by brute force.
inline SuiteResult suite_counting(GridShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("counting", "exhaustive");
  r.checked = 1;
  const auto states = count_six(shape, opt.guard);
  const auto colorings = count_colorings(static_cast<std::size_t>(shape.m() + 1),
                                         static_cast<std::size_t>(shape.n() + 1), opt.guard);
  r.details = Json{{"states", states}, {"colorings", colorings}, {"match", 3 * states == colorings}};
  if (3 * states != colorings) r.fail(r.details);
  return r;
}

/// Every closed toroidal form is recomposed exactly and has exactly one class (r,s).
inline SuiteResult suite_cohomology(TorusShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("cohomology");
  auto check = [&](const ToroidalOneForm& w) {
    ++r.checked;
    if (!is_closed_toroidal(w)) {
      r.fail(Json{{"reason", "sampler produced a non-closed form"}, {"form", to_json(w)}});
      return;
    }
    const auto d = decompose(w);
    if (recompose(d) != w || !d.h(1, 1).is_zero() || exact_class_count(w) != 1)
      r.fail(Json{{"form", to_json(w)}, {"r", d.r.value()}, {"s", d.s.value()}, {"classes", exact_class_count(w)}});
  };
  const auto params = closed_toroidal_parameter_count(shape);
  if (go_exhaustive(opt, fits(opt.guard, static_cast<double>(params) * std::log2(3.0)))) {
    r.mode = "exhaustive";
    for_each_word(3, params, [&](const std::vector<unsigned>& p) { check(closed_toroidal_from_parameters(shape, p)); });
  } else {
    r.mode = "random";
    Rng rng(opt.seed);
    for (std::size_t k = 0; k < opt.samples; ++k) check(random_closed_toroidal(shape, rng));
  }
  return r;
}

/// The fibers of state_to_sparse partition the admissible toroidal states.
inline SuiteResult suite_sparse_fibers(TorusShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("sparse-fibers", "exhaustive");
  const auto report = sparse_fibers(shape, opt.guard);
  const auto states = enumerate_toroidal_six(shape, opt.guard);
  std::size_t covered = 0;
  std::vector<LatticeState> seen;
  for (const auto& f : report.fibers) {
    if (!is_sparse(f.h)) r.fail(Json{{"reason", "fiber key is not sparse"}, {"h", detail::gf3_grid_json(f.h.values)}});
    for (const auto& s : f.states) {
      ++r.checked;
      ++covered;
      seen.push_back(s);
      if (state_to_sparse(s) != f.h) r.fail(Json{{"reason", "state does not map to its fiber key"}, {"state", to_json(s)}});
    }
  }
  std::sort(seen.begin(), seen.end());
  const bool disjoint = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
  if (covered != states.size() || covered != report.state_count || !disjoint)
    r.fail(Json{{"reason", "fibers do not partition the state set"}, {"covered", covered}, {"states", states.size()}});
  r.details = to_json(report);
  r.details.erase("fibers");
  Json zero_fiber;
  for (const auto& f : report.fibers) {
    bool zero = true;
    for (auto v : f.h.values.values()) zero = zero && v.is_zero();
    if (zero) zero_fiber = f.states.size();
  }
  r.details["zero_fiber_size"] = zero_fiber;
  r.details["fibers"] = to_json(report)["fibers"];
  return r;
}

/// The defect map is onto F2^(mn), and 2^(edges - rank) matches the closed form.
inline SuiteResult suite_defect_rank(GridShape shape, const SuiteOptions& = {}) {
  SuiteResult r("defect-rank", "exhaustive");
  r.checked = 1;
  const auto dm = defect_map(shape);
  const auto rk = rank(dm.matrix);
  const auto by_rank = count_total_by_rank(shape);
  const auto closed = count_total_closed_form(shape);
  r.details = Json{{"rank", rk},
                   {"vertices", shape.vertex_count()},
                   {"edges", shape.edge_count()},
                   {"count_by_rank", by_rank.get_str()},
                   {"count_closed_form", closed.get_str()}};
  if (rk != shape.vertex_count() || by_rank != closed) r.fail(r.details);
  return r;
}

/// For every boundary: count = 2^((m-1)(n-1)) if parity 0, else 0; brute force over all states is the oracle.
inline SuiteResult suite_boundary_law(GridShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("boundary-law", "exhaustive");
  enforce(opt.guard, static_cast<double>(shape.edge_count()), "boundary-law brute force");
  std::map<std::vector<std::uint8_t>, std::uint64_t> brute;
  for (const auto& s : enumerate_eight(shape, std::nullopt, EnumerationStrategy::brute_force, opt.guard))
    ++brute[boundary_of(s).flat()];
  const BigInt per = pow2(static_cast<unsigned long>((shape.m() - 1) * (shape.n() - 1)));
  std::uint64_t valid = 0;
  for_each_word(2, shape.boundary_edge_count(), [&](const std::vector<unsigned>& word) {
    ++r.checked;
    const std::vector<std::uint8_t> labels(word.begin(), word.end());
    const auto b = BoundarySpec::from_flat(shape, FieldTag::F2, labels);
    const bool even = boundary_parity(b).is_zero();
    valid += even ? 1 : 0;
    const BigInt expected = even ? per : BigInt(0);
    const auto it = brute.find(labels);
    const BigInt seen = it == brute.end() ? BigInt(0) : BigInt(static_cast<unsigned long>(it->second));
    const BigInt law = count_with_boundary(b);
    if (seen != expected || law != expected)
      r.fail(Json{{"boundary", to_json(b)}, {"brute_force", seen.get_str()}, {"expected", expected.get_str()}});
  });
  r.details = Json{{"valid_boundaries", valid}, {"expected_valid", count_valid_boundaries(shape).get_str()},
                   {"states_per_valid_boundary", per.get_str()}};
  if (BigInt(static_cast<unsigned long>(valid)) != count_valid_boundaries(shape)) r.fail(r.details);
  return r;
}

/// construct_state succeeds on every parity-0 boundary, is admissible and matches it; parity 1 is refused.
inline SuiteResult suite_construct(GridShape shape, const SuiteOptions& opt = {}) {
  SuiteResult r("construct", "exhaustive");
  enforce(opt.guard, static_cast<double>(shape.boundary_edge_count()), "construct over all boundaries");
  std::uint64_t built = 0;
  for_each_word(2, shape.boundary_edge_count(), [&](const std::vector<unsigned>& word) {
    ++r.checked;
    const auto b = BoundarySpec::from_flat(shape, FieldTag::F2, std::vector<std::uint8_t>(word.begin(), word.end()));
    if (boundary_parity(b).is_zero()) {
      const auto s = construct_state(b);
      ++built;
      if (!is_admissible_eight(s) || !has_boundary(s, b)) r.fail(Json{{"boundary", to_json(b)}, {"state", to_json(s)}});
    } else {
      try {
        (void)construct_state(b);
        r.fail(Json{{"boundary", to_json(b)}, {"reason", "odd boundary accepted"}});
      } catch (const std::domain_error&) {
      }
    }
  });
  r.details["constructed"] = built;
  return r;
}

}  // namespace latticeforms
