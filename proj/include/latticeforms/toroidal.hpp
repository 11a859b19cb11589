#pragma once

// Doubly periodic functions and 1-forms over F3 on an m x n torus with
// 3 not dividing m or n: cohomology decomposition and sparse functions.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "forms.hpp"
#include "grid.hpp"

namespace latticeforms {

/// Representative of i mod period in [1, period].
inline long index_reduce(long i, long period) {
  if (period < 1) throw std::invalid_argument("index_reduce: period must be positive");
  long r = i % period;
  if (r <= 0) r += period;
  return r;
}

class TorusShape {
 public:
  TorusShape(int m, int n) : grid_(m, n) {
    if (m % 3 == 0 || n % 3 == 0)
      throw std::domain_error("toroidal shapes need 3 to divide neither m nor n (got " + std::to_string(m) + "x" +
                              std::to_string(n) + ")");
  }
  explicit TorusShape(GridShape g) : TorusShape(g.m(), g.n()) {}

  int m() const { return grid_.m(); }
  int n() const { return grid_.n(); }
  const GridShape& grid() const { return grid_; }
  std::size_t cells() const { return grid_.vertex_count(); }

  friend bool operator==(const TorusShape&, const TorusShape&) = default;

 private:
  GridShape grid_;
};

/// Values on the fundamental domain [m] x [n], extended periodically.
struct PeriodicField {
  explicit PeriodicField(TorusShape s)
      : shape(s), values(static_cast<std::size_t>(s.m()), static_cast<std::size_t>(s.n())) {}

  GF3 operator()(long i, long j) const {
    return values(static_cast<std::size_t>(index_reduce(i, shape.m())),
                  static_cast<std::size_t>(index_reduce(j, shape.n())));
  }
  GF3& at(long i, long j) {
    return values(static_cast<std::size_t>(index_reduce(i, shape.m())),
                  static_cast<std::size_t>(index_reduce(j, shape.n())));
  }

  TorusShape shape;
  IndexGrid<GF3> values;

  friend bool operator==(const PeriodicField&, const PeriodicField&) = default;
  friend bool operator<(const PeriodicField& a, const PeriodicField& b) {
    return a.values.values() < b.values.values();
  }
};

struct ToroidalOneForm {
  explicit ToroidalOneForm(TorusShape s) : shape(s), fx(s), gy(s) {}

  TorusShape shape;
  PeriodicField fx;
  PeriodicField gy;

  friend bool operator==(const ToroidalOneForm&, const ToroidalOneForm&) = default;
};

/// r dx + s dy.
inline ToroidalOneForm constant_form(TorusShape shape, GF3 r, GF3 s) {
  ToroidalOneForm w(shape);
  for (auto& v : w.fx.values.values()) v = r;
  for (auto& v : w.gy.values.values()) v = s;
  return w;
}

inline ToroidalOneForm operator+(ToroidalOneForm a, const ToroidalOneForm& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("toroidal form sum: shape mismatch");
  for (std::size_t k = 0; k < a.fx.values.size(); ++k) {
    a.fx.values.values()[k] += b.fx.values.values()[k];
    a.gy.values.values()[k] += b.gy.values.values()[k];
  }
  return a;
}

inline ToroidalOneForm operator-(ToroidalOneForm a, const ToroidalOneForm& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("toroidal form difference: shape mismatch");
  for (std::size_t k = 0; k < a.fx.values.size(); ++k) {
    a.fx.values.values()[k] -= b.fx.values.values()[k];
    a.gy.values.values()[k] -= b.gy.values.values()[k];
  }
  return a;
}

/// Periodic differences D_x h, D_y h on one fundamental domain.
inline ToroidalOneForm toroidal_derivatives(const PeriodicField& h) {
  ToroidalOneForm w(h.shape);
  for (long i = 1; i <= h.shape.m(); ++i)
    for (long j = 1; j <= h.shape.n(); ++j) {
      w.fx.at(i, j) = h(i + 1, j) - h(i, j);
      w.gy.at(i, j) = h(i, j + 1) - h(i, j);
    }
  return w;
}

inline bool is_closed_toroidal(const ToroidalOneForm& w) {
  for (long i = 1; i <= w.shape.m(); ++i)
    for (long j = 1; j <= w.shape.n(); ++j)
      if (w.fx(i, j + 1) - w.fx(i, j) != w.gy(i + 1, j) - w.gy(i, j)) return false;
  return true;
}

/// Integrals of w along the two generating cycles: (sum_i f(i,1), sum_j g(1,j)).
inline std::pair<GF3, GF3> periods(const ToroidalOneForm& w) {
  GF3 px(0), py(0);
  for (long i = 1; i <= w.shape.m(); ++i) px += w.fx(i, 1);
  for (long j = 1; j <= w.shape.n(); ++j) py += w.gy(1, j);
  return {px, py};
}

struct CohomologyDecomposition {
  GF3 r;
  GF3 s;
  PeriodicField h;  // normalised: h(1,1) = 0
};

/// w = r dx + s dy + dh with the class read off from the averages of f(.,1) and g(1,.).
inline CohomologyDecomposition decompose(const ToroidalOneForm& w) {
  if (!is_closed_toroidal(w)) throw std::domain_error("decompose: toroidal form is not closed");
  const long m = w.shape.m();
  const long n = w.shape.n();
  const auto [px, py] = periods(w);
  const GF3 r = px * GF3(m).inverse();
  const GF3 s = py * GF3(n).inverse();

  PeriodicField h(w.shape);
  for (long i = 1; i <= m; ++i) {
    GF3 acc(0);
    for (long a = 1; a <= i - 1; ++a) acc += w.fx(a, 1) - r;
    for (long j = 1; j <= n; ++j) {
      GF3 col = acc;
      for (long b = 1; b <= j - 1; ++b) col += w.gy(i, b) - s;
      h.at(i, j) = col;
    }
  }
  return {r, s, std::move(h)};
}

/// r dx + s dy + dh.
inline ToroidalOneForm recompose(const CohomologyDecomposition& d) {
  return constant_form(d.h.shape, d.r, d.s) + toroidal_derivatives(d.h);
}

/// Neither D_x h nor D_y h is onto F3, and h(1,1) = 0.
inline bool is_sparse(const PeriodicField& h) {
  if (!h(1, 1).is_zero()) return false;
  const auto d = toroidal_derivatives(h);
  auto onto = [](const PeriodicField& p) {
    std::array<bool, 3> hit{};
    for (auto v : p.values.values()) hit[v.value()] = true;
    return hit[0] && hit[1] && hit[2];
  };
  return !onto(d.fx) && !onto(d.gy);
}

/// Values of F3 missed by a periodic function on its fundamental domain.
inline std::vector<GF3> missing_values(const PeriodicField& p) {
  std::array<bool, 3> hit{};
  for (auto v : p.values.values()) hit[v.value()] = true;
  std::vector<GF3> out;
  for (unsigned v = 0; v < 3; ++v)
    if (!hit[v]) out.emplace_back(v);
  return out;
}

/// g(1,j) = g(m+1,j) and f(i,1) = f(i,n+1).
inline bool has_toroidal_boundary(const LatticeState& s) {
  const auto& sh = s.shape();
  for (int j = 1; j <= sh.n(); ++j)
    if (s.g(1, j) != s.g(sh.m() + 1, j)) return false;
  for (int i = 1; i <= sh.m(); ++i)
    if (s.f(i, 1) != s.f(i, sh.n() + 1)) return false;
  return true;
}

/// Periodic extension of a state with toroidal boundary conditions.
inline ToroidalOneForm toroidal_form_of(const LatticeState& s) {
  const TorusShape shape(s.shape());
  if (!has_toroidal_boundary(s)) throw std::domain_error("state does not have toroidal boundary conditions");
  ToroidalOneForm w(shape);
  for (int i = 1; i <= shape.m(); ++i)
    for (int j = 1; j <= shape.n(); ++j) {
      w.fx.at(i, j) = GF3(s.f(i, j));
      w.gy.at(i, j) = GF3(s.g(i, j));
    }
  return w;
}

/// The state on [m] x [n+1] / [m+1] x [n] obtained by restricting a {0,1}-valued toroidal form.
inline LatticeState toroidal_state(const ToroidalOneForm& w) {
  LatticeState s(w.shape.grid(), FieldTag::F3);
  for (int i = 1; i <= w.shape.m(); ++i)
    for (int j = 1; j <= w.shape.n() + 1; ++j) {
      const auto v = w.fx(i, j).value();
      if (v > 1) throw std::domain_error("toroidal_state: form takes the value 2");
      s.set_f(i, j, v);
    }
  for (int i = 1; i <= w.shape.m() + 1; ++i)
    for (int j = 1; j <= w.shape.n(); ++j) {
      const auto v = w.gy(i, j).value();
      if (v > 1) throw std::domain_error("toroidal_state: form takes the value 2");
      s.set_g(i, j, v);
    }
  return s;
}

/// Normalised potential of an admissible toroidal state; always sparse.
inline PeriodicField state_to_sparse(const LatticeState& s) {
  if (!has_toroidal_boundary(s)) throw std::domain_error("state_to_sparse: boundary is not toroidal");
  if (!is_admissible_six(s)) throw std::domain_error("state_to_sparse: state is not six-vertex admissible");
  return decompose(toroidal_form_of(s)).h;
}

/// Admissible six-vertex states with toroidal boundary, lexicographic in the fundamental-domain edges.
inline std::vector<LatticeState> enumerate_toroidal_six(TorusShape shape, SizeGuard guard = {}) {
  const std::size_t cells = shape.cells();
  enforce(guard, static_cast<double>(2 * cells), "toroidal enumeration");
  std::vector<LatticeState> out;
  const std::uint64_t end = std::uint64_t{1} << (2 * cells);
  const int m = shape.m(), n = shape.n();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    // f(i,j) for (i,j) in [m]x[n] first, then g(i,j), i-major, most significant bit first
    auto bit = [&](std::size_t k) { return static_cast<unsigned>((mask >> (2 * cells - 1 - k)) & 1u); };
    ToroidalOneForm w(shape);
    std::size_t k = 0;
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) w.fx.at(i, j) = GF3(bit(k++));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) w.gy.at(i, j) = GF3(bit(k++));
    if (is_closed_toroidal(w)) out.push_back(toroidal_state(w));
  }
  return out;
}

struct SparseFiber {
  explicit SparseFiber(PeriodicField key) : h(std::move(key)) {}

  PeriodicField h;
  std::vector<GF3> r_choices;  // r with 2 - r outside Im(D_x h)
  std::vector<GF3> s_choices;  // s with 2 - s outside Im(D_y h)
  std::vector<LatticeState> states;
};

struct FiberReport {
  explicit FiberReport(TorusShape s) : shape(s) {}

  TorusShape shape;
  std::vector<SparseFiber> fibers;        // ordered by h
  std::size_t state_count = 0;            // admissible toroidal states
  std::size_t sparse_function_count = 0;  // sparse h found by direct enumeration
  std::map<std::size_t, std::size_t> fiber_size_histogram;
};

namespace detail {

inline std::vector<GF3> class_choices(const PeriodicField& derivative) {
  const auto missing = missing_values(derivative);
  std::vector<GF3> out;
  for (unsigned r = 0; r < 3; ++r) {
    const GF3 target = GF3(2) - GF3(r);
    bool excluded = false;
    for (auto v : missing) excluded = excluded || v == target;
    if (excluded) out.emplace_back(r);
  }
  return out;
}

}  // namespace detail

/// Groups the admissible toroidal states by their sparse potential.
inline FiberReport sparse_fibers(TorusShape shape, SizeGuard guard = {}) {
  enforce(guard, static_cast<double>(shape.cells() - 1) * std::log2(3.0), "sparse-function enumeration");
  FiberReport report(shape);

  // every sparse function, independently of the states
  std::map<std::vector<GF3>, SparseFiber> by_h;
  const std::size_t free_cells = shape.cells() - 1;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < free_cells; ++k) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    PeriodicField h(shape);
    std::uint64_t rest = code;
    auto& vals = h.values.values();
    for (std::size_t k = vals.size(); k-- > 1;) {
      vals[k] = GF3(static_cast<long long>(rest % 3));
      rest /= 3;
    }
    if (!is_sparse(h)) continue;
    SparseFiber fiber(h);
    const auto d = toroidal_derivatives(h);
    fiber.r_choices = detail::class_choices(d.fx);
    fiber.s_choices = detail::class_choices(d.gy);
    by_h.emplace(vals, std::move(fiber));
  }
  report.sparse_function_count = by_h.size();

  for (const auto& state : enumerate_toroidal_six(shape, guard)) {
    ++report.state_count;
    const auto h = state_to_sparse(state);
    auto it = by_h.find(h.values.values());
    if (it == by_h.end()) throw std::logic_error("sparse_fibers: state potential is not sparse");
    it->second.states.push_back(state);
  }
  for (auto& [key, fiber] : by_h) {
    ++report.fiber_size_histogram[fiber.states.size()];
    report.fibers.push_back(std::move(fiber));
  }
  return report;
}

}  // namespace latticeforms
