#pragma once

// Discrete differential forms over F3 on the rectangle [m+1] x [n+1], the
// six-vertex admissibility correspondence and the 3-colouring bijection.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "grid.hpp"

namespace latticeforms {

/// A potential h: [m+1] x [n+1] -> F3.
struct ScalarField {
  explicit ScalarField(GridShape s)
      : shape(s), h(static_cast<std::size_t>(s.m() + 1), static_cast<std::size_t>(s.n() + 1)) {}

  GridShape shape;
  IndexGrid<GF3> h;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;
};

/// f dx + g dy with f on [m] x [n+1] and g on [m+1] x [n].
struct OneForm {
  explicit OneForm(GridShape s)
      : shape(s),
        fx(static_cast<std::size_t>(s.m()), static_cast<std::size_t>(s.n() + 1)),
        gy(static_cast<std::size_t>(s.m() + 1), static_cast<std::size_t>(s.n())) {}

  GridShape shape;
  IndexGrid<GF3> fx;
  IndexGrid<GF3> gy;

  friend bool operator==(const OneForm&, const OneForm&) = default;
};

/// Cell values c(i,j), column i in [width], row j in [height].
struct Coloring {
  Coloring(std::size_t width, std::size_t height) : cells(width, height) {}

  std::size_t width() const { return cells.extent_i(); }
  std::size_t height() const { return cells.extent_j(); }
  GF3& operator()(std::size_t i, std::size_t j) { return cells(i, j); }
  const GF3& operator()(std::size_t i, std::size_t j) const { return cells(i, j); }

  IndexGrid<GF3> cells;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

inline OneForm operator+(OneForm a, const OneForm& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("form sum: shape mismatch");
  for (std::size_t k = 0; k < a.fx.size(); ++k) a.fx.values()[k] += b.fx.values()[k];
  for (std::size_t k = 0; k < a.gy.size(); ++k) a.gy.values()[k] += b.gy.values()[k];
  return a;
}

inline OneForm operator-(OneForm a, const OneForm& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("form difference: shape mismatch");
  for (std::size_t k = 0; k < a.fx.size(); ++k) a.fx.values()[k] -= b.fx.values()[k];
  for (std::size_t k = 0; k < a.gy.size(); ++k) a.gy.values()[k] -= b.gy.values()[k];
  return a;
}

/// (D_x h)(i,j) = h(i+1,j) - h(i,j) on [m] x [n+1].
inline IndexGrid<GF3> partial_x(const ScalarField& s) {
  const auto m = static_cast<std::size_t>(s.shape.m());
  const auto n = static_cast<std::size_t>(s.shape.n());
  IndexGrid<GF3> out(m, n + 1);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n + 1; ++j) out(i, j) = s.h(i + 1, j) - s.h(i, j);
  return out;
}

/// (D_y h)(i,j) = h(i,j+1) - h(i,j) on [m+1] x [n].
inline IndexGrid<GF3> partial_y(const ScalarField& s) {
  const auto m = static_cast<std::size_t>(s.shape.m());
  const auto n = static_cast<std::size_t>(s.shape.n());
  IndexGrid<GF3> out(m + 1, n);
  for (std::size_t i = 1; i <= m + 1; ++i)
    for (std::size_t j = 1; j <= n; ++j) out(i, j) = s.h(i, j + 1) - s.h(i, j);
  return out;
}

inline OneForm exterior_derivative(const ScalarField& s) {
  OneForm w(s.shape);
  w.fx = partial_x(s);
  w.gy = partial_y(s);
  return w;
}

/// Coordinate functions x(i,j) = i and y(i,j) = j.
inline ScalarField coordinate_x(GridShape shape) {
  ScalarField x(shape);
  for (int i = 1; i <= shape.m() + 1; ++i)
    for (int j = 1; j <= shape.n() + 1; ++j) x.h(i, j) = GF3(i);
  return x;
}

inline ScalarField coordinate_y(GridShape shape) {
  ScalarField y(shape);
  for (int i = 1; i <= shape.m() + 1; ++i)
    for (int j = 1; j <= shape.n() + 1; ++j) y.h(i, j) = GF3(j);
  return y;
}

inline OneForm dx(GridShape shape) { return exterior_derivative(coordinate_x(shape)); }
inline OneForm dy(GridShape shape) { return exterior_derivative(coordinate_y(shape)); }

/// D_y f = D_x g at every interior vertex.
inline bool is_closed(const OneForm& w) {
  const auto m = static_cast<std::size_t>(w.shape.m());
  const auto n = static_cast<std::size_t>(w.shape.n());
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (w.fx(i, j + 1) - w.fx(i, j) != w.gy(i + 1, j) - w.gy(i, j)) return false;
  return true;
}

/// h(i,j) = sum_{a<i} f(a,1) + sum_{b<j} g(i,b); so dh = w and h(1,1) = 0.
inline ScalarField antiderivative(const OneForm& w) {
  if (!is_closed(w)) throw std::domain_error("antiderivative: form is not closed");
  ScalarField s(w.shape);
  const auto m = static_cast<std::size_t>(w.shape.m());
  const auto n = static_cast<std::size_t>(w.shape.n());
  GF3 row_start(0);
  for (std::size_t i = 1; i <= m + 1; ++i) {
    GF3 acc = row_start;
    for (std::size_t j = 1; j <= n + 1; ++j) {
      s.h(i, j) = acc;
      if (j <= n) acc += w.gy(i, j);
    }
    if (i <= m) row_start += w.fx(i, 1);
  }
  return s;
}

/// No component equals 2.
inline bool is_admissible_form(const OneForm& w) {
  for (auto v : w.fx.values())
    if (v == GF3(2)) return false;
  for (auto v : w.gy.values())
    if (v == GF3(2)) return false;
  return true;
}

/// g(i+1,j) - g(i,j) = f(i,j+1) - f(i,j) mod 3 at every vertex.  Labels must be 0 or 1.
inline bool is_admissible_six(const LatticeState& s) {
  for (auto v : s.edges())
    if (v > 1) throw std::invalid_argument("six-vertex states carry labels 0 and 1 only");
  const auto& sh = s.shape();
  for (int i = 1; i <= sh.m(); ++i)
    for (int j = 1; j <= sh.n(); ++j) {
      const auto e = edges_at_vertex(s, i, j);
      if (e.right + e.bottom != e.left + e.top) return false;
    }
  return true;
}

inline OneForm state_to_form(const LatticeState& s) {
  if (!is_admissible_six(s)) throw std::domain_error("state_to_form: state is not six-vertex admissible");
  OneForm w(s.shape());
  for (std::size_t k = 0; k < w.fx.size(); ++k) w.fx.values()[k] = GF3(s.f_grid().values()[k]);
  for (std::size_t k = 0; k < w.gy.size(); ++k) w.gy.values()[k] = GF3(s.g_grid().values()[k]);
  return w;
}

inline LatticeState form_to_state(const OneForm& w) {
  if (!is_closed(w)) throw std::domain_error("form_to_state: form is not closed");
  if (!is_admissible_form(w)) throw std::domain_error("form_to_state: form takes the value 2");
  IndexGrid<std::uint8_t> f(w.fx.extent_i(), w.fx.extent_j());
  IndexGrid<std::uint8_t> g(w.gy.extent_i(), w.gy.extent_j());
  for (std::size_t k = 0; k < f.size(); ++k) f.values()[k] = static_cast<std::uint8_t>(w.fx.values()[k].value());
  for (std::size_t k = 0; k < g.size(); ++k) g.values()[k] = static_cast<std::uint8_t>(w.gy.values()[k].value());
  return LatticeState(w.shape, FieldTag::F3, std::move(f), std::move(g));
}

/// Horizontally and vertically adjacent cells differ.
inline bool is_proper(const Coloring& c) {
  for (std::size_t i = 1; i <= c.width(); ++i)
    for (std::size_t j = 1; j <= c.height(); ++j) {
      if (i < c.width() && c(i, j) == c(i + 1, j)) return false;
      if (j < c.height() && c(i, j) == c(i, j + 1)) return false;
    }
  return true;
}

/// c(i,j) = h(i,j) - h(1,1) + t + i + j - 2 with h the normalised antiderivative of w.
inline Coloring coloring_from_form(const OneForm& w, GF3 t) {
  if (!is_admissible_form(w)) throw std::domain_error("coloring_from_form: form takes the value 2");
  const ScalarField h = antiderivative(w);  // throws when not closed
  const auto width = static_cast<std::size_t>(w.shape.m() + 1);
  const auto height = static_cast<std::size_t>(w.shape.n() + 1);
  Coloring c(width, height);
  for (std::size_t i = 1; i <= width; ++i)
    for (std::size_t j = 1; j <= height; ++j)
      c(i, j) = h.h(i, j) - h.h(1, 1) + t + GF3(static_cast<long long>(i + j) - 2);
  return c;
}

/// (dc - dx - dy, c(1,1)) for a proper colouring of at least 3 x 3 cells.
inline std::pair<OneForm, GF3> form_from_coloring(const Coloring& c) {
  if (c.width() < 3 || c.height() < 3)
    throw std::invalid_argument("form_from_coloring: colouring must be at least 3 x 3");
  if (!is_proper(c)) throw std::domain_error("form_from_coloring: colouring is not proper");
  const GridShape shape(static_cast<int>(c.width()) - 1, static_cast<int>(c.height()) - 1);
  ScalarField h(shape);
  h.h = c.cells;
  return {exterior_derivative(h) - dx(shape) - dy(shape), c(1, 1)};
}

namespace detail {

/// Edge positions (bit offsets in a lexicographic mask) around every vertex.
struct SixVertexMaskLayout {
  explicit SixVertexMaskLayout(GridShape shape) : edge_count(static_cast<unsigned>(shape.edge_count())) {
    auto bit = [&](std::size_t edge) { return static_cast<unsigned>(edge_count - 1 - edge); };
    for (int i = 1; i <= shape.m(); ++i)
      for (int j = 1; j <= shape.n(); ++j)
        vertices.push_back({bit(shape.g_index(i, j)), bit(shape.f_index(i, j + 1)), bit(shape.g_index(i + 1, j)),
                            bit(shape.f_index(i, j))});
  }
  struct Quad {
    unsigned left, top, right, bottom;
  };
  unsigned edge_count;
  std::vector<Quad> vertices;

  bool admissible(std::uint64_t mask) const {
    for (const auto& q : vertices) {
      const auto l = (mask >> q.left) & 1u, t = (mask >> q.top) & 1u;
      const auto r = (mask >> q.right) & 1u, b = (mask >> q.bottom) & 1u;
      if (r + b != l + t) return false;
    }
    return true;
  }
};

inline LatticeState state_from_mask(GridShape shape, FieldTag field, std::uint64_t mask) {
  const auto e = shape.edge_count();
  std::vector<std::uint8_t> edges(e);
  for (std::size_t k = 0; k < e; ++k) edges[k] = static_cast<std::uint8_t>((mask >> (e - 1 - k)) & 1u);
  return LatticeState::from_edges(shape, field, edges);
}

}  // namespace detail

/// Brute force over all {0,1} labellings; visits admissible ones in lexicographic edge order.
inline void for_each_six_vertex_state(GridShape shape, const std::function<void(const LatticeState&)>& visit,
                                      SizeGuard guard = {}) {
  enforce(guard, static_cast<double>(shape.edge_count()), "six-vertex enumeration");
  const detail::SixVertexMaskLayout layout(shape);
  const std::uint64_t end = std::uint64_t{1} << layout.edge_count;
  for (std::uint64_t mask = 0; mask < end; ++mask)
    if (layout.admissible(mask)) visit(detail::state_from_mask(shape, FieldTag::F3, mask));
}

inline std::vector<LatticeState> enumerate_six(GridShape shape, SizeGuard guard = {}) {
  std::vector<LatticeState> out;
  for_each_six_vertex_state(shape, [&](const LatticeState& s) { out.push_back(s); }, guard);
  return out;
}

inline std::uint64_t count_six(GridShape shape, SizeGuard guard = {}) {
  enforce(guard, static_cast<double>(shape.edge_count()), "six-vertex count");
  const detail::SixVertexMaskLayout layout(shape);
  const std::uint64_t end = std::uint64_t{1} << layout.edge_count;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < end; ++mask) count += layout.admissible(mask);
  return count;
}

/// Backtracking over cells in column-major order; visits every proper 3-colouring.
inline void for_each_coloring(std::size_t width, std::size_t height, const std::function<void(const Coloring&)>& visit,
                              SizeGuard guard = {}) {
  if (width == 0 || height == 0) throw std::invalid_argument("colouring grid must be non-empty");
  enforce(guard, static_cast<double>(width * height) * std::log2(3.0), "colouring enumeration");
  Coloring c(width, height);
  const std::size_t cells = width * height;
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == cells) {
      visit(c);
      return;
    }
    const std::size_t i = k / height + 1;
    const std::size_t j = k % height + 1;
    for (unsigned v = 0; v < 3; ++v) {
      const GF3 x(v);
      if (i > 1 && c(i - 1, j) == x) continue;
      if (j > 1 && c(i, j - 1) == x) continue;
      c(i, j) = x;
      place(k + 1);
    }
  };
  place(0);
}

inline std::uint64_t count_colorings(std::size_t width, std::size_t height, SizeGuard guard = {}) {
  std::uint64_t count = 0;
  for_each_coloring(width, height, [&](const Coloring&) { ++count; }, guard);
  return count;
}

}  // namespace latticeforms
