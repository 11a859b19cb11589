#pragma once

// F2-linear structure of the eight-vertex model: the defect map, exact
// counts, boundary parity and an explicit admissible extension of a boundary.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "grid.hpp"
#include "matrix.hpp"

namespace latticeforms {

/// phi: F2^{edges} -> F2^{vertices}; row (i,j) has ones at f(i,j), f(i,j+1), g(i,j), g(i+1,j).
struct DefectMap {
  GridShape shape;
  FieldMatrix<GF2> matrix;

  /// Row of vertex e(i,j), i outer.
  static std::size_t row_index(const GridShape& s, int i, int j) {
    return static_cast<std::size_t>(i - 1) * s.n() + (j - 1);
  }
};

inline DefectMap defect_map(GridShape shape) {
  FieldMatrix<GF2> m(shape.vertex_count(), shape.edge_count());
  for (int i = 1; i <= shape.m(); ++i)
    for (int j = 1; j <= shape.n(); ++j) {
      const auto r = DefectMap::row_index(shape, i, j);
      m(r, shape.f_index(i, j)) = GF2(1);
      m(r, shape.f_index(i, j + 1)) = GF2(1);
      m(r, shape.g_index(i, j)) = GF2(1);
      m(r, shape.g_index(i + 1, j)) = GF2(1);
    }
  return {shape, std::move(m)};
}

namespace detail {
inline void require_binary(const LatticeState& s) {
  for (auto v : s.edges())
    if (v > 1) throw std::invalid_argument("eight-vertex states carry labels 0 and 1 only");
}
inline void require_binary(const BoundarySpec& b) {
  for (auto v : b.flat())
    if (v > 1) throw std::invalid_argument("eight-vertex boundaries carry labels 0 and 1 only");
}
}  // namespace detail

/// Per-vertex parity f(i,j) + g(i,j) + f(i,j+1) + g(i+1,j), indexed like DefectMap rows.
inline Vector<GF2> defect_vector(const LatticeState& s) {
  detail::require_binary(s);
  const auto& sh = s.shape();
  Vector<GF2> out(sh.vertex_count());
  for (int i = 1; i <= sh.m(); ++i)
    for (int j = 1; j <= sh.n(); ++j) {
      const auto e = edges_at_vertex(s, i, j);
      out[DefectMap::row_index(sh, i, j)] = GF2(e.left + e.top + e.right + e.bottom);
    }
  return out;
}

inline bool is_admissible_eight(const LatticeState& s) {
  const auto d = defect_vector(s);
  return std::all_of(d.begin(), d.end(), [](GF2 x) { return x.is_zero(); });
}

inline BigInt pow2(unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

/// 2^{m+n+mn}.
inline BigInt count_total_closed_form(GridShape shape) {
  return pow2(static_cast<unsigned long>(shape.m() + shape.n() + shape.m() * shape.n()));
}

/// 2^{dim V - rank phi}, i.e. the size of ker phi.
inline BigInt count_total_by_rank(GridShape shape) {
  const auto r = rank(defect_map(shape).matrix);
  return pow2(static_cast<unsigned long>(shape.edge_count() - r));
}

/// Number of admissible eight-vertex states; both derivations must agree.
inline BigInt count_total(GridShape shape) {
  auto closed = count_total_closed_form(shape);
  if (closed != count_total_by_rank(shape))
    throw std::logic_error("count_total: closed form disagrees with rank-nullity");
  return closed;
}

/// Sum over all boundary labels; zero iff an admissible extension exists.
inline GF2 boundary_parity(const BoundarySpec& b) {
  b.validate();
  detail::require_binary(b);
  GF2 sum(0);
  for (auto v : b.flat()) sum += GF2(v);
  return sum;
}

/// The explicit admissible state with boundary b: g vanishes off the first
/// column and the boundary, f is carried down from the top row.
inline LatticeState construct_state(const BoundarySpec& b) {
  if (!boundary_parity(b).is_zero()) throw std::domain_error("no admissible extension exists: boundary parity is 1");
  const int m = b.shape.m();
  const int n = b.shape.n();
  LatticeState s(b.shape, FieldTag::F2);
  auto at = [](const std::vector<std::uint8_t>& v, int k) { return GF2(v[static_cast<std::size_t>(k - 1)]); };

  for (int i = 1; i <= m; ++i) {
    s.set_f(i, 1, at(b.f_bottom, i).value());
    s.set_f(i, n + 1, at(b.f_top, i).value());
  }
  for (int j = 1; j <= n; ++j) {
    s.set_g(1, j, at(b.g_left, j).value());
    s.set_g(m + 1, j, at(b.g_right, j).value());
  }

  GF2 left_sum(0);
  for (int j = 1; j <= n; ++j) left_sum += at(b.g_left, j);
  GF2 column_pairs(0);
  for (int i = 2; i <= m; ++i) {
    column_pairs += at(b.f_bottom, i - 1) + at(b.f_top, i - 1);
    s.set_g(i, 1, (left_sum + column_pairs).value());
    for (int j = 2; j <= n; ++j) s.set_g(i, j, 0);
  }

  for (int j = 2; j <= n; ++j) {
    for (int i = 2; i <= m - 1; ++i) s.set_f(i, j, at(b.f_top, i).value());
    GF2 first = at(b.f_top, 1);
    GF2 last = at(b.f_top, m);
    for (int k = 1; k <= n - j + 1; ++k) {
      first += at(b.g_left, n - k + 1);
      last += at(b.g_right, n - k + 1);
    }
    s.set_f(1, j, first.value());
    s.set_f(m, j, last.value());
  }
  return s;
}

/// 2^{(m-1)(n-1)} when the boundary parity vanishes, else 0.
inline BigInt count_with_boundary(const BoundarySpec& b) {
  if (!boundary_parity(b).is_zero()) return BigInt(0);
  return pow2(static_cast<unsigned long>((b.shape.m() - 1) * (b.shape.n() - 1)));
}

/// 2^{2m+2n-1}.
inline BigInt count_valid_boundaries(GridShape shape) {
  return pow2(static_cast<unsigned long>(2 * shape.m() + 2 * shape.n() - 1));
}

enum class EnumerationStrategy { brute_force, kernel };

namespace detail {

inline LatticeState state_from_vector(GridShape shape, const Vector<GF2>& x) {
  std::vector<std::uint8_t> edges(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) edges[k] = static_cast<std::uint8_t>(x[k].value());
  return LatticeState::from_edges(shape, FieldTag::F2, edges);
}

inline Vector<GF2> vector_from_state(const LatticeState& s) {
  const auto e = s.edges();
  Vector<GF2> x(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) x[k] = GF2(e[k]);
  return x;
}

/// Every vector offset + span(basis), sorted lexicographically.
inline std::vector<LatticeState> span_coset(GridShape shape, const Vector<GF2>& offset,
                                            const std::vector<Vector<GF2>>& basis, const SizeGuard& guard) {
  enforce(guard, static_cast<double>(basis.size()), "eight-vertex kernel enumeration");
  std::vector<LatticeState> out;
  const std::uint64_t end = std::uint64_t{1} << basis.size();
  out.reserve(end);
  for (std::uint64_t combo = 0; combo < end; ++combo) {
    Vector<GF2> x = offset;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if ((combo >> k) & 1u)
        for (std::size_t c = 0; c < x.size(); ++c) x[c] += basis[k][c];
    out.push_back(state_from_vector(shape, x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<LatticeState> enumerate_eight_brute(GridShape shape, const std::optional<BoundarySpec>& boundary,
                                                       const SizeGuard& guard) {
  enforce(guard, static_cast<double>(shape.edge_count()), "eight-vertex brute-force enumeration");
  const auto e = static_cast<unsigned>(shape.edge_count());
  auto bit = [&](std::size_t edge) { return e - 1 - static_cast<unsigned>(edge); };
  std::vector<std::array<unsigned, 4>> quads;
  for (int i = 1; i <= shape.m(); ++i)
    for (int j = 1; j <= shape.n(); ++j)
      quads.push_back({bit(shape.f_index(i, j)), bit(shape.f_index(i, j + 1)), bit(shape.g_index(i, j)),
                       bit(shape.g_index(i + 1, j))});
  std::vector<LatticeState> out;
  const std::uint64_t end = std::uint64_t{1} << e;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    bool ok = true;
    for (const auto& q : quads) {
      if ((((mask >> q[0]) ^ (mask >> q[1]) ^ (mask >> q[2]) ^ (mask >> q[3])) & 1u) != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::uint8_t> edges(e);
    for (std::size_t k = 0; k < e; ++k) edges[k] = static_cast<std::uint8_t>((mask >> bit(k)) & 1u);
    auto s = LatticeState::from_edges(shape, FieldTag::F2, edges);
    if (boundary && !has_boundary(s, *boundary)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Admissible eight-vertex states in lexicographic edge order, optionally with a fixed boundary.
inline std::vector<LatticeState> enumerate_eight(GridShape shape, const std::optional<BoundarySpec>& boundary = {},
                                                 EnumerationStrategy strategy = EnumerationStrategy::kernel,
                                                 SizeGuard guard = {}) {
  if (boundary) {
    if (!(boundary->shape == shape)) throw std::invalid_argument("enumerate_eight: boundary shape mismatch");
    boundary->validate();
    detail::require_binary(*boundary);
  }
  if (strategy == EnumerationStrategy::brute_force) return detail::enumerate_eight_brute(shape, boundary, guard);

  const auto phi = defect_map(shape);
  if (!boundary) return detail::span_coset(shape, Vector<GF2>(shape.edge_count()), nullspace_basis(phi.matrix), guard);
  if (!boundary_parity(*boundary).is_zero()) return {};

  // zero-boundary solutions: ker phi intersected with the boundary coordinates vanishing
  FieldMatrix<GF2> constrained(phi.matrix.rows() + shape.boundary_edge_count(), shape.edge_count());
  for (std::size_t r = 0; r < phi.matrix.rows(); ++r)
    for (std::size_t c = 0; c < phi.matrix.cols(); ++c) constrained(r, c) = phi.matrix(r, c);
  std::size_t r = phi.matrix.rows();
  for (int i = 1; i <= shape.m(); ++i) {
    constrained(r++, shape.f_index(i, 1)) = GF2(1);
    constrained(r++, shape.f_index(i, shape.n() + 1)) = GF2(1);
  }
  for (int j = 1; j <= shape.n(); ++j) {
    constrained(r++, shape.g_index(1, j)) = GF2(1);
    constrained(r++, shape.g_index(shape.m() + 1, j)) = GF2(1);
  }
  const auto particular = detail::vector_from_state(construct_state(*boundary));
  return detail::span_coset(shape, particular, nullspace_basis(constrained), guard);
}

}  // namespace latticeforms
