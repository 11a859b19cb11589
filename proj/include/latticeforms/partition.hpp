#pragma once

// Exact partition functions Z = sum over admissible states of the product of
// vertex weights, with free or fixed boundary.

#include <optional>
#include <stdexcept>
#include <string>

#include "eight_vertex.hpp"
#include "forms.hpp"
#include "grid.hpp"
#include "yang_baxter.hpp"

namespace latticeforms {

enum class VertexModel { six, eight };

inline std::string to_string(VertexModel m) { return m == VertexModel::six ? "six" : "eight"; }

/// Product over vertices of R_{left top}^{right bottom}.
inline Rational state_weight(const VertexWeights& w, const LatticeState& s) {
  Rational z = 1;
  const auto shape = s.shape();
  for (int i = 1; i <= static_cast<int>(shape.m()); ++i)
    for (int j = 1; j <= static_cast<int>(shape.n()); ++j) {
      const auto e = edges_at_vertex(s, i, j);
      z *= component(w, e.left, e.top, e.right, e.bottom);
      if (sgn(z) == 0) return z;
    }
  return z;
}

inline Rational partition_function(const VertexWeights& w, GridShape shape, VertexModel model,
                                   const std::optional<BoundarySpec>& boundary = {}, SizeGuard guard = {}) {
  if (boundary) {
    boundary->validate();
    if (boundary->shape != shape) throw std::invalid_argument("boundary shape does not match the lattice");
  }
  Rational z = 0;
  if (model == VertexModel::six) {
    if (sgn(w.d1) != 0 || sgn(w.d_neg1) != 0)
      throw std::invalid_argument("six-vertex partition function needs d1 = d-1 = 0");
    for_each_six_vertex_state(
        shape,
        [&](const LatticeState& s) {
          if (!boundary || has_boundary(s, *boundary)) z += state_weight(w, s);
        },
        guard);
    return z;
  }
  for (const auto& s : enumerate_eight(shape, boundary, EnumerationStrategy::kernel, guard)) z += state_weight(w, s);
  return z;
}

}  // namespace latticeforms
