#pragma once

// Lattice data model shared by the six- and eight-vertex code.
//
// Indices are 1-based throughout: vertex v(i,j) sits in column i (from the
// left) and row j (from the bottom), 1 <= i <= m, 1 <= j <= n.  Vertical edges
// f(i,j) have i in [m], j in [n+1]; horizontal edges g(i,j) have i in [m+1],
// j in [n].  Flat edge order is all f (i outer, j inner) followed by all g.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace latticeforms {

/// Rectangular 1-based array with extents [ni] x [nj], stored i-major.
template <class T>
class IndexGrid {
 public:
  IndexGrid() = default;
  IndexGrid(std::size_t ni, std::size_t nj, T fill = T{}) : ni_(ni), nj_(nj), data_(ni * nj, fill) {}

  std::size_t extent_i() const { return ni_; }
  std::size_t extent_j() const { return nj_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[(i - 1) * nj_ + (j - 1)]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[(i - 1) * nj_ + (j - 1)]; }

  T& at(long i, long j) {
    check(i, j);
    return (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  const T& at(long i, long j) const {
    check(i, j);
    return (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  friend bool operator==(const IndexGrid&, const IndexGrid&) = default;
  friend auto operator<=>(const IndexGrid& a, const IndexGrid& b) { return a.data_ <=> b.data_; }

 private:
  void check(long i, long j) const {
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > ni_ || static_cast<std::size_t>(j) > nj_)
      throw std::out_of_range("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside [" +
                              std::to_string(ni_) + "]x[" + std::to_string(nj_) + "]");
  }

  std::size_t ni_ = 0;
  std::size_t nj_ = 0;
  std::vector<T> data_;
};

/// m columns and n rows of interior vertices, both at least 2.
class GridShape {
 public:
  GridShape(int m, int n) : m_(m), n_(n) {
    if (m < 2 || n < 2)
      throw std::invalid_argument("grid shape needs m, n >= 2 (got " + std::to_string(m) + "x" +
                                  std::to_string(n) + ")");
  }

  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t vertical_edges() const { return static_cast<std::size_t>(m_) * (n_ + 1); }
  std::size_t horizontal_edges() const { return static_cast<std::size_t>(m_ + 1) * n_; }
  std::size_t edge_count() const { return vertical_edges() + horizontal_edges(); }
  std::size_t vertex_count() const { return static_cast<std::size_t>(m_) * n_; }
  std::size_t boundary_edge_count() const { return 2 * static_cast<std::size_t>(m_ + n_); }

  /// Flat column of f(i,j) / g(i,j) in the f-then-g edge order.
  std::size_t f_index(int i, int j) const { return static_cast<std::size_t>(i - 1) * (n_ + 1) + (j - 1); }
  std::size_t g_index(int i, int j) const {
    return vertical_edges() + static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }

  friend bool operator==(const GridShape&, const GridShape&) = default;

 private:
  int m_;
  int n_;
};

enum class FieldTag { F2, F3 };

inline unsigned modulus(FieldTag t) { return t == FieldTag::F2 ? 2u : 3u; }
inline std::string to_string(FieldTag t) { return t == FieldTag::F2 ? "F2" : "F3"; }

/// Edge labelling (f, g) of an m x n grid.
class LatticeState {
 public:
  LatticeState(GridShape shape, FieldTag field)
      : shape_(shape),
        field_(field),
        f_(static_cast<std::size_t>(shape.m()), static_cast<std::size_t>(shape.n() + 1), 0),
        g_(static_cast<std::size_t>(shape.m() + 1), static_cast<std::size_t>(shape.n()), 0) {}

  LatticeState(GridShape shape, FieldTag field, IndexGrid<std::uint8_t> f, IndexGrid<std::uint8_t> g)
      : shape_(shape), field_(field), f_(std::move(f)), g_(std::move(g)) {
    if (f_.extent_i() != static_cast<std::size_t>(shape.m()) ||
        f_.extent_j() != static_cast<std::size_t>(shape.n() + 1))
      throw std::invalid_argument("f must be m x (n+1)");
    if (g_.extent_i() != static_cast<std::size_t>(shape.m() + 1) ||
        g_.extent_j() != static_cast<std::size_t>(shape.n()))
      throw std::invalid_argument("g must be (m+1) x n");
    for (auto v : f_.values()) check_value(v);
    for (auto v : g_.values()) check_value(v);
  }

  /// Builds a state from labels in flat edge order.
  static LatticeState from_edges(GridShape shape, FieldTag field, const std::vector<std::uint8_t>& edges) {
    if (edges.size() != shape.edge_count())
      throw std::invalid_argument("expected " + std::to_string(shape.edge_count()) + " edge labels");
    LatticeState s(shape, field);
    for (int i = 1; i <= shape.m(); ++i)
      for (int j = 1; j <= shape.n() + 1; ++j) s.set_f(i, j, edges[shape.f_index(i, j)]);
    for (int i = 1; i <= shape.m() + 1; ++i)
      for (int j = 1; j <= shape.n(); ++j) s.set_g(i, j, edges[shape.g_index(i, j)]);
    return s;
  }

  const GridShape& shape() const { return shape_; }
  FieldTag field() const { return field_; }

  std::uint8_t f(int i, int j) const { return f_.at(i, j); }
  std::uint8_t g(int i, int j) const { return g_.at(i, j); }
  void set_f(int i, int j, unsigned v) {
    check_value(v);
    f_.at(i, j) = static_cast<std::uint8_t>(v);
  }
  void set_g(int i, int j, unsigned v) {
    check_value(v);
    g_.at(i, j) = static_cast<std::uint8_t>(v);
  }

  const IndexGrid<std::uint8_t>& f_grid() const { return f_; }
  const IndexGrid<std::uint8_t>& g_grid() const { return g_; }

  std::vector<std::uint8_t> edges() const {
    std::vector<std::uint8_t> out(f_.values());
    out.insert(out.end(), g_.values().begin(), g_.values().end());
    return out;
  }

  friend bool operator==(const LatticeState& a, const LatticeState& b) {
    return a.shape_ == b.shape_ && a.field_ == b.field_ && a.f_ == b.f_ && a.g_ == b.g_;
  }
  friend bool operator<(const LatticeState& a, const LatticeState& b) { return a.edges() < b.edges(); }

 private:
  void check_value(unsigned v) const {
    if (v >= modulus(field_))
      throw std::invalid_argument("edge label " + std::to_string(v) + " is not an element of " + to_string(field_));
  }

  GridShape shape_;
  FieldTag field_;
  IndexGrid<std::uint8_t> f_;
  IndexGrid<std::uint8_t> g_;
};

struct VertexEdges {
  std::uint8_t left;
  std::uint8_t top;
  std::uint8_t right;
  std::uint8_t bottom;
  friend bool operator==(const VertexEdges&, const VertexEdges&) = default;
};

/// (g(i,j), f(i,j+1), g(i+1,j), f(i,j)) around interior vertex v(i,j).
inline VertexEdges edges_at_vertex(const LatticeState& s, int i, int j) {
  if (i < 1 || i > s.shape().m() || j < 1 || j > s.shape().n())
    throw std::out_of_range("vertex (" + std::to_string(i) + "," + std::to_string(j) + ") outside the grid");
  return {s.g(i, j), s.f(i, j + 1), s.g(i + 1, j), s.f(i, j)};
}

/// The 2m + 2n labels on the outer edges.
struct BoundarySpec {
  BoundarySpec(GridShape shape_, FieldTag field_)
      : shape(shape_),
        field(field_),
        f_bottom(static_cast<std::size_t>(shape_.m()), 0),
        f_top(static_cast<std::size_t>(shape_.m()), 0),
        g_left(static_cast<std::size_t>(shape_.n()), 0),
        g_right(static_cast<std::size_t>(shape_.n()), 0) {}

  GridShape shape;
  FieldTag field;
  std::vector<std::uint8_t> f_bottom;  // f(i,1)
  std::vector<std::uint8_t> f_top;     // f(i,n+1)
  std::vector<std::uint8_t> g_left;    // g(1,j)
  std::vector<std::uint8_t> g_right;   // g(m+1,j)

  /// Throws unless lengths and labels match the shape and field.
  void validate() const {
    auto check = [&](const std::vector<std::uint8_t>& v, int expected, const char* name) {
      if (v.size() != static_cast<std::size_t>(expected))
        throw std::invalid_argument(std::string(name) + " must have length " + std::to_string(expected));
      for (auto x : v)
        if (x >= modulus(field)) throw std::invalid_argument(std::string(name) + " has a label outside " + to_string(field));
    };
    check(f_bottom, shape.m(), "f_bottom");
    check(f_top, shape.m(), "f_top");
    check(g_left, shape.n(), "g_left");
    check(g_right, shape.n(), "g_right");
  }

  /// Boundary labels in the order f_bottom, f_top, g_left, g_right.
  std::vector<std::uint8_t> flat() const {
    std::vector<std::uint8_t> out(f_bottom);
    out.insert(out.end(), f_top.begin(), f_top.end());
    out.insert(out.end(), g_left.begin(), g_left.end());
    out.insert(out.end(), g_right.begin(), g_right.end());
    return out;
  }

  static BoundarySpec from_flat(GridShape shape, FieldTag field, const std::vector<std::uint8_t>& labels) {
    BoundarySpec b(shape, field);
    if (labels.size() != shape.boundary_edge_count())
      throw std::invalid_argument("expected " + std::to_string(shape.boundary_edge_count()) + " boundary labels");
    const auto m = static_cast<std::size_t>(shape.m());
    const auto n = static_cast<std::size_t>(shape.n());
    auto it = labels.begin();
    b.f_bottom.assign(it, it + static_cast<long>(m));
    b.f_top.assign(it + static_cast<long>(m), it + static_cast<long>(2 * m));
    b.g_left.assign(it + static_cast<long>(2 * m), it + static_cast<long>(2 * m + n));
    b.g_right.assign(it + static_cast<long>(2 * m + n), labels.end());
    b.validate();
    return b;
  }

  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

inline BoundarySpec boundary_of(const LatticeState& s) {
  const auto& sh = s.shape();
  BoundarySpec b(sh, s.field());
  for (int i = 1; i <= sh.m(); ++i) {
    b.f_bottom[static_cast<std::size_t>(i - 1)] = s.f(i, 1);
    b.f_top[static_cast<std::size_t>(i - 1)] = s.f(i, sh.n() + 1);
  }
  for (int j = 1; j <= sh.n(); ++j) {
    b.g_left[static_cast<std::size_t>(j - 1)] = s.g(1, j);
    b.g_right[static_cast<std::size_t>(j - 1)] = s.g(sh.m() + 1, j);
  }
  return b;
}

/// Boundary equality ignoring the field tag (labels in {0,1} mean the same thing in F2 and F3).
inline bool has_boundary(const LatticeState& s, const BoundarySpec& b) {
  const auto own = boundary_of(s);
  return own.shape == b.shape && own.flat() == b.flat();
}

/// Refuses brute-force searches whose raw space exceeds 2^max_log2 unless forced.
struct SizeGuard {
  double max_log2 = 26.0;
  bool force = false;
};

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline void enforce(const SizeGuard& guard, double log2_space, const std::string& what) {
  if (!guard.force && log2_space > guard.max_log2) {
    std::ostringstream msg;
    msg.precision(3);
    msg << what << ": search space 2^" << log2_space << " exceeds the 2^" << guard.max_log2
        << " guard (use --force)";
    throw SizeGuardError(msg.str());
  }
}

}  // namespace latticeforms
