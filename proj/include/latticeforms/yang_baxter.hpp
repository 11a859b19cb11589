#pragma once

// Boltzmann weights, R-matrices on V (x) V, their embeddings into
// End(V (x) V (x) V), the Yang-Baxter commutator and the star-triangle relation.
//
// Basis of V (x) V: v0v0, v0v1, v1v0, v1v1 (index 2x + y).  Basis of
// V (x) V (x) V: index 4a + 2b + c.  R(v_nu (x) v_beta) = sum R_{nu beta}^{theta gamma}
// v_theta (x) v_gamma, so R_{nu beta}^{theta gamma} is the entry in row
// (theta gamma), column (nu beta).  The vertex picture is left = nu, top = beta,
// right = theta, bottom = gamma.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"

namespace latticeforms {

struct VertexWeights {
  Rational a1, a_neg1, b1, b_neg1, c1, c_neg1, d1, d_neg1;

  // a(1) = a_1, a(-1) = a_{-1}, etc.
  const Rational& a(int s) const { return s == 1 ? a1 : (check(s), a_neg1); }
  const Rational& b(int s) const { return s == 1 ? b1 : (check(s), b_neg1); }
  const Rational& c(int s) const { return s == 1 ? c1 : (check(s), c_neg1); }
  const Rational& d(int s) const { return s == 1 ? d1 : (check(s), d_neg1); }

  /// (a1, a-1, b1, b-1, c1, c-1, d1, d-1).
  std::array<Rational, 8> as_array() const { return {a1, a_neg1, b1, b_neg1, c1, c_neg1, d1, d_neg1}; }
  static VertexWeights from_array(const std::array<Rational, 8>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
  }

  static VertexWeights identity() { return {1, 1, 1, 1, 0, 0, 0, 0}; }
  static VertexWeights all_ones() { return {1, 1, 1, 1, 1, 1, 1, 1}; }

  bool all_nonzero() const {
    for (const auto& x : as_array())
      if (sgn(x) == 0) return false;
    return true;
  }

  friend bool operator==(const VertexWeights&, const VertexWeights&) = default;

 private:
  static void check(int s) {
    if (s != -1) throw std::invalid_argument("weight index must be 1 or -1");
  }
};

inline const std::array<const char*, 8>& weight_names() {
  static const std::array<const char*, 8> names{"a1", "a-1", "b1", "b-1", "c1", "c-1", "d1", "d-1"};
  return names;
}

using TensorOperator = FieldMatrix<Rational>;

/// 4 x 4 rational matrix with the eight-vertex zero pattern.
class RMatrix {
 public:
  explicit RMatrix(FieldMatrix<Rational> m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4) throw std::invalid_argument("R-matrix must be 4 x 4");
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (!in_pattern(r, c) && sgn(m_(r, c)) != 0)
          throw std::domain_error("R-matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                                  ") must vanish in the eight-vertex pattern");
  }

  /// True where the eight-vertex pattern allows a nonzero entry (even total parity).
  static bool in_pattern(std::size_t row, std::size_t col) {
    return ((row >> 1) + (row & 1) + (col >> 1) + (col & 1)) % 2 == 0;
  }

  const FieldMatrix<Rational>& matrix() const { return m_; }

 private:
  FieldMatrix<Rational> m_;
};

inline RMatrix weights_to_matrix(const VertexWeights& w) {
  FieldMatrix<Rational> m(4, 4);
  m(0, 0) = w.a1;
  m(0, 3) = w.d1;
  m(1, 1) = w.b1;
  m(1, 2) = w.c1;
  m(2, 1) = w.c_neg1;
  m(2, 2) = w.b_neg1;
  m(3, 0) = w.d_neg1;
  m(3, 3) = w.a_neg1;
  return RMatrix(std::move(m));
}

inline VertexWeights matrix_to_weights(const RMatrix& r) {
  const auto& m = r.matrix();
  return {m(0, 0), m(3, 3), m(1, 1), m(2, 2), m(1, 2), m(2, 1), m(0, 3), m(3, 0)};
}

/// R_{nu beta}^{theta gamma}: the weight of the vertex (left, top, right, bottom) = (nu, beta, theta, gamma).
inline Rational component(const VertexWeights& w, unsigned nu, unsigned beta, unsigned theta, unsigned gamma) {
  if (nu > 1 || beta > 1 || theta > 1 || gamma > 1) throw std::invalid_argument("component labels must be bits");
  switch ((nu << 3) | (beta << 2) | (theta << 1) | gamma) {
    case 0b0000: return w.a1;
    case 0b1111: return w.a_neg1;
    case 0b0101: return w.b1;
    case 0b1010: return w.b_neg1;
    case 0b1001: return w.c1;
    case 0b0110: return w.c_neg1;
    case 0b1100: return w.d1;
    case 0b0011: return w.d_neg1;
    default: return Rational(0);
  }
}

enum class Slot { s12, s13, s23 };

/// phi_12 = phi (x) 1, phi_13 acting on factors 1 and 3, phi_23 = 1 (x) phi.
inline TensorOperator embed(const FieldMatrix<Rational>& m, Slot slot) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("embed expects a 4 x 4 operator");
  TensorOperator out(8, 8);
  for (unsigned o = 0; o < 8; ++o) {
    const unsigned a2 = o >> 2 & 1u, b2 = o >> 1 & 1u, c2 = o & 1u;
    for (unsigned in = 0; in < 8; ++in) {
      const unsigned a = in >> 2 & 1u, b = in >> 1 & 1u, c = in & 1u;
      switch (slot) {
        case Slot::s12:
          if (c2 == c) out(o, in) = m(2 * a2 + b2, 2 * a + b);
          break;
        case Slot::s13:
          if (b2 == b) out(o, in) = m(2 * a2 + c2, 2 * a + c);
          break;
        case Slot::s23:
          if (a2 == a) out(o, in) = m(2 * b2 + c2, 2 * b + c);
          break;
      }
    }
  }
  return out;
}

inline TensorOperator embed(const RMatrix& r, Slot slot) { return embed(r.matrix(), slot); }

/// [[R,S,T]] = R_12 S_13 T_23 - T_23 S_13 R_12.
inline TensorOperator yb_commutator(const VertexWeights& r, const VertexWeights& s, const VertexWeights& t) {
  const auto r12 = embed(weights_to_matrix(r), Slot::s12);
  const auto s13 = embed(weights_to_matrix(s), Slot::s13);
  const auto t23 = embed(weights_to_matrix(t), Slot::s23);
  return r12 * s13 * t23 - t23 * s13 * r12;
}

/// External labels of the star-triangle picture.
struct BoundaryHex {
  unsigned sigma = 0, tau = 0, beta = 0, theta = 0, rho = 0, alpha = 0;

  static BoundaryHex from_index(unsigned k) {
    return {k >> 5 & 1u, k >> 4 & 1u, k >> 3 & 1u, k >> 2 & 1u, k >> 1 & 1u, k & 1u};
  }
  /// Commutator entry holding this relation: row (theta rho alpha), column (sigma tau beta).
  std::size_t commutator_row() const { return 4 * theta + 2 * rho + alpha; }
  std::size_t commutator_col() const { return 4 * sigma + 2 * tau + beta; }
};

/// LHS - RHS of the star-triangle relation for one choice of external labels.
/// Equals minus the commutator entry at (commutator_row, commutator_col).
inline Rational star_triangle_residual(const VertexWeights& r, const VertexWeights& s, const VertexWeights& t,
                                       const BoundaryHex& x) {
  Rational lhs = 0, rhs = 0;
  for (unsigned k = 0; k < 8; ++k) {
    const unsigned u = k >> 2 & 1u, v = k >> 1 & 1u, w = k & 1u;
    // (gamma, mu, nu) = (u, v, w)
    lhs += component(r, x.sigma, x.tau, w, v) * component(s, w, x.beta, x.theta, u) * component(t, v, u, x.rho, x.alpha);
    // (delta, phi, psi) = (u, v, w)
    rhs += component(t, x.tau, x.beta, w, u) * component(s, x.sigma, u, v, x.alpha) * component(r, v, w, x.theta, x.rho);
  }
  return lhs - rhs;
}

/// All 64 residuals indexed by BoundaryHex::from_index.
inline std::array<Rational, 64> star_triangle_residuals(const VertexWeights& r, const VertexWeights& s,
                                                        const VertexWeights& t) {
  std::array<Rational, 64> out;
  for (unsigned k = 0; k < 64; ++k) out[k] = star_triangle_residual(r, s, t, BoundaryHex::from_index(k));
  return out;
}

inline constexpr std::array<std::pair<int, int>, 4> kSignPairs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// LHS - RHS of the 28-equation form of [[R,S,T]] = 0: equations 1..6 for
/// (i,j) = (1,1), (1,-1), (-1,1), (-1,-1) (indices 0..23), then equations 7..10.
inline std::array<Rational, 28> residuals28(const VertexWeights& R, const VertexWeights& S, const VertexWeights& T) {
  std::array<Rational, 28> out;
  std::size_t k = 0;
  for (int eq = 1; eq <= 6; ++eq)
    for (const auto& [i, j] : kSignPairs) {
      Rational lhs, rhs;
      switch (eq) {
        case 1:
          lhs = T.a(j) * S.a(j) * R.d(i) + T.d(i) * S.c(i) * R.a(-j);
          rhs = T.c(i) * S.d(i) * R.a(j) + T.b(-j) * S.b(-j) * R.d(i);
          break;
        case 2:
          lhs = T.d(i) * S.b(j) * R.c(i) + T.a(j) * S.d(i) * R.b(-j);
          rhs = T.b(j) * S.d(i) * R.a(j) + T.c(-i) * S.b(-j) * R.d(i);
          break;
        case 3:
          lhs = T.d(i) * S.b(j) * R.b(j) + T.a(j) * S.d(i) * R.c(-i);
          rhs = T.d(i) * S.a(j) * R.a(j) + T.a(-j) * S.c(-i) * R.d(i);
          break;
        case 4:
          lhs = T.c(i) * S.a(j) * R.c(i) + T.b(j) * S.c(i) * R.b(-j);
          rhs = T.a(j) * S.c(i) * R.a(j) + T.d(-i) * S.a(-j) * R.d(i);
          break;
        case 5:
          lhs = T.c(i) * S.a(j) * R.b(j) + T.b(j) * S.c(i) * R.c(-i);
          rhs = T.c(i) * S.b(j) * R.a(j) + T.b(-j) * S.d(-i) * R.d(i);
          break;
        case 6:
          lhs = T.b(-j) * S.a(j) * R.c(i) + T.c(-i) * S.c(i) * R.b(-j);
          rhs = T.d(-i) * S.d(i) * R.b(j) + T.a(j) * S.b(-j) * R.c(i);
          break;
      }
      out[k++] = lhs - rhs;
    }
  out[k++] = T.c1 * S.c_neg1 * R.c1 - T.c_neg1 * S.c1 * R.c_neg1;
  out[k++] = T.d1 * S.c1 * R.d_neg1 - T.d_neg1 * S.c_neg1 * R.d1;
  out[k++] = T.c1 * S.d1 * R.d_neg1 - T.c_neg1 * S.d_neg1 * R.d1;
  out[k++] = T.d1 * S.d_neg1 * R.c1 - T.d_neg1 * S.d1 * R.c_neg1;
  return out;
}

/// Human-readable form of each residuals28 entry, same order.
inline std::array<std::string, 28> residual28_labels() {
  static const std::array<const char*, 6> eqs{
      "a_j(T)a_j(S)d_i(R) + d_i(T)c_i(S)a_{-j}(R) = c_i(T)d_i(S)a_j(R) + b_{-j}(T)b_{-j}(S)d_i(R)",
      "d_i(T)b_j(S)c_i(R) + a_j(T)d_i(S)b_{-j}(R) = b_j(T)d_i(S)a_j(R) + c_{-i}(T)b_{-j}(S)d_i(R)",
      "d_i(T)b_j(S)b_j(R) + a_j(T)d_i(S)c_{-i}(R) = d_i(T)a_j(S)a_j(R) + a_{-j}(T)c_{-i}(S)d_i(R)",
      "c_i(T)a_j(S)c_i(R) + b_j(T)c_i(S)b_{-j}(R) = a_j(T)c_i(S)a_j(R) + d_{-i}(T)a_{-j}(S)d_i(R)",
      "c_i(T)a_j(S)b_j(R) + b_j(T)c_i(S)c_{-i}(R) = c_i(T)b_j(S)a_j(R) + b_{-j}(T)d_{-i}(S)d_i(R)",
      "b_{-j}(T)a_j(S)c_i(R) + c_{-i}(T)c_i(S)b_{-j}(R) = d_{-i}(T)d_i(S)b_j(R) + a_j(T)b_{-j}(S)c_i(R)"};
  std::array<std::string, 28> out;
  std::size_t k = 0;
  for (int eq = 1; eq <= 6; ++eq)
    for (const auto& [i, j] : kSignPairs)
      out[k++] = "eq" + std::to_string(eq) + "(i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                 "): " + eqs[static_cast<std::size_t>(eq - 1)];
  out[k++] = "eq7: c_1(T)c_{-1}(S)c_1(R) = c_{-1}(T)c_1(S)c_{-1}(R)";
  out[k++] = "eq8: d_1(T)c_1(S)d_{-1}(R) = d_{-1}(T)c_{-1}(S)d_1(R)";
  out[k++] = "eq9: c_1(T)d_1(S)d_{-1}(R) = c_{-1}(T)d_{-1}(S)d_1(R)";
  out[k++] = "eq10: d_1(T)d_{-1}(S)c_1(R) = d_{-1}(T)d_1(S)c_{-1}(R)";
  return out;
}

/// F(psi) = a1 a-1 + b1 b-1 - c1 c-1 - d1 d-1.
inline Rational f_invariant(const VertexWeights& w) {
  return w.a1 * w.a_neg1 + w.b1 * w.b_neg1 - w.c1 * w.c_neg1 - w.d1 * w.d_neg1;
}

/// G_i(S,T) = c_{-i}(T)d_i(T)[b_{-1}(S)a_1(S) + a_{-1}(S)b_1(S)] - c_{-i}(S)d_i(S)[b_{-1}(T)a_1(T) + a_{-1}(T)b_1(T)].
inline Rational g_invariant(int i, const VertexWeights& S, const VertexWeights& T) {
  if (i != 1 && i != -1) throw std::invalid_argument("g_invariant: i must be 1 or -1");
  return T.c(-i) * T.d(i) * (S.b_neg1 * S.a1 + S.a_neg1 * S.b1) -
         S.c(-i) * S.d(i) * (T.b_neg1 * T.a1 + T.a_neg1 * T.b1);
}

/// alpha_j(S,T) = a_j(T)b_j(T)F(S) - a_{-j}(S)b_{-j}(S)F(T).
inline Rational alpha_invariant(int j, const VertexWeights& S, const VertexWeights& T) {
  return T.a(j) * T.b(j) * f_invariant(S) - S.a(-j) * S.b(-j) * f_invariant(T);
}

/// beta_j(S,T) = a_j(T)b_j(T)F(S) - a_j(S)b_j(S)F(T).
inline Rational beta_invariant(int j, const VertexWeights& S, const VertexWeights& T) {
  return T.a(j) * T.b(j) * f_invariant(S) - S.a(j) * S.b(j) * f_invariant(T);
}

/// Necessary conditions on (S,T) for some R with nonzero c and d weights to
/// satisfy [[R,S,T]] = 0, together with the intermediate quantities.
struct ConditionReport {
  bool cond1 = false, cond2 = false, cond3_plus = false, cond3_minus = false, cond4 = false;
  Rational F_S, F_T, G_plus, G_minus;
  Rational alpha_plus, alpha_minus, beta_plus, beta_minus;
  // 2 x 2 minors of the 4 x 2 matrix for i = 1 and i = -1, row pairs
  // (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
  std::array<Rational, 6> minors_plus, minors_minus;

  bool all_hold() const { return cond1 && cond2 && cond3_plus && cond3_minus && cond4; }
};

namespace detail {

inline std::array<Rational, 6> minors_4x2(const std::array<std::array<Rational, 2>, 4>& m) {
  std::array<Rational, 6> out;
  std::size_t k = 0;
  for (std::size_t r1 = 0; r1 < 4; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < 4; ++r2) out[k++] = m[r1][0] * m[r2][1] - m[r1][1] * m[r2][0];
  return out;
}

}  // namespace detail

inline ConditionReport check_necessary_conditions(const VertexWeights& S, const VertexWeights& T) {
  if (!S.all_nonzero() || !T.all_nonzero())
    throw std::domain_error("necessary conditions require all weights of S and T to be nonzero");
  ConditionReport rep;
  rep.F_S = f_invariant(S);
  rep.F_T = f_invariant(T);
  rep.G_plus = g_invariant(1, S, T);
  rep.G_minus = g_invariant(-1, S, T);
  rep.alpha_plus = alpha_invariant(1, S, T);
  rep.alpha_minus = alpha_invariant(-1, S, T);
  rep.beta_plus = beta_invariant(1, S, T);
  rep.beta_minus = beta_invariant(-1, S, T);

  rep.cond1 = T.a1 * T.b1 * rep.F_S == T.a_neg1 * T.b_neg1 * rep.F_S;
  rep.cond2 = S.a1 * S.b1 * rep.F_T == S.a_neg1 * S.b_neg1 * rep.F_T;

  const Rational diff = T.a1 * T.b1 * rep.F_S - S.a1 * S.b1 * rep.F_T;
  const Rational rhs3 = diff * diff;
  for (int i : {1, -1}) {
    const Rational& G = i == 1 ? rep.G_plus : rep.G_minus;
    const Rational ratio = T.c(i) * T.d(-i) / (T.c(-i) * T.d(i));
    const bool ok = ratio * G * G == rhs3;
    (i == 1 ? rep.cond3_plus : rep.cond3_minus) = ok;

    const Rational k = T.c(i) / T.c(-i);
    const Rational kp = T.d(-i) / T.d(i);
    const std::array<std::array<Rational, 2>, 4> m{{{k * G, -rep.alpha_plus},
                                                    {k * G, -rep.alpha_minus},
                                                    {rep.beta_plus, -kp * G},
                                                    {rep.beta_minus, -kp * G}}};
    (i == 1 ? rep.minors_plus : rep.minors_minus) = detail::minors_4x2(m);
  }

  rep.cond4 = T.c1 * S.c_neg1 / (T.c_neg1 * S.c1) == T.d1 * S.d_neg1 / (T.d_neg1 * S.d1);
  return rep;
}

/// Solution space of [[R,S,T]] = 0 in R, for fixed S and T.
struct RSolveReport {
  std::vector<VertexWeights> basis;                 // nullspace basis, ascending free column
  std::optional<VertexWeights> nonzero_cd_witness;  // some R with c1, c-1, d1, d-1 all nonzero
  std::uint64_t combinations_scanned = 0;
  int scan_bound = 2;  // coefficients of the basis scanned in [-bound, bound]
};

/// The commutator is linear in R, so the solutions form the nullspace of a 64 x 8 matrix.
inline FieldMatrix<Rational> r_linear_system(const VertexWeights& S, const VertexWeights& T) {
  FieldMatrix<Rational> sys(64, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    std::array<Rational, 8> e{};
    e[k] = 1;
    const auto c = yb_commutator(VertexWeights::from_array(e), S, T);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t col = 0; col < 8; ++col) sys(8 * r + col, k) = c(r, col);
  }
  return sys;
}

inline RSolveReport solve_R(const VertexWeights& S, const VertexWeights& T, int scan_bound = 2) {
  if (scan_bound < 1) throw std::invalid_argument("scan bound must be positive");
  RSolveReport rep;
  rep.scan_bound = scan_bound;
  for (const auto& v : nullspace_basis(r_linear_system(S, T))) {
    std::array<Rational, 8> a;
    for (std::size_t k = 0; k < 8; ++k) a[k] = v[k];
    rep.basis.push_back(VertexWeights::from_array(a));
  }
  const std::size_t dim = rep.basis.size();
  if (dim == 0) return rep;

  std::vector<int> coeff(dim, -scan_bound);
  for (;;) {
    bool nonzero = false;
    for (int c : coeff) nonzero = nonzero || c != 0;
    if (nonzero) {
      ++rep.combinations_scanned;
      std::array<Rational, 8> acc{};
      for (std::size_t b = 0; b < dim; ++b) {
        const auto arr = rep.basis[b].as_array();
        for (std::size_t k = 0; k < 8; ++k) acc[k] += coeff[b] * arr[k];
      }
      if (sgn(acc[4]) != 0 && sgn(acc[5]) != 0 && sgn(acc[6]) != 0 && sgn(acc[7]) != 0) {
        rep.nonzero_cd_witness = VertexWeights::from_array(acc);
        return rep;
      }
    }
    std::size_t pos = 0;
    while (pos < dim && coeff[pos] == scan_bound) coeff[pos++] = -scan_bound;
    if (pos == dim) break;
    ++coeff[pos];
  }
  return rep;
}

}  // namespace latticeforms
