#pragma once

// Exact scalar fields: F2, F3 and the rationals.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace latticeforms {

/// Element of the prime field Z/PZ for small P.
template <unsigned P>
class PrimeField {
  static_assert(P >= 2 && P < 256, "PrimeField expects a small prime");

 public:
  static constexpr unsigned modulus = P;

  constexpr PrimeField() = default;
  constexpr explicit PrimeField(long long v) : value_(reduce(v)) {}

  constexpr unsigned value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  constexpr PrimeField operator-() const { return PrimeField(P - value_); }
  constexpr PrimeField& operator+=(PrimeField o) {
    value_ = static_cast<std::uint8_t>((value_ + o.value_) % P);
    return *this;
  }
  constexpr PrimeField& operator-=(PrimeField o) {
    value_ = static_cast<std::uint8_t>((value_ + P - o.value_) % P);
    return *this;
  }
  constexpr PrimeField& operator*=(PrimeField o) {
    value_ = static_cast<std::uint8_t>((value_ * o.value_) % P);
    return *this;
  }
  PrimeField& operator/=(PrimeField o) { return *this *= o.inverse(); }

  friend constexpr PrimeField operator+(PrimeField a, PrimeField b) { return a += b; }
  friend constexpr PrimeField operator-(PrimeField a, PrimeField b) { return a -= b; }
  friend constexpr PrimeField operator*(PrimeField a, PrimeField b) { return a *= b; }
  friend PrimeField operator/(PrimeField a, PrimeField b) { return a /= b; }
  friend constexpr bool operator==(PrimeField, PrimeField) = default;
  friend constexpr auto operator<=>(PrimeField, PrimeField) = default;

  PrimeField inverse() const {
    if (value_ == 0) throw std::domain_error("inverse of zero in F" + std::to_string(P));
    // Fermat: x^(P-2)
    PrimeField result(1);
    for (unsigned k = 0; k + 2 < P; ++k) result *= *this;
    return result;
  }

  friend std::ostream& operator<<(std::ostream& os, PrimeField x) { return os << x.value(); }

 private:
  static constexpr std::uint8_t reduce(long long v) {
    long long r = v % static_cast<long long>(P);
    if (r < 0) r += P;
    return static_cast<std::uint8_t>(r);
  }

  std::uint8_t value_ = 0;
};

using GF2 = PrimeField<2>;
using GF3 = PrimeField<3>;
using Rational = mpq_class;
using BigInt = mpz_class;

template <class F>
struct field_traits;

template <unsigned P>
struct field_traits<PrimeField<P>> {
  using value_type = PrimeField<P>;
  static constexpr std::string_view name() {
    if constexpr (P == 2) return "F2";
    else if constexpr (P == 3) return "F3";
    else return "Fp";
  }
  static value_type zero() { return value_type(0); }
  static value_type one() { return value_type(1); }
  static bool is_zero(const value_type& x) { return x.is_zero(); }
  static value_type inverse(const value_type& x) { return x.inverse(); }
};

template <>
struct field_traits<Rational> {
  using value_type = Rational;
  static constexpr std::string_view name() { return "Q"; }
  static value_type zero() { return Rational(0); }
  static value_type one() { return Rational(1); }
  static bool is_zero(const value_type& x) { return sgn(x) == 0; }
  static value_type inverse(const value_type& x) {
    if (sgn(x) == 0) throw std::domain_error("inverse of zero in Q");
    return Rational(1) / x;
  }
};

/// Parses "p", "-p" or "p/q" into a canonical rational; rejects anything else.
inline Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t k = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) k = 1;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  BigInt p(n, 10);
  BigInt q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Canonical "p/q" text (just "p" when q = 1).
inline std::string to_string(const Rational& r) { return r.get_str(10); }

}  // namespace latticeforms
