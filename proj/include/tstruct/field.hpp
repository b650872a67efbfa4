#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tstruct {

namespace detail {

constexpr int smallest_prime_factor(int q) {
  for (int p = 2; p * p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

constexpr bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = smallest_prime_factor(q);
  while (q % p == 0) q /= p;
  return q == 1;
}

// Elements of GF(p^m) are encoded as integers whose base-p digits are the
// coefficients of a polynomial of degree < m.
template <int Q>
struct FieldTables {
  static constexpr int p = smallest_prime_factor(Q);
  static constexpr int degree() {
    int m = 0;
    for (int x = Q; x > 1; x /= p) ++m;
    return m;
  }
  static constexpr int m = degree();

  std::array<std::array<std::uint8_t, Q>, Q> add{};
  std::array<std::array<std::uint8_t, Q>, Q> mul{};
  std::array<std::uint8_t, Q> neg{};
  std::array<std::uint8_t, Q> inv{};

  static constexpr int digit(int x, int i) {
    for (int k = 0; k < i; ++k) x /= p;
    return x % p;
  }

  // Multiply polynomials (base-p digit vectors) modulo a monic modulus given
  // by its low coefficients.
  static constexpr int poly_mul(int a, int b, const std::array<int, 8>& modulus) {
    std::array<int, 16> prod{};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + digit(a, i) * digit(b, j)) % p;
    for (int d = 2 * m - 2; d >= m; --d) {
      int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < m; ++i) prod[d - m + i] = ((prod[d - m + i] - c * modulus[i]) % p + p) % p;
    }
    int out = 0;
    for (int i = m - 1; i >= 0; --i) out = out * p + prod[i];
    return out;
  }

  static constexpr std::array<int, 8> find_modulus() {
    std::array<int, 8> mod{};
    if (m == 1) return mod;
    int count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      for (int i = 0; i < m; ++i) mod[i] = digit(code, i);
      // Irreducible iff the quotient ring has no zero divisors.
      bool ok = true;
      for (int a = 1; a < Q && ok; ++a)
        for (int b = 1; b < Q && ok; ++b)
          if (poly_mul(a, b, mod) == 0) ok = false;
      if (ok) return mod;
    }
    return mod;
  }

  constexpr FieldTables() {
    const auto mod = find_modulus();
    for (int a = 0; a < Q; ++a) {
      for (int b = 0; b < Q; ++b) {
        int s = 0;
        for (int i = m - 1; i >= 0; --i) s = s * p + (digit(a, i) + digit(b, i)) % p;
        add[a][b] = static_cast<std::uint8_t>(s);
        mul[a][b] = static_cast<std::uint8_t>(m == 1 ? (a * b) % p : poly_mul(a, b, mod));
      }
    }
    for (int a = 0; a < Q; ++a)
      for (int b = 0; b < Q; ++b) {
        if (add[a][b] == 0) neg[a] = static_cast<std::uint8_t>(b);
        if (mul[a][b] == 1) inv[a] = static_cast<std::uint8_t>(b);
      }
  }
};

}  // namespace detail

// Element of the finite field with Q elements.
template <int Q>
class GF {
  static_assert(detail::is_prime_power(Q), "field order must be a prime power");
  static constexpr detail::FieldTables<Q> tables_{};

 public:
  static constexpr int order = Q;
  static constexpr int characteristic = detail::FieldTables<Q>::p;

  constexpr GF() = default;
  constexpr GF(int v) : v_(static_cast<std::uint8_t>(((v % characteristic) + characteristic) % characteristic)) {}

  static constexpr GF from_code(int code) {
    GF g;
    g.v_ = static_cast<std::uint8_t>(code);
    return g;
  }
  constexpr int code() const { return v_; }

  friend constexpr GF operator+(GF a, GF b) { return from_code(tables_.add[a.v_][b.v_]); }
  friend constexpr GF operator-(GF a, GF b) { return from_code(tables_.add[a.v_][tables_.neg[b.v_]]); }
  friend constexpr GF operator*(GF a, GF b) { return from_code(tables_.mul[a.v_][b.v_]); }
  friend constexpr GF operator/(GF a, GF b) {
    if (b.v_ == 0) throw std::domain_error("division by zero in finite field");
    return from_code(tables_.mul[a.v_][tables_.inv[b.v_]]);
  }
  constexpr GF operator-() const { return from_code(tables_.neg[v_]); }
  constexpr GF& operator+=(GF b) { return *this = *this + b; }
  constexpr GF& operator-=(GF b) { return *this = *this - b; }
  constexpr GF& operator*=(GF b) { return *this = *this * b; }
  constexpr GF& operator/=(GF b) { return *this = *this / b; }
  friend constexpr bool operator==(GF a, GF b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(GF a, GF b) { return a.v_ != b.v_; }
  constexpr GF inverse() const { return GF(1) / *this; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend std::ostream& operator<<(std::ostream& os, GF a) { return os << int(a.v_); }

 private:
  std::uint8_t v_ = 0;
};

inline bool is_supported_field(int q) {
  switch (q) {
    case 2: case 3: case 4: case 5: case 7: case 8: case 9: case 11: case 13: case 16:
      return true;
    default:
      return false;
  }
}

// Calls fn(GF<q>{}) for a runtime field order.
template <class Fn>
decltype(auto) with_field(int q, Fn&& fn) {
  switch (q) {
    case 2: return fn(GF<2>{});
    case 3: return fn(GF<3>{});
    case 4: return fn(GF<4>{});
    case 5: return fn(GF<5>{});
    case 7: return fn(GF<7>{});
    case 8: return fn(GF<8>{});
    case 9: return fn(GF<9>{});
    case 11: return fn(GF<11>{});
    case 13: return fn(GF<13>{});
    case 16: return fn(GF<16>{});
    default:
      throw std::invalid_argument("unsupported field order " + std::to_string(q) +
                                  " (supported: 2,3,4,5,7,8,9,11,13,16)");
  }
}

}  // namespace tstruct

namespace Eigen {
template <int Q>
struct NumTraits<tstruct::GF<Q>> : GenericNumTraits<tstruct::GF<Q>> {
  using Real = tstruct::GF<Q>;
  using NonInteger = tstruct::GF<Q>;
  using Literal = tstruct::GF<Q>;
  using Nested = tstruct::GF<Q>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 1
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
