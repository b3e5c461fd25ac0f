#pragma once

// Spanning monomials V_a S^m S^{*n} V_b^* of the Toeplitz algebra of N^x ⋉ N
// and their images in the additive, multiplicative and boundary
// quotients. Products of two monomials always collapse to a single monomial,
// so each type is closed under multiplication and the tuple is the normal form.

#include <concepts>
#include <ostream>
#include <string>

#include "toeplitz/affine.hpp"
#include "toeplitz/rational.hpp"

namespace toeplitz {

/// V_a S^m S^{*n} V_b^*.
struct Monomial {
  Integer a{1};
  Integer m{0};
  Integer n{0};
  Integer b{1};

  Monomial() = default;
  Monomial(Integer a_, Integer m_, Integer n_, Integer b_)
      : a(std::move(a_)), m(std::move(m_)), n(std::move(n_)), b(std::move(b_)) {
    if (a < 1 || b < 1) throw Error(Errc::invalid_argument, "monomial legs must be >= 1");
    if (m < 0 || n < 0) throw Error(Errc::invalid_argument, "monomial exponents must be >= 0");
  }

  static Monomial identity() { return {}; }
  static Monomial S() { return {1, 1, 0, 1}; }
  static Monomial S_star() { return {1, 0, 1, 1}; }
  static Monomial V(Integer a) { return {std::move(a), 0, 0, 1}; }
  static Monomial V_star(Integer a) { return {1, 0, 0, std::move(a)}; }
  /// Range projection V_a V_a^*.
  static Monomial range_projection(Integer a) { return {a, 0, 0, a}; }

  std::string str() const {
    return "(" + a.str() + "," + m.str() + "," + n.str() + "," + b.str() + ")";
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& x, const Monomial& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.m != y.m) return x.m < y.m;
    if (x.n != y.n) return x.n < y.n;
    return x.b < y.b;
  }
  friend std::ostream& operator<<(std::ostream& os, const Monomial& x) { return os << x.str(); }
};

/// V_a S^((k)) V_b^* in the additive quotient, where S is unitary.
struct AddMonomial {
  Integer a{1};
  Integer k{0};
  Integer b{1};

  AddMonomial() = default;
  AddMonomial(Integer a_, Integer k_, Integer b_)
      : a(std::move(a_)), k(std::move(k_)), b(std::move(b_)) {
    if (a < 1 || b < 1) throw Error(Errc::invalid_argument, "monomial legs must be >= 1");
  }

  static AddMonomial identity() { return {}; }
  std::string str() const { return "(" + a.str() + "," + k.str() + "," + b.str() + ")"; }

  friend bool operator==(const AddMonomial&, const AddMonomial&) = default;
  friend bool operator<(const AddMonomial& x, const AddMonomial& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.k != y.k) return x.k < y.k;
    return x.b < y.b;
  }
  friend std::ostream& operator<<(std::ostream& os, const AddMonomial& x) { return os << x.str(); }
};

/// W_r W_s^* U_g in the multiplicative quotient, with the unitaries U pushed
/// to the right through U_g W_r U_g^* = W_{gr}.
struct MultMonomial {
  Rational r{0};
  Rational s{0};
  Rational g{1};

  MultMonomial() = default;
  MultMonomial(Rational r_, Rational s_, Rational g_)
      : r(std::move(r_)), s(std::move(s_)), g(std::move(g_)) {
    if (r.sign() < 0 || s.sign() < 0)
      throw Error(Errc::invalid_argument, "W exponents must be >= 0");
    if (g.sign() <= 0) throw Error(Errc::invalid_argument, "U index must be > 0");
  }

  static MultMonomial identity() { return {}; }
  std::string str() const { return "(" + r.str() + "," + s.str() + "," + g.str() + ")"; }

  friend bool operator==(const MultMonomial&, const MultMonomial&) = default;
  friend bool operator<(const MultMonomial& x, const MultMonomial& y) {
    if (x.r != y.r) return x.r < y.r;
    if (x.s != y.s) return x.s < y.s;
    return x.g < y.g;
  }
  friend std::ostream& operator<<(std::ostream& os, const MultMonomial& x) { return os << x.str(); }
};

/// W̃_t Ũ_g in the boundary quotient; a group element.
struct ClMonomial {
  Rational t{0};
  Rational g{1};

  ClMonomial() = default;
  ClMonomial(Rational t_, Rational g_) : t(std::move(t_)), g(std::move(g_)) {
    if (g.sign() <= 0) throw Error(Errc::invalid_argument, "U index must be > 0");
  }

  static ClMonomial identity() { return {}; }
  std::string str() const { return "(" + t.str() + "," + g.str() + ")"; }

  friend bool operator==(const ClMonomial&, const ClMonomial&) = default;
  friend bool operator<(const ClMonomial& x, const ClMonomial& y) {
    if (x.t != y.t) return x.t < y.t;
    return x.g < y.g;
  }
  friend std::ostream& operator<<(std::ostream& os, const ClMonomial& x) { return os << x.str(); }
};

// ---------------------------------------------------------------------------
// Full algebra

/// (V_a S^m S^{*n} V_b^*)(V_c S^p S^{*q} V_d^*). With g = gcd(b,c) the middle
/// V_b^* V_c becomes V_{c'} V_{b'}^*, which commutes outwards by (T1)/(T4);
/// the remaining S^{*c'n} S^{b'p} telescopes because S is an isometry.
inline Monomial full_mul(const Monomial& x, const Monomial& y) {
  const Integer g = gcd(x.b, y.a);
  const Integer bp = x.b / g;
  const Integer cp = y.a / g;
  const Integer u = cp * x.n;
  const Integer v = bp * y.m;
  if (v >= u) return {x.a * cp, cp * x.m + v - u, bp * y.n, bp * y.b};
  return {x.a * cp, cp * x.m, u - v + bp * y.n, bp * y.b};
}

inline Monomial adjoint(const Monomial& x) { return {x.b, x.n, x.m, x.a}; }

/// α_a(x) = V_a x V_a^*.
inline Monomial alpha_endo(const Integer& a, const Monomial& x) {
  return full_mul(full_mul(Monomial::V(a), x), Monomial::V_star(a));
}

inline bool is_gauge_invariant(const Monomial& x) { return x.a == x.b; }

// ---------------------------------------------------------------------------
// Additive quotient (S unitary)

inline AddMonomial reduce_add(const Monomial& x) { return {x.a, x.m - x.n, x.b}; }

inline AddMonomial add_mul(const AddMonomial& x, const AddMonomial& y) {
  const Integer g = gcd(x.b, y.a);
  const Integer bp = x.b / g;
  const Integer cp = y.a / g;
  return {x.a * cp, cp * x.k + bp * y.k, bp * y.b};
}

inline AddMonomial adjoint(const AddMonomial& x) { return {x.b, -x.k, x.a}; }

// ---------------------------------------------------------------------------
// Multiplicative quotient (every V_a unitary)

/// V_a S^m S^{*n} V_b^* = (V_a S^m V_a^*)(V_a S^{*n} V_a^*)(V_a V_b^*)
///                      = W_{m/a} W_{n/a}^* U_{b/a}.
inline MultMonomial reduce_mult(const Monomial& x) {
  return {Rational(x.m, x.a), Rational(x.n, x.a), Rational(x.b, x.a)};
}

inline MultMonomial mult_mul(const MultMonomial& x, const MultMonomial& y) {
  const Rational rho = x.g * y.r;
  const Rational sigma = x.g * y.s;
  if (rho >= x.s) return {x.r + rho - x.s, sigma, x.g * y.g};
  return {x.r, x.s - rho + sigma, x.g * y.g};
}

/// (W_r W_s^* U_g)^* = U_{1/g} W_s W_r^* = W_{s/g} W_{r/g}^* U_{1/g}.
inline MultMonomial adjoint(const MultMonomial& x) {
  const Rational inv = x.g.inverse();
  return {x.s * inv, x.r * inv, inv};
}

// ---------------------------------------------------------------------------
// Boundary quotient (S and all V_a unitary)

inline ClMonomial reduce_cl(const Monomial& x) {
  return {Rational(x.m - x.n, x.a), Rational(x.b, x.a)};
}

inline ClMonomial cl_mul(const ClMonomial& x, const ClMonomial& y) {
  return {x.t + x.g * y.t, x.g * y.g};
}

inline ClMonomial cl_inverse(const ClMonomial& x) {
  const Rational inv = x.g.inverse();
  return {-(x.t * inv), inv};
}

inline ClMonomial adjoint(const ClMonomial& x) { return cl_inverse(x); }

/// The isomorphism onto Q+^x ⋉ Q with its (a,r)(b,s) = (ab, br+s) law:
/// (t,g) ↦ (g^{-1}, -t g^{-1}).
inline AffinePoint to_affine(const ClMonomial& x) {
  const Rational inv = x.g.inverse();
  return {inv, -(x.t * inv)};
}

// ---------------------------------------------------------------------------
// Uniform spelling for generic code.

inline Monomial operator*(const Monomial& x, const Monomial& y) { return full_mul(x, y); }
inline AddMonomial operator*(const AddMonomial& x, const AddMonomial& y) { return add_mul(x, y); }
inline MultMonomial operator*(const MultMonomial& x, const MultMonomial& y) {
  return mult_mul(x, y);
}
inline ClMonomial operator*(const ClMonomial& x, const ClMonomial& y) { return cl_mul(x, y); }

template <class T>
concept MonomialType = requires(const T& x) {
  { T::identity() } -> std::same_as<T>;
  { x * x } -> std::same_as<T>;
  { adjoint(x) } -> std::same_as<T>;
  { x < x } -> std::convertible_to<bool>;
};

}  // namespace toeplitz
