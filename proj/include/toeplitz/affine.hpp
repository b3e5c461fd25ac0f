#pragma once

// The group Q+^x ⋉ Q with product (a,r)(b,s) = (ab, br+s), its positive cone
// N^x ⋉ N, the induced left-invariant partial order, least upper bounds and
// joins, plus exhaustive-search oracles for both.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toeplitz/rational.hpp"

namespace toeplitz {

struct ConePoint;

struct AffinePoint {
  Rational a{1};
  Rational r{0};

  AffinePoint() = default;
  AffinePoint(Rational a_, Rational r_) : a(std::move(a_)), r(std::move(r_)) {
    if (a.sign() <= 0)
      throw Error(Errc::invalid_argument, "affine point needs a > 0, got " + a.str());
  }

  static AffinePoint identity() { return {}; }

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

struct ConePoint {
  Integer a{1};
  Integer m{0};

  ConePoint() = default;
  ConePoint(Integer a_, Integer m_) : a(std::move(a_)), m(std::move(m_)) {
    if (a < 1) throw Error(Errc::invalid_argument, "cone point needs a >= 1");
    if (m < 0) throw Error(Errc::invalid_argument, "cone point needs m >= 0");
  }

  AffinePoint to_affine() const { return {Rational(a), Rational(m)}; }

  friend bool operator==(const ConePoint&, const ConePoint&) = default;
  friend bool operator<(const ConePoint& x, const ConePoint& y) {
    return x.a < y.a || (x.a == y.a && x.m < y.m);
  }
};

inline AffinePoint group_mul(const AffinePoint& x, const AffinePoint& y) {
  return {x.a * y.a, y.a * x.r + y.r};
}

inline AffinePoint group_inv(const AffinePoint& x) {
  const Rational inv = x.a.inverse();
  return {inv, -(inv * x.r)};
}

inline ConePoint cone_mul(const ConePoint& x, const ConePoint& y) {
  return {x.a * y.a, y.a * x.m + y.m};
}

inline bool in_cone(const AffinePoint& x) {
  return x.a.is_integer() && x.r.is_integer() && x.r.sign() >= 0;
}

/// x <= y iff x^{-1} y lies in the cone, i.e. y.a/x.a is a positive integer f
/// and y.r - f x.r is a non-negative integer.
inline bool leq(const AffinePoint& x, const AffinePoint& y) {
  const Rational f = y.a / x.a;
  if (!f.is_integer()) return false;
  const Rational gap = y.r - f * x.r;
  return gap.is_integer() && gap.sign() >= 0;
}

// Specialization of leq for two cone points; avoids rational arithmetic.
inline bool leq(const ConePoint& x, const ConePoint& y) {
  if (y.a % x.a != 0) return false;
  return y.m >= (y.a / x.a) * x.m;
}

/// Least upper bound of x in the cone. With c the least common denominator of
/// x.a and x.r, the bound is (c·x.a, max(0, c·x.r)).
inline ConePoint lub(const AffinePoint& x) {
  const Integer c = lcm(x.a.den(), x.r.den());
  const Integer d = c * x.a.num() / x.a.den();
  const Integer k = c * x.r.num() / x.r.den();
  return {d, k > 0 ? k : Integer(0)};
}

inline ConePoint join_cone(const ConePoint& x, const ConePoint& y) {
  const Integer g = gcd(x.a, y.a);
  const Integer xa = x.a / g;
  const Integer ya = y.a / g;
  const Integer lhs = ya * x.m;
  const Integer rhs = xa * y.m;
  return {x.a * ya, lhs < rhs ? rhs : lhs};
}

namespace detail {

// The least element of `candidates` under leq, or bounds_too_small when no
// candidate sits below all the others. A minimum must be lexicographically
// first because u <= w forces u.a <= w.a and u.m <= w.m.
inline ConePoint certified_minimum(const std::vector<ConePoint>& candidates) {
  const ConePoint first = *std::min_element(candidates.begin(), candidates.end());
  for (const auto& w : candidates)
    if (!leq(first, w))
      throw Error(Errc::bounds_too_small,
                  "no candidate below all others within the search box");
  return first;
}

}  // namespace detail

/// Exhaustive search over cone points (a,m) with a <= bound_a, m <= bound_m
/// for the least upper bound of x. Empty when the box holds no upper bound.
inline std::optional<ConePoint> brute_lub(const AffinePoint& x, const Integer& bound_a,
                                          const Integer& bound_m) {
  if (bound_a < 1 || bound_m < 1)
    throw Error(Errc::invalid_argument, "search bounds must be >= 1");
  std::vector<ConePoint> candidates;
  for (Integer a = 1; a <= bound_a; ++a)
    for (Integer m = 0; m <= bound_m; ++m) {
      ConePoint w(a, m);
      if (leq(x, w.to_affine())) candidates.push_back(std::move(w));
    }
  if (candidates.empty()) return std::nullopt;
  return detail::certified_minimum(candidates);
}

/// Exhaustive search for the least common upper bound of two cone points.
inline std::optional<ConePoint> brute_join(const ConePoint& x, const ConePoint& y,
                                           const Integer& bound_a, const Integer& bound_m) {
  if (bound_a < 1 || bound_m < 1)
    throw Error(Errc::invalid_argument, "search bounds must be >= 1");
  std::vector<ConePoint> candidates;
  for (Integer a = 1; a <= bound_a; ++a)
    for (Integer m = 0; m <= bound_m; ++m) {
      ConePoint w(a, m);
      if (leq(x, w) && leq(y, w)) candidates.push_back(std::move(w));
    }
  if (candidates.empty()) return std::nullopt;
  return detail::certified_minimum(candidates);
}

inline bool is_prime(const Integer& p) {
  if (p < 2) return false;
  for (Integer d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Integers in [1, cutoff] whose prime factors all lie in `primes`, ascending.
inline std::vector<Integer> enumerate_smooth(const std::vector<Integer>& primes,
                                             const Integer& cutoff) {
  if (primes.empty()) throw Error(Errc::invalid_argument, "prime set is empty");
  if (cutoff < 1) throw Error(Errc::invalid_argument, "cutoff must be >= 1");
  for (const auto& p : primes)
    if (!is_prime(p)) throw Error(Errc::invalid_argument, p.str() + " is not prime");

  std::vector<Integer> frontier{1};
  for (const auto& p : std::set<Integer>(primes.begin(), primes.end())) {
    std::vector<Integer> next;
    for (const auto& base : frontier)
      for (Integer c = base; c <= cutoff; c *= p) next.push_back(c);
    frontier = std::move(next);
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

/// True iff every prime factor of n lies in `primes`.
inline bool is_smooth(Integer n, const std::vector<Integer>& primes) {
  if (n < 1) return false;
  for (const auto& p : primes)
    while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace toeplitz
