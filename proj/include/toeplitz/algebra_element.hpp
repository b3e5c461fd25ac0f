#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <type_traits>
#include <utility>
#include <variant>

#include "toeplitz/monomial.hpp"

namespace toeplitz {

using Complex = std::complex<double>;

/// Finite complex-linear combination of monomials of one presentation.
/// Coefficients with modulus <= epsilon are dropped (epsilon 0 drops only
/// exact zeros).
template <MonomialType Mono>
class AlgebraElement {
 public:
  using Terms = std::map<Mono, Complex>;

  explicit AlgebraElement(double epsilon = 0.0) : epsilon_(epsilon) {}
  AlgebraElement(const Mono& x, Complex c = 1.0, double epsilon = 0.0) : epsilon_(epsilon) {
    add_term(x, c);
  }

  static AlgebraElement one() { return AlgebraElement(Mono::identity()); }

  const Terms& terms() const noexcept { return terms_; }
  double epsilon() const noexcept { return epsilon_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(const Mono& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add_term(const Mono& x, Complex c) {
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) <= epsilon_) terms_.erase(it);
  }

  AlgebraElement& operator+=(const AlgebraElement& y) {
    for (const auto& [x, c] : y.terms_) add_term(x, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& y) {
    for (const auto& [x, c] : y.terms_) add_term(x, -c);
    return *this;
  }
  AlgebraElement& operator*=(Complex scale) {
    if (scale == Complex{}) {
      terms_.clear();
      return *this;
    }
    Terms scaled;
    for (const auto& [x, c] : terms_)
      if (std::abs(c * scale) > epsilon_) scaled.emplace(x, c * scale);
    terms_ = std::move(scaled);
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
  friend AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
  friend AlgebraElement operator*(Complex s, AlgebraElement x) { return x *= s; }

  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement out(std::max(x.epsilon_, y.epsilon_));
    for (const auto& [u, cu] : x.terms_)
      for (const auto& [v, cv] : y.terms_) out.add_term(u * v, cu * cv);
    return out;
  }

  friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
    return x.terms_ == y.terms_;
  }

 private:
  Terms terms_;
  double epsilon_;
};

template <MonomialType Mono>
AlgebraElement<Mono> adjoint(const AlgebraElement<Mono>& x) {
  AlgebraElement<Mono> out(x.epsilon());
  for (const auto& [u, c] : x.terms()) out.add_term(adjoint(u), std::conj(c));
  return out;
}

template <MonomialType Mono>
AlgebraElement<Mono> algebra_mul(const AlgebraElement<Mono>& x, const AlgebraElement<Mono>& y) {
  return x * y;
}

/// Gauge conditional expectation: keeps the equal-leg monomials.
inline AlgebraElement<Monomial> expectation_theta(const Monomial& x) {
  if (is_gauge_invariant(x)) return AlgebraElement<Monomial>(x);
  return AlgebraElement<Monomial>();
}

inline AlgebraElement<Monomial> expectation_theta(const AlgebraElement<Monomial>& x) {
  AlgebraElement<Monomial> out(x.epsilon());
  for (const auto& [u, c] : x.terms())
    if (is_gauge_invariant(u)) out.add_term(u, c);
  return out;
}

inline AlgebraElement<Monomial> alpha_endo(const Integer& a, const AlgebraElement<Monomial>& x) {
  AlgebraElement<Monomial> out(x.epsilon());
  for (const auto& [u, c] : x.terms()) out.add_term(alpha_endo(a, u), c);
  return out;
}

/// Element of any of the four presentations, for code that learns the
/// presentation at run time (JSON, the command line).
using AnyAlgebraElement =
    std::variant<AlgebraElement<Monomial>, AlgebraElement<AddMonomial>,
                 AlgebraElement<MultMonomial>, AlgebraElement<ClMonomial>>;

inline AnyAlgebraElement algebra_mul(const AnyAlgebraElement& x, const AnyAlgebraElement& y) {
  return std::visit(
      [](const auto& lhs, const auto& rhs) -> AnyAlgebraElement {
        using L = std::decay_t<decltype(lhs)>;
        using R = std::decay_t<decltype(rhs)>;
        if constexpr (std::is_same_v<L, R>) {
          return lhs * rhs;
        } else {
          throw Error(Errc::mixed_presentation, "operands come from different quotients");
        }
      },
      x, y);
}

}  // namespace toeplitz
