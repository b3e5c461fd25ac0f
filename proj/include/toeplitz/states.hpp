#pragma once

// Ground states and KMS_β states on spanning monomials, plus the β → 1+
// limits for the three tabulated measures.

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "toeplitz/dirichlet.hpp"
#include "toeplitz/monomial.hpp"

namespace toeplitz {

/// A state evaluated on spanning monomials, each value with an error bound.
struct StateOracle {
  std::function<Evaluation(const Monomial&)> evaluator;
  std::string label;

  Evaluation operator()(const Monomial& x) const { return evaluator(x); }
};

/// A state φ on C*(S), given by its values φ(S^m S^{*n}).
struct ToeplitzStateSpec {
  std::function<Complex(const Integer& m, const Integer& n)> oracle;
  std::string label;

  /// The trace z^k ↦ ∫ z^k dμ, so φ(S^m S^{*n}) = moment(μ, m-n).
  static ToeplitzStateSpec trace_from_measure(Measure mu, std::string label = "trace") {
    return {[mu = std::move(mu)](const Integer& m, const Integer& n) { return moment(mu, m - n); },
            std::move(label)};
  }

  /// Vector state of the basis vector e_0 of ℓ²(N): nonzero only on the identity.
  static ToeplitzStateSpec vacuum() {
    return {[](const Integer& m, const Integer& n) {
              return (m == 0 && n == 0) ? Complex{1.0, 0.0} : Complex{};
            },
            "vacuum"};
  }
};

namespace detail {

inline double leg_weight(const Integer& a, double beta) { return std::exp(-beta * log_of(a)); }

inline StateOracle kms_oracle(KmsParams params, Measure mu, std::string label) {
  params.validate();
  return {[params = std::move(params), mu = std::move(mu)](const Monomial& x) -> Evaluation {
            if (params.prime_set && !(is_smooth(x.a, *params.prime_set) &&
                                      is_smooth(x.b, *params.prime_set)))
              throw Error(Errc::not_smooth, "element not E-smooth: " + x.str());
            if (x.a != x.b) return {Complex{}, 0.0};
            const Evaluation ratio = dirichlet_ratio(params, x.m - x.n, mu);
            if (ratio.error_bound > params.tol)
              throw Error(Errc::tolerance_unreachable,
                          "state error bound " + std::to_string(ratio.error_bound));
            if (x.a == 1) return ratio;
            const double scale = leg_weight(x.a, params.beta);
            return {scale * ratio.value,
                    scale * ratio.error_bound + 2.0 * kUnitRoundoff * std::abs(scale * ratio.value)};
          },
          std::move(label)};
}

}  // namespace detail

/// ψ_{μ,β}(V_a S^m S^{*n} V_b^*) = δ_{a,b} a^{-β} S(β, m-n) / ζ(β).
inline StateOracle kms_state(const KmsParams& params, const Measure& mu) {
  if (params.prime_set) throw Error(Errc::invalid_argument, "use finite_prime_kms_state");
  return detail::kms_oracle(params, mu, "kms(beta=" + std::to_string(params.beta) + ")");
}

/// ω_φ(V_a S^m S^{*n} V_b^*) = δ_{a,b} δ_{a,1} φ(S^m S^{*n}).
inline StateOracle ground_state(const ToeplitzStateSpec& spec) {
  if (spec.oracle(Integer(0), Integer(0)) != Complex{1.0, 0.0})
    throw Error(Errc::invalid_argument, "ground state needs phi(1) = 1");
  return {[oracle = spec.oracle](const Monomial& x) -> Evaluation {
            if (x.a != 1 || x.b != 1) return {Complex{}, 0.0};
            return {oracle(x.m, x.n), 0.0};
          },
          "ground(" + spec.label + ")"};
}

enum class Kms1Measure { lebesgue, delta_plus1, delta_minus1 };

/// Limit of ψ_{μ,β}(x) as β → 1+ for the three tabulated measures.
inline Complex kms1_limit(Kms1Measure mu, const Monomial& x) {
  if (x.a != x.b) return {};
  const double inv = 1.0 / x.a.convert_to<double>();
  const Integer gap = x.m - x.n;
  switch (mu) {
    case Kms1Measure::lebesgue: return gap == 0 ? inv : 0.0;
    case Kms1Measure::delta_plus1: return inv;
    case Kms1Measure::delta_minus1: return gap % 2 == 0 ? inv : 0.0;
  }
  return {};
}

/// KMS_β state built from the E-smooth integers: normalized by
/// Z_E(β) = Π_{p∈E} (1 - p^{-β})^{-1}, defined for every β > 0.
inline StateOracle finite_prime_kms_state(const KmsParams& params, const Measure& mu) {
  if (!params.prime_set) throw Error(Errc::invalid_argument, "a prime set is required");
  return detail::kms_oracle(params, mu,
                            "finite-prime kms(beta=" + std::to_string(params.beta) + ")");
}

}  // namespace toeplitz
