#pragma once

// Residual checks of the KMS_β condition, the twisted trace identity and the
// ground-state condition on exact monomials, plus seeded random sweeps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toeplitz/states.hpp"

namespace toeplitz {

/// Floor for residual tolerances derived from evaluation error bounds.
inline constexpr double kResidualFloor = 1e-12;

struct CheckResult {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double tolerance = 0.0;

  bool passed() const { return residual <= tolerance; }
};

namespace detail {

inline CheckResult finish_check(const Evaluation& lhs, const Evaluation& rhs, double scale,
                                std::optional<double> tol) {
  CheckResult out;
  out.lhs = lhs.value;
  out.rhs = scale * rhs.value;
  out.residual = std::abs(out.lhs - out.rhs);
  out.tolerance = tol ? *tol
                      : std::max(100.0 * (lhs.error_bound + scale * rhs.error_bound),
                                 kResidualFloor);
  return out;
}

inline double power_ratio(const Integer& a, const Integer& b, double beta) {
  if (a == b) return 1.0;
  return std::exp(-beta * (log_of(a) - log_of(b)));
}

}  // namespace detail

/// φ(x) against δ_{a,b} a^{-β} φ(S^((m-n))). Without `tol`, the tolerance is
/// 100 times the combined evaluation error bound.
inline CheckResult check_char(const StateOracle& phi, double beta, const Monomial& x,
                              std::optional<double> tol = std::nullopt) {
  const Evaluation lhs = phi(x);
  if (x.a != x.b) return detail::finish_check(lhs, {Complex{}, 0.0}, 1.0, tol);
  const Integer gap = x.m - x.n;
  const Monomial power = gap >= 0 ? Monomial(1, gap, 0, 1) : Monomial(1, 0, -gap, 1);
  return detail::finish_check(lhs, phi(power), detail::power_ratio(x.a, 1, beta), tol);
}

/// φ(xy) against (x.a/x.b)^{-β} φ(yx).
inline CheckResult check_kms_identity(const StateOracle& phi, double beta, const Monomial& x,
                                      const Monomial& y,
                                      std::optional<double> tol = std::nullopt) {
  return detail::finish_check(phi(full_mul(x, y)), phi(full_mul(y, x)),
                              detail::power_ratio(x.a, x.b, beta), tol);
}

/// ω(x) against δ_{a,b} δ_{a,1} ω(S^m S^{*n}).
inline CheckResult check_ground(const StateOracle& omega, const Monomial& x,
                                std::optional<double> tol = std::nullopt) {
  const Evaluation lhs = omega(x);
  if (x.a != 1 || x.b != 1) return detail::finish_check(lhs, {Complex{}, 0.0}, 1.0, tol);
  return detail::finish_check(lhs, omega(Monomial(1, x.m, x.n, 1)), 1.0, tol);
}

struct GcdSplit {
  Integer a1, b1, c1, d1;
};

/// For ac = bd: a/gcd(a,d) = b/gcd(b,c) and c/gcd(b,c) = d/gcd(a,d).
inline GcdSplit gcd_split(const Integer& a, const Integer& c, const Integer& b, const Integer& d) {
  if (a < 1 || b < 1 || c < 1 || d < 1)
    throw Error(Errc::invalid_argument, "gcd_split needs positive integers");
  if (a * c != b * d) throw Error(Errc::precondition_failed, "precondition ac != bd");
  const Integer g = gcd(a, d);
  const Integer h = gcd(b, c);
  GcdSplit out{a / g, b / h, c / h, d / g};
  if (out.a1 != out.b1 || out.c1 != out.d1)
    throw Error(Errc::lemma_violation, "lemma violation: split parts disagree");
  return out;
}

enum class SweepKind { char_, kms, ground };

struct SweepOptions {
  SweepKind kind = SweepKind::kms;
  double beta = 2.0;
  Integer bound_a = 30;
  Integer bound_m = 20;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  /// Fixed residual tolerance; per-instance error-derived tolerances otherwise.
  std::optional<double> tolerance;
  /// Stored failures are capped; `failure_count` counts all of them.
  std::size_t max_recorded_failures = 100;
};

struct Failure {
  std::string input;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
};

struct VerificationReport {
  std::size_t checked = 0;
  double max_residual = 0.0;
  std::size_t failure_count = 0;
  std::vector<Failure> failures;
  std::uint64_t seed = 0;
  std::optional<double> tolerance;

  bool ok() const { return failure_count == 0; }
};

/// Deterministic instance generator. Bounded draws avoid
/// std::uniform_int_distribution, whose output varies between libraries.
class InstanceSampler {
 public:
  InstanceSampler(std::uint64_t seed, Integer bound_a, Integer bound_m)
      : rng_(seed), bound_a_(to_int64(bound_a)), bound_m_(to_int64(bound_m)) {
    if (bound_a_ < 1 || bound_m_ < 0)
      throw Error(Errc::invalid_argument, "sweep bounds must be positive");
    for (std::int64_t v = 1; v <= std::min<std::int64_t>(bound_a_, 1 << 20); ++v)
      if (is_smooth(v, {2, 3, 5})) smooth_.push_back(v);
  }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do r = rng_();
    while (r >= limit);
    return r % n;
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  bool coin() { return (rng_() >> 63) != 0; }

  /// Leg in [1, bound]: a {2,3,5}-smooth number or a log-uniform draw.
  Integer leg(std::int64_t bound) {
    if (bound <= 1) return 1;
    if (coin()) {
      const auto end = std::upper_bound(smooth_.begin(), smooth_.end(), bound);
      const auto n = static_cast<std::uint64_t>(end - smooth_.begin());
      return smooth_[below(n)];
    }
    const auto v = static_cast<std::int64_t>(std::exp(unit() * std::log(bound + 1.0)));
    return std::clamp<std::int64_t>(v, 1, bound);
  }
  Integer leg() { return leg(bound_a_); }

  Integer exponent() { return static_cast<std::int64_t>(below(bound_m_ + 1)); }

  Monomial monomial() { return {leg(), exponent(), exponent(), leg()}; }

  Monomial diagonal_or_any() {
    if (!coin()) return monomial();
    Integer a = leg();
    return {a, exponent(), exponent(), a};
  }

  /// Half the time y = (b t, p, q, a t), which makes xy and yx diagonal.
  std::pair<Monomial, Monomial> pair() {
    const Monomial x = monomial();
    if (!coin()) return {x, monomial()};
    const std::int64_t top = bound_a_ / std::max(to_int64(x.a), to_int64(x.b));
    const Integer t = leg(std::max<std::int64_t>(top, 1));
    return {x, Monomial(x.b * t, exponent(), exponent(), x.a * t)};
  }

  /// Quarter on the a = b = 1 sector, quarter diagonal, half arbitrary.
  Monomial ground_instance() {
    switch (below(4)) {
      case 0: return {1, exponent(), exponent(), 1};
      case 1: {
        Integer a = leg();
        return {a, exponent(), exponent(), a};
      }
      default: return monomial();
    }
  }

 private:
  std::mt19937_64 rng_;
  std::int64_t bound_a_;
  std::int64_t bound_m_;
  std::vector<std::int64_t> smooth_;
};

inline std::string describe(const Monomial& x) { return x.str(); }
inline std::string describe(const Monomial& x, const Monomial& y) {
  return x.str() + " * " + y.str();
}

/// Runs `count` seeded instances of one check against `phi`.
inline VerificationReport sweep(const StateOracle& phi, const SweepOptions& options) {
  VerificationReport report;
  report.seed = options.seed;
  report.tolerance = options.tolerance;
  InstanceSampler sampler(options.seed, options.bound_a, options.bound_m);

  for (std::size_t i = 0; i < options.count; ++i) {
    CheckResult result;
    std::string input;
    switch (options.kind) {
      case SweepKind::char_: {
        const Monomial x = sampler.diagonal_or_any();
        result = check_char(phi, options.beta, x, options.tolerance);
        input = describe(x);
        break;
      }
      case SweepKind::kms: {
        const auto [x, y] = sampler.pair();
        result = check_kms_identity(phi, options.beta, x, y, options.tolerance);
        input = describe(x, y);
        break;
      }
      case SweepKind::ground: {
        const Monomial x = sampler.ground_instance();
        result = check_ground(phi, x, options.tolerance);
        input = describe(x);
        break;
      }
    }
    ++report.checked;
    report.max_residual = std::max(report.max_residual, result.residual);
    if (!result.passed()) {
      ++report.failure_count;
      if (report.failures.size() < options.max_recorded_failures)
        report.failures.push_back({input, result.lhs, result.rhs, result.residual});
    }
  }
  return report;
}

}  // namespace toeplitz
