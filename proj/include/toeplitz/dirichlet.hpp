#pragma once

// Dirichlet series Σ_c c^{-β} ∫ z^{cj} dμ with rigorous error bounds, over all
// of N^x or over the E-smooth integers for a finite prime set E.
//
// Every series in play has coefficients that are periodic in c. Over N^x the
// sum splits into Hurwitz zeta values q^{-β} Σ_k ω^k ζ(β, k/q), each of which
// is a partial sum plus an Euler–Maclaurin tail whose remainder is bounded by
// the first omitted term. Over a finite prime set the sum factors prime by
// prime through the residues of p^e mod q.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "toeplitz/affine.hpp"
#include "toeplitz/measure.hpp"

namespace toeplitz {

/// A value together with a bound on its absolute error.
struct Evaluation {
  Complex value;
  double error_bound = 0.0;
};

struct RealEvaluation {
  double value = 0.0;
  double error_bound = 0.0;
};

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon();

namespace detail {

// B_2, B_4, ..., B_26.
inline constexpr std::array<double, 13> kBernoulliEven = {
    1.0 / 6,        -1.0 / 30,          1.0 / 42,        -1.0 / 30,   5.0 / 66,
    -691.0 / 2730,  7.0 / 6,            -3617.0 / 510,   43867.0 / 798,
    -174611.0 / 330, 854513.0 / 138,    -236364091.0 / 2730, 8553103.0 / 6};

}  // namespace detail

/// ζ(s, α) = Σ_{k>=0} (k+α)^{-s} for real s > 1 and α > 0.
inline RealEvaluation hurwitz_zeta(double s, double alpha, double tol) {
  if (!(s > 1.0)) throw Error(Errc::invalid_argument, "Hurwitz zeta needs s > 1");
  if (!(alpha > 0.0)) throw Error(Errc::invalid_argument, "Hurwitz zeta needs alpha > 0");
  constexpr int kTerms = 11;  // Bernoulli corrections; the 12th bounds the remainder

  for (long n = 16; n <= (1L << 22); n *= 4) {
    double partial = 0.0;
    // Smallest terms first.
    for (long k = n - 1; k >= 0; --k) partial += std::pow(k + alpha, -s);

    const double x = n + alpha;
    const double head = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
    double correction = 0.0;
    double last = 0.0;
    double rising = s;                       // s (s+1) ... (s+2j-2)
    double factorial = 2.0;                  // (2j)!
    double power = std::pow(x, -s - 1.0);    // x^{-s-2j+1}
    for (int j = 1; j <= kTerms + 1; ++j) {
      if (j > 1) {
        rising *= (s + 2 * j - 3) * (s + 2 * j - 2);
        factorial *= (2.0 * j - 1) * (2.0 * j);
        power /= x * x;
      }
      const double term = detail::kBernoulliEven[j - 1] / factorial * rising * power;
      if (j <= kTerms)
        correction += term;
      else
        last = std::abs(term);
    }
    const double value = partial + head + correction;
    const double rounding = 4.0 * kUnitRoundoff * (partial + std::abs(head) + n);
    const double bound = last + rounding;
    if (bound <= tol) return {value, bound};
  }
  throw Error(Errc::tolerance_unreachable, "Hurwitz zeta could not reach the tolerance");
}

inline RealEvaluation riemann_zeta(double s, double tol = 1e-13) {
  return hurwitz_zeta(s, 1.0, tol);
}

/// Z_E(β) = Σ_{c E-smooth} c^{-β} = Π_{p∈E} (1 - p^{-β})^{-1}, for β > 0.
inline RealEvaluation euler_product_zeta(const std::vector<Integer>& primes, double beta) {
  if (!(beta > 0.0)) throw Error(Errc::invalid_argument, "finite-prime zeta needs beta > 0");
  double value = 1.0;
  for (const auto& p : std::set<Integer>(primes.begin(), primes.end()))
    value *= 1.0 / (1.0 - std::exp(-beta * log_of(p)));
  return {value, 4.0 * kUnitRoundoff * value * (primes.size() + 1)};
}

/// Σ_{c E-smooth} c^{-β} g(c) for |g| <= 1 by enumerating c < 2^K and bounding
/// the rest dyadically: block [2^k, 2^{k+1}) holds at most Π_p (⌊(k+1)/log2 p⌋+1)
/// smooth numbers, each contributing at most 2^{-βk}.
inline Evaluation smooth_dirichlet_enumerated(const std::vector<Integer>& primes, double beta,
                                              const std::function<Complex(const Integer&)>& g,
                                              double tol, std::size_t max_terms = 50'000'000) {
  if (primes.empty()) throw Error(Errc::invalid_argument, "prime set is empty");
  if (!(beta > 0.0)) throw Error(Errc::invalid_argument, "beta must be > 0");
  const std::set<Integer> distinct(primes.begin(), primes.end());
  const std::vector<Integer> ps(distinct.begin(), distinct.end());
  std::vector<double> log2p;
  for (const auto& p : ps) log2p.push_back(log_of(p) / std::log(2.0));

  auto majorant = [&](double k) {
    double count = 1.0;
    for (double l : log2p) count *= (k + 1.0) / l + 1.0;
    return count;
  };
  auto tail_bound = [&](long K) {
    double sum = 0.0;
    for (long k = K;; ++k) {
      const double term = majorant(static_cast<double>(k)) * std::exp2(-beta * k);
      const double ratio =
          majorant(static_cast<double>(k + 1)) / majorant(static_cast<double>(k)) *
          std::exp2(-beta);
      sum += term;
      if (ratio < 1.0) {
        const double rest = term * ratio / (1.0 - ratio);
        if (rest <= 1e-6 * sum || k > K + 100000) return sum + rest;
      }
    }
  };

  long K = 8;
  while (tail_bound(K) > tol / 2) K += 8;
  const double log_cutoff = K * std::log(2.0);

  Complex sum;
  double magnitude = 0.0;
  std::size_t count = 0;
  std::function<void(std::size_t, const Integer&, double)> walk =
      [&](std::size_t i, const Integer& c, double log_c) {
        if (i == ps.size()) {
          if (++count > max_terms)
            throw Error(Errc::tolerance_unreachable, "too many smooth numbers to enumerate");
          const double weight = std::exp(-beta * log_c);
          sum += weight * g(c);
          magnitude += weight;
          return;
        }
        const double step = log_of(ps[i]);
        Integer current = c;
        for (double l = log_c; l < log_cutoff; l += step, current *= ps[i])
          walk(i + 1, current, l);
      };
  walk(0, Integer(1), 0.0);
  return {sum, tail_bound(K) + 4.0 * kUnitRoundoff * magnitude * (ps.size() + 2)};
}

inline RealEvaluation smooth_zeta_enumerated(const std::vector<Integer>& primes, double beta,
                                             double tol) {
  const Evaluation e = smooth_dirichlet_enumerated(
      primes, beta, [](const Integer&) { return Complex{1.0, 0.0}; }, tol);
  return {e.value.real(), e.error_bound};
}

/// Inverse temperature and accuracy for a KMS evaluation. Without a prime set
/// the sums run over all of N^x and need β > 1; with one, any β > 0 works.
struct KmsParams {
  double beta = 2.0;
  double tol = 1e-10;
  std::optional<std::vector<Integer>> prime_set;
  /// Evaluate by series even where a closed form applies.
  bool force_series = false;
  /// Periods above this leave the Hurwitz route for direct partial sums.
  std::int64_t max_period = 1 << 16;
  /// Cap on direct partial-sum length; exceeding it means β is too close to 1.
  std::int64_t max_terms = 100'000'000;

  void validate() const {
    if (!std::isfinite(beta)) throw Error(Errc::invalid_argument, "beta must be finite");
    if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    if (prime_set) {
      if (prime_set->empty()) throw Error(Errc::invalid_argument, "prime set is empty");
      for (const auto& p : *prime_set)
        if (!is_prime(p)) throw Error(Errc::invalid_argument, p.str() + " is not prime");
      if (!(beta > 0.0)) throw Error(Errc::invalid_argument, "beta must be > 0");
    } else if (!(beta > 1.0)) {
      throw Error(Errc::invalid_argument, "beta must be > 1 over all primes");
    }
  }
};

/// Series evaluation refuses β below this unless a closed form applies.
inline constexpr double kNearCriticalBeta = 1.001;

/// S(β, j) split as closed · Z(β) + series, where Z is ζ (or Z_E) and
/// `closed` collects every contribution with a closed form.
struct DirichletParts {
  Complex closed;
  Complex series;
  double series_error = 0.0;
};

namespace detail {

// Σ_{c>=1} c^{-β} e^{2πi c u/q} = q^{-β} Σ_{k=1}^{q} e^{2πi k u/q} ζ(β, k/q).
inline Evaluation periodic_hurwitz(double beta, const Integer& u, std::int64_t q, double tol) {
  Complex sum;
  double err = 0.0;
  const double scale = std::pow(static_cast<double>(q), -beta);
  const double each_tol = tol / (2.0 * static_cast<double>(q)) / scale;
  for (std::int64_t k = 1; k <= q; ++k) {
    const RealEvaluation h = hurwitz_zeta(beta, static_cast<double>(k) / q, each_tol);
    sum += h.value * unit_root(Rational(u * k, q));
    err += h.error_bound;
  }
  return {scale * sum, scale * err + 4.0 * kUnitRoundoff * std::abs(scale * sum) * q};
}

// Plain partial sums with the integral tail bound C^{1-β}/(β-1).
inline Evaluation periodic_direct(const KmsParams& params, const Integer& u, std::int64_t q,
                                  double tol) {
  const double beta = params.beta;
  const double cutoff = std::ceil(std::pow(tol * (beta - 1.0), 1.0 / (1.0 - beta)));
  if (!(cutoff <= static_cast<double>(params.max_terms)))
    throw Error(Errc::beta_too_close_to_one,
                "direct series would need more than " + std::to_string(params.max_terms) +
                    " terms");
  const auto C = static_cast<std::int64_t>(cutoff);
  const std::int64_t step = to_int64(mod_floor(u, Integer(q)));
  Complex sum;
  std::int64_t residue = 0;
  for (std::int64_t c = 1; c <= C; ++c) {
    residue = (residue + step) % q;
    sum += std::pow(static_cast<double>(c), -beta) *
           unit_root(Rational(Integer(residue), Integer(q)));
  }
  const double tail = std::pow(cutoff, 1.0 - beta) / (beta - 1.0);
  return {sum, tail + 4.0 * kUnitRoundoff * static_cast<double>(C) * 2.0};
}

// Σ_{c E-smooth} c^{-β} e^{2πi c u/q}, tracking c mod q prime by prime.
inline Evaluation periodic_smooth(const std::vector<Integer>& primes, double beta,
                                  const Integer& u, std::int64_t q) {
  std::vector<double> weights(static_cast<std::size_t>(q), 0.0);
  weights[static_cast<std::size_t>(1 % q)] = 1.0;
  for (const auto& p : std::set<Integer>(primes.begin(), primes.end())) {
    const std::int64_t pm = to_int64(p % q);
    const double lp = log_of(p);
    // p^e mod q is eventually periodic: record the orbit until it repeats.
    std::map<std::int64_t, std::int64_t> first_seen;
    std::vector<std::int64_t> orbit;
    std::int64_t r = 1 % q;
    while (!first_seen.count(r)) {
      first_seen[r] = static_cast<std::int64_t>(orbit.size());
      orbit.push_back(r);
      r = (r * pm) % q;
    }
    const std::int64_t cycle_start = first_seen[r];
    const auto period = static_cast<std::int64_t>(orbit.size()) - cycle_start;
    const double geometric = 1.0 / (1.0 - std::exp(-beta * lp * period));

    std::vector<double> by_residue(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(orbit.size()); ++e) {
      double w = std::exp(-beta * lp * e);
      if (e >= cycle_start) w *= geometric;
      by_residue[static_cast<std::size_t>(orbit[e])] += w;
    }
    std::vector<double> next(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t a = 0; a < q; ++a) {
      if (weights[a] == 0.0) continue;
      for (std::int64_t s = 0; s < q; ++s)
        if (by_residue[s] != 0.0) next[(a * s) % q] += weights[a] * by_residue[s];
    }
    weights = std::move(next);
  }
  Complex sum;
  double magnitude = 0.0;
  for (std::int64_t a = 0; a < q; ++a) {
    if (weights[a] == 0.0) continue;
    sum += weights[a] * unit_root(Rational(u * a, Integer(q)));
    magnitude += weights[a];
  }
  return {sum, 8.0 * kUnitRoundoff * magnitude * (q + primes.size() + 4)};
}

}  // namespace detail

/// Decomposes S(β,j) = Σ_c c^{-β} ∫ z^{cj} dμ into closed-form and series
/// parts; with a prime set, c runs over the E-smooth integers only.
inline DirichletParts dirichlet_parts(const KmsParams& params, const Integer& j,
                                      const Measure& mu) {
  params.validate();
  const Measure::Flat flat = mu.flatten();
  DirichletParts out;
  if (j == 0) {
    out.closed = 1.0;
    return out;
  }

  // Lebesgue contributes Z·δ_{j,0}, which vanishes here.
  std::size_t series_atoms = 0;
  for (const auto& atom : flat.atoms)
    if (params.force_series || (atom.turns * Rational(j)).frac().den() > 2) ++series_atoms;
  const double atom_tol = params.tol / 2.0 / static_cast<double>(std::max<std::size_t>(1, series_atoms));

  for (const auto& atom : flat.atoms) {
    const double w = atom.weight.to_double();
    const Rational r = (atom.turns * Rational(j)).frac();
    const Integer& q_big = r.den();

    if (!params.force_series && q_big <= 2) {
      if (q_big == 1) {
        out.closed += w;
      } else if (!params.prime_set) {
        out.closed += w * (std::exp2(1.0 - params.beta) - 1.0);
      } else {
        // Over E-smooth c: Σ (-1)^c c^{-β} = Z_E - 2 Z_{E without 2}, or -Z_E when 2 ∉ E.
        const auto& primes = *params.prime_set;
        if (std::find(primes.begin(), primes.end(), Integer(2)) == primes.end()) {
          out.closed -= w;
        } else {
          out.closed += w * (1.0 - 2.0 * (1.0 - std::exp2(-params.beta)));
        }
      }
      continue;
    }

    if (params.prime_set) {
      Evaluation e;
      if (q_big <= 4096) {
        e = detail::periodic_smooth(*params.prime_set, params.beta, r.num(), to_int64(q_big));
      } else {
        const Rational rr = r;
        e = smooth_dirichlet_enumerated(
            *params.prime_set, params.beta,
            [rr](const Integer& c) { return unit_root(rr * Rational(c)); }, atom_tol);
      }
      out.series += w * e.value;
      out.series_error += w * e.error_bound;
      continue;
    }

    if (params.beta < kNearCriticalBeta)
      throw Error(Errc::beta_too_close_to_one,
                  "no closed form for an atom of order " + q_big.str() + " at beta " +
                      std::to_string(params.beta));
    Evaluation e;
    if (q_big <= params.max_period) {
      e = detail::periodic_hurwitz(params.beta, r.num(), to_int64(q_big), atom_tol);
    } else {
      if (q_big > (Integer(1) << 31))
        throw Error(Errc::invalid_argument, "measure period too large: " + q_big.str());
      e = detail::periodic_direct(params, r.num(), to_int64(q_big), atom_tol);
    }
    out.series += w * e.value;
    out.series_error += w * e.error_bound;
  }
  if (params.force_series && flat.lebesgue_weight.sign() > 0) {
    // Lebesgue's series has every coefficient zero for j != 0.
  }
  return out;
}

/// Z(β): ζ(β) over all primes, Z_E(β) over a finite prime set.
inline RealEvaluation normalizer(const KmsParams& params) {
  if (params.prime_set) return euler_product_zeta(*params.prime_set, params.beta);
  return riemann_zeta(params.beta, params.tol / 4.0);
}

/// S(β,j) = Σ_c c^{-β} ∫ z^{cj} dμ with |error| <= params.tol.
inline Evaluation dirichlet_sum(const KmsParams& params, const Integer& j, const Measure& mu) {
  const DirichletParts parts = dirichlet_parts(params, j, mu);
  const RealEvaluation z = normalizer(params);
  const Complex value = parts.closed * z.value + parts.series;
  const double err = std::abs(parts.closed) * z.error_bound + parts.series_error +
                     4.0 * kUnitRoundoff * std::abs(value);
  if (err > params.tol)
    throw Error(Errc::tolerance_unreachable, "error bound " + std::to_string(err));
  return {value, err};
}

/// S(β,j)/Z(β); closed-form contributions stay exact since Z cancels.
inline Evaluation dirichlet_ratio(const KmsParams& params, const Integer& j, const Measure& mu) {
  const DirichletParts parts = dirichlet_parts(params, j, mu);
  if (parts.series == Complex{} && parts.series_error == 0.0) return {parts.closed, 0.0};
  const RealEvaluation z = normalizer(params);
  const Complex value = parts.closed + parts.series / z.value;
  const double err = parts.series_error / z.value +
                     std::abs(parts.series) * z.error_bound / (z.value * z.value) +
                     4.0 * kUnitRoundoff * std::abs(value);
  return {value, err};
}

}  // namespace toeplitz
