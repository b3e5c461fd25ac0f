// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "toeplitz/toeplitz.hpp"

using namespace toeplitz;

namespace {

Rational q(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

StateOracle kms(double beta, const Measure& mu) {
  KmsParams p;
  p.beta = beta;
  return kms_state(p, mu);
}

std::vector<std::pair<std::string, Measure>> builtin_measures() {
  return {{"delta1", Measure::delta1()}, {"delta-1", Measure::delta_minus1()}, {"lebesgue", Measure::lebesgue()}};
}

Outcome values_at_fixed_beta() {
  Outcome o;
  constexpr double tol = 1e-9;
  for (double beta : {1.5, 2.0, 3.0}) {
    const StateOracle leb = kms(beta, Measure::lebesgue());
    const StateOracle d1 = kms(beta, Measure::delta1());
    const StateOracle dm = kms(beta, Measure::delta_minus1());
    for (long a = 1; a <= 20; ++a) {
      const double w = std::pow(static_cast<double>(a), -beta);
      for (long m = 0; m <= 20; ++m)
        for (long n = 0; n <= 20; ++n) {
          const Monomial x(a, m, n, a);
          const double expected_leb = m == n ? w : 0.0;
          o.require(std::abs(leb(x).value - expected_leb) <= tol, "lebesgue " + x.str());
          o.require(std::abs(d1(x).value - w) <= tol, "delta1 " + x.str());
          const double expected_dm = (m - n) % 2 == 0 ? w : w * (std::pow(2.0, 1.0 - beta) - 1.0);
          o.require(std::abs(dm(x).value - expected_dm) <= tol, "delta-1 " + x.str());
        }
      for (long b = 1; b <= 20; ++b)
        if (b != a) o.require(std::abs(d1(Monomial(a, 3, 1, b)).value) <= tol, "delta1 off-diagonal");
    }
  }
  const double beta = 1.0 + std::ldexp(1.0, -10);
  const std::vector<std::pair<Kms1Measure, Measure>> limits = {{Kms1Measure::lebesgue, Measure::lebesgue()},
                                                               {Kms1Measure::delta_plus1, Measure::delta1()},
                                                               {Kms1Measure::delta_minus1, Measure::delta_minus1()}};
  for (const auto& [label, mu] : limits) {
    const StateOracle psi = kms(beta, mu);
    for (long a = 1; a <= 20; ++a)
      for (long b : {a, a + 1})
        for (long m = 0; m <= 6; ++m)
          for (long n = 0; n <= 6; ++n) {
            const Monomial x(a, m, n, b);
            o.require(std::abs(psi(x).value - kms1_limit(label, x)) <= 1e-3, "limit " + x.str());
          }
  }
  return o;
}

Outcome kms_property_suite() {
  Outcome o;
  for (const auto& [name, mu] : builtin_measures())
    for (double beta : {1.5, 2.0, 3.0}) {
      const StateOracle psi = kms(beta, mu);
      for (SweepKind kind : {SweepKind::kms, SweepKind::char_}) {
        SweepOptions s;
        s.kind = kind;
        s.beta = beta;
        s.count = 1000;
        s.seed = 2024;
        s.tolerance = 1e-8;
        const VerificationReport r = sweep(psi, s);
        o.require(r.ok() && r.checked == 1000 && r.max_residual <= 1e-8,
                  name + " beta " + std::to_string(beta) + " max residual " + std::to_string(r.max_residual));
      }
    }

  SweepOptions control;
  control.kind = SweepKind::char_;
  control.beta = 2.0;
  control.count = 1000;
  control.tolerance = 1e-8;
  const StateOracle ground = ground_state(ToeplitzStateSpec::trace_from_measure(Measure::delta1()));
  o.require(!sweep(ground, control).ok(), "ground state passed the KMS sweep");

  const StateOracle broken{[](const Monomial& x) -> Evaluation {
                             return {x.a == x.b ? Complex{1.0, 0.0} : Complex{}, 0.0};
                           },
                           "broken"};
  control.kind = SweepKind::kms;
  o.require(!sweep(broken, control).ok(), "broken oracle passed the KMS sweep");
  o.require(!check_kms_identity(broken, 2.0, {2, 0, 0, 1}, {1, 0, 0, 2}, 1e-8).passed(),
            "broken oracle passed the fixed instance");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto rep = build_regular(64, 200);
  std::mt19937_64 rng(7);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  for (int i = 0; i < 1000 && o.ok; ++i) {
    const Monomial x(draw(1, 8), draw(0, 6), draw(0, 6), draw(1, 8));
    const Monomial y(draw(1, 8), draw(0, 6), draw(0, 6), draw(1, 8));
    const auto cols = interior_columns(rep, x, y);
    o.require(!cols.empty(), "no interior columns for " + x.str() + " " + y.str());
    const auto lhs = (monomial_matrix(rep, x) * monomial_matrix(rep, y)).restrict_columns(cols);
    const auto rhs = monomial_matrix(rep, full_mul(x, y)).restrict_columns(cols);
    o.require(lhs == rhs, "matrix product differs for " + x.str() + " " + y.str());
  }
  return o;
}

Outcome lattice_order() {
  Outcome o;
  std::set<Rational> scales, shifts;
  for (long p = 1; p <= 12; ++p)
    for (long d = 1; d <= 12; ++d) scales.insert(q(p, d));
  for (long u = -12; u <= 12; ++u)
    for (long v = 1; v <= 12; ++v) shifts.insert(q(u, v));
  for (const auto& s : scales)
    for (const auto& r : shifts) {
      const AffinePoint x(s, r);
      // The least common denominator c is at most s.den·r.den, so the bound lies
      // in the box (s.num·r.den, s.den·|r.num|).
      const Integer ba = s.num() * r.den();
      Integer bm = s.den() * abs(r.num());
      if (bm < 1) bm = 1;
      const auto brute = brute_lub(x, ba, bm);
      o.require(brute && *brute == lub(x), "lub mismatch at (" + s.str() + ", " + r.str() + ")");
    }
  for (long a = 1; a <= 12; ++a)
    for (long b = 1; b <= 12; ++b)
      for (long m = 0; m <= 12; ++m)
        for (long n = 0; n <= 12; ++n) {
          const ConePoint x(a, m), y(b, n);
          const auto brute = brute_join(x, y, a * b, std::max(b * m + a * n, 1L));
          o.require(brute && *brute == join_cone(x, y), "join mismatch");
        }
  return o;
}

Outcome quotient_homomorphisms() {
  Outcome o;
  InstanceSampler s(11, 30, 20);
  for (int i = 0; i < 10000; ++i) {
    const Monomial x = s.monomial(), y = s.monomial();
    const Monomial xy = full_mul(x, y);
    o.require(reduce_add(xy) == reduce_add(x) * reduce_add(y), "reduce_add " + describe(x, y));
    o.require(reduce_mult(xy) == reduce_mult(x) * reduce_mult(y), "reduce_mult " + describe(x, y));
    const ClMonomial cx = reduce_cl(x), cy = reduce_cl(y);
    o.require(reduce_cl(xy) == cx * cy, "reduce_cl " + describe(x, y));
    o.require(cx * cl_inverse(cx) == ClMonomial::identity(), "cl inverse");
    o.require(cl_inverse(cx) * cx == ClMonomial::identity(), "cl inverse");
    o.require((cx * cy) * reduce_cl(x) == cx * (cy * reduce_cl(x)), "cl associativity");
  }
  return o;
}

Outcome representation_relations() {
  Outcome o;
  const RelationReport regular = relation_residuals(build_regular(64, 200), 6);
  o.require(regular.max_residual() == 0.0, "regular residual");
  for (const char* r : {"T0", "T1", "T2", "T3", "T4"})
    o.require(regular.summary(r).second > 0, std::string("no interior vectors for ") + r);

  const RelationReport qplus = relation_residuals(build_qplus(60, 20), 6);
  o.require(qplus.max_residual() == 0.0, "qplus residual");
  o.require(qplus.summary("T5").second > 0, "no interior vectors for T5");

  const RelationReport nxz = relation_residuals(build_nxz(64, 200), 6);
  o.require(nxz.max_residual() == 0.0, "nxz residual");
  for (const char* r : {"T6", "A1", "A2", "A3"})
    o.require(nxz.summary(r).second > 0, std::string("no interior vectors for ") + r);
  return o;
}

Outcome spatial_cross_check() {
  Outcome o;
  const std::vector<Measure> measures = {
      Measure::delta1(), Measure::delta_minus1(),
      Measure::from_atoms({{q(1, 3), q(1, 2)}, {q(1, 4), q(1, 4)}, {q(0), q(1, 4)}})};
  InstanceSampler s(13, 30, 20);
  for (const auto& mu : measures) {
    const StateOracle closed = kms(2.0, mu);
    const StateOracle spatial = spatial_kms(2.0, mu, 2000);
    for (int i = 0; i < 100; ++i) {
      const Monomial x = s.diagonal_or_any();
      const Evaluation e = spatial(x);
      o.require(std::abs(e.value - closed(x).value) <= e.error_bound + 1e-9, "spatial " + x.str());
    }
  }
  return o;
}

Outcome finite_primes() {
  Outcome o;
  const std::vector<Integer> primes{2, 3};
  const RealEvaluation enumerated = smooth_zeta_enumerated(primes, 2.0, 1e-11);
  const RealEvaluation product = euler_product_zeta(primes, 2.0);
  o.require(std::abs(enumerated.value - 1.5) <= 1e-10, "enumeration misses 3/2");
  o.require(std::abs(enumerated.value - product.value) <= 1e-10, "enumeration vs Euler product");
  for (double beta : {0.5, 1.0, 2.0})
    for (const auto& [name, mu] : builtin_measures()) {
      KmsParams p;
      p.beta = beta;
      p.prime_set = primes;
      o.require(finite_prime_kms_state(p, mu)(Monomial::identity()).value == Complex{1.0, 0.0},
                "psi(1) != 1 for " + name);
    }
  return o;
}

Outcome gcd_lemma() {
  Outcome o;
  for (int a = 1; a <= 60; ++a)
    for (int c = 1; c <= 60; ++c)
      for (int b = 1; b <= 60; ++b) {
        if ((a * c) % b != 0) continue;
        const int d = a * c / b;
        if (d > 60) continue;
        try {
          const GcdSplit g = gcd_split(a, c, b, d);
          o.require(g.a1 == g.b1 && g.c1 == g.d1, "split mismatch");
        } catch (const Error& e) {
          o.require(false, e.what());
        }
      }
  return o;
}

Outcome ground_states() {
  Outcome o;
  const ToeplitzStateSpec spec = ToeplitzStateSpec::trace_from_measure(
      Measure::from_atoms({{q(1, 5), q(1, 2)}, {q(1, 2), q(1, 2)}}));
  const StateOracle omega = ground_state(spec);
  InstanceSampler s(17, 30, 20);
  for (int i = 0; i < 1000; ++i) {
    const Monomial x = s.ground_instance();
    const Complex expected = (x.a == 1 && x.b == 1) ? spec.oracle(x.m, x.n) : Complex{};
    o.require(omega(x).value == expected, "ground " + x.str());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));

  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"closed-form values and beta -> 1 limits", 5, values_at_fixed_beta},
      {"KMS property suite with negative controls", 60, kms_property_suite},
      {"matrix products match full_mul on the regular representation", 30, oracle_equivalence},
      {"lub and join agree with exhaustive search", 60, lattice_order},
      {"quotient maps are homomorphisms; boundary quotient group law", 0, quotient_homomorphisms},
      {"relations vanish on truncated representations", 0, representation_relations},
      {"spatial states match closed forms within the tail bound", 0, spatial_cross_check},
      {"finite prime normalization", 0, finite_primes},
      {"gcd split holds exhaustively up to 60", 0, gcd_lemma},
      {"ground states", 0, ground_states},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && c.budget_seconds > 0 && seconds > c.budget_seconds) {
      outcome.ok = false;
      outcome.detail = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    if (!outcome.ok) ++failures;
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", outcome.ok ? "PASS" : "FAIL", i + 1, c.name, seconds,
                outcome.ok ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
