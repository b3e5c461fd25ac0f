#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "toeplitz/repr.hpp"

using namespace toeplitz;

namespace {

Rational q(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

template <class Model>
Image image(const TruncatedRep<Model>& rep, const Generator& g, Label l) {
  return rep.apply(g, l);
}

}  // namespace

TEST_CASE("regular representation generator examples", "[repr]") {
  const auto rep = build_regular(10, 10);
  // T_{(2,1)} = V_2 S.
  CHECK(rep.apply(Word{Generator::V(2), Generator::S()}, {3, 2}) == Image::at({6, 5}));
  for (const auto& l : rep.basis()) REQUIRE(rep.apply(Word{}, l) == Image::at(l));
  CHECK(image(rep, Generator::S_star(), {3, 2}) == Image::zero());
  CHECK(image(rep, Generator::S(), {3, 8}) == Image::escaped());
  CHECK(image(rep, Generator::V_star(2), {3, 2}) == Image::zero());
  CHECK(monomial_matrix(rep, Monomial::identity()) ==
        SparseMatrix<std::int64_t>::identity(rep.dimension()));
  CHECK_THROWS_AS(build_regular(0, 3), Error);
}

TEST_CASE("qplus representation examples", "[repr]") {
  const auto rep = build_qplus(4, 3);
  // x = 3/2 is k = 6 on the quarter grid; V_2 e_{3/2} = e_{3/4}.
  CHECK(image(rep, Generator::V(2), {6, 0}) == Image::at({3, 0}));
  CHECK(image(rep, Generator::S_star(), {2, 0}) == Image::zero());
  CHECK(image(rep, Generator::V(2), {3, 0}) == Image::escaped());
  try {
    (void)image(rep, Generator::V(3), {6, 0});
    FAIL("expected grid mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::grid_mismatch);
  }
  // S* V_2 = V_2 S*^2 wherever neither side leaves the grid.
  const Word lhs{Generator::S_star(), Generator::V(2)};
  const Word rhs{Generator::V(2), Generator::S_star(), Generator::S_star()};
  const auto cols = rep.interior({lhs, rhs});
  CHECK(cols.size() > 5);
  for (auto i : cols) REQUIRE(rep.apply(lhs, rep.basis()[i]) == rep.apply(rhs, rep.basis()[i]));
}

TEST_CASE("nxz representation examples", "[repr]") {
  const auto rep = build_nxz(12, 10);
  CHECK(image(rep, Generator::S(), {3, -2}) == Image::at({3, 1}));
  CHECK(image(rep, Generator::V(2), {3, 1}) == Image::at({6, 1}));
  const Word ss{Generator::S(), Generator::S_star()};
  for (auto i : rep.interior({ss})) REQUIRE(rep.apply(ss, rep.basis()[i]) == Image::at(rep.basis()[i]));
}

TEST_CASE("matrix products agree with full_mul on interior columns", "[repr]") {
  const auto rep = build_regular(24, 60);
  std::mt19937_64 rng(1);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % (hi - lo + 1)); };
  for (int i = 0; i < 150; ++i) {
    const Monomial x(draw(1, 4), draw(0, 4), draw(0, 4), draw(1, 4));
    const Monomial y(draw(1, 4), draw(0, 4), draw(0, 4), draw(1, 4));
    const auto cols = interior_columns(rep, x, y);
    REQUIRE(!cols.empty());
    const auto lhs = (monomial_matrix(rep, x) * monomial_matrix(rep, y)).restrict_columns(cols);
    const auto rhs = monomial_matrix(rep, full_mul(x, y)).restrict_columns(cols);
    REQUIRE(lhs == rhs);
    REQUIRE(monomial_matrix(rep, adjoint(x)) == monomial_matrix(rep, x).transpose());
  }
}

TEST_CASE("distinct monomials act differently", "[repr]") {
  const auto rep = build_regular(36, 100);
  std::set<std::map<std::pair<std::size_t, std::size_t>, std::int64_t>> seen;
  std::size_t count = 0;
  for (long a = 1; a <= 4; ++a)
    for (long b = 1; b <= 4; ++b)
      for (long m = 0; m <= 4; ++m)
        for (long n = 0; n <= 4; ++n) {
          seen.insert(monomial_matrix(rep, Monomial(a, m, n, b)).entries());
          ++count;
        }
  CHECK(seen.size() == count);
}

TEST_CASE("relation residuals vanish on interior vectors", "[repr]") {
  const RelationReport regular = relation_residuals(build_regular(40, 80), 5);
  CHECK(regular.max_residual() == 0.0);
  for (const char* r : {"T0", "T1", "T2", "T3", "T4"}) CHECK(regular.summary(r).second > 0);

  const RelationReport qplus = relation_residuals(build_qplus(60, 6), 6);
  CHECK(qplus.max_residual() == 0.0);
  for (const char* r : {"T0", "T1", "T2", "T3", "T4", "T5"}) CHECK(qplus.summary(r).second > 0);

  const RelationReport nxz = relation_residuals(build_nxz(40, 60), 5);
  CHECK(nxz.max_residual() == 0.0);
  for (const char* r : {"T0", "T4", "T6", "A1", "A2", "A3"}) CHECK(nxz.summary(r).second > 0);
}

TEST_CASE("relations that fail in the Toeplitz algebra are detected", "[repr]") {
  const auto rep = build_regular(20, 40);
  // S S* = 1 fails in the regular representation: S S* kills ε_{(b,n)} for n < b.
  const RelationResidual r = word_residual(rep, "T6", "SS*", {Generator::S(), Generator::S_star()}, {});
  CHECK(r.residual == 1.0);
  const RelationResidual v =
      word_residual(rep, "T5", "V2V2*", {Generator::V(2), Generator::V_star(2)}, {});
  CHECK(v.residual == 1.0);
}

TEST_CASE("sparse matrices", "[repr]") {
  SparseMatrix<std::int64_t> m(3);
  m.set(0, 1, 1);
  m.set(2, 0, 1);
  CHECK(m.transpose().at(1, 0) == 1);
  CHECK((m * SparseMatrix<std::int64_t>::identity(3)) == m);
  CHECK(m.to_coordinate_text() == "3 3 2\n0 1 1\n2 0 1\n");
  CHECK_THROWS_AS(m.set(3, 0, 1), Error);
  m.set(0, 1, 0);
  CHECK(m.entries().size() == 1);
}

TEST_CASE("spatial KMS states agree with closed forms", "[repr]") {
  const StateOracle s1 = spatial_kms(2.0, Measure::delta1(), 2000);
  const Evaluation v = s1(Monomial(3, 5, 1, 3));
  CHECK(std::abs(v.value - 1.0 / 9.0) <= v.error_bound + 1e-9);
  const StateOracle sm = spatial_kms(2.0, Measure::delta_minus1(), 2000);
  const Evaluation w = sm(Monomial(1, 1, 0, 1));
  CHECK(std::abs(w.value + 0.5) <= w.error_bound + 1e-9);
  CHECK(s1(Monomial(2, 1, 0, 3)).value == Complex{});

  const Measure roots = Measure::from_atoms({{q(1, 3), q(1, 2)}, {q(2, 5), q(1, 2)}});
  KmsParams p;
  p.beta = 2.0;
  const StateOracle closed = kms_state(p, roots);
  const StateOracle spatial = spatial_kms(2.0, roots, 2000);
  for (long a = 1; a <= 4; ++a)
    for (long m = 0; m <= 5; ++m) {
      const Monomial x(a, m, 2, a);
      const Evaluation e = spatial(x);
      REQUIRE(std::abs(e.value - closed(x).value) <= e.error_bound + 1e-9);
    }
  try {
    (void)spatial_kms(2.0, Measure::lebesgue(), 100);
    FAIL("expected non-atomic error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_atomic_measure);
  }
}
