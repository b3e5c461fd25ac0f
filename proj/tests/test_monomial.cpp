#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "toeplitz/algebra_element.hpp"

using namespace toeplitz;

namespace {

Rational q(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  long uniform(long lo, long hi) { return lo + static_cast<long>(rng() % (hi - lo + 1)); }
  Monomial monomial(long legs = 12, long exps = 8) {
    return {uniform(1, legs), uniform(0, exps), uniform(0, exps), uniform(1, legs)};
  }
  MultMonomial mult() {
    return {q(uniform(0, 9), uniform(1, 6)), q(uniform(0, 9), uniform(1, 6)),
            q(uniform(1, 9), uniform(1, 9))};
  }
  ClMonomial cl() { return {q(uniform(-9, 9), uniform(1, 6)), q(uniform(1, 9), uniform(1, 9))}; }
  AddMonomial add() { return {uniform(1, 12), uniform(-9, 9), uniform(1, 12)}; }
};

}  // namespace

TEST_CASE("full_mul examples", "[monomial]") {
  CHECK(full_mul({1, 0, 1, 2}, {3, 1, 0, 1}) == Monomial(3, 0, 1, 2));
  CHECK(full_mul({2, 1, 0, 3}, {3, 0, 2, 5}) == Monomial(2, 1, 2, 5));
  const Monomial x(4, 3, 2, 6);
  CHECK(full_mul(Monomial::identity(), x) == x);
  CHECK(full_mul(x, Monomial::identity()) == x);
}

TEST_CASE("full_mul matches letter-by-letter action on the regular representation",
          "[monomial]") {
  Draw d(3);
  for (int i = 0; i < 3000; ++i) {
    const Monomial x = d.monomial(6, 5), y = d.monomial(6, 5);
    const Monomial xy = full_mul(x, y);
    for (long c = 1; c <= 12; ++c)
      for (long k = 0; k <= 12; ++k) {
        const oracle::Vec v = std::pair<long, long>{c, k};
        const auto lhs = oracle::act(to_int64(x.a), to_int64(x.m), to_int64(x.n), to_int64(x.b),
                                     oracle::act(to_int64(y.a), to_int64(y.m), to_int64(y.n),
                                                 to_int64(y.b), v));
        const auto rhs = oracle::act(to_int64(xy.a), to_int64(xy.m), to_int64(xy.n),
                                     to_int64(xy.b), v);
        REQUIRE(lhs == rhs);
      }
  }
}

TEST_CASE("adjoint examples and involution", "[monomial]") {
  CHECK(adjoint(Monomial(2, 1, 0, 3)) == Monomial(3, 0, 1, 2));
  CHECK(adjoint(Monomial::identity()) == Monomial::identity());
  Draw d(4);
  for (int i = 0; i < 1000; ++i) {
    const Monomial x = d.monomial();
    REQUIRE(adjoint(adjoint(x)) == x);
  }
}

TEST_CASE("associativity of all four products", "[monomial]") {
  Draw d(5);
  for (int i = 0; i < 10000; ++i) {
    const Monomial x = d.monomial(), y = d.monomial(), z = d.monomial();
    REQUIRE(full_mul(full_mul(x, y), z) == full_mul(x, full_mul(y, z)));
    const AddMonomial ax = d.add(), ay = d.add(), az = d.add();
    REQUIRE(add_mul(add_mul(ax, ay), az) == add_mul(ax, add_mul(ay, az)));
    const MultMonomial mx = d.mult(), my = d.mult(), mz = d.mult();
    REQUIRE(mult_mul(mult_mul(mx, my), mz) == mult_mul(mx, mult_mul(my, mz)));
    const ClMonomial cx = d.cl(), cy = d.cl(), cz = d.cl();
    REQUIRE(cl_mul(cl_mul(cx, cy), cz) == cl_mul(cx, cl_mul(cy, cz)));
  }
}

TEST_CASE("adjoint reverses products and x*x is the source projection", "[monomial]") {
  Draw d(6);
  for (int i = 0; i < 5000; ++i) {
    const Monomial x = d.monomial(), y = d.monomial();
    REQUIRE(adjoint(full_mul(x, y)) == full_mul(adjoint(y), adjoint(x)));
    REQUIRE(full_mul(adjoint(x), x) == Monomial(x.b, x.n, x.n, x.b));
    const MultMonomial mx = d.mult(), my = d.mult();
    REQUIRE(adjoint(mult_mul(mx, my)) == mult_mul(adjoint(my), adjoint(mx)));
    REQUIRE(adjoint(adjoint(mx)) == mx);
    const AddMonomial ax = d.add(), ay = d.add();
    REQUIRE(adjoint(add_mul(ax, ay)) == add_mul(adjoint(ay), adjoint(ax)));
  }
}

TEST_CASE("quotient maps are multiplicative", "[monomial]") {
  Draw d(7);
  for (int i = 0; i < 10000; ++i) {
    const Monomial x = d.monomial(), y = d.monomial();
    const Monomial xy = full_mul(x, y);
    REQUIRE(reduce_add(xy) == add_mul(reduce_add(x), reduce_add(y)));
    REQUIRE(reduce_mult(xy) == mult_mul(reduce_mult(x), reduce_mult(y)));
    REQUIRE(reduce_cl(xy) == cl_mul(reduce_cl(x), reduce_cl(y)));
    REQUIRE(reduce_mult(adjoint(x)) == adjoint(reduce_mult(x)));
    REQUIRE(reduce_cl(adjoint(x)) == adjoint(reduce_cl(x)));
  }
}

TEST_CASE("quotient examples", "[monomial]") {
  CHECK(reduce_add({3, 0, 1, 2}) == AddMonomial(3, -1, 2));
  CHECK(reduce_add({1, 5, 5, 1}) == AddMonomial::identity());
  CHECK(reduce_add({2, 4, 1, 2}) == AddMonomial(2, 3, 2));
  CHECK(add_mul({1, -1, 2}, {3, 1, 1}) == AddMonomial(3, -1, 2));
  CHECK(add_mul(AddMonomial::identity(), {4, -2, 3}) == AddMonomial(4, -2, 3));
  CHECK(add_mul({2, 1, 1}, {2, 1, 1}) == AddMonomial(4, 3, 1));

  CHECK(reduce_mult({2, 1, 0, 3}) == MultMonomial(q(1, 2), 0, q(3, 2)));
  CHECK(reduce_mult({1, 4, 2, 1}) == MultMonomial(4, 2, 1));
  CHECK(reduce_mult({4, 0, 0, 2}) == MultMonomial(0, 0, q(1, 2)));
  CHECK(mult_mul({1, 0, 2}, {0, 1, 1}) == MultMonomial(1, 2, 2));
  CHECK(mult_mul(MultMonomial::identity(), {q(1, 3), 2, q(5, 7)}) ==
        MultMonomial(q(1, 3), 2, q(5, 7)));

  CHECK(reduce_cl({2, 1, 0, 3}) == ClMonomial(q(1, 2), q(3, 2)));
  CHECK(reduce_cl(Monomial::identity()) == ClMonomial::identity());
  CHECK(reduce_cl({3, 5, 1, 3}) == ClMonomial(q(4, 3), 1));
  CHECK(cl_mul({1, 2}, {3, q(1, 2)}) == ClMonomial(7, 1));
}

TEST_CASE("Boundary quotient monomials form a group isomorphic to the affine group", "[monomial]") {
  Draw d(8);
  for (int i = 0; i < 5000; ++i) {
    const ClMonomial x = d.cl(), y = d.cl();
    REQUIRE(cl_mul(x, cl_inverse(x)) == ClMonomial::identity());
    REQUIRE(cl_mul(cl_inverse(x), x) == ClMonomial::identity());
    REQUIRE(cl_mul(ClMonomial::identity(), x) == x);
    REQUIRE(to_affine(cl_mul(x, y)) == group_mul(to_affine(x), to_affine(y)));
  }
}

TEST_CASE("relations hold as monomial identities", "[monomial]") {
  for (long a = 1; a <= 12; ++a) {
    CHECK(full_mul(Monomial::S(), Monomial::V(a)) == full_mul(Monomial::V(a), Monomial(1, a, 0, 1)));
    CHECK(full_mul(Monomial::S_star(), Monomial::V(a)) ==
          full_mul(Monomial::V(a), Monomial(1, 0, a, 1)));
    CHECK(full_mul(Monomial::V_star(a), Monomial::V(a)) == Monomial::identity());
    for (long b = 1; b <= 12; ++b) {
      CHECK(full_mul(Monomial::V(a), Monomial::V(b)) == Monomial::V(a * b));
      if (oracle::gcd(a, b) == 1)
        CHECK(full_mul(Monomial::V_star(a), Monomial::V(b)) ==
              full_mul(Monomial::V(b), Monomial::V_star(a)));
      const long l = a / oracle::gcd(a, b) * b;
      CHECK(full_mul(Monomial::range_projection(a), Monomial::range_projection(b)) ==
            Monomial::range_projection(l));
    }
  }
  CHECK(full_mul(Monomial::S_star(), Monomial::S()) == Monomial::identity());
}

TEST_CASE("range projections commute with equal-leg monomials", "[monomial]") {
  for (long a = 1; a <= 8; ++a)
    for (long b = 1; b <= 8; ++b)
      for (long m = 0; m <= 4; ++m)
        for (long n = 0; n <= 4; ++n) {
          const Monomial p = Monomial::range_projection(a);
          const Monomial x(b, m, n, b);
          const long g = oracle::gcd(a, b), l = a / g * b, ap = a / g;
          const Monomial expected(l, ap * m, ap * n, l);
          REQUIRE(full_mul(p, x) == expected);
          REQUIRE(full_mul(x, p) == expected);
        }
}

TEST_CASE("gauge expectation and alpha endomorphisms", "[monomial]") {
  CHECK(expectation_theta(Monomial(2, 1, 0, 2)) == AlgebraElement<Monomial>(Monomial(2, 1, 0, 2)));
  CHECK(expectation_theta(Monomial(2, 1, 0, 3)).is_zero());
  AlgebraElement<Monomial> e(Monomial(2, 1, 0, 3), {2.0, 1.0});
  e.add_term(Monomial(3, 1, 1, 3), {0.5, 0.0});
  CHECK(expectation_theta(expectation_theta(e)) == expectation_theta(e));
  CHECK(expectation_theta(e).size() == 1);

  CHECK(alpha_endo(2, Monomial(1, 1, 0, 1)) == Monomial(2, 1, 0, 2));
  CHECK(alpha_endo(2, Monomial::identity()) == Monomial::range_projection(2));
  Draw d(9);
  for (int i = 0; i < 1000; ++i) {
    const Monomial x = d.monomial(), y = d.monomial();
    REQUIRE(alpha_endo(1, x) == x);
    const Integer a = d.uniform(1, 9);
    REQUIRE(alpha_endo(a, full_mul(x, y)) == full_mul(alpha_endo(a, x), alpha_endo(a, y)));
  }
}

TEST_CASE("algebra elements: bilinearity, projections, presentations", "[monomial]") {
  using E = AlgebraElement<Monomial>;
  const E one = E::one();
  const E p2(Monomial::range_projection(2));
  const E q2 = one - p2;
  CHECK((q2 * p2).is_zero());
  CHECK(q2 * q2 == q2);
  CHECK(adjoint(q2) == q2);

  Draw d(10);
  for (int i = 0; i < 300; ++i) {
    const E x(d.monomial(), {1.0, 2.0});
    const E y(d.monomial(), {-3.0, 0.5});
    const E z(d.monomial(), {0.25, 0.0});
    REQUIRE((x + y) * z == x * z + y * z);
    REQUIRE(adjoint(x * y) == adjoint(y) * adjoint(x));
  }

  const AnyAlgebraElement lhs = AlgebraElement<AddMonomial>(AddMonomial(1, 2, 1));
  const AnyAlgebraElement rhs = AlgebraElement<ClMonomial>(ClMonomial::identity());
  try {
    (void)algebra_mul(lhs, rhs);
    FAIL("expected mixed presentation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::mixed_presentation);
  }
  const AnyAlgebraElement sq = algebra_mul(lhs, lhs);
  CHECK(std::get<AlgebraElement<AddMonomial>>(sq) ==
        AlgebraElement<AddMonomial>(AddMonomial(1, 4, 1)));
}

TEST_CASE("epsilon drops small coefficients", "[monomial]") {
  AlgebraElement<Monomial> x(1e-9);
  x.add_term(Monomial::S(), {1e-12, 0.0});
  CHECK(x.is_zero());
  x.add_term(Monomial::S(), {1.0, 0.0});
  x.add_term(Monomial::S(), {-1.0, 0.0});
  CHECK(x.is_zero());
}

TEST_CASE("invalid monomials are rejected", "[monomial]") {
  CHECK_THROWS_AS(Monomial(0, 0, 0, 1), Error);
  CHECK_THROWS_AS(Monomial(1, -1, 0, 1), Error);
  CHECK_THROWS_AS(AddMonomial(1, 0, 0), Error);
  CHECK_THROWS_AS(MultMonomial(-1, 0, 1), Error);
  CHECK_THROWS_AS(MultMonomial(0, 0, 0), Error);
  CHECK_THROWS_AS(ClMonomial(0, 0), Error);
}
