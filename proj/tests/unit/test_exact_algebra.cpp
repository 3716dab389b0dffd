#include <doctest.h>

#include <random>

#include "arrzeta/matrix.hpp"
#include "arrzeta/polynomial.hpp"

using namespace arrzeta;

namespace {

Polynomial P(std::vector<long> c) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return Polynomial(r);
}

Rational Q(const char* s) { return Rational::parse(s); }

// Residue oracle for a simple pole: N(p) / D'(p).
Rational lhopital_residue(const RationalFunction& f, const Rational& p) {
  return f.numerator()(p) / f.denominator().derivative()(p);
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Q("6/4") == Rational(3) / Rational(2));
  CHECK(Q("-6/4").denominator() == 2);
  CHECK(Q("+7") == 7);
  CHECK_THROWS_AS(Q("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Q("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Q(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(floor(Q("-1/2")) == -1);
  CHECK(floor(Q("7/2")) == 3);
  Rational big(Integer("123456789012345678901234567890"), Integer(7));
  CHECK((big * 7).str() == "123456789012345678901234567890");
  CHECK(Q("-3/7").to_long_double() == doctest::Approx(-3.0 / 7));
}

TEST_CASE("rref examples") {
  auto id = rref(RationalMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.nullspace.empty());

  auto lines = RationalMatrix::from_rows({{1, 0}, {1, 1}, {1, -1}});
  CHECK(rref(lines).rank == 2);

  RationalMatrix zero(3, 3);
  auto z = rref(zero);
  CHECK(z.rank == 0);
  REQUIRE(z.nullspace.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(z.nullspace[i][j] == (i == j ? 1 : 0));

  CHECK_THROWS(RationalMatrix(0, 3));
}

TEST_CASE("rref properties on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), shape(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = static_cast<std::size_t>(shape(rng));
    std::size_t cols = static_cast<std::size_t>(shape(rng));
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = Rational(entry(rng)) / Rational(1 + (entry(rng) + 3) % 3);
    auto r = rref(m);
    CHECK(is_rref(r.reduced));
    CHECK(r.rank + r.nullspace.size() == cols);
    for (const auto& v : r.nullspace)
      for (const auto& x : m * v) CHECK(x.is_zero());
    // Row spaces agree: stacking either onto the other does not raise the rank.
    std::vector<RationalVector> a, b, both;
    for (std::size_t i = 0; i < rows; ++i) {
      a.push_back(m.row(i));
      b.push_back(r.reduced.row(i));
    }
    both = a;
    both.insert(both.end(), b.begin(), b.end());
    CHECK(rank(a, cols) == r.rank);
    CHECK(rank(b, cols) == r.rank);
    CHECK(rank(both, cols) == r.rank);
  }
}

TEST_CASE("row space coordinates") {
  RowSpace rs({{1, 1, 0}, {0, 1, 1}}, 3);
  CHECK(rs.rank() == 2);
  RationalVector v{2, 5, 3};
  REQUIRE(rs.contains(v));
  auto c = rs.coordinates(v);
  RationalVector back(3);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = 0; j < 3; ++j) back[j] += c[k] * rs.basis()[k][j];
  CHECK(back == v);
  CHECK_FALSE(rs.contains({1, 0, 0}));
}

TEST_CASE("ratfun_normalize examples") {
  auto f = ratfun_normalize(P({-1, 0, 1}), P({-1, 1}));
  CHECK(f.numerator() == P({1, 1}));
  CHECK(f.denominator() == P({1}));

  auto g = ratfun_normalize(P({2, 2}), P({4, 2}));
  CHECK(g.numerator() == P({1, 1}));
  CHECK(g.denominator() == P({2, 1}));

  Polynomial num = P({2, -1});
  Polynomial den = P({2, 3}) * P({1, 1});
  auto h = ratfun_normalize(num, den);
  CHECK(h.str() == "(-s+2)/((3s+2)(s+1))");
  CHECK(h.denominator() == den.monic());

  CHECK_THROWS_WITH(ratfun_normalize(num, Polynomial()), "division by zero polynomial");
}

TEST_CASE("ratfun_normalize idempotence and evaluation agreement") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial common = P({c(rng), 1});
    Polynomial n = P({c(rng), c(rng), c(rng)}) * common;
    Polynomial d = P({c(rng), c(rng), 1 + std::abs(c(rng))}) * common;
    auto f = ratfun_normalize(n, d);
    auto g = ratfun_normalize(f.numerator(), f.denominator());
    CHECK(f == g);
    CHECK(f.denominator().leading() == 1);
    CHECK(gcd(f.numerator(), f.denominator()).degree() <= 0);
    for (int s = -5; s <= 5; ++s) {
      Rational x = Rational(s) + Q("1/7");
      if (d(x).is_zero()) continue;
      CHECK(f(x) == n(x) / d(x));
    }
  }
}

TEST_CASE("ratfun_poles examples") {
  auto f = ratfun_normalize(P({1}), P({1, 1}) * P({2, 1}));
  auto poles = ratfun_poles(f);
  REQUIRE(poles.size() == 2);
  CHECK(poles[0].pole == -1);
  CHECK(poles[0].order == 1);
  CHECK(*poles[0].residue == 1);
  CHECK(poles[1].pole == -2);
  CHECK(*poles[1].residue == -1);

  auto g = ratfun_normalize(P({1}), P({1, 1}) * P({1, 1}));
  auto gp = ratfun_poles(g);
  REQUIRE(gp.size() == 1);
  CHECK(gp[0].order == 2);
  CHECK_FALSE(gp[0].residue.has_value());

  auto h = ratfun_normalize(P({2, -1}), P({2, 3}) * P({1, 1}));
  auto hp = ratfun_poles(h);
  REQUIRE(hp.size() == 2);
  CHECK(hp[0].pole == Q("-2/3"));
  CHECK(*hp[0].residue == lhopital_residue(h, Q("-2/3")));
  CHECK(*hp[0].residue == Q("8/3"));
  CHECK(hp[1].pole == -1);
  CHECK(*hp[1].residue == lhopital_residue(h, Rational(-1)));
}

TEST_CASE("ratfun_poles completeness and irrational factors") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-6, 6), m(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial den(Rational(1));
    for (int k = 0; k < 3; ++k) den *= Polynomial(std::vector<Rational>{Rational(c(rng)), Rational(m(rng))});
    auto f = ratfun_normalize(P({1}), den);
    Polynomial prod(Rational(1));
    for (const auto& p : ratfun_poles(f)) prod *= pow(Polynomial::linear_root(p.pole), p.order);
    CHECK(prod == f.denominator());
  }

  auto f = ratfun_normalize(P({1}), P({-2, 0, 1}) * P({1, 1}));
  try {
    ratfun_poles(f);
    FAIL("expected NonRationalPoleError");
  } catch (const NonRationalPoleError& e) {
    CHECK(e.factor() == P({-2, 0, 1}));
    REQUIRE(e.found().size() == 1);
    CHECK(e.found()[0].root == -1);
    CHECK(std::string(e.what()).find("non-rational pole") != std::string::npos);
  }
}

TEST_CASE("polynomial printing") {
  CHECK(P({2, -1}).str() == "-s+2");
  CHECK(P({2, 5, 3}).str() == "3s^2+5s+2");
  CHECK(Polynomial(std::vector<Rational>{Rational(0), Q("1/3")}).str() == "(1/3)s");
  CHECK(Polynomial().str() == "0");
  CHECK(ratfun_normalize(P({1}), P({1, 1}) * P({1, 1})).str() == "1/(s+1)^2");
}
