#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "arrzeta/bfunction.hpp"
#include "arrzeta/topzeta.hpp"
#include "oracles.hpp"

using namespace arrzeta;
using namespace arrzeta::testing;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }

using RootList = std::vector<std::pair<Rational, unsigned>>;

RootList roots_of(const BFunction& bf) { return RootList(bf.roots.begin(), bf.roots.end()); }

// Closed-form value of the dimension-two zeta function at s.
Rational z_direct(const Multiplicities& b, const Rational& s) {
  const long r = static_cast<long>(b.size());
  const long d = std::accumulate(b.begin(), b.end(), 0L);
  Rational e = Rational(d) * s + 2;
  Rational z = Rational(2 - r) / e;
  for (long bi : b) z += Rational(1) / (e * (Rational(bi) * s + 1));
  return z;
}

bool cancels_oracle(const Multiplicities& b) {
  const long d = std::accumulate(b.begin(), b.end(), 0L);
  Rational acc = Rational(2 - static_cast<long>(b.size()));
  for (long bi : b) acc += Rational(d) / Rational(d - 2 * bi);
  return acc.is_zero();
}

}  // namespace

TEST_CASE("generic reduced b-function") {
  CHECK(roots_of(bfun_generic_reduced(2, 3)) ==
        RootList{{Q("-2/3"), 1}, {Rational(-1), 2}, {Q("-4/3"), 1}});
  auto b34 = bfun_generic_reduced(3, 4);
  CHECK(roots_of(b34) ==
        RootList{{Q("-3/4"), 1}, {Rational(-1), 3}, {Q("-5/4"), 1}, {Q("-3/2"), 1}});
  CHECK(b34.has_root(Q("-3/4")));
  CHECK_THROWS_AS(bfun_generic_reduced(1, 3), PreconditionError);
  CHECK_THROWS_AS(bfun_generic_reduced(4, 3), PreconditionError);

  for (long n = 2; n <= 6; ++n)
    for (long d = n; d <= 12; ++d) {
      auto bf = bfun_generic_reduced(n, d);
      CHECK(bf.has_root(-Rational(n) / Rational(d)));
      CHECK(bf.has_root(Rational(-1)));
      CHECK(bf.degree() == static_cast<unsigned>(n - 1 + 2 * d - n - 1));
      for (long j = 0; j <= 2 * d - n - 2; ++j) CHECK(bf.has_root(-Rational(j + n) / Rational(d)));
      CHECK(bf.roots.begin()->first == -Rational(n) / Rational(d));
      CHECK(bf.roots.rbegin()->first == -Rational(2 * d - 2) / Rational(d));
      for (const auto& [root, m] : bf.roots) {
        CHECK(root < 0);
        CHECK(root >= Rational(-2) + Rational(1) / Rational(d));
      }
      CHECK(stronger_nd_roots_present(bf, n, d));
    }
}

TEST_CASE("two-line and smooth b-functions") {
  CHECK(roots_of(bfun_two_line_powers(1, 1)) == RootList{{Rational(-1), 2}});
  auto b32 = bfun_two_line_powers(3, 2);
  CHECK(roots_of(b32) ==
        RootList{{Q("-1/3"), 1}, {Q("-1/2"), 1}, {Q("-2/3"), 1}, {Rational(-1), 2}});
  CHECK_FALSE(b32.has_root(Q("-2/5")));
  for (long x = 1; x <= 6; ++x)
    for (long y = 1; y <= 6; ++y) {
      CHECK(roots_of(bfun_two_line_powers(x, y)) == roots_of(bfun_two_line_powers(y, x)));
      CHECK(bfun_two_line_powers(x, y).has_root(Rational(-1)));
    }
  CHECK(roots_of(bfun_smooth_power(1)) == RootList{{Rational(-1), 1}});
  CHECK(roots_of(bfun_smooth_power(2)) == RootList{{Q("-1/2"), 1}, {Rational(-1), 1}});
  auto b5 = bfun_smooth_power(5);
  CHECK(b5.degree() == 5);
  for (long i = 1; i <= 5; ++i) CHECK(b5.has_root(-Rational(i) / 5));
}

TEST_CASE("pole-root implication") {
  auto g = check_pole_root_implication(bfun_generic_reduced(2, 3), {Q("-2/3")});
  CHECK(g.consistent);
  CHECK(g.checks[0].is_root);

  auto v = check_pole_root_implication(bfun_two_line_powers(3, 2), {Q("-2/5")});
  CHECK_FALSE(v.consistent);
  CHECK_FALSE(v.checks[0].is_root);

  CHECK(check_pole_root_implication(bfun_smooth_power(1), {}).consistent);

  // Below -1 a shift into the root set is accepted.
  auto s = check_pole_root_implication(bfun_generic_reduced(2, 3), {Q("-5/3")});
  CHECK(s.consistent);
  CHECK(*s.checks[0].shift == 1);
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_lookup(three_lines(), {1, 1, 1})->provenance.find("generic-reduced") == 0);
  CHECK(catalog_lookup(Arrangement(2, {{1, 0}, {0, 1}}), {3, 2})->has_root(Q("-1/3")));
  CHECK(catalog_lookup(Arrangement(2, {{1, 0}}), {2})->has_root(Q("-1/2")));
  CHECK_FALSE(catalog_lookup(three_lines(), {3, 1, 1}).has_value());
  CHECK_FALSE(catalog_lookup(Arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}), {1, 1, 1, 1})
                  .has_value());
  CHECK(is_generic(planes_xyz_sum()));
}

TEST_CASE("topological zeta examples") {
  auto z = topzeta_local_dim2(three_lines(), {1, 1, 1});
  auto expect = ratfun_normalize(Polynomial(std::vector<Rational>{2, -1}),
                                 Polynomial(std::vector<Rational>{2, 3}) *
                                     Polynomial(std::vector<Rational>{1, 1}));
  CHECK(z.value == expect);
  CHECK(z.value.str() == "(-s+2)/((3s+2)(s+1))");
  CHECK(z.value(Rational(0)) == 1);
  auto poles = ratfun_poles(z.value);
  REQUIRE(poles.size() == 2);
  CHECK(poles[0].pole == Q("-2/3"));
  CHECK(poles[0].order == 1);
  CHECK(z.within_theorem_hypotheses);

  auto one = topzeta_local_dim2(Arrangement(2, {{1, 0}}), {1});
  CHECK(one.value(Rational(0)) == 1);
  auto p1 = ratfun_poles(one.value);
  CHECK(std::any_of(p1.begin(), p1.end(), [](const Pole& p) { return p.pole == -1; }));
  for (const auto& p : p1) CHECK((p.pole == -1 || p.pole == -2));
  CHECK_FALSE(one.within_theorem_hypotheses);

  auto two = topzeta_local_dim2(Arrangement(2, {{1, 0}, {0, 1}}), {1, 1});
  CHECK(two.value == ratfun_normalize(Polynomial(Rational(1)),
                                      pow(Polynomial(std::vector<Rational>{1, 1}), 2)));

  CHECK_THROWS_AS(topzeta_local_dim2(planes_xyz_sum(), {1, 1, 1, 1}), PreconditionError);
}

TEST_CASE("topological zeta invariants on random multiplicities") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 80; ++trial) {
    auto a = random_arrangement(rng, 2, 1 + trial % 6, 5);
    const auto& b = a.multiplicities();
    auto z = topzeta_local_dim2(a, b);
    CHECK(z.value(Rational(0)) == 1);
    CHECK(z.value.numerator().degree() < z.value.denominator().degree());
    CHECK(strata_sum(z.strata_trace) == z.value);
    for (int k = 1; k <= 5; ++k) {
      Rational s = Rational(k) / Rational(7);
      CHECK(z.value(s) == z_direct(b, s));
    }
    const long d = a.degree();
    for (const auto& p : ratfun_poles(z.value)) {
      bool allowed = p.pole == Rational(-2) / Rational(d);
      for (long bi : b) allowed = allowed || p.pole == Rational(-1) / Rational(bi);
      CHECK(allowed);
    }
    // (N, nu) exponents agree with the resolution numerics.
    auto data = resolution_data(a, ResolutionKind::all_edges);
    if (a.size() >= 2) {
      const auto& origin = data.back();
      CHECK(origin.nu == 2);
      CHECK(origin.p(b) == Rational(z.strata_trace[0].exponents[0].first));
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(data[i].p(b) == Rational(z.strata_trace[i + 1].exponents[1].first));
        CHECK(data[i].nu == static_cast<std::size_t>(z.strata_trace[i + 1].exponents[1].second));
      }
    }
    // Permutation equivariance.
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Multiplicities pb;
    std::vector<RationalVector> pf;
    for (auto p : perm) {
      pb.push_back(b[p]);
      pf.push_back(a.form(p));
    }
    CHECK(topzeta_local_dim2(Arrangement(2, pf), pb).value == z.value);
  }
}

TEST_CASE("nd pole survival") {
  auto s = nd_pole_survives(three_lines(), {1, 1, 1});
  CHECK(s.survives);
  CHECK(s.order == 1);
  CHECK(*s.residue == Q("8/3"));

  auto t = nd_pole_survives(Arrangement(2, {{1, 0}, {0, 1}}), {1, 1});
  CHECK(t.survives);
  CHECK(t.order == 2);
  CHECK(t.potential_order_two);
}

TEST_CASE("cancellation scan agrees with the closed-form oracle") {
  CHECK(scan_cancellations(3, 1).empty());
  for (long r = 3; r <= 5; ++r)
    for (long bmax = 1; bmax <= 4; ++bmax) {
      auto hits = scan_cancellations(r, bmax);
      std::vector<Multiplicities> oracle;
      Multiplicities b(static_cast<std::size_t>(r), 1);
      // Enumerate the full box and keep sorted representatives.
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == b.size()) {
          if (!std::is_sorted(b.begin(), b.end())) return;
          const long d = std::accumulate(b.begin(), b.end(), 0L);
          if (std::any_of(b.begin(), b.end(), [&](long x) { return 2 * x == d; })) return;
          if (cancels_oracle(b)) oracle.push_back(b);
          return;
        }
        for (long v = 1; v <= bmax; ++v) {
          b[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
      CHECK(hits == oracle);
      if (r == 3)
        for (const auto& h : hits) CHECK_FALSE(nd_pole_survives(three_lines(), h).survives);
    }
  CHECK(scan_cancellations(4, 3, 3) == scan_cancellations(4, 3, 1));
}

TEST_CASE("scaling of topological zeta poles") {
  CHECK(scaling_pole_check(three_lines(), {1, 1, 1}, 2));
  CHECK(scaling_pole_check(three_lines(), {1, 1, 1}, 1));
  Arrangement xy(2, {{1, 0}, {0, 1}});
  CHECK(scaling_pole_check(xy, {1, 1}, 3));
  auto p = ratfun_poles(topzeta_local_dim2(xy, {3, 3}).value);
  REQUIRE(p.size() == 1);
  CHECK(p[0].pole == Q("-1/3"));
  CHECK(p[0].order == 2);
  auto halved = ratfun_poles(topzeta_local_dim2(three_lines(), {2, 2, 2}).value);
  REQUIRE(halved.size() == 2);
  CHECK(halved[0].pole == Q("-1/3"));
  CHECK(halved[1].pole == Q("-1/2"));
}
