#include <doctest.h>

#include <algorithm>
#include <random>

#include "arrzeta/lp.hpp"
#include "arrzeta/resolution.hpp"
#include "oracles.hpp"

using namespace arrzeta;
using namespace arrzeta::testing;

namespace {

Rational Q(const char* s) { return Rational::parse(s); }

std::vector<Rational> values(const std::vector<CandidatePole>& c) {
  std::vector<Rational> v;
  for (const auto& x : c) v.push_back(x.value);
  return v;
}

// Margins recomputed from brute-force edges, independent of the resolution module.
bool oracle_good_at_origin(const Arrangement& a, const Multiplicities& c) {
  IndexSet all(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) all[i] = i;
  const Rational nu0 = static_cast<long>(rank_of(a, all));
  Rational p0;
  for (long x : c) p0 += x;
  for (const auto& w : brute_force_edges(a)) {
    if (w == all) continue;
    Rational pw;
    for (auto i : w) pw += c[i];
    if ((Rational(static_cast<long>(rank_of(a, w))) - pw * nu0 / p0).sign() <= 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact simplex on small programs") {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5)
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.a_ub = {{1, 2}, {3, 1}};
  lp.b_ub = {4, 6};
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.x[0] == Q("8/5"));
  CHECK(s.x[1] == Q("6/5"));
  CHECK(s.objective == Q("14/5"));

  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1};
  infeasible.a_ub = {{1}};
  infeasible.b_ub = {-1};
  CHECK(solve_lp(infeasible).status == LpStatus::infeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.free = {true, true};
  unbounded.objective = {1, 0};
  unbounded.a_eq = {{1, -1}};
  unbounded.b_eq = {0};
  CHECK(solve_lp(unbounded).status == LpStatus::unbounded);

  // Free variables and a redundant equality.
  LinearProgram eq;
  eq.num_vars = 2;
  eq.free = {true, true};
  eq.objective = {-1, 0};
  eq.a_eq = {{1, 1}, {2, 2}};
  eq.b_eq = {-3, -6};
  eq.a_ub = {{-1, 0}, {0, -1}};
  eq.b_ub = {5, 1};
  auto e = solve_lp(eq);
  REQUIRE(e.status == LpStatus::optimal);
  CHECK(e.x[0] == -5);
  CHECK(e.x[1] == 2);
}

TEST_CASE("simplex agrees with vertex enumeration on random 2-variable programs") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {c(rng), c(rng)};
    for (int k = 0; k < 4; ++k) {
      lp.a_ub.push_back({c(rng), c(rng)});
      lp.b_ub.push_back(c(rng) + 5);
    }
    lp.a_ub.push_back({1, 1});
    lp.b_ub.push_back(10);
    auto s = solve_lp(lp);
    // Oracle: best feasible intersection point of constraint pairs (incl. axes).
    std::vector<RationalVector> rows = lp.a_ub;
    RationalVector rhs = lp.b_ub;
    rows.push_back({-1, 0});
    rhs.push_back(0);
    rows.push_back({0, -1});
    rhs.push_back(0);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        Rational det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
        if (det.is_zero()) continue;
        Rational x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
        Rational y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
        bool ok = true;
        for (std::size_t k = 0; k < rows.size(); ++k)
          if (rows[k][0] * x + rows[k][1] * y > rhs[k]) ok = false;
        if (!ok) continue;
        Rational v = lp.objective[0] * x + lp.objective[1] * y;
        if (!best || v > *best) best = v;
      }
    if (!best) {
      CHECK(s.status == LpStatus::infeasible);
    } else {
      REQUIRE(s.status == LpStatus::optimal);
      CHECK(s.objective == *best);
    }
  }
}

TEST_CASE("resolution_data examples") {
  auto d = resolution_data(three_lines(), ResolutionKind::all_edges);
  REQUIRE(d.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(d[i].nu == 1);
    CHECK(d[i].p({2, 3, 5}) == Rational(std::vector<long>{2, 3, 5}[i]));
  }
  CHECK(d[3].nu == 2);
  CHECK(d[3].p({2, 3, 5}) == 10);

  auto single = resolution_data(Arrangement(1, {{1}}), ResolutionKind::all_edges);
  REQUIRE(single.size() == 1);
  CHECK(single[0].nu == 1);
  CHECK(single[0].p({4}) == 4);

  auto dense = resolution_data(planes_xyz_sum(), ResolutionKind::dense_edges);
  auto oracle = dense_edges(planes_xyz_sum());
  REQUIRE(dense.size() == oracle.size());
  CHECK(dense.size() == 5);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    CHECK(dense[i].edge == oracle[i]);
    CHECK(dense[i].nu == oracle[i].codim);
    for (std::size_t h = 0; h < 4; ++h) CHECK(dense[i].p_functional[h] == Rational(dense[i].n_indicator[h]));
  }
}

TEST_CASE("lct examples") {
  CHECK(lct(three_lines(), {1, 1, 1}) == Q("2/3"));
  CHECK(lct(three_lines(), {3, 1, 1}) == Q("1/3"));
  CHECK(lct(Arrangement(1, {{1}}), {1}) == 1);
}

TEST_CASE("archimedean candidate examples") {
  auto c = candidate_poles_archimedean(three_lines(), {1, 1, 1}, 0, Rational(-2));
  CHECK(values(c) == std::vector<Rational>{Q("-2/3"), Rational(-1)});
  CHECK(c[0].sources.size() == 1);
  CHECK(c[1].sources.size() == 3);

  // Exhaustive enumeration oracle for b=(3,1,1), beta <= 2, s >= -1.
  auto d = candidate_poles_archimedean(three_lines(), {3, 1, 1}, 2, Rational(-1));
  std::vector<Rational> expect;
  for (auto [nu, p] : std::vector<std::pair<long, long>>{{2, 5}, {1, 3}, {1, 1}, {1, 1}})
    for (long beta = 0; beta <= 2; ++beta) {
      Rational v = -(Rational(nu) + Rational(beta) / 2) / Rational(p);
      if (v >= -1) expect.push_back(v);
    }
  std::sort(expect.begin(), expect.end(), std::greater<>());
  expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
  CHECK(values(d) == expect);
  CHECK(values(d).front() == Q("-1/3"));
  CHECK(std::count(expect.begin(), expect.end(), Q("-2/5")) == 1);
  CHECK(std::count(expect.begin(), expect.end(), Q("-1/2")) == 1);

  auto e = candidate_poles_archimedean(three_lines(), {1, 1, 1}, 0, Q("-1/2"));
  CHECK(e.empty());
  CHECK_THROWS_AS(candidate_poles_archimedean(three_lines(), {1, 1, 1}, 0, Rational(0)),
                  PreconditionError);
}

TEST_CASE("motivic candidate examples") {
  CHECK(values(candidate_poles_motivic(three_lines(), {1, 1, 1})) ==
        std::vector<Rational>{Q("-2/3"), Rational(-1)});
  CHECK(values(candidate_poles_motivic(Arrangement(2, {{1, 0}, {0, 1}}), {1, 1})) ==
        std::vector<Rational>{Rational(-1)});
  CHECK(values(candidate_poles_motivic(Arrangement(1, {{1}}), {4})) ==
        std::vector<Rational>{Q("-1/4")});
}

TEST_CASE("pole order bound examples") {
  CHECK(pole_order_bound(three_lines(), {2, 1, 1}, Q("-1/2")).bound == 2);
  CHECK(pole_order_bound(three_lines(), {1, 1, 1}, Q("-2/3")).bound == 1);
  CHECK(pole_order_bound(three_lines(), {3, 1, 1}, Q("-2/5")).bound == 1);
  CHECK_THROWS_AS(pole_order_bound(three_lines(), {1, 1, 1}, Q("-1/7")), PreconditionError);
  CHECK_FALSE(pole_order_bound(three_lines(), {1, 1, 1}, Q("-2/3")).uses_intersection_assumption);
  CHECK(pole_order_bound(planes_xyz_sum(), {1, 1, 1, 1}, Q("-3/4")).uses_intersection_assumption);
}

TEST_CASE("pole order bound matches the dimension-two rule") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = random_arrangement(rng, 2, 3 + trial % 3, 4);
    auto b = a.multiplicities();
    long d = a.degree();
    for (const auto& c : candidate_poles_archimedean(a, b, 3, Rational(-3))) {
      const Rational s0 = c.value;
      Rational beta0 = Rational(-2) * (Rational(d) * s0 + 2);
      bool origin = beta0.is_integer() && beta0.sign() >= 0;
      bool line = false;
      for (long bi : b) {
        Rational beta = Rational(-2) * (Rational(bi) * s0 + 1);
        if (beta.is_integer() && beta.sign() >= 0) line = true;
      }
      CHECK(c.order_bound == ((origin && line) ? 2u : 1u));
    }
  }
}

TEST_CASE("dense resolution uses nested sets") {
  // x*y: without a blow-up the two lines cross; with it, each meets E_0.
  Arrangement xy(2, {{1, 0}, {0, 1}});
  CHECK(pole_order_bound(xy, {1, 1}, Rational(-1), ResolutionKind::dense_edges).bound == 2);
  CHECK(pole_order_bound(xy, {1, 1}, Rational(-1), ResolutionKind::all_edges).bound == 2);
  CHECK(pole_order_bound(xy, {2, 1}, Q("-1/2"), ResolutionKind::dense_edges).bound == 1);
  // Three planes x,y,z: the dense model is the identity, all three cross.
  Arrangement xyz(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(pole_order_bound(xyz, {1, 1, 1}, Rational(-1), ResolutionKind::dense_edges).bound == 3);
}

TEST_CASE("good tuple examples") {
  auto a = three_lines();
  auto origin = build_edge_poset(a)[3];
  auto g = is_good_tuple(a, {2, 2, 2}, origin);
  REQUIRE(g.good);
  for (const auto& m : g.certificate->margins) CHECK(m.margin == Q("1/3"));

  auto bad = is_good_tuple(a, {3, 1, 1}, origin);
  CHECK_FALSE(bad.good);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].edge.hyperplanes == IndexSet{0});
  CHECK(bad.violations[0].margin == Q("-1/5"));

  auto one = is_good_tuple(a, {1, 1, 1}, origin);
  CHECK(one.good);
  for (const auto& m : one.margins) CHECK(m.margin == Q("1/3"));
  CHECK(lct(a, {1, 1, 1}) == Q("2/3"));
}

TEST_CASE("find_good_tuple examples") {
  auto c3 = find_good_tuple(three_lines());
  CHECK(c3.tuple == Multiplicities{2, 2, 2});
  CHECK(c3.epsilon == Q("1/3"));

  auto c4 = find_good_tuple(Arrangement(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
  CHECK(c4.tuple == Multiplicities{1, 1, 1, 1});

  auto c5 = find_good_tuple(planes_xyz_sum());
  CHECK(c5.tuple == Multiplicities{3, 3, 3, 3});

  CHECK_THROWS_AS(find_good_tuple(Arrangement(2, {{1, 0}, {0, 1}})), PreconditionError);
  CHECK_THROWS_AS(find_good_tuple(Arrangement(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})),
                  PreconditionError);
}

TEST_CASE("good tuple at a non-origin edge") {
  // Line x=y=0 in x*y*(x+y)*z*(x+y+z): local problem has a solution.
  Arrangement a(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  auto poset = build_edge_poset(a);
  auto line = poset.find({0, 1, 2});
  REQUIRE(line);
  auto cert = find_good_tuple(a, ResolutionKind::all_edges, poset[*line]);
  CHECK(is_good_tuple(a, cert.tuple, poset[*line]).good);
}

TEST_CASE("random good tuples: certification, oracle margins and lct identity") {
  std::mt19937_64 rng(47);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_arrangement(rng, 2 + trial % 3, 3 + trial % 5, 1);
    auto cls = classify(a);
    if (!cls.essential || cls.decomposable) continue;
    auto cert = find_good_tuple(a);
    ++found;
    CHECK(oracle_good_at_origin(a, cert.tuple));
    long sum = 0;
    for (long x : cert.tuple) {
      CHECK(x >= 1);
      sum += x;
    }
    CHECK(lct(a, cert.tuple) == Rational(static_cast<long>(a.dim())) / Rational(sum));
    CHECK(cert.epsilon.sign() > 0);
  }
  CHECK(found > 10);
}

TEST_CASE("resolution properties on random arrangements") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_arrangement(rng, 2 + trial % 3, 2 + trial % 5, 3);
    const auto& b = a.multiplicities();
    // Scaling of candidate sets.
    for (long m : {2L, 3L}) {
      Multiplicities mb;
      for (long x : b) mb.push_back(m * x);
      auto base = values(candidate_poles_archimedean(a, b, 2, std::nullopt));
      auto scaled = values(candidate_poles_archimedean(a, mb, 2, std::nullopt));
      REQUIRE(base.size() == scaled.size());
      for (std::size_t i = 0; i < base.size(); ++i) CHECK(scaled[i] == base[i] / Rational(m));
      auto mb_mot = values(candidate_poles_motivic(a, mb));
      auto b_mot = values(candidate_poles_motivic(a, b));
      REQUIRE(mb_mot.size() == b_mot.size());
      for (std::size_t i = 0; i < b_mot.size(); ++i) CHECK(mb_mot[i] == b_mot[i] / Rational(m));
    }
    // -lct is the largest beta = 0 candidate.
    auto c = candidate_poles_archimedean(a, b, 0, std::nullopt);
    CHECK(c.front().value == -lct(a, b));
    // lct <= min(n/d, min 1/b_i) for essential arrangements.
    if (classify(a).essential) {
      Rational nd = Rational(static_cast<long>(a.dim())) / Rational(a.degree());
      Rational bound = nd;
      for (long x : b) bound = std::min(bound, Rational(1) / Rational(x));
      CHECK(lct(a, b) <= bound);
    }
  }
}
