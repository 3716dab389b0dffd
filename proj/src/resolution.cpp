#include "arrzeta/resolution.hpp"

#include <algorithm>
#include <map>

#include "arrzeta/lp.hpp"

namespace arrzeta {

const char* const kIntersectionAssumption =
    "pole order bound assumes exceptional divisors E_W meet iff their edges form a nested "
    "set of the chosen resolution (chains for the all-edges resolution); the intersection "
    "pattern for n >= 3 is not derived independently";

std::string to_string(ResolutionKind k) {
  return k == ResolutionKind::all_edges ? "all-edges" : "dense-edges";
}

Rational ResolutionDatum::p(const Multiplicities& b) const {
  Rational s;
  for (std::size_t i = 0; i < n_indicator.size(); ++i)
    if (n_indicator[i]) s += Rational(b.at(i));
  return s;
}

namespace {

void check_multiplicities(const Arrangement& a, const Multiplicities& b) {
  if (b.size() != a.size())
    throw PreconditionError("multiplicity vector length " + std::to_string(b.size()) +
                            " does not match " + std::to_string(a.size()) + " hyperplanes");
  for (long x : b)
    if (x < 1) throw PreconditionError("multiplicities must be positive integers");
}

IndexSet saturated_union(const Arrangement& a, const std::vector<const Edge*>& edges) {
  RowSpace span(a.dim());
  for (const Edge* e : edges)
    for (auto i : e->hyperplanes) span.insert(a.form(i));
  IndexSet out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (span.contains(a.form(i))) out.push_back(i);
  return out;
}

bool subset_of(const IndexSet& x, const IndexSet& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

bool comparable(const Edge& x, const Edge& y) {
  return subset_of(x.hyperplanes, y.hyperplanes) || subset_of(y.hyperplanes, x.hyperplanes);
}

// Nested w.r.t. a building set: no join of >= 2 pairwise incomparable members lies in it.
bool is_nested(const Arrangement& a, const std::vector<const Edge*>& s,
               const std::map<IndexSet, bool>& building) {
  const std::size_t k = s.size();
  for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
    if (__builtin_popcountl(mask) < 2) continue;
    std::vector<const Edge*> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) sub.push_back(s[i]);
    bool antichain = true;
    for (std::size_t i = 0; i < sub.size() && antichain; ++i)
      for (std::size_t j = i + 1; j < sub.size() && antichain; ++j)
        if (comparable(*sub[i], *sub[j])) antichain = false;
    if (!antichain) continue;
    if (building.count(saturated_union(a, sub))) return false;
  }
  return true;
}

}  // namespace

std::vector<ResolutionDatum> resolution_data(const Arrangement& a, ResolutionKind kind) {
  auto poset = build_edge_poset(a);
  std::vector<Edge> edges =
      kind == ResolutionKind::all_edges ? poset.edges() : dense_edges(a, poset);
  std::vector<ResolutionDatum> out;
  for (auto& e : edges) {
    ResolutionDatum d;
    d.nu = e.codim;
    d.n_indicator.assign(a.size(), 0);
    d.p_functional.assign(a.size(), Rational(0));
    for (auto i : e.hyperplanes) {
      d.n_indicator[i] = 1;
      d.p_functional[i] = 1;
    }
    d.edge = std::move(e);
    out.push_back(std::move(d));
  }
  return out;
}

Rational lct(const Arrangement& a, const Multiplicities& b) {
  check_multiplicities(a, b);
  std::optional<Rational> best;
  for (const auto& d : resolution_data(a, ResolutionKind::all_edges)) {
    Rational v = Rational(static_cast<long>(d.nu)) / d.p(b);
    if (!best || v < *best) best = v;
  }
  return *best;
}

PoleOrderBound pole_order_bound(const Arrangement& a, const Multiplicities& b, const Rational& s0,
                                ResolutionKind kind) {
  check_multiplicities(a, b);
  auto data = resolution_data(a, kind);
  std::vector<const Edge*> possible;
  for (const auto& d : data) {
    Rational beta = Rational(-2) * (d.p(b) * s0 + Rational(static_cast<long>(d.nu)));
    if (beta.is_integer() && beta.sign() >= 0) possible.push_back(&d.edge);
  }
  if (possible.empty())
    throw PreconditionError("s0 = " + s0.str() + " is not a candidate pole");

  PoleOrderBound out;
  out.uses_intersection_assumption = a.dim() >= 3;
  std::vector<const Edge*> best;
  if (kind == ResolutionKind::all_edges) {
    // Longest chain; codimension strictly increases along a chain.
    std::sort(possible.begin(), possible.end(),
              [](const Edge* x, const Edge* y) { return x->codim < y->codim; });
    std::vector<std::size_t> len(possible.size(), 1), prev(possible.size(), SIZE_MAX);
    for (std::size_t i = 0; i < possible.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (possible[j]->codim < possible[i]->codim &&
            subset_of(possible[j]->hyperplanes, possible[i]->hyperplanes) && len[j] + 1 > len[i]) {
          len[i] = len[j] + 1;
          prev[i] = j;
        }
    std::size_t end = static_cast<std::size_t>(std::max_element(len.begin(), len.end()) - len.begin());
    for (std::size_t i = end; i != SIZE_MAX; i = prev[i]) best.push_back(possible[i]);
    std::reverse(best.begin(), best.end());
  } else {
    if (possible.size() > 20) throw Error("too many candidate divisors for nested-set search");
    std::map<IndexSet, bool> building;
    for (const auto& d : data) building[d.edge.hyperplanes] = true;
    const std::size_t k = possible.size();
    for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountl(mask)) <= best.size()) continue;
      std::vector<const Edge*> s;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) s.push_back(possible[i]);
      if (is_nested(a, s, building)) best = s;
    }
  }
  out.bound = static_cast<unsigned>(best.size());
  for (const Edge* e : best) out.witness.push_back(*e);
  return out;
}

namespace {

std::vector<CandidatePole> merge_candidates(
    const Arrangement& a, const Multiplicities& b, ResolutionKind kind,
    std::vector<std::pair<Rational, CandidateSource>> raw) {
  std::map<Rational, std::vector<CandidateSource>, std::greater<>> merged;
  for (auto& [v, src] : raw) merged[v].push_back(std::move(src));
  std::vector<CandidatePole> out;
  for (auto& [v, srcs] : merged) {
    CandidatePole c;
    c.value = v;
    c.sources = std::move(srcs);
    c.order_bound = pole_order_bound(a, b, v, kind).bound;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<CandidatePole> candidate_poles_archimedean(const Arrangement& a, const Multiplicities& b,
                                                       long beta_max,
                                                       const std::optional<Rational>& s_min,
                                                       ResolutionKind kind) {
  check_multiplicities(a, b);
  if (beta_max < 0) throw PreconditionError("beta_max must be nonnegative");
  if (s_min && s_min->sign() >= 0) throw PreconditionError("s_min must be negative");
  std::vector<std::pair<Rational, CandidateSource>> raw;
  for (const auto& d : resolution_data(a, kind)) {
    const Rational p = d.p(b);
    for (long beta = 0; beta <= beta_max; ++beta) {
      Rational v = -(Rational(static_cast<long>(d.nu)) + Rational(beta) / Rational(2)) / p;
      if (s_min && v < *s_min) break;
      raw.push_back({v, {d.edge, beta}});
    }
  }
  return merge_candidates(a, b, kind, std::move(raw));
}

std::vector<CandidatePole> candidate_poles_motivic(const Arrangement& a, const Multiplicities& b) {
  check_multiplicities(a, b);
  std::vector<std::pair<Rational, CandidateSource>> raw;
  for (const auto& d : resolution_data(a, ResolutionKind::dense_edges))
    raw.push_back({-Rational(static_cast<long>(d.nu)) / d.p(b), {d.edge, 0}});
  return merge_candidates(a, b, ResolutionKind::dense_edges, std::move(raw));
}

GoodTupleCheck is_good_tuple(const Arrangement& a, const Multiplicities& b, const Edge& w,
                             ResolutionKind kind) {
  check_multiplicities(a, b);
  auto data = resolution_data(a, kind);
  auto self = std::find_if(data.begin(), data.end(),
                           [&](const ResolutionDatum& d) { return d.edge == w; });
  if (self == data.end())
    throw PreconditionError("edge is not a divisor of the " + to_string(kind) + " resolution");
  const Rational ratio = Rational(static_cast<long>(self->nu)) / self->p(b);
  GoodTupleCheck out;
  for (const auto& d : data) {
    if (d.edge == w) continue;
    EdgeMargin m{d.edge, Rational(static_cast<long>(d.nu)) - d.p(b) * ratio};
    if (m.margin.sign() <= 0) out.violations.push_back(m);
    out.margins.push_back(std::move(m));
  }
  out.good = out.violations.empty();
  if (out.good) out.certificate = GoodTupleCertificate{b, self->edge, out.margins, Rational(0)};
  return out;
}

GoodTupleCertificate find_good_tuple(const Arrangement& a, ResolutionKind kind,
                                     const std::optional<Edge>& w) {
  auto data = resolution_data(a, kind);
  auto poset = build_edge_poset(a);
  const Edge target = w ? *w : poset[poset.top()];
  if (!w) {
    auto c = classify(a);
    if (!c.essential) throw PreconditionError("arrangement is not essential");
    if (c.decomposable) throw PreconditionError("arrangement is decomposable");
  }
  auto self = std::find_if(data.begin(), data.end(),
                           [&](const ResolutionDatum& d) { return d.edge == target; });
  if (self == data.end())
    throw PreconditionError("edge is not a divisor of the " + to_string(kind) + " resolution");

  // Variables u_1..u_r, eps (all free); maximize eps.
  const std::size_t r = a.size();
  LinearProgram lp;
  lp.num_vars = r + 1;
  lp.free.assign(r + 1, true);
  lp.objective.assign(r + 1, Rational(0));
  lp.objective[r] = 1;
  RationalVector eq(r + 1);
  for (std::size_t i = 0; i < r; ++i) eq[i] = self->n_indicator[i];
  lp.a_eq.push_back(eq);
  lp.b_eq.push_back(-Rational(static_cast<long>(self->nu)));
  for (const auto& d : data) {
    if (d.edge == target) continue;
    RationalVector row(r + 1);
    for (std::size_t i = 0; i < r; ++i) row[i] = -Rational(d.n_indicator[i]);
    row[r] = 1;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(Rational(static_cast<long>(d.nu)));
  }
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector row(r + 1);
    row[i] = 1;
    row[r] = 1;
    lp.a_ub.push_back(row);
    lp.b_ub.push_back(0);
  }
  RationalVector cap(r + 1);
  cap[r] = 1;
  lp.a_ub.push_back(cap);
  lp.b_ub.push_back(1);

  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal || sol.objective.sign() <= 0) throw NoGoodTupleError();

  RationalVector u(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(r));
  Integer m = lcm_of_denominators(u.data(), u.data() + u.size());
  Multiplicities c(r);
  for (std::size_t i = 0; i < r; ++i) {
    Rational ci = -u[i] * Rational(m);
    c[i] = to_int64(ci.numerator());
  }
  auto check = is_good_tuple(a, c, target, kind);
  if (!check.good) throw Error("internal: LP solution failed good-tuple certification");
  auto cert = *check.certificate;
  cert.epsilon = sol.objective;
  return cert;
}

}  // namespace arrzeta
