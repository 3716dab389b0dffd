#include "arrzeta/topzeta.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace arrzeta {

namespace {

Polynomial linear(long n, long nu) {
  return Polynomial(std::vector<Rational>{Rational(nu), Rational(n)});
}

bool has_half_degree(const Multiplicities& b) {
  const long d = std::accumulate(b.begin(), b.end(), 0L);
  return std::any_of(b.begin(), b.end(), [&](long x) { return 2 * x == d; });
}

}  // namespace

RationalFunction strata_sum(const std::vector<StratumTerm>& strata) {
  RationalFunction z;
  for (const auto& t : strata) {
    Polynomial den(Rational(1));
    for (auto [n, nu] : t.exponents) den *= linear(n, nu);
    z = z + ratfun_normalize(Polynomial(Rational(t.euler_characteristic)), den);
  }
  return z;
}

TopZeta topzeta_local_dim2(const Arrangement& a, const Multiplicities& b) {
  if (a.dim() != 2) throw PreconditionError("topological zeta is implemented for n = 2 only");
  if (b.size() != a.size()) throw PreconditionError("multiplicity vector length mismatch");
  for (long x : b)
    if (x < 1) throw PreconditionError("multiplicities must be positive integers");
  const long r = static_cast<long>(a.size());
  const long d = std::accumulate(b.begin(), b.end(), 0L);
  TopZeta z;
  z.strata_trace.push_back({"E_0 minus strict transforms", 2 - r, {{d, 2}}});
  for (std::size_t i = 0; i < b.size(); ++i)
    z.strata_trace.push_back({"E_0 meets E_" + std::to_string(i + 1), 1, {{d, 2}, {b[i], 1}}});
  z.value = strata_sum(z.strata_trace);
  z.within_theorem_hypotheses = r >= 3;
  return z;
}

NdPoleSurvival nd_pole_survives(const Arrangement& a, const Multiplicities& b) {
  auto z = topzeta_local_dim2(a, b);
  const long d = std::accumulate(b.begin(), b.end(), 0L);
  const Rational s0 = Rational(-2) / Rational(d);
  NdPoleSurvival out;
  out.potential_order_two = has_half_degree(b);
  for (const auto& p : ratfun_poles(z.value)) {
    if (p.pole != s0) continue;
    out.survives = true;
    out.order = p.order;
    out.residue = p.residue;
  }
  return out;
}

std::vector<Multiplicities> scan_cancellations(long r, long b_max, unsigned threads) {
  if (r < 3 || b_max < 1) throw PreconditionError("scan needs r >= 3 and b_max >= 1");
  std::vector<Multiplicities> tuples;
  Multiplicities b(static_cast<std::size_t>(r), 1);
  for (;;) {
    if (!has_half_degree(b)) tuples.push_back(b);
    std::size_t k = b.size();
    while (k > 0 && b[k - 1] == b_max) --k;
    if (k == 0) break;
    ++b[k - 1];
    for (std::size_t j = k; j < b.size(); ++j) b[j] = b[k - 1];
  }
  // Slopes are irrelevant to the dimension-two formula; use r distinct lines.
  std::vector<RationalVector> forms;
  for (long i = 0; i < r; ++i) forms.push_back({Rational(1), Rational(i)});
  const Arrangement lines(2, forms);
  auto hit = [&](const Multiplicities& t) { return !nd_pole_survives(lines, t).survives; };

  std::vector<char> flags(tuples.size(), 0);
  const std::size_t workers = std::max(1u, threads);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, w] {
      for (std::size_t i = w; i < tuples.size(); i += workers) flags[i] = hit(tuples[i]);
    }));
  for (auto& j : jobs) j.get();
  std::vector<Multiplicities> out;
  for (std::size_t i = 0; i < tuples.size(); ++i)
    if (flags[i]) out.push_back(tuples[i]);
  return out;
}

bool scaling_pole_check(const Arrangement& a, const Multiplicities& b, long m) {
  if (m < 1) throw PreconditionError("scaling factor must be positive");
  Multiplicities mb;
  for (long x : b) mb.push_back(m * x);
  auto base = ratfun_poles(topzeta_local_dim2(a, b).value);
  auto scaled = ratfun_poles(topzeta_local_dim2(a, mb).value);
  if (base.size() != scaled.size()) return false;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (scaled[i].pole != base[i].pole / Rational(m) || scaled[i].order != base[i].order)
      return false;
  return true;
}

}  // namespace arrzeta
