#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "arrzeta/arrangement.hpp"
#include "arrzeta/matrix.hpp"

namespace arrzeta::testing {

inline Arrangement three_lines(std::vector<long> b = {}) {
  return Arrangement(2, {{1, 0}, {1, 1}, {1, -1}}, std::move(b));
}

inline Arrangement planes_xyz_sum(std::vector<long> b = {}) {
  return Arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, std::move(b));
}

inline std::size_t rank_of(const Arrangement& a, const IndexSet& s) {
  if (s.empty()) return 0;
  std::vector<RationalVector> rows;
  for (auto i : s) rows.push_back(a.form(i));
  return rref(RationalMatrix::from_rows(rows)).rank;
}

inline IndexSet saturate(const Arrangement& a, const IndexSet& s) {
  const std::size_t r = rank_of(a, s);
  IndexSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    IndexSet t = s;
    t.push_back(i);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    if (rank_of(a, t) == r) out.push_back(i);
  }
  return out;
}

inline std::set<IndexSet> brute_force_edges(const Arrangement& a) {
  std::set<IndexSet> out;
  const std::size_t r = a.size();
  for (unsigned long mask = 1; mask < (1UL << r); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.insert(saturate(a, s));
  }
  return out;
}

// Exhaustive search for a rank-additive bipartition.
inline bool bipartition_decomposable(const Arrangement& a) {
  const std::size_t r = a.size();
  if (r < 2) return false;
  IndexSet all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  const std::size_t total = rank_of(a, all);
  for (unsigned long mask = 1; mask + 1 < (1UL << r); ++mask) {
    if (!(mask & 1)) continue;
    IndexSet s1, s2;
    for (std::size_t i = 0; i < r; ++i) (mask >> i & 1 ? s1 : s2).push_back(i);
    if (rank_of(a, s1) + rank_of(a, s2) == total) return true;
  }
  return false;
}

// mu(bottom, W) for each edge, bottom being the ambient space.
inline std::vector<long> mobius_from_bottom(const EdgePoset& p) {
  std::vector<long> mu(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    long s = 1;
    for (std::size_t j = 0; j < i; ++j)
      if (p[j].hyperplanes != p[i].hyperplanes && p.leq(i, j)) s += mu[j];
    mu[i] = -s;
  }
  return mu;
}

// Random arrangement with small integer normals; duplicates re-drawn.
inline Arrangement random_arrangement(std::mt19937_64& rng, std::size_t n, std::size_t r,
                                      long max_mult, int coeff = 2) {
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<long> m(1, max_mult);
  std::vector<RationalVector> forms;
  std::vector<long> mult;
  while (forms.size() < r) {
    RationalVector v(n);
    for (auto& x : v) x = c(rng);
    if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); })) continue;
    if (std::any_of(forms.begin(), forms.end(), [&](const RationalVector& f) { return proportional(f, v); }))
      continue;
    forms.push_back(v);
    mult.push_back(m(rng));
  }
  return Arrangement(n, forms, mult);
}

inline RationalMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-2, 2);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  RationalMatrix g = RationalMatrix::identity(n);
  for (int step = 0; step < 8; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Rational f = c(rng);
    for (std::size_t k = 0; k < n; ++k) g(i, k) += f * g(j, k);
  }
  return g;
}

}  // namespace arrzeta::testing
