#include "arrzeta/bfunction.hpp"

#include <algorithm>

#include "arrzeta/error.hpp"

namespace arrzeta {

unsigned BFunction::multiplicity(const Rational& x) const {
  auto it = roots.find(x);
  return it == roots.end() ? 0 : it->second;
}

unsigned BFunction::degree() const {
  unsigned n = 0;
  for (const auto& [_, m] : roots) n += m;
  return n;
}

BFunction bfun_generic_reduced(long n, long d) {
  if (n < 2 || d < n) throw PreconditionError("generic reduced formula needs d >= n >= 2");
  BFunction bf;
  bf.provenance = "generic-reduced(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")";
  bf.roots[Rational(-1)] += static_cast<unsigned>(n - 1);
  for (long j = 0; j <= 2 * d - n - 2; ++j) bf.roots[-Rational(j + n) / Rational(d)] += 1;
  return bf;
}

BFunction bfun_two_line_powers(long b1, long b2) {
  if (b1 < 1 || b2 < 1) throw PreconditionError("exponents must be positive");
  BFunction bf;
  bf.provenance = "two-line-powers(" + std::to_string(b1) + "," + std::to_string(b2) + ")";
  for (long i = 1; i <= b1; ++i) bf.roots[-Rational(i) / Rational(b1)] += 1;
  for (long j = 1; j <= b2; ++j) bf.roots[-Rational(j) / Rational(b2)] += 1;
  return bf;
}

BFunction bfun_smooth_power(long a) {
  if (a < 1) throw PreconditionError("exponent must be positive");
  BFunction bf;
  bf.provenance = "smooth-power(" + std::to_string(a) + ")";
  for (long i = 1; i <= a; ++i) bf.roots[-Rational(i) / Rational(a)] += 1;
  return bf;
}

bool is_generic(const Arrangement& a) {
  auto c = classify(a);
  if (!c.essential || c.decomposable) return false;
  const std::size_t n = a.dim(), r = a.size();
  if (r < n) return false;
  std::vector<bool> pick(r, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(n), pick.end(), true);
  do {
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < r; ++i)
      if (pick[i]) rows.push_back(a.form(i));
    if (rank(rows, n) < n) return false;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return true;
}

std::optional<BFunction> catalog_lookup(const Arrangement& a, const std::vector<long>& b) {
  if (b.size() != a.size()) throw PreconditionError("multiplicity vector length mismatch");
  if (a.size() == 1) return bfun_smooth_power(b[0]);
  if (a.size() == 2 && rank(a.forms(), a.dim()) == 2) return bfun_two_line_powers(b[0], b[1]);
  const bool reduced = std::all_of(b.begin(), b.end(), [](long x) { return x == 1; });
  if (reduced && a.dim() >= 2 && is_generic(a))
    return bfun_generic_reduced(static_cast<long>(a.dim()), static_cast<long>(a.size()));
  return std::nullopt;
}

PoleRootReport check_pole_root_implication(const BFunction& bf, const std::vector<Rational>& poles) {
  PoleRootReport out;
  for (const auto& p : poles) {
    PoleRootCheck c{p, bf.has_root(p), std::nullopt, false};
    if (p >= Rational(-1)) {
      c.consistent = c.is_root;
    } else {
      const long max_shift = to_int64(floor(-p));
      for (long alpha = 0; alpha <= max_shift; ++alpha)
        if (bf.has_root(p + Rational(alpha))) {
          c.shift = alpha;
          break;
        }
      c.consistent = c.shift.has_value();
    }
    out.consistent = out.consistent && c.consistent;
    out.checks.push_back(std::move(c));
  }
  return out;
}

bool stronger_nd_roots_present(const BFunction& bf, long n, long d) {
  for (long k = n; k <= d - 1; ++k)
    if (!bf.has_root(-Rational(k) / Rational(d))) return false;
  return true;
}

}  // namespace arrzeta
