#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrzeta/arrangement.hpp"
#include "arrzeta/rational.hpp"

namespace arrzeta {

struct BFunction {
  std::map<Rational, unsigned, std::greater<>> roots;  // root -> multiplicity, descending
  std::string provenance;

  bool has_root(const Rational& x) const { return roots.count(x) > 0; }
  unsigned multiplicity(const Rational& x) const;
  unsigned degree() const;
};

BFunction bfun_generic_reduced(long n, long d);
BFunction bfun_two_line_powers(long b1, long b2);
BFunction bfun_smooth_power(long a);

// Generic: essential, indecomposable, every n normals independent.
bool is_generic(const Arrangement& a);

// Catalog entry for (a, b) if one of the closed forms applies.
std::optional<BFunction> catalog_lookup(const Arrangement& a, const std::vector<long>& b);

struct PoleRootCheck {
  Rational pole;
  bool is_root = false;
  std::optional<long> shift;  // alpha with pole + alpha a root, when pole < -1
  bool consistent = false;
};

struct PoleRootReport {
  std::vector<PoleRootCheck> checks;
  bool consistent = true;
};

PoleRootReport check_pole_root_implication(const BFunction& bf, const std::vector<Rational>& poles);

// Whether -n/d, -(n+1)/d, ..., -(d-1)/d are all roots.
bool stronger_nd_roots_present(const BFunction& bf, long n, long d);

}  // namespace arrzeta
