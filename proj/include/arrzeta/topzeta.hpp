#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrzeta/arrangement.hpp"
#include "arrzeta/polynomial.hpp"
#include "arrzeta/resolution.hpp"

namespace arrzeta {

struct StratumTerm {
  std::string label;
  long euler_characteristic = 0;
  std::vector<std::pair<long, long>> exponents;  // (N, nu) per divisor
};

struct TopZeta {
  RationalFunction value;
  std::vector<StratumTerm> strata_trace;
  bool within_theorem_hypotheses = false;  // r >= 3
};

// Local topological zeta function at the origin of a line arrangement in C^2.
TopZeta topzeta_local_dim2(const Arrangement& a, const Multiplicities& b);

RationalFunction strata_sum(const std::vector<StratumTerm>& strata);

struct NdPoleSurvival {
  bool survives = false;
  unsigned order = 0;
  std::optional<Rational> residue;
  bool potential_order_two = false;  // some b_i = d/2
};

NdPoleSurvival nd_pole_survives(const Arrangement& a, const Multiplicities& b);

// Nondecreasing tuples in [1, b_max]^r, none with b_i = d/2, where -2/d is not a pole.
std::vector<Multiplicities> scan_cancellations(long r, long b_max, unsigned threads = 1);

bool scaling_pole_check(const Arrangement& a, const Multiplicities& b, long m);

}  // namespace arrzeta
