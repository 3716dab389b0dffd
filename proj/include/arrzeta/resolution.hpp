#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arrzeta/arrangement.hpp"
#include "arrzeta/error.hpp"

namespace arrzeta {

using Multiplicities = std::vector<long>;

enum class ResolutionKind { all_edges, dense_edges };

std::string to_string(ResolutionKind k);

struct ResolutionDatum {
  Edge edge;
  std::size_t nu = 0;
  std::vector<int> n_indicator;
  RationalVector p_functional;

  Rational p(const Multiplicities& b) const;
};

std::vector<ResolutionDatum> resolution_data(const Arrangement& a, ResolutionKind kind);

Rational lct(const Arrangement& a, const Multiplicities& b);

struct CandidateSource {
  Edge edge;
  long beta = 0;
};

struct CandidatePole {
  Rational value;
  std::vector<CandidateSource> sources;
  unsigned order_bound = 1;
};

// s_min unset means no lower cutoff.
std::vector<CandidatePole> candidate_poles_archimedean(
    const Arrangement& a, const Multiplicities& b, long beta_max,
    const std::optional<Rational>& s_min, ResolutionKind kind = ResolutionKind::all_edges);

std::vector<CandidatePole> candidate_poles_motivic(const Arrangement& a, const Multiplicities& b);

struct PoleOrderBound {
  unsigned bound = 1;
  std::vector<Edge> witness;  // a largest nested set of edges
  bool uses_intersection_assumption = false;
};

// Largest nested set of divisors whose functionals vanish at s0 up to
// half-integer shifts. Throws PreconditionError if s0 is not a candidate.
PoleOrderBound pole_order_bound(const Arrangement& a, const Multiplicities& b, const Rational& s0,
                                ResolutionKind kind = ResolutionKind::all_edges);

extern const char* const kIntersectionAssumption;

struct EdgeMargin {
  Edge edge;
  Rational margin;
};

struct GoodTupleCertificate {
  Multiplicities tuple;
  Edge edge;
  std::vector<EdgeMargin> margins;
  Rational epsilon;  // LP optimum when produced by find_good_tuple
};

struct GoodTupleCheck {
  bool good = false;
  std::vector<EdgeMargin> margins;
  std::vector<EdgeMargin> violations;
  std::optional<GoodTupleCertificate> certificate;
};

GoodTupleCheck is_good_tuple(const Arrangement& a, const Multiplicities& b, const Edge& w,
                             ResolutionKind kind = ResolutionKind::all_edges);

class NoGoodTupleError : public Error {
public:
  NoGoodTupleError() : Error("no good tuple exists at this edge") {}
};

// w defaults to the origin. Throws NoGoodTupleError or PreconditionError.
GoodTupleCertificate find_good_tuple(const Arrangement& a,
                                     ResolutionKind kind = ResolutionKind::all_edges,
                                     const std::optional<Edge>& w = std::nullopt);

}  // namespace arrzeta
