#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrzeta/matrix.hpp"

namespace arrzeta {

using IndexSet = std::vector<std::size_t>;  // sorted, unique

// Central arrangement of distinct hyperplanes given by linear forms.
class Arrangement {
public:
  // Throws std::invalid_argument on zero forms, proportional forms, dimension
  // mismatch, empty input or multiplicity < 1.
  Arrangement(std::size_t dim, std::vector<RationalVector> forms,
              std::vector<long> multiplicities = {}, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return forms_.size(); }
  const RationalVector& form(std::size_t i) const { return forms_[i]; }
  const std::vector<RationalVector>& forms() const { return forms_; }
  const std::vector<long>& multiplicities() const { return mult_; }
  const std::vector<std::string>& labels() const { return labels_; }
  long degree() const;

  Arrangement with_multiplicities(std::vector<long> b) const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

private:
  std::size_t dim_;
  std::vector<RationalVector> forms_;
  std::vector<long> mult_;
  std::vector<std::string> labels_;
};

bool proportional(const RationalVector& a, const RationalVector& b);

struct Edge {
  IndexSet hyperplanes;
  std::size_t codim = 0;
  std::vector<RationalVector> basis;  // reduced echelon basis of the normals' span

  friend bool operator==(const Edge& a, const Edge& b) { return a.hyperplanes == b.hyperplanes; }
};

class EdgePoset {
public:
  explicit EdgePoset(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }
  std::optional<std::size_t> find(const IndexSet& hyperplanes) const;
  // Edge i lies inside edge j as a subspace (hyperplane sets reversed).
  bool leq(std::size_t i, std::size_t j) const;
  // Index of the edge of largest codimension (the common intersection).
  std::size_t top() const;
  std::size_t max_codim() const;

private:
  std::vector<Edge> edges_;
  std::map<IndexSet, std::size_t> index_;
};

EdgePoset build_edge_poset(const Arrangement& a);

struct Classification {
  bool central = true;
  bool essential = false;
  bool decomposable = false;
};

Classification classify(const Arrangement& a);

// Connected components of the linear matroid of the given normals.
std::vector<IndexSet> matroid_components(const std::vector<RationalVector>& normals,
                                         std::size_t dim);

bool is_decomposable(const std::vector<RationalVector>& normals, std::size_t dim);

std::vector<Edge> dense_edges(const Arrangement& a, const EdgePoset& poset);
std::vector<Edge> dense_edges(const Arrangement& a);

// Normals of the hyperplanes through w in coordinates of their span.
Arrangement localize(const Arrangement& a, const Edge& w);

}  // namespace arrzeta
