#include "arrzeta/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace arrzeta {

bool proportional(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) return false;
  std::size_t p = 0;
  while (p < a.size() && a[p].is_zero()) ++p;
  if (p == a.size() || b[p].is_zero()) return false;
  const Rational f = b[p] / a[p];
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] * f != b[j]) return false;
  return true;
}

Arrangement::Arrangement(std::size_t dim, std::vector<RationalVector> forms,
                         std::vector<long> multiplicities, std::vector<std::string> labels)
    : dim_(dim), forms_(std::move(forms)), mult_(std::move(multiplicities)),
      labels_(std::move(labels)) {
  if (dim_ == 0) throw std::invalid_argument("dimension must be positive");
  if (forms_.empty()) throw std::invalid_argument("arrangement needs at least one hyperplane");
  if (mult_.empty()) mult_.assign(forms_.size(), 1);
  if (labels_.empty()) labels_.assign(forms_.size(), "");
  if (mult_.size() != forms_.size() || labels_.size() != forms_.size())
    throw std::invalid_argument("multiplicity or label count does not match hyperplanes");
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (forms_[i].size() != dim_)
      throw std::invalid_argument("hyperplane " + std::to_string(i + 1) + ": dimension mismatch");
    if (std::all_of(forms_[i].begin(), forms_[i].end(), [](const Rational& x) { return x.is_zero(); }))
      throw std::invalid_argument("hyperplane " + std::to_string(i + 1) + ": zero form");
    if (mult_[i] < 1)
      throw std::invalid_argument("hyperplane " + std::to_string(i + 1) + ": multiplicity < 1");
    for (std::size_t j = 0; j < i; ++j)
      if (proportional(forms_[j], forms_[i]))
        throw std::invalid_argument("hyperplanes " + std::to_string(j + 1) + " and " +
                                    std::to_string(i + 1) + " coincide");
  }
}

long Arrangement::degree() const { return std::accumulate(mult_.begin(), mult_.end(), 0L); }

Arrangement Arrangement::with_multiplicities(std::vector<long> b) const {
  return Arrangement(dim_, forms_, std::move(b), labels_);
}

EdgePoset::EdgePoset(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.codim != b.codim ? a.codim < b.codim : a.hyperplanes < b.hyperplanes;
  });
  for (std::size_t i = 0; i < edges_.size(); ++i) index_[edges_[i].hyperplanes] = i;
}

std::optional<std::size_t> EdgePoset::find(const IndexSet& hyperplanes) const {
  auto it = index_.find(hyperplanes);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool EdgePoset::leq(std::size_t i, std::size_t j) const {
  const auto& a = edges_[i].hyperplanes;
  const auto& b = edges_[j].hyperplanes;
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t EdgePoset::top() const { return edges_.size() - 1; }

std::size_t EdgePoset::max_codim() const { return edges_.back().codim; }

namespace {

Edge make_edge(const Arrangement& a, const RowSpace& span) {
  Edge e;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (span.contains(a.form(i))) e.hyperplanes.push_back(i);
  e.codim = span.rank();
  e.basis = span.basis();
  return e;
}

}  // namespace

EdgePoset build_edge_poset(const Arrangement& a) {
  std::vector<Edge> edges;
  std::set<IndexSet> seen;
  std::deque<RowSpace> queue;
  for (std::size_t i = 0; i < a.size(); ++i) {
    RowSpace s(a.dim());
    s.insert(a.form(i));
    Edge e = make_edge(a, s);
    if (seen.insert(e.hyperplanes).second) {
      edges.push_back(e);
      queue.push_back(std::move(s));
    }
  }
  while (!queue.empty()) {
    RowSpace s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (s.contains(a.form(i))) continue;
      RowSpace t = s;
      t.insert(a.form(i));
      Edge e = make_edge(a, t);
      if (seen.insert(e.hyperplanes).second) {
        edges.push_back(e);
        queue.push_back(std::move(t));
      }
    }
  }
  return EdgePoset(std::move(edges));
}

std::vector<IndexSet> matroid_components(const std::vector<RationalVector>& normals,
                                         std::size_t dim) {
  const std::size_t r = normals.size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Greedy basis; each dependent element joins the support of its fundamental circuit.
  RowSpace span(dim);
  std::vector<std::size_t> basis;
  std::vector<RationalVector> basis_vectors;
  for (std::size_t i = 0; i < r; ++i) {
    if (span.insert(normals[i])) {
      basis.push_back(i);
      basis_vectors.push_back(normals[i]);
      continue;
    }
    // Solve normals[i] = sum x_k basis_k exactly.
    const std::size_t k = basis.size();
    RationalMatrix m(dim, k + 1);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t c = 0; c < k; ++c) m(j, c) = basis_vectors[c][j];
      m(j, k) = normals[i][j];
    }
    auto red = rref(m);
    for (std::size_t row = 0; row < red.rank; ++row) {
      const std::size_t c = red.pivots[row];
      if (c < k && !red.reduced(row, k).is_zero()) parent[root(basis[c])] = root(i);
    }
  }
  std::map<std::size_t, IndexSet> groups;
  for (std::size_t i = 0; i < r; ++i) groups[root(i)].push_back(i);
  std::vector<IndexSet> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_decomposable(const std::vector<RationalVector>& normals, std::size_t dim) {
  return matroid_components(normals, dim).size() >= 2;
}

Classification classify(const Arrangement& a) {
  Classification c;
  c.central = true;
  c.essential = rank(a.forms(), a.dim()) == a.dim();
  c.decomposable = is_decomposable(a.forms(), a.dim());
  return c;
}

std::vector<Edge> dense_edges(const Arrangement& a, const EdgePoset& poset) {
  std::vector<Edge> out;
  for (const auto& e : poset.edges()) {
    std::vector<RationalVector> normals;
    for (auto i : e.hyperplanes) normals.push_back(a.form(i));
    if (!is_decomposable(normals, a.dim())) out.push_back(e);
  }
  return out;
}

std::vector<Edge> dense_edges(const Arrangement& a) { return dense_edges(a, build_edge_poset(a)); }

Arrangement localize(const Arrangement& a, const Edge& w) {
  if (w.hyperplanes.empty()) throw std::invalid_argument("not an edge of the arrangement");
  for (auto i : w.hyperplanes)
    if (i >= a.size()) throw std::invalid_argument("not an edge of the arrangement");
  RowSpace span(a.dim());
  for (auto i : w.hyperplanes) span.insert(a.form(i));
  IndexSet closure;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (span.contains(a.form(i))) closure.push_back(i);
  if (closure != w.hyperplanes) throw std::invalid_argument("not an edge of the arrangement");
  std::vector<RationalVector> forms;
  std::vector<long> mult;
  std::vector<std::string> labels;
  for (auto i : w.hyperplanes) {
    forms.push_back(span.coordinates(a.form(i)));
    mult.push_back(a.multiplicities()[i]);
    labels.push_back(a.labels()[i]);
  }
  return Arrangement(span.rank(), std::move(forms), std::move(mult), std::move(labels));
}

}  // namespace arrzeta
