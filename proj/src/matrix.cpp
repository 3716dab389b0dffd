#include "arrzeta/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace arrzeta {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

RrefResult rref(const RationalMatrix& m) {
  RrefResult out{0, m, {}, {}};
  RationalMatrix& a = out.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Rational inv = Rational(1) / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : out.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < out.pivots.size(); ++i) v[out.pivots[i]] = -a(i, f);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return RowSpace(rows, cols).rank();
}

bool is_rref(const RationalMatrix& m) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false, first = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t c = 0;
    while (c < m.cols() && m(i, c).is_zero()) ++c;
    if (c == m.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (!first && c <= last_pivot) return false;
    if (m(i, c) != 1) return false;
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (k != i && !m(k, c).is_zero()) return false;
    last_pivot = c;
    first = false;
  }
  return true;
}

RowSpace::RowSpace(const std::vector<RationalVector>& vectors, std::size_t dim)
    : dim_(dim) {
  for (const auto& v : vectors) insert(v);
}

RationalVector RowSpace::reduce(RationalVector v) const {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!basis_[k][j].is_zero()) v[j] -= f * basis_[k][j];
  }
  return v;
}

bool RowSpace::contains(const RationalVector& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); });
}

bool RowSpace::insert(const RationalVector& v) {
  auto r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  Rational inv = Rational(1) / r[p];
  for (auto& x : r) x *= inv;
  for (auto& b : basis_) {
    const Rational f = b[p];
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (!r[j].is_zero()) b[j] -= f * r[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  basis_.insert(basis_.begin() + pos, std::move(r));
  return true;
}

RationalVector RowSpace::coordinates(const RationalVector& v) const {
  if (!contains(v)) throw std::invalid_argument("vector outside row space");
  RationalVector c(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

}  // namespace arrzeta
