#pragma once

#include <cstddef>
#include <vector>

#include "arrzeta/rational.hpp"

namespace arrzeta {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
public:
  // Throws std::invalid_argument for an empty shape.
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  RationalVector row(std::size_t i) const;
  RationalVector operator*(const RationalVector& v) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

struct RrefResult {
  std::size_t rank = 0;
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
  std::vector<RationalVector> nullspace;
};

RrefResult rref(const RationalMatrix& m);

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t cols);

bool is_rref(const RationalMatrix& m);

// Row space of a set of vectors, held as a reduced echelon basis.
class RowSpace {
public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}
  RowSpace(const std::vector<RationalVector>& vectors, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<RationalVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const RationalVector& v) const;
  // Returns true if v was independent and has been added.
  bool insert(const RationalVector& v);
  // Coordinates of v in the basis; requires contains(v).
  RationalVector coordinates(const RationalVector& v) const;

private:
  RationalVector reduce(RationalVector v) const;

  std::size_t dim_;
  std::vector<RationalVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace arrzeta
