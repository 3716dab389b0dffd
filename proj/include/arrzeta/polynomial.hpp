#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrzeta/error.hpp"
#include "arrzeta/rational.hpp"

namespace arrzeta {

// Univariate polynomial in s, coefficients stored lowest degree first.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(Rational c);
  explicit Polynomial(std::vector<Rational> coeffs);
  // s - root
  static Polynomial linear_root(const Rational& root);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& s) const;
  double eval(double s) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // Quotient and remainder; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  // Integer-coefficient, positive-leading, content-free multiple.
  std::vector<Integer> primitive_integer() const;

  // Dense string such as "-s+2" or "3s^2+5s+2".
  std::string str(const std::string& var = "s") const;

private:
  void trim();
  std::vector<Rational> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial pow(const Polynomial& p, unsigned k);

struct RationalRoot {
  Rational root;
  unsigned multiplicity;
};

struct RootExtraction {
  std::vector<RationalRoot> roots;  // sorted descending
  Polynomial remainder;             // monic factor without rational roots
};

// Rational roots with multiplicity via the rational root theorem and exact deflation.
RootExtraction rational_roots(const Polynomial& p);

class NonRationalPoleError : public Error {
public:
  NonRationalPoleError(std::vector<RationalRoot> found, Polynomial factor)
      : Error("non-rational pole: irreducible factor " + factor.str()),
        found_(std::move(found)), factor_(std::move(factor)) {}
  const std::vector<RationalRoot>& found() const { return found_; }
  const Polynomial& factor() const { return factor_; }

private:
  std::vector<RationalRoot> found_;
  Polynomial factor_;
};

// Reduced ratio with monic denominator.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Rational(1)) {}
  RationalFunction(Rational c) : num_(c), den_(Rational(1)) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(Rational(1)) {}

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  // Throws std::domain_error at a pole.
  Rational operator()(const Rational& s) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  // Numerator over a product of primitive integer linear factors when possible,
  // e.g. "(-s+2)/((3s+2)(s+1))".
  std::string str(const std::string& var = "s") const;

  friend RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den);

private:
  Polynomial num_, den_;
};

RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den);

struct Pole {
  Rational pole;
  unsigned order;
  std::optional<Rational> residue;  // set for simple poles
};

// Sorted descending. Throws NonRationalPoleError.
std::vector<Pole> ratfun_poles(const RationalFunction& f);

}  // namespace arrzeta
