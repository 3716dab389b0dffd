#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace arrzeta {

using Integer = mpz_class;

// Exact rational in lowest terms with positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v);
  Rational(unsigned v) : q_(v) {}
  Rational(unsigned long v) : q_(v) {}
  Rational(const Integer& v) : q_(v) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q);

  // Accepts "p", "p/q", with optional sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }
  long double to_long_double() const;
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

private:
  mpq_class q_;
};

Rational abs(const Rational& x);
// Largest integer not exceeding x.
Integer floor(const Rational& x);
Integer lcm_of_denominators(const Rational* first, const Rational* last);
// Throws std::overflow_error if the value does not fit.
std::int64_t to_int64(const Integer& z);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace arrzeta

template <>
struct std::hash<arrzeta::Rational> {
  std::size_t operator()(const arrzeta::Rational& x) const { return x.hash(); }
};
