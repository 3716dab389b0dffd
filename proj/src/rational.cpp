#include "arrzeta/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace arrzeta {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

static_assert(sizeof(long) == sizeof(long long), "LP64 expected");

Rational::Rational(long long v) : q_(static_cast<long>(v)) {}

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
  if (q_.get_den() == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0)
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rational(n, d);
}

long double Rational::to_long_double() const {
  Integer n = q_.get_num(), d = q_.get_den();
  long e = 0;
  const std::size_t limit = 60;
  std::size_t nb = mpz_sizeinbase(n.get_mpz_t(), 2);
  std::size_t db = mpz_sizeinbase(d.get_mpz_t(), 2);
  if (nb > limit) {
    mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), nb - limit);
    e += static_cast<long>(nb - limit);
  }
  if (db > limit) {
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), db - limit);
    e -= static_cast<long>(db - limit);
  }
  long double ln = static_cast<long double>(n.get_si());
  long double ld = static_cast<long double>(d.get_si());
  return std::ldexp(ln / ld, static_cast<int>(e));
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h1 = mpz_get_ui(q_.get_num_mpz_t());
  std::size_t h2 = mpz_get_ui(q_.get_den_mpz_t());
  return h1 * 1000003u ^ (h2 + static_cast<std::size_t>(sgn(q_) + 1));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Integer floor(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return r;
}

Integer lcm_of_denominators(const Rational* first, const Rational* last) {
  Integer m = 1;
  for (; first != last; ++first) {
    Integer den = first->denominator();
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
  }
  return m;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer exceeds 64 bits");
  return z.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace arrzeta
