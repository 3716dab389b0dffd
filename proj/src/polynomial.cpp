#include "arrzeta/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arrzeta {

Polynomial::Polynomial(Rational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::linear_root(const Rational& root) {
  return Polynomial(std::vector<Rational>{-root, Rational(1)});
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& s) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::eval(double s) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Polynomial p = *this;
  Rational inv = Rational(1) / leading();
  for (auto& x : p.c_) x *= inv;
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  Polynomial rem = *this;
  if (degree() < d.degree()) return {Polynomial(), rem};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree() + 1));
  const Rational lead_inv = Rational(1) / d.leading();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
    Rational f = rem.leading() * lead_inv;
    q[shift] = f;
    for (std::size_t k = 0; k < d.c_.size(); ++k) rem.c_[k + shift] -= f * d.c_[k];
    rem.trim();
  }
  return {Polynomial(std::move(q)), rem};
}

std::vector<Integer> Polynomial::primitive_integer() const {
  if (is_zero()) return {};
  Integer m = lcm_of_denominators(c_.data(), c_.data() + c_.size());
  std::vector<Integer> z(c_.size());
  Integer g = 0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    z[k] = c_[k].numerator() * (m / c_[k].denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[k].get_mpz_t());
  }
  if (z.back() < 0) g = -g;
  for (auto& x : z) x /= g;
  return z;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    std::string term;
    const bool neg = c.sign() < 0;
    Rational a = abs(c);
    if (i == 0) {
      term = a.str();
    } else {
      if (a != 1) term = a.is_integer() ? a.str() : "(" + a.str() + ")";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (neg)
      out += "-";
    else if (!out.empty())
      out += "+";
    out += term;
  }
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial r(Rational(1));
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

namespace {

// Positive divisors of |n| (n != 0).
std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::map<Integer, unsigned> factors;
  for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++factors[Integer(p)];
      n /= p;
    }
  }
  if (n > 1) {
    if (Integer(1000000) * 1000000 < n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw Error("coefficient too large for rational root search");
    ++factors[n];
  }
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

std::optional<Rational> find_rational_root(const Polynomial& p) {
  if (p.degree() < 1) return std::nullopt;
  if (p.coeff(0).is_zero()) return Rational(0);
  auto z = p.primitive_integer();
  for (const auto& num : divisors(z.front())) {
    for (const auto& den : divisors(z.back())) {
      for (int sign : {1, -1}) {
        Rational cand(num * sign, den);
        if (p(cand).is_zero()) return cand;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

RootExtraction rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  RootExtraction out;
  Polynomial rest = p.monic();
  while (auto root = find_rational_root(rest)) {
    unsigned mult = 0;
    const Polynomial lin = Polynomial::linear_root(*root);
    for (;;) {
      auto [q, r] = rest.divmod(lin);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++mult;
    }
    out.roots.push_back({*root, mult});
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const RationalRoot& a, const RationalRoot& b) { return a.root > b.root; });
  out.remainder = rest;
  return out;
}

RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("division by zero polynomial");
  RationalFunction f;
  if (num.is_zero()) return f;
  Polynomial g = gcd(num, den);
  Polynomial n = num.divmod(g).first;
  Polynomial d = den.divmod(g).first;
  const Rational lead = d.leading();
  f.num_ = n * Polynomial(Rational(1) / lead);
  f.den_ = d.monic();
  return f;
}

Rational RationalFunction::operator()(const Rational& s) const {
  Rational d = den_(s);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_(s) / d;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction f = *this;
  f.num_ = -f.num_;
  return f;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return ratfun_normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return ratfun_normalize(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw std::domain_error("division by zero polynomial");
  return ratfun_normalize(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str(const std::string& var) const {
  if (den_.degree() == 0) return num_.str(var);
  auto ex = rational_roots(den_);
  Polynomial num = num_;
  std::string den;
  std::size_t nfactors = 0;
  if (ex.remainder.degree() == 0) {
    for (const auto& [root, mult] : ex.roots) {
      Polynomial factor(std::vector<Rational>{-Rational(root.numerator()),
                                              Rational(root.denominator())});
      for (unsigned k = 0; k < mult; ++k) num *= Polynomial(Rational(root.denominator()));
      den += "(" + factor.str(var) + ")";
      if (mult > 1) den += "^" + std::to_string(mult);
      ++nfactors;
    }
  } else {
    den = "(" + den_.str(var) + ")";
    nfactors = 2;
  }
  if (nfactors > 1) den = "(" + den + ")";
  std::string n = num.str(var);
  const bool simple = num.degree() <= 0 && num.coeff(0).is_integer();
  if (!simple) n = "(" + n + ")";
  return n + "/" + den;
}

std::vector<Pole> ratfun_poles(const RationalFunction& f) {
  const Polynomial& den = f.denominator();
  if (den.degree() <= 0) return {};
  auto ex = rational_roots(den);
  if (ex.remainder.degree() > 0) throw NonRationalPoleError(ex.roots, ex.remainder);
  std::vector<Pole> out;
  for (const auto& [p, mult] : ex.roots) {
    Pole pole{p, mult, std::nullopt};
    if (mult == 1) {
      Polynomial rest = den.divmod(Polynomial::linear_root(p)).first;
      pole.residue = f.numerator()(p) / rest(p);
    }
    out.push_back(std::move(pole));
  }
  return out;
}

}  // namespace arrzeta
