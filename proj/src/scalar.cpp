#include "gta/scalar.hpp"

#include <cctype>

namespace gta {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar::Scalar(const mpq_class& q, unsigned long p) : v_(q), p_(p) {
  v_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class m(p_);
  mpz_class num = v_.get_num() % m;
  mpz_class den = v_.get_den() % m;
  if (den == 0) throw std::domain_error("denominator divisible by p");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * inv) % m;
  if (r < 0) r += m;
  v_ = mpq_class(r);
}

void Scalar::adopt(unsigned long p) {
  if (p == p_ || p == 0) return;
  if (p_ != 0) throw std::domain_error("mixing scalars over different primes");
  p_ = p;
  reduce();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.p_ != p_) {
    if (p_ == 0) {
      adopt(o.p_);
    } else {
      return *this += Scalar(o.v_, p_);
    }
  }
  v_ += o.v_;
  if (p_) reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.p_ != p_) {
    if (p_ == 0) {
      adopt(o.p_);
    } else {
      return *this *= Scalar(o.v_, p_);
    }
  }
  v_ *= o.v_;
  if (p_) reduce();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -r.v_;
  r.reduce();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r = *this;
  r.v_ = 1 / r.v_;
  r.reduce();
  return r;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar r(mpq_class(1), p_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.v_ == b.v_;
  if (a.p_ == 0) return Scalar(a.v_, b.p_).v_ == b.v_;
  if (b.p_ == 0) return Scalar(b.v_, a.p_).v_ == a.v_;
  return false;
}

std::string Scalar::str() const { return v_.get_str(); }

Scalar Field::parse(std::string_view text) const {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  if (i == s.size()) throw std::invalid_argument("bad number '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] == '/' && !slash && k > i && k + 1 < s.size()) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("bad number '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  mpq_class q(s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return Scalar(q, p);
}

std::string Field::str() const { return p == 0 ? "rational" : "fp:" + std::to_string(p); }

Field Field::from_string(std::string_view text) {
  if (text == "rational" || text == "Q") return {};
  std::string_view t = text;
  if (t.rfind("fp:", 0) == 0)
    t.remove_prefix(3);
  else if (t.rfind("fp ", 0) == 0)
    t.remove_prefix(3);
  else
    throw std::invalid_argument("unknown field '" + std::string(text) + "'");
  unsigned long p = 0;
  for (char c : t) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad prime '" + std::string(t) + "'");
    p = p * 10 + (c - '0');
  }
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return Field{p};
}

}  // namespace gta
