#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gta {

// An element of Q (modulus 0) or of F_p. Rationals promote to F_p when mixed
// with a modular value; two different primes never mix.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : v_(v) {}
  Scalar(int v) : v_(v) {}
  Scalar(const mpq_class& q, unsigned long p = 0);

  unsigned long modulus() const { return p_; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar inverse() const;
  Scalar pow(unsigned e) const;
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  void adopt(unsigned long p);
  void reduce();

  mpq_class v_{0};
  unsigned long p_ = 0;
};

// The ground field: Q when p == 0, else F_p.
struct Field {
  unsigned long p = 0;

  Scalar zero() const { return Scalar(mpq_class(0), p); }
  Scalar one() const { return Scalar(mpq_class(1), p); }
  Scalar of(long v) const { return Scalar(mpq_class(v), p); }
  Scalar parse(std::string_view text) const;
  std::string str() const;
  bool operator==(const Field&) const = default;

  static Field from_string(std::string_view text);
};

bool is_prime(unsigned long p);

}  // namespace gta

namespace Eigen {
template <>
struct NumTraits<gta::Scalar> : GenericNumTraits<gta::Scalar> {
  using Real = gta::Scalar;
  using NonInteger = gta::Scalar;
  using Nested = gta::Scalar;
  using Literal = gta::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
