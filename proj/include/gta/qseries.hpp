#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <json.hpp>

namespace gta {

// DOWN lives in N((q^-1)), UP in N((q)), POLY in N[q,q^-1].
enum class Direction { Down, Up, Poly };

struct IncompatibleDirections : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyWindow : std::domain_error {
  using std::domain_error::domain_error;
};
struct WindowExceedsKnowledge : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct NegativeCoefficient : std::domain_error {
  using std::domain_error::domain_error;
};

// Truncated one-directional Laurent series. For DOWN the coefficients of
// q^e are known for e >= -trunc; for UP for e <= trunc; POLY is exact.
template <class Coef>
class Series {
 public:
  using coef_type = Coef;

  Series() = default;
  Series(Direction d, int trunc = 0) : dir_(d), trunc_(d == Direction::Poly ? 0 : trunc) {}

  static Series monomial(int e, Coef c = 1) {
    Series s(Direction::Poly);
    s.set(e, c);
    return s;
  }
  static Series one() { return monomial(0, 1); }
  static Series zero() { return Series(Direction::Poly); }

  Direction direction() const { return dir_; }
  int trunc() const { return trunc_; }
  const std::map<int, Coef>& terms() const { return terms_; }

  bool known(int e) const {
    switch (dir_) {
      case Direction::Down: return e >= -trunc_;
      case Direction::Up: return e <= trunc_;
      default: return true;
    }
  }

  Coef operator[](int e) const {
    if (!known(e)) throw WindowExceedsKnowledge("coefficient of q^" + std::to_string(e) + " is outside the window");
    auto it = terms_.find(e);
    return it == terms_.end() ? Coef(0) : it->second;
  }

  // Terms outside the window are dropped silently; callers set only known exponents.
  void set(int e, Coef c) {
    if (!known(e)) return;
    if (c == 0)
      terms_.erase(e);
    else
      terms_[e] = c;
  }
  void add_to(int e, Coef c) { set(e, (known(e) ? (*this)[e] : Coef(0)) + c); }

  // Largest exponent that may carry a nonzero coefficient (DOWN), smallest (UP).
  int extreme() const {
    if (dir_ == Direction::Down) return terms_.empty() ? -trunc_ - 1 : terms_.rbegin()->first;
    if (dir_ == Direction::Up) return terms_.empty() ? trunc_ + 1 : terms_.begin()->first;
    throw std::logic_error("extreme of a polynomial");
  }

  Series with_trunc(Direction d, int trunc) const {
    Series s(d, trunc);
    for (auto& [e, c] : terms_) s.set(e, c);
    return s;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.dir_ == b.dir_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  Direction dir_ = Direction::Poly;
  int trunc_ = 0;
  std::map<int, Coef> terms_;
};

using QSeries = Series<std::uint64_t>;
using SignedSeries = Series<std::int64_t>;

namespace detail {
template <class C>
Direction combine(const Series<C>& a, const Series<C>& b) {
  if (a.direction() == Direction::Poly) return b.direction();
  if (b.direction() == Direction::Poly) return a.direction();
  if (a.direction() != b.direction()) throw IncompatibleDirections("cannot combine DOWN and UP series");
  return a.direction();
}
}  // namespace detail

template <class C>
Series<C> operator+(const Series<C>& a, const Series<C>& b) {
  Direction d = detail::combine(a, b);
  int t = 0;
  if (d != Direction::Poly) {
    t = INT_MAX;
    if (a.direction() != Direction::Poly) t = std::min(t, a.trunc());
    if (b.direction() != Direction::Poly) t = std::min(t, b.trunc());
  }
  Series<C> s(d, t);
  for (auto& [e, c] : a.terms()) s.add_to(e, c);
  for (auto& [e, c] : b.terms()) s.add_to(e, c);
  return s;
}

template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b) {
  Direction d = detail::combine(a, b);
  if (d == Direction::Poly) {
    Series<C> s(Direction::Poly);
    for (auto& [e1, c1] : a.terms())
      for (auto& [e2, c2] : b.terms()) s.add_to(e1 + e2, c1 * c2);
    return s;
  }
  // Work in DOWN orientation; UP is handled by negating exponents.
  const bool up = d == Direction::Up;
  auto hi = [&](const Series<C>& s) {
    if (s.direction() == Direction::Poly) {
      if (s.terms().empty()) return INT_MIN / 4;
      return up ? -s.terms().begin()->first : s.terms().rbegin()->first;
    }
    return up ? -s.extreme() : s.extreme();
  };
  const bool ap = a.direction() == Direction::Poly, bp = b.direction() == Direction::Poly;
  if ((ap && a.terms().empty()) || (bp && b.terms().empty())) return Series<C>(d, INT_MAX / 4);
  long t = LONG_MAX;
  if (!ap) t = std::min<long>(t, static_cast<long>(a.trunc()) - hi(b));
  if (!bp) t = std::min<long>(t, static_cast<long>(b.trunc()) - hi(a));
  long top = static_cast<long>(hi(a)) + hi(b);
  if (t < -top && !a.terms().empty() && !b.terms().empty()) throw EmptyWindow("product has no known coefficients");
  Series<C> s(d, static_cast<int>(t));
  for (auto& [e1, c1] : a.terms())
    for (auto& [e2, c2] : b.terms()) s.add_to(e1 + e2, c1 * c2);
  return s;
}

template <class C>
Series<C> bar(const Series<C>& f) {
  Direction d = f.direction() == Direction::Down ? Direction::Up
                : f.direction() == Direction::Up ? Direction::Down
                                                  : Direction::Poly;
  Series<C> s(d, f.trunc());
  for (auto& [e, c] : f.terms()) s.set(-e, c);
  return s;
}

// True iff coefficients agree for all exponents in [-w, w].
template <class C>
bool eq_window(const Series<C>& a, const Series<C>& b, int w) {
  for (int e = -w; e <= w; ++e)
    if (!a.known(e) || !b.known(e))
      throw WindowExceedsKnowledge("window " + std::to_string(w) + " exceeds series knowledge");
  for (int e = -w; e <= w; ++e)
    if (a[e] != b[e]) return false;
  return true;
}

// Largest symmetric window on which both series are known.
template <class C>
int common_window(const Series<C>& a, const Series<C>& b) {
  int w = INT_MAX / 4;
  for (auto* s : {&a, &b})
    if (s->direction() != Direction::Poly) w = std::min(w, s->trunc());
  return w;
}

SignedSeries to_signed(const QSeries& s);
QSeries to_natural(const SignedSeries& s);
SignedSeries operator-(const SignedSeries& a, const SignedSeries& b);

std::string to_string(Direction d);
std::string to_text(const QSeries& s);
std::string to_text(const SignedSeries& s);
nlohmann::ordered_json to_json(const QSeries& s);

}  // namespace gta
