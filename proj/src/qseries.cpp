#include "gta/qseries.hpp"

#include <vector>

namespace gta {

SignedSeries to_signed(const QSeries& s) {
  SignedSeries r(s.direction(), s.trunc());
  for (auto& [e, c] : s.terms()) r.set(e, static_cast<std::int64_t>(c));
  return r;
}

QSeries to_natural(const SignedSeries& s) {
  QSeries r(s.direction(), s.trunc());
  for (auto& [e, c] : s.terms()) {
    if (c < 0) throw NegativeCoefficient("negative coefficient at q^" + std::to_string(e));
    r.set(e, static_cast<std::uint64_t>(c));
  }
  return r;
}

SignedSeries operator-(const SignedSeries& a, const SignedSeries& b) {
  SignedSeries nb(b.direction(), b.trunc());
  for (auto& [e, c] : b.terms()) nb.set(e, -c);
  return a + nb;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Down: return "down";
    case Direction::Up: return "up";
    default: return "poly";
  }
}

namespace {

std::string monomial(int e) {
  if (e == 1) return "q";
  return "q^" + std::to_string(e);
}

template <class C>
std::string render(const Series<C>& s) {
  std::string out;
  bool first = true;
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
    auto [e, c] = *it;
    bool neg = c < 0;
    std::uint64_t mag = neg ? static_cast<std::uint64_t>(-static_cast<std::int64_t>(c)) : static_cast<std::uint64_t>(c);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (e == 0)
      out += std::to_string(mag);
    else
      out += (mag == 1 ? "" : std::to_string(mag) + "*") + monomial(e);
  }
  if (first) out = "0";
  if (s.direction() == Direction::Down)
    out += " (+O(" + monomial(-s.trunc() - 1) + "))";
  else if (s.direction() == Direction::Up)
    out += " (+O(" + monomial(s.trunc() + 1) + "))";
  return out;
}

}  // namespace

std::string to_text(const QSeries& s) { return render(s); }
std::string to_text(const SignedSeries& s) { return render(s); }

nlohmann::ordered_json to_json(const QSeries& s) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it)
    terms.push_back(nlohmann::ordered_json::array({it->first, it->second}));
  nlohmann::ordered_json j;
  j["terms"] = terms;
  j["direction"] = to_string(s.direction());
  if (s.direction() == Direction::Poly)
    j["window"] = nullptr;
  else
    j["window"] = s.trunc();
  return j;
}

}  // namespace gta
