#include <doctest.h>

#include "gta/qseries.hpp"

using namespace gta;

namespace {

QSeries down(std::map<int, std::uint64_t> terms, int trunc) {
  QSeries s(Direction::Down, trunc);
  for (auto& [e, c] : terms) s.set(e, c);
  return s;
}

// q^-1 + q^-3 + ... known for exponents >= -trunc
QSeries odd_geometric(int trunc) {
  QSeries s(Direction::Down, trunc);
  for (int e = -1; e >= -trunc; e -= 2) s.set(e, 1);
  return s;
}

}  // namespace

TEST_CASE("addition and multiplication") {
  QSeries a = QSeries::one() + QSeries::monomial(-2);
  CHECK(to_text(a + QSeries::monomial(-2)) == "1 + 2*q^-2");

  QSeries p = QSeries::monomial(-1) * odd_geometric(6);
  CHECK(p.direction() == Direction::Down);
  CHECK(p[-2] == 1);
  CHECK(p[-4] == 1);
  CHECK(p[-6] == 1);
  // a shifted series knows one more coefficient than the window it came from
  CHECK(p.trunc() == 7);
  CHECK(p[-7] == 0);

  QSeries f = odd_geometric(7);
  CHECK(f * QSeries::one() == f);
}

TEST_CASE("truncation of a product is the tightest known order") {
  QSeries f = down({{0, 1}, {-2, 1}}, 5), g = down({{0, 1}}, 3);
  QSeries h = f * g;
  CHECK(h.trunc() == 3);
  CHECK(h[-2] == 1);
  CHECK_THROWS_AS(h[-4], WindowExceedsKnowledge);
}

TEST_CASE("mixed directions are rejected") {
  QSeries up(Direction::Up, 4);
  up.set(1, 1);
  CHECK_THROWS_AS(up + odd_geometric(4), IncompatibleDirections);
  CHECK_THROWS_AS(up * odd_geometric(4), IncompatibleDirections);
  CHECK_NOTHROW(up + QSeries::monomial(2));
}

TEST_CASE("bar") {
  CHECK(bar(QSeries::monomial(1)) == QSeries::monomial(-1));
  CHECK(bar(QSeries::one()) == QSeries::one());
  QSeries up(Direction::Up, 5);
  up.set(1, 1);
  QSeries b = bar(up);
  CHECK(b.direction() == Direction::Down);
  CHECK(b.trunc() == 5);
  CHECK(b[-1] == 1);
  CHECK(bar(b) == up);
}

TEST_CASE("comparison on a window") {
  CHECK(eq_window(QSeries::one(), QSeries::one(), 10));
  CHECK_FALSE(eq_window(QSeries::one() + QSeries::monomial(-2), QSeries::one(), 10));
  CHECK(eq_window(odd_geometric(8), odd_geometric(12), 8));
  CHECK_THROWS_AS(eq_window(odd_geometric(8), odd_geometric(12), 9), WindowExceedsKnowledge);
}

TEST_CASE("text and json rendering") {
  QSeries f = down({{0, 1}, {-1, 2}}, 3);
  CHECK(to_text(f) == "1 + 2*q^-1 (+O(q^-4))");
  auto j = to_json(f);
  CHECK(j["terms"].dump() == "[[0,1],[-1,2]]");
  CHECK(j["direction"] == "down");
  CHECK(j["window"] == 3);
  CHECK(to_json(QSeries::zero())["window"].is_null());
}
