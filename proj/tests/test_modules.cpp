#include <doctest.h>

#include "gta/corpus.hpp"
#include "gta/functors.hpp"
#include "oracles.hpp"

using namespace gta;

namespace {

// Compare a module character with an oracle character on the module's window,
// restricted to degrees within [-bound, bound].
std::string mismatch(const GradedModule& v, const oracle::E1Model::Char& expect, int bound) {
  const auto& a = v.algebra();
  Character c = character(v);
  std::map<std::pair<int, int>, int> got;
  for (auto& [k, n] : c) got[{a.object_index(a.object(k.first).name) == k.first ? (a.object(k.first).name == "s0" ? 0 : 1) : -1, k.second}] = n;
  std::string out;
  for (int d = -bound; d <= bound; ++d) {
    if (!v.window().contains(d)) continue;
    for (int o = 0; o < 2; ++o) {
      int g = got.count({o, d}) ? got[{o, d}] : 0;
      int e = expect.count({o, d}) ? expect.at({o, d}) : 0;
      if (g != e)
        out += "s" + std::to_string(o) + " deg " + std::to_string(d) + ": " + std::to_string(g) + " vs " +
               std::to_string(e) + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("E1 standard families match the matrix model") {
  auto a = make_E1(16);
  oracle::E1Model m(40);
  auto c0 = analyze_cartan(a, a->weight_index("0"));
  auto c1 = analyze_cartan(a, a->weight_index("1"));
  REQUIRE(c0.blocks.size() == 1);
  REQUIRE(c1.blocks.size() == 1);

  auto d0 = standardize(c0, projective_cartan(c0, 0), "D0");
  auto pd0 = standardize(c0, simple_cartan(c0, 0), "PD0");
  auto pn0 = costandardize(c0, simple_cartan(c0, 0), "PN0");
  auto n0 = costandardize(c0, injective_cartan(c0, 0), "N0");
  auto d1 = standardize(c1, projective_cartan(c1, 0), "D1");
  auto n1 = costandardize(c1, injective_cartan(c1, 0), "N1");
  CHECK(d0.window().hi >= 16);
  CHECK(n0.window().lo <= -16);
  CHECK(mismatch(d0, m.delta(0), 16) == "");
  CHECK(mismatch(pd0, m.proper_delta(0), 16) == "");
  CHECK(mismatch(pn0, m.proper_nabla(0), 16) == "");
  CHECK(mismatch(n0, m.nabla(0), 16) == "");
  CHECK(mismatch(d1, m.delta(1), 16) == "");
  CHECK(mismatch(n1, m.nabla(1), 16) == "");
  for (auto* v : {&d0, &pd0, &pn0, &n0, &d1, &n1}) {
    INFO(v->name());
    CHECK(v->check_action() == "");
  }
  // j o j_! = id
  auto back = cartan_truncate(c0, d0);
  CHECK(to_text(dim_q(back)) == to_text(dim_q(projective_cartan(c0, 0))));
  CHECK_THROWS_AS(cartan_truncate(c1, d0), WeightNotMinimal);
}

TEST_CASE("poly Cartan modules") {
  auto a = make_poly(12);
  auto c = analyze_cartan(a, 0);
  REQUIRE(c.blocks.size() == 1);
  auto p = projective_cartan(c, 0);
  auto l = simple_cartan(c, 0);
  auto i = injective_cartan(c, 0);
  CHECK(l.size() == 1);
  CHECK(p.size() == 7);
  CHECK(i.max_degree() == 0);
  for (auto& v : i.vecs()) CHECK(v.degree % 2 == 0);
  CHECK(i.check_action() == "");
}

TEST_CASE("e2 Cartan has one block with two primitive idempotents") {
  auto a = make_E2(8);
  auto c = analyze_cartan(a, a->weight_index("0"));
  REQUIRE(c.blocks.size() == 1);
  CHECK(c.blocks[0].dim == 2);
  CHECK(c.prims.size() == 2);
  CHECK(simple_cartan(c, 0).size() == 2);
}

TEST_CASE("negative Cartan degrees are rejected") {
  auto a = make_nilhecke2(8);
  CHECK_THROWS_AS(analyze_cartan(a, 0), NegativeDegreePresent);
}

TEST_CASE("nilHecke dimensions match the polynomial representation") {
  auto a = make_nilhecke2(16);
  std::map<int, int> got;
  for (int b = 0; b < a->size(); ++b) got[a->element(b).degree]++;
  CHECK(got == oracle::nilhecke2_dims(16));
}

TEST_CASE("nilHecke corner at x1 d is the symmetric polynomials") {
  // NH2 is Morita equivalent to k[e1,e2] with deg e1 = 2, deg e2 = 4; e = x1 d is a primitive idempotent.
  const int D = 16;
  auto a = make_nilhecke2(D);
  int x1d = a->basis_index("x1_0d");
  REQUIRE(x1d >= 0);
  SparseVec e = {{x1d, a->field().one()}};
  CHECK(a->multiply(e, e) == e);
  std::map<int, SparseEchelon> span;
  for (int b = 0; b < a->size(); ++b) {
    SparseVec ebe = a->multiply(a->multiply(e, {{b, a->field().one()}}), e);
    if (!ebe.empty()) span[a->element(b).degree].add(ebe);
  }
  std::map<int, int> got, want;
  for (auto& [d, s] : span)
    if (s.rank()) got[d] = s.rank();
  for (int i = 0; 2 * i <= D; ++i)
    for (int j = 0; 2 * i + 4 * j <= D; ++j) want[2 * i + 4 * j]++;
  CHECK(got == want);
  CHECK(got[0] == 1);  // local, so a single simple
}
