#include <doctest.h>

#include "gta/corpus.hpp"
#include "oracles.hpp"

using namespace gta;

namespace {
std::string failing(const VerificationReport& r) {
  std::string s;
  for (auto& a : r.axioms)
    if (!a.pass) s += a.axiom + ": " + (a.failures.empty() ? "" : a.failures[0]) + "\n";
  return s;
}

std::map<int, int> degree_dims(const TriangularAlgebra& a, int top) {
  std::map<int, int> d;
  for (int b = 0; b < a.size(); ++b)
    if (a.element(b).degree <= top) d[a.element(b).degree]++;
  return d;
}

std::map<int, int> clip(std::map<int, int> d, int top) {
  for (auto it = d.begin(); it != d.end();) it = it->first > top ? d.erase(it) : std::next(it);
  return d;
}
}  // namespace

TEST_CASE("corpus algebras satisfy the axioms") {
  for (int D : {4, 8, 16})
    for (auto& name : corpus_names()) {
      auto a = make_corpus(name, D);
      auto r = verify_axioms(*a);
      INFO(name << " D=" << D << "\n" << failing(r));
      CHECK(r.pass());
    }
}

TEST_CASE("mutants fail the named axiom") {
  for (auto& m : make_mutants(8)) {
    auto r = verify_axioms(*m.algebra);
    INFO(m.name << "\n" << failing(r));
    REQUIRE(r.find(m.axiom));
    CHECK_FALSE(r.find(m.axiom)->pass);
  }
}

TEST_CASE("restricted basis of the upper quotient matches the quotient by the ideal") {
  const int D = 16;
  auto e1 = make_E1(D);
  oracle::E1Model model(D);
  for (int l = 0; l < e1->num_weights(); ++l) {
    auto up = upper_set_of(*e1, l);
    auto q = quotient_upper_set(*e1, up);
    auto expected = model.upper_quotient_dims(l);
    INFO("lambda " << e1->weight(l));
    CHECK(degree_dims(*q, D) == expected);
    CHECK(ideal_quotient_dims(*e1, up) == expected);
  }
  auto nh = make_nilhecke2(D);
  const int top = D + std::min(0, nh->min_degree());
  auto up = upper_set_of(*nh, 0);
  auto expected = clip(oracle::nilhecke2_dims(D), top);
  CHECK(degree_dims(*quotient_upper_set(*nh, up), top) == expected);
  CHECK(ideal_quotient_dims(*nh, up) == expected);
}
