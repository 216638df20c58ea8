#include <doctest.h>

#include "gta/corpus.hpp"
#include "gta/format.hpp"

using namespace gta;

namespace {

// Everything a TriangularAlgebra carries, flattened to strings.
std::vector<std::string> flatten(const TriangularAlgebra& a) {
  std::vector<std::string> out;
  out.push_back("name " + a.name());
  out.push_back("field " + a.field().str());
  out.push_back("cutoff " + std::to_string(a.cutoff()) + (a.complete() ? " complete" : ""));
  for (int w = 0; w < a.num_weights(); ++w) out.push_back("weight " + a.weight(w));
  for (auto& [m, l] : a.covers()) out.push_back("cover " + a.weight(m) + "<" + a.weight(l));
  for (int i = 0; i < a.num_objects(); ++i) {
    std::string s = "object " + a.object(i).name + " " + (a.special(i) ? a.weight(a.object(i).weight) : "-") + " =";
    for (auto& [b, c] : a.unit(i)) s += " " + c.str() + "*" + a.element(b).id;
    out.push_back(s);
  }
  for (int c = 0; c < a.num_components(); ++c) {
    const auto& k = a.component(c);
    out.push_back("comp " + k.id + " " + to_string(k.kind) + " " + a.object(k.from).name + " " + a.object(k.to).name +
                  " " + std::to_string(k.degree) + " " + k.from_fine + " " + k.to_fine);
  }
  auto cid = [&](int c) { return c < 0 ? std::string("-") : a.component(c).id; };
  for (int b = 0; b < a.size(); ++b) {
    const auto& e = a.element(b);
    out.push_back("elem " + e.id + " " + a.object(e.target).name + " " + a.object(e.source).name + " " +
                  std::to_string(e.degree) + " " + cid(e.x) + " " + cid(e.h) + " " + cid(e.y));
  }
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const SparseVec* p = a.product(i, j);
      if (!p) continue;
      std::string s = "mul " + a.element(i).id + "*" + a.element(j).id + " =";
      for (auto& [b, c] : *p) s += " " + c.str() + "*" + a.element(b).id;
      out.push_back(s);
    }
  for (auto& [k, v] : a.lower_bounds())
    out.push_back("bound " + a.object(k.first).name + " " + a.object(k.second).name + " " + std::to_string(v));
  return out;
}

void check_round_trip(const TriangularAlgebra& a) {
  std::string text = export_gta(a);
  auto b = build_gta(parse_gta(text));
  INFO(a.name() << "\n" << text);
  CHECK(flatten(*b) == flatten(a));
  CHECK(export_gta(*b) == text);
}

void expect_parse_error(const std::string& text, int line, int col) {
  try {
    parse_gta(text);
    FAIL("no ParseError for\n" << text);
  } catch (const ParseError& e) {
    CHECK(e.line == line);
    CHECK(e.col == col);
  }
}

}  // namespace

TEST_CASE("corpus algebras round-trip through the text format") {
  for (int D : {4, 16})
    for (auto& name : corpus_names()) check_round_trip(*make_corpus(name, D));
  check_round_trip(*make_corpus("e1", 8, Field::from_string("fp:5")));
}

TEST_CASE("mutants round-trip and still fail verification") {
  for (auto& m : make_mutants(8)) {
    check_round_trip(*m.algebra);
    auto back = build_gta(parse_gta(export_gta(*m.algebra)));
    auto r = verify_axioms(*back);
    INFO(m.name);
    REQUIRE(r.find(m.axiom));
    CHECK_FALSE(r.find(m.axiom)->pass);
  }
}

TEST_CASE("tau survives export") {
  auto a = make_E1(6);
  auto f = parse_gta(export_gta(*a, e1_tau()));
  CHECK(f.tau == e1_tau());
}

TEST_CASE("hand-written file with generated basis") {
  const std::string text = R"(# E1 truncated at degree 4
[field]
rational
[objects]
s0
s1
[poset]
0 < 1
[special]
s0 -> 0
s1 -> 1
[basis]
x^0 IDEMPOTENT s0 s0 0
x^1 H s0 s0 2
e1 IDEMPOTENT s1 s1 0
xi X s0 s1 1
eta Y s1 s0 1
[mul complete=true]
x^1 * x^1 = 0
[cutoff]
4
)";
  auto f = parse_gta(text);
  CHECK_FALSE(f.explicit_basis);
  auto a = build_gta(f);
  CHECK(a->basis_index("xi.x^1.eta") >= 0);
  CHECK(a->basis_index("xi.eta") >= 0);
  CHECK(a->cutoff() == 4);
}

TEST_CASE("empty objects list gives the zero algebra") {
  auto a = build_gta(parse_gta("[field]\nrational\n[objects]\n"));
  CHECK(a->num_objects() == 0);
  CHECK(a->size() == 0);
  CHECK(verify_axioms(*a).pass());
}

TEST_CASE("parse errors carry line and column") {
  expect_parse_error("[field]\nrational\n[bogus]\n", 3, 2);
  expect_parse_error("s0\n", 1, 1);
  expect_parse_error("[mul colour=red]\n", 1, 6);
  expect_parse_error("[objects]\ns0\n[basis]\nxi X s0 s1 one\n", 4, 12);
  expect_parse_error("[objects]\ns0\n[basis]\nxi Q s0 s0 1\n", 4, 4);
  expect_parse_error("[objects]\ns0\n[mul]\na * b = 2*c d\n", 4, 13);
  expect_parse_error("[objects]\ns0\n[mul]\na * b = 1/0*c\n", 4, 9);
  expect_parse_error("[field]\nfp:6\n", 2, 1);
  expect_parse_error("[poset]\n0 > 1\n", 2, 3);
}

TEST_CASE("undeclared ids raise IntegrityError naming the id") {
  const std::string base = "[objects]\ns0\n[special]\ns0 -> 0\n[basis]\ne IDEMPOTENT s0 s0 0\n";
  auto id_of = [](const std::string& text) {
    try {
      parse_gta(text);
    } catch (const IntegrityError& e) {
      return e.id;
    }
    return std::string("<none>");
  };
  CHECK(id_of(base + "[mul]\ne * ghost = e\n") == "ghost");
  CHECK(id_of(base + "[mul]\ne * e = 2*phantom\n") == "phantom");
  CHECK(id_of(base + "y Y s9 s0 1\n") == "s9");
  CHECK(id_of(base + "[tau]\ne <-> nope\n") == "nope");
  CHECK(id_of("[objects]\na\n[special]\nb -> 0\n") == "b");
}
