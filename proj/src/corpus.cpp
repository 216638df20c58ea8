#include "gta/corpus.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace gta {

namespace {

// Monomial E_{rc} x^p in matrices over k[x].
struct Mono {
  int r, c, p;
  auto key() const { return std::make_tuple(r, c, p); }
};

// Fills basis and products of b from images of the non-unit components.
void from_monomials(AlgebraBuilder& b, const std::map<std::string, Mono>& images) {
  b.generate_basis();
  std::map<std::string, Mono> elem;
  std::map<std::tuple<int, int, int>, std::string> back;
  for (auto& e : b.basis) {
    std::optional<Mono> m;
    for (const std::string& c : {e.x, e.h, e.y}) {
      auto it = images.find(c);
      if (it == images.end()) continue;
      if (!m) {
        m = it->second;
      } else {
        if (m->c != it->second.r) throw std::logic_error("inconsistent monomial model at " + e.id);
        m = Mono{m->r, it->second.c, m->p + it->second.p};
      }
    }
    if (!m) throw std::logic_error("basis element " + e.id + " has no image");
    elem[e.id] = *m;
    back[m->key()] = e.id;
  }
  const Scalar one = b.field.one();
  for (auto& e1 : b.basis)
    for (auto& e2 : b.basis) {
      if (e1.source != e2.target || e1.degree + e2.degree > b.cutoff) continue;
      const Mono &m1 = elem[e1.id], &m2 = elem[e2.id];
      AlgebraBuilder::Terms t;
      if (m1.c == m2.r) {
        auto it = back.find(std::make_tuple(m1.r, m2.c, m1.p + m2.p));
        if (it == back.end()) throw std::logic_error("product " + e1.id + "*" + e2.id + " leaves the basis");
        t.push_back({one, it->second});
      }
      b.set_product(e1.id, e2.id, t);
    }
  b.complete = true;
}

std::string pow_id(const std::string& base, int a) { return base + "^" + std::to_string(a); }

}  // namespace

AlgebraBuilder ground_builder(Field f) {
  AlgebraBuilder b;
  b.name = "ground";
  b.field = f;
  b.cutoff = kInf;
  b.add_object("pt", "0");
  b.add_component("e", CompKind::Idempotent, "pt", "pt", 0);
  from_monomials(b, {{"e", {0, 0, 0}}});
  return b;
}

AlgebraBuilder matrix_builder(int n, Field f) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  AlgebraBuilder b;
  b.name = "matrix" + std::to_string(n);
  b.field = f;
  b.cutoff = kInf;
  b.add_object("u", "0");
  std::map<std::string, Mono> img;
  auto id = [&](int i, int j) {
    return n < 10 ? "E" + std::to_string(i + 1) + std::to_string(j + 1)
                  : "E" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  AlgebraBuilder::Terms unit;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b.add_component(id(i, j), CompKind::H, "u", "u", 0);
      img[id(i, j)] = {i, j, 0};
      if (i == j) unit.push_back({f.one(), id(i, j)});
    }
  b.objects[0].unit = unit;
  from_monomials(b, img);
  return b;
}

AlgebraBuilder poly_builder(int cutoff, Field f) {
  AlgebraBuilder b;
  b.name = "poly";
  b.field = f;
  b.cutoff = cutoff;
  b.add_object("s", "0");
  std::map<std::string, Mono> img;
  for (int a = 0; 2 * a <= cutoff; ++a) {
    b.add_component(pow_id("x", a), a == 0 ? CompKind::Idempotent : CompKind::H, "s", "s", 2 * a);
    img[pow_id("x", a)] = {0, 0, a};
  }
  from_monomials(b, img);
  return b;
}

AlgebraBuilder e1_builder(int cutoff, Field f) {
  AlgebraBuilder b;
  b.name = "e1";
  b.field = f;
  b.cutoff = cutoff;
  b.add_object("s0", "0");
  b.add_object("s1", "1");
  b.covers.push_back({"0", "1"});
  std::map<std::string, Mono> img;
  for (int a = 0; 2 * a <= cutoff; ++a) {
    b.add_component(pow_id("x", a), a == 0 ? CompKind::Idempotent : CompKind::H, "s0", "s0", 2 * a);
    img[pow_id("x", a)] = {0, 0, a};
  }
  b.add_component("e1", CompKind::Idempotent, "s1", "s1", 0);
  img["e1"] = {1, 1, 0};
  b.add_component("xi", CompKind::X, "s0", "s1", 1);
  img["xi"] = {1, 0, 1};
  b.add_component("eta", CompKind::Y, "s1", "s0", 1);
  img["eta"] = {0, 1, 0};
  from_monomials(b, img);
  return b;
}

AlgebraBuilder e2_builder(int cutoff, Field f) {
  AlgebraBuilder b;
  b.name = "e2";
  b.field = f;
  b.cutoff = cutoff;
  b.add_object("a", "0");
  b.add_object("b", "0");
  b.add_object("c", "1");
  b.covers.push_back({"0", "1"});
  std::map<std::string, Mono> img;
  const std::string names[2] = {"a", "b"};
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      for (int p = 0; 2 * p <= cutoff; ++p) {
        std::string id = (s == t && p == 0) ? "e" + names[s] : "E" + names[s] + names[t] + "x" + std::to_string(p);
        b.add_component(id, s == t && p == 0 ? CompKind::Idempotent : CompKind::H, names[t], names[s], 2 * p);
        img[id] = {s, t, p};
      }
  b.add_component("ec", CompKind::Idempotent, "c", "c", 0);
  img["ec"] = {2, 2, 0};
  b.add_component("xi", CompKind::X, "a", "c", 1);
  img["xi"] = {2, 0, 1};
  b.add_component("eta", CompKind::Y, "c", "a", 1);
  img["eta"] = {0, 2, 0};
  from_monomials(b, img);
  return b;
}

namespace {

using Poly2 = std::map<std::pair<int, int>, Scalar>;

void add_term(Poly2& p, int a, int c, const Scalar& v) {
  auto& slot = p.try_emplace({a, c}, v - v).first->second;
  slot += v;
  if (slot.is_zero()) p.erase({a, c});
}

// (f - s f)/(x1 - x2) on the monomial x1^a x2^c.
Poly2 demazure(int a, int c, const Scalar& one) {
  Poly2 out;
  if (a == c) return out;
  int lo = std::min(a, c), n = std::abs(a - c);
  Scalar sign = a > c ? one : -one;
  for (int k = 0; k < n; ++k) add_term(out, lo + n - 1 - k, lo + k, sign);
  return out;
}

std::string nh_id(int a, int c, int eps) {
  return "x" + std::to_string(a) + "_" + std::to_string(c) + (eps ? "d" : "");
}

}  // namespace

AlgebraBuilder nilhecke2_builder(int cutoff, Field f) {
  AlgebraBuilder b;
  b.name = "nilhecke2";
  b.field = f;
  b.cutoff = cutoff;
  b.add_object("s", "0");
  struct E {
    int a, c, eps;
  };
  std::map<std::string, E> elems;
  for (int eps = 0; eps <= 1; ++eps)
    for (int n = 0; 2 * n - 2 * eps <= cutoff; ++n)
      for (int a = 0; a <= n; ++a) {
        std::string id = nh_id(a, n - a, eps);
        b.add_component(id, id == "x0_0" ? CompKind::Idempotent : CompKind::H, "s", "s", 2 * n - 2 * eps);
        elems[id] = {a, n - a, eps};
      }
  b.generate_basis();
  const Scalar one = f.one();
  for (auto& [i1, e1] : elems)
    for (auto& [i2, e2] : elems) {
      int d = 2 * (e1.a + e1.c + e2.a + e2.c) - 2 * (e1.eps + e2.eps);
      if (d > cutoff) continue;
      // x^{e1} d^{eps1} x^{e2} d^{eps2}, with d g = d(g) + s(g) d
      std::map<std::string, Scalar> out;
      auto emit = [&](int a, int c, int eps, const Scalar& v) {
        auto& slot = out.try_emplace(nh_id(a, c, eps), v - v).first->second;
        slot += v;
      };
      if (e1.eps == 0) {
        emit(e1.a + e2.a, e1.c + e2.c, e2.eps, one);
      } else {
        for (auto& [m, v] : demazure(e2.a, e2.c, one)) emit(e1.a + m.first, e1.c + m.second, e2.eps, v);
        if (e2.eps == 0) emit(e1.a + e2.c, e1.c + e2.a, 1, one);
      }
      AlgebraBuilder::Terms t;
      for (auto& [id, v] : out)
        if (!v.is_zero()) t.push_back({v, id});
      b.set_product(i1, i2, t);
    }
  b.complete = true;
  return b;
}

AlgebraPtr make_corpus(const std::string& name, int cutoff, Field f) {
  if (name == "ground") return make_ground(f);
  if (name == "poly") return make_poly(cutoff, f);
  if (name == "e1") return make_E1(cutoff, f);
  if (name == "e2") return make_E2(cutoff, f);
  if (name == "nilhecke2") return make_nilhecke2(cutoff, f);
  if (name.rfind("matrix", 0) == 0) {
    std::string n = name.substr(6);
    if (n.empty()) return make_matrix(2, f);
    try {
      return make_matrix(std::stoi(n), f);
    } catch (const std::logic_error&) {
    }
  }
  throw std::invalid_argument("unknown corpus algebra '" + name + "'");
}

std::vector<std::string> corpus_names() { return {"ground", "matrix2", "poly", "e1", "nilhecke2", "e2"}; }

std::vector<Mutant> make_mutants(int cutoff) {
  std::vector<Mutant> out;
  {
    auto b = e1_builder(cutoff);
    std::erase_if(b.comps, [](const AlgebraBuilder::Comp& c) { return c.id == "eta"; });
    b.name = "e1-no-eta";
    out.push_back({b.name, "basis", b.build()});
  }
  {
    auto b = e1_builder(cutoff);
    for (auto& e : b.basis)
      if (e.id == "xi") e.degree = 3;
    b.name = "e1-wrong-degree";
    out.push_back({b.name, "degree", b.build()});
  }
  {
    auto b = e1_builder(cutoff);
    b.covers = {{"1", "0"}};
    b.name = "e1-reversed-poset";
    out.push_back({b.name, "direction", b.build()});
  }
  {
    auto b = e1_builder(cutoff);
    b.products[{"eta", "xi"}] = {{b.field.of(2), "x^1"}};
    b.name = "e1-scaled-product";
    out.push_back({b.name, "associativity", b.build()});
  }
  {
    auto b = e1_builder(cutoff);
    b.add_component("z", CompKind::X, "s0", "s0", 2);
    b.name = "e1-extra-x";
    out.push_back({b.name, "special", b.build()});
  }
  {
    auto b = matrix_builder(2);
    b.objects[0].unit = AlgebraBuilder::Terms{{b.field.one(), "E11"}};
    b.name = "matrix2-bad-unit";
    out.push_back({b.name, "unit", b.build()});
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> e1_tau() { return {{"xi", "eta"}}; }

}  // namespace gta
