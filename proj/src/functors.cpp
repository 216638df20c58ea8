#include "gta/functors.hpp"

#include <algorithm>
#include <map>

namespace gta {

namespace {

struct Leg {
  int comp;     // component index in the parent
  int special;  // parent special object at the lambda end
  int other;    // parent object at the other end
  int degree;
};

// X-side (toward target) or Y-side legs ending at specials of weight lambda.
std::vector<Leg> legs(const CartanAlgebra& c, bool x_side) {
  const auto& A = *c.parent;
  std::vector<Leg> out;
  for (int k = 0; k < A.num_components(); ++k) {
    const auto& comp = A.component(k);
    bool unit = comp.kind == CompKind::Unit;
    if (!(unit || comp.kind == (x_side ? CompKind::X : CompKind::Y))) continue;
    int s = x_side ? comp.from : comp.to;
    if (!A.special(s) || A.object(s).weight != c.weight) continue;
    out.push_back({k, s, x_side ? comp.to : comp.from, comp.degree});
  }
  return out;
}

int cartan_element(const CartanAlgebra& c, int h_comp) {
  int b = c.alg->basis_index(c.parent->component(h_comp).id);
  if (b < 0) throw CutoffExceeded("H element " + c.parent->component(h_comp).id + " is not in the Cartan algebra");
  return b;
}

}  // namespace

GradedModule standardize(const CartanAlgebra& c, const GradedModule& vbar, const std::string& name) {
  const auto& A = *c.parent;
  if (vbar.window().bounded_lo()) throw std::invalid_argument("j_! needs a module known in all low degrees");
  auto xs = legs(c, true);
  if (vbar.size() == 0) {
    GradedModule m(c.parent, name, {});
    m.finalize();
    return m;
  }
  int x_min = 0;
  for (auto& x : xs) x_min = std::min(x_min, x.degree);
  const int v_min = vbar.min_degree();
  long hi = static_cast<long>(A.cutoff()) + v_min;
  if (vbar.window().bounded_hi()) hi = std::min<long>(hi, static_cast<long>(vbar.window().hi) + x_min);
  if (!A.truncated() && !vbar.window().bounded_hi()) hi = kInf;
  GradedModule m(c.parent, name, {-kInf, static_cast<int>(std::min<long>(hi, kInf))});
  std::map<std::pair<int, int>, int> at;  // (leg, vbar vector) -> vector
  std::map<int, int> leg_of_comp;
  std::vector<AlgebraElement> xelem(xs.size());
  for (std::size_t l = 0; l < xs.size(); ++l) {
    leg_of_comp[xs[l].comp] = static_cast<int>(l);
    if (xs[l].degree + v_min > hi) continue;
    xelem[l] = A.component_element(xs[l].comp);
    int cs = c.cartan_object(xs[l].special);
    for (int v = 0; v < vbar.size(); ++v) {
      if (vbar.vec(v).object != cs) continue;
      int d = xs[l].degree + vbar.vec(v).degree;
      if (d > hi) continue;
      at[{static_cast<int>(l), v}] = m.add_vector(xs[l].other, d, A.component(xs[l].comp).id + "|" + vbar.vec(v).label);
    }
  }
  for (auto& [key, idx] : at) {
    auto [l, v] = key;
    const int obj = xs[l].other;
    const int deg = xs[l].degree + vbar.vec(v).degree;
    for (int g = 0; g < A.size(); ++g) {
      const auto& e = A.element(g);
      if (e.source != obj || deg + e.degree > hi) continue;
      AlgebraElement gx = A.multiply(A.basis_vector(g), xelem[l]);
      Accumulator acc;
      for (auto& [b, coef] : gx) {
        const auto& t = A.element(b);
        if (t.y < 0 || A.component(t.y).kind != CompKind::Unit) continue;
        int l2 = leg_of_comp.at(t.x);
        int h = cartan_element(c, t.h);
        SparseVec hv = vbar.act(c.alg->basis_vector(h), SparseVec{{v, A.field().one()}});
        for (auto& [w, cw] : hv) {
          auto it = at.find({l2, w});
          if (it == at.end()) throw std::logic_error("j_! image outside the computed basis");
          acc.add(it->second, coef * cw);
        }
      }
      m.set_action(g, idx, acc.take());
    }
  }
  for (auto& gen : vbar.gens) {
    SparseVec x;
    for (auto& [w, cw] : gen) {
      int s = c.parent_object(vbar.vec(w).object);
      int l = leg_of_comp.at(A.unit_component(s));
      x.emplace_back(at.at({l, w}), cw);
    }
    std::sort(x.begin(), x.end(), [](auto& p, auto& q) { return p.first < q.first; });
    m.gens.push_back(x);
  }
  m.finalize();
  return m;
}

GradedModule costandardize(const CartanAlgebra& c, const GradedModule& vbar, const std::string& name) {
  const auto& A = *c.parent;
  if (vbar.window().bounded_hi()) throw std::invalid_argument("j_* needs a module known in all high degrees");
  auto ys = legs(c, false);
  if (vbar.size() == 0) {
    GradedModule m(c.parent, name, {});
    m.finalize();
    return m;
  }
  int y_min = 0;
  for (auto& y : ys) y_min = std::min(y_min, y.degree);
  const int v_max = vbar.max_degree();
  long lo = static_cast<long>(v_max) - A.cutoff();
  if (vbar.window().bounded_lo()) lo = std::max<long>(lo, static_cast<long>(vbar.window().lo) - y_min);
  if (!A.truncated() && !vbar.window().bounded_lo()) lo = -kInf;
  GradedModule m(c.parent, name, {static_cast<int>(std::max<long>(lo, -kInf)), kInf});
  std::map<std::pair<int, int>, int> at;
  std::vector<AlgebraElement> yelem(ys.size());
  int top = -kInf;
  for (std::size_t l = 0; l < ys.size(); ++l) {
    if (v_max - ys[l].degree < lo) continue;
    yelem[l] = A.component_element(ys[l].comp);
    int cs = c.cartan_object(ys[l].special);
    for (int v = 0; v < vbar.size(); ++v) {
      if (vbar.vec(v).object != cs) continue;
      int d = vbar.vec(v).degree - ys[l].degree;
      if (d < lo) continue;
      at[{static_cast<int>(l), v}] =
          m.add_vector(ys[l].other, d, "d(" + A.component(ys[l].comp).id + "," + vbar.vec(v).label + ")");
      top = std::max(top, d);
    }
  }
  for (auto& [key, idx] : at) {
    auto [l, v] = key;
    const int obj = ys[l].other;
    const int deg = vbar.vec(v).degree - ys[l].degree;
    for (int g = 0; g < A.size(); ++g) {
      const auto& e = A.element(g);
      if (e.source != obj) continue;
      const int td = deg + e.degree;
      if (td > top || td < lo) continue;
      Accumulator acc;
      for (std::size_t l2 = 0; l2 < ys.size(); ++l2) {
        if (ys[l2].other != e.target || v_max - ys[l2].degree < td) continue;
        AlgebraElement yg = A.multiply(yelem[l2], A.basis_vector(g));
        for (auto& [b, coef] : yg) {
          const auto& t = A.element(b);
          if (t.x < 0 || A.component(t.x).kind != CompKind::Unit || t.y != ys[l].comp) continue;
          int h = cartan_element(c, t.h);
          SparseVec hv = vbar.act(c.alg->basis_vector(h), SparseVec{{v, A.field().one()}});
          for (auto& [w, cw] : hv) {
            auto it = at.find({static_cast<int>(l2), w});
            if (it == at.end()) throw std::logic_error("j_* image outside the computed basis");
            acc.add(it->second, coef * cw);
          }
        }
      }
      m.set_action(g, idx, acc.take());
    }
  }
  m.finalize();
  return m;
}

GradedModule cartan_truncate(const CartanAlgebra& c, const GradedModule& v) {
  const auto& A = *c.parent;
  for (auto& [key, block] : v.blocks()) {
    int o = key.second;
    if (A.special(o) && A.less(A.object(o).weight, c.weight) && !block.empty())
      throw WeightNotMinimal("module has weight " + A.weight(A.object(o).weight) + " below " + A.weight(c.weight));
  }
  const auto& Al = *c.alg;
  GradedModule m(c.alg, "j^" + A.weight(c.weight) + "(" + v.name() + ")", v.window());
  std::vector<int> pos(v.size(), -1);
  for (int i = 0; i < v.size(); ++i) {
    int o = v.vec(i).object;
    if (A.special(o) && A.object(o).weight == c.weight)
      pos[i] = m.add_vector(c.cartan_object(o), v.vec(i).degree, v.vec(i).label);
  }
  for (int i = 0; i < v.size(); ++i) {
    if (pos[i] < 0) continue;
    for (int h = 0; h < Al.size(); ++h) {
      int g = A.basis_index(Al.element(h).id);
      if (A.element(g).source != v.vec(i).object || !v.known(g, i)) continue;
      SparseVec img;
      for (auto& [w, cw] : v.act(g, i)) {
        if (pos[w] < 0) throw std::logic_error("H action leaves the weight space");
        img.emplace_back(pos[w], cw);
      }
      m.set_action(h, pos[i], img);
    }
  }
  for (auto& gen : v.gens) {
    SparseVec x;
    for (auto& [w, cw] : gen)
      if (pos[w] >= 0) x.emplace_back(pos[w], cw);
    if (!x.empty()) m.gens.push_back(x);
  }
  m.finalize();
  return m;
}

GradedModule dual_via(const GradedModule& v, const AlgebraPtr& target, const std::vector<SparseVec>& phi,
                      const std::string& name) {
  const auto& C = *target;
  const Window& w = v.window();
  GradedModule m(target, name, {w.bounded_hi() ? -w.hi : -kInf, w.bounded_lo() ? -w.lo : kInf});
  for (int i = 0; i < v.size(); ++i) m.add_vector(v.vec(i).object, -v.vec(i).degree, v.vec(i).label + "*");
  std::map<std::pair<int, int>, Accumulator> acts;  // (v*, g) -> image
  for (int g = 0; g < C.size(); ++g) {
    const auto& e = C.element(g);
    if (phi[g].empty()) continue;
    for (int x = 0; x < v.size(); ++x) {
      if (v.vec(x).object != e.target) continue;
      bool ok = true;
      for (auto& [b, s] : phi[g])
        if (!v.known(b, x)) ok = false;
      if (!ok) continue;
      SparseVec img = v.act(phi[g], SparseVec{{x, C.field().one()}});
      for (auto& [y, cy] : img) acts[{y, g}].add(x, cy);
    }
  }
  for (auto& [key, acc] : acts) m.set_action(key.second, key.first, acc.take());
  m.finalize();
  return m;
}

GradedModule dualize(const GradedModule& v, const AlgebraPtr& op) {
  auto idx = opposite_index(*op, v.algebra());
  std::vector<SparseVec> phi(op->size());
  for (int g = 0; g < op->size(); ++g)
    if (idx[g] >= 0) phi[g] = v.algebra().basis_vector(idx[g]);
  return dual_via(v, op, phi, v.name() + "*");
}

Tau make_tau(const TriangularAlgebra& a, const std::vector<std::pair<std::string, std::string>>& swaps) {
  std::vector<int> comp(a.num_components());
  for (int k = 0; k < a.num_components(); ++k) comp[k] = k;
  for (auto& [x, y] : swaps) {
    int i = a.component_index(x), j = a.component_index(y);
    if (i < 0) throw IntegrityError(x, "tau names an undeclared element");
    if (j < 0) throw IntegrityError(y, "tau names an undeclared element");
    comp[i] = j;
    comp[j] = i;
  }
  for (int k = 0; k < a.num_components(); ++k) {
    const auto &c = a.component(k), &d = a.component(comp[k]);
    if (c.from != d.to || c.to != d.from || c.degree != d.degree)
      throw NotAntiAutomorphism("tau(" + c.id + ") = " + d.id + " does not reverse endpoints and keep the degree");
    bool kinds = (c.kind == CompKind::X && d.kind == CompKind::Y) || (c.kind == CompKind::Y && d.kind == CompKind::X) ||
                 (c.kind != CompKind::X && c.kind != CompKind::Y && d.kind != CompKind::X && d.kind != CompKind::Y);
    if (!kinds) throw NotAntiAutomorphism("tau(" + c.id + ") = " + d.id + " does not swap X and Y");
  }
  Tau t;
  t.image.resize(a.size());
  for (int b = 0; b < a.size(); ++b) {
    const auto& e = a.element(b);
    if (e.x < 0 || e.h < 0 || e.y < 0) throw NotAntiAutomorphism("element " + e.id + " has undeclared factors");
    AlgebraElement img = a.multiply(a.multiply(a.component_element(comp[e.y]), a.component_element(comp[e.h])),
                                    a.component_element(comp[e.x]));
    t.image[b] = img;
  }
  auto apply = [&](const SparseVec& x) {
    Accumulator acc;
    for (auto& [b, s] : x) acc.add(t.image[b], s);
    return acc.take();
  };
  for (int o = 0; o < a.num_objects(); ++o)
    if (!sparse_equal(apply(a.unit(o)), a.unit(o)))
      throw NotAntiAutomorphism("tau moves the unit of " + a.object(o).name);
  for (int b = 0; b < a.size(); ++b)
    if (!sparse_equal(apply(t.image[b]), a.basis_vector(b)))
      throw NotAntiAutomorphism("tau is not an involution on " + a.element(b).id);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (a.element(i).source != a.element(j).target) continue;
      const SparseVec* p = a.product(i, j);
      if (!p) continue;
      if (!sparse_equal(apply(*p), a.multiply(t.image[j], t.image[i])))
        throw NotAntiAutomorphism("tau(" + a.element(i).id + "*" + a.element(j).id + ") != tau(" + a.element(j).id +
                                  ")*tau(" + a.element(i).id + ")");
    }
  return t;
}

GradedModule tau_dualize(const GradedModule& v, const Tau& t) {
  return dual_via(v, v.algebra_ptr(), t.image, v.name() + "^tau");
}

}  // namespace gta
