#include "gta/gamma.hpp"

#include <algorithm>

namespace gta {

std::string GammaContext::label() const {
  std::string s = "{";
  for (int w : gamma) s += (s.size() > 1 ? "," : "") + parent->weight(w);
  return s + "}";
}

GammaContext make_gamma(const AlgebraPtr& a, const std::set<int>& gamma) {
  GammaContext g;
  g.parent = a;
  g.gamma = gamma;
  g.alg = gamma_algebra(*a, gamma);
  for (int o = 0; o < a->num_objects(); ++o)
    if (a->special(o) && gamma.count(a->object(o).weight)) g.objects.insert(o);
  return g;
}

namespace {

bool in_span(const GradedModule& m, const SpanData& s, int v) {
  auto it = s.blocks.find({m.vec(v).degree, m.vec(v).object});
  if (it == s.blocks.end()) return false;
  const auto& blk = m.block(m.vec(v).object, m.vec(v).degree);
  VecQ c = block_coords(m, blk, {{v, m.algebra().field().one()}});
  return is_zero_vector(reduce_mod(it->second, c));
}

// Free module on homogeneous vectors of m, with the map to m. Labels "k:element".
struct Cover {
  GradedModule free;
  std::vector<SparseVec> image;  // per free vector
};

Cover cover(const GradedModule& m, const std::vector<SparseVec>& gens, const AlgebraPtr& over) {
  const auto& a = *over;
  std::vector<GradedModule> parts;
  for (auto& g : gens) {
    const auto& x = m.vec(g.front().first);
    int obj = a.object_index(m.algebra().object(x.object).name);
    parts.push_back(regular_module(over, obj, -x.degree));
  }
  Cover c{direct_sum(parts, "F"), {}};
  Window w = c.free.window();
  w.hi = std::min(w.hi, m.window().hi);
  c.free.set_window(w);
  c.image.resize(c.free.size());
  for (int i = 0; i < c.free.size(); ++i) {
    if (!w.contains(c.free.vec(i).degree)) continue;
    const auto& lab = c.free.vec(i).label;
    auto colon = lab.find(':');
    int k = std::stoi(lab.substr(0, colon));
    int e = m.algebra().basis_index(lab.substr(colon + 1));
    c.image[i] = m.act(m.algebra().basis_vector(e), gens[k]);
  }
  return c;
}

std::vector<SparseVec> kernel_vectors(const Cover& c, const GradedModule& m) {
  const Field& f = m.algebra().field();
  std::vector<SparseVec> ker;
  for (auto& [key, blk] : c.free.blocks()) {
    auto [deg, obj] = key;
    if (!c.free.window().contains(deg)) continue;
    int mobj = m.algebra().object_index(c.free.algebra().object(obj).name);
    const auto& vb = m.block(mobj, deg);
    MatQ mat = zeros<Scalar>(static_cast<Eigen::Index>(vb.size()), static_cast<Eigen::Index>(blk.size()), f.zero());
    for (std::size_t j = 0; j < blk.size(); ++j)
      mat.col(static_cast<Eigen::Index>(j)) = block_coords(m, vb, c.image[blk[j]]);
    MatQ k = kernel(mat, f.zero());
    for (Eigen::Index col = 0; col < k.cols(); ++col) ker.push_back(from_block_coords(blk, k.col(col)));
  }
  return ker;
}

}  // namespace

std::vector<SparseVec> find_generators(const GradedModule& m) {
  if (m.window().bounded_lo()) throw WindowTooSmall("generators need a module known from its lowest degree");
  std::vector<SparseVec> gens;
  const Field& f = m.algebra().field();
  SpanData span;
  int last = -kInf;
  for (auto& [key, blk] : m.blocks()) {
    if (!m.window().contains(key.first)) continue;
    if (key.first != last) {
      span = span_closure(m, gens);
      last = key.first;
    }
    for (int v : blk) {
      if (in_span(m, span, v)) continue;
      gens.push_back({{v, f.one()}});
      span = span_closure(m, gens);
    }
  }
  return gens;
}

Submodule gamma_sub(const GammaContext& g, const GradedModule& v) {
  const Field& f = v.algebra().field();
  std::vector<SparseVec> seeds;
  for (int i = 0; i < v.size(); ++i)
    if (g.objects.count(v.vec(i).object) && v.window().contains(v.vec(i).degree)) seeds.push_back({{i, f.one()}});
  Submodule s = submodule(v, span_closure(v, seeds), v.name() + "_" + g.label());
  return s;
}

// Every basis element x h y ending in S_Gamma passes through 1_t y with t in S_Gamma (Gamma is a lower
// set), so V^Gamma is the joint kernel of the finitely many 1_t y.
Quotient gamma_quot(const GammaContext& g, const GradedModule& v) {
  const auto& a = v.algebra();
  const Field& f = a.field();
  std::vector<std::pair<int, AlgebraElement>> tests;  // (degree, 1_t y)
  int ymax = 0;
  for (int c = 0; c < a.num_components(); ++c) {
    const auto& y = a.component(c);
    if (y.kind != CompKind::Y && y.kind != CompKind::Unit) continue;
    if (!a.special(y.to) || !g.gamma.count(a.object(y.to).weight)) continue;
    tests.emplace_back(y.degree, a.component_element(c));
    ymax = std::max(ymax, y.degree);
  }
  Window w = v.window();
  if (w.bounded_hi()) w.hi -= ymax;
  std::vector<SparseVec> kill;
  for (auto& [key, vs] : v.blocks()) {
    auto [d, obj] = key;
    if (!w.contains(d)) continue;
    std::map<std::pair<int, int>, int> row_of;
    std::vector<SparseVec> cols(vs.size());
    for (std::size_t t = 0; t < tests.size(); ++t)
      for (std::size_t k = 0; k < vs.size(); ++k)
        for (auto& [x, s] : v.act(tests[t].second, {{vs[k], f.one()}})) {
          auto [it, fresh] = row_of.try_emplace({static_cast<int>(t), x}, static_cast<int>(row_of.size()));
          cols[k].emplace_back(it->second, s);
        }
    MatQ m = zeros<Scalar>(static_cast<Eigen::Index>(row_of.size()), static_cast<Eigen::Index>(vs.size()), f.zero());
    for (std::size_t k = 0; k < vs.size(); ++k)
      for (auto& [r, s] : cols[k]) m(r, static_cast<Eigen::Index>(k)) = s;
    MatQ ker = kernel(m, f.zero());
    for (Eigen::Index j = 0; j < ker.cols(); ++j) kill.push_back(from_block_coords(vs, ker.col(j)));
  }
  Quotient q = quotient(v, linear_span(v, kill), v.name() + "^" + g.label());
  q.mod.set_window(intersect(q.mod.window(), w));
  return q;
}

GradedModule gamma_truncate(const GammaContext& g, const GradedModule& v) {
  const auto& a = v.algebra();
  const auto& ag = *g.alg;
  GradedModule m(g.alg, "j" + g.label() + "(" + v.name() + ")", v.window());
  std::vector<int> pos(v.size(), -1);
  for (int i = 0; i < v.size(); ++i) {
    const auto& x = v.vec(i);
    if (!g.objects.count(x.object)) continue;
    pos[i] = m.add_vector(ag.object_index(a.object(x.object).name), x.degree, x.label);
  }
  for (int i = 0; i < v.size(); ++i) {
    if (pos[i] < 0) continue;
    for (int e = 0; e < ag.size(); ++e) {
      int pe = a.basis_index(ag.element(e).id);
      if (pe < 0) throw std::logic_error("element of the truncated algebra missing from the parent");
      if (a.element(pe).source != v.vec(i).object || !v.known(pe, i)) continue;
      SparseVec img;
      for (auto& [w, s] : v.act(pe, i)) {
        if (pos[w] < 0) throw std::logic_error("truncation leaves e_Gamma V");
        img.emplace_back(pos[w], s);
      }
      if (!img.empty()) m.set_action(e, pos[i], img);
    }
  }
  m.finalize();
  return m;
}

GradedModule gamma_shriek(const GammaContext& g, const GradedModule& m) {
  std::vector<SparseVec> gens = m.gens.empty() ? find_generators(m) : m.gens;
  if (gens.empty()) return GradedModule(g.parent, "j!" + g.label() + "(" + m.name() + ")", {});
  Cover over_g = cover(m, gens, g.alg);
  std::vector<SparseVec> rel = kernel_vectors(over_g, m);
  // the same free module over A; relations transported by label
  std::vector<GradedModule> parts;
  for (auto& gen : gens) {
    const auto& x = m.vec(gen.front().first);
    int obj = g.parent->object_index(m.algebra().object(x.object).name);
    parts.push_back(regular_module(g.parent, obj, -x.degree));
  }
  GradedModule fa = direct_sum(parts, "F");
  Window w = fa.window();
  w.hi = std::min(w.hi, m.window().hi);
  fa.set_window(w);
  std::map<std::string, int> by_label;
  for (int i = 0; i < fa.size(); ++i) by_label[fa.vec(i).label] = i;
  std::vector<SparseVec> rel_a;
  for (auto& r : rel) {
    SparseVec y;
    for (auto& [i, c] : r) y.emplace_back(by_label.at(over_g.free.vec(i).label), c);
    std::sort(y.begin(), y.end(), [](auto& p, auto& q) { return p.first < q.first; });
    rel_a.push_back(y);
  }
  Quotient q = quotient(fa, span_closure(fa, rel_a), "j!" + g.label() + "(" + m.name() + ")");
  return q.mod;
}

GradedModule gamma_star(const GammaContext& g, const GradedModule& m) {
  AlgebraPtr op = opposite(*g.parent);
  GammaContext gop = make_gamma(op, g.gamma);
  GradedModule md = dualize(m, gop.alg);
  GradedModule s = gamma_shriek(gop, md);
  GradedModule out = dualize(s, g.parent);
  out.set_name("j*" + g.label() + "(" + m.name() + ")");
  return out;
}

CounitReport counit_check(const GammaContext& g, const GradedModule& v) {
  CounitReport r;
  GradedModule jv = gamma_truncate(g, v);
  jv.gens = find_generators(jv);
  GradedModule s = gamma_shriek(g, jv);
  Submodule sub = gamma_sub(g, v);
  r.window = intersect(s.window(), sub.mod.window());
  Character cs = character(s), cv = character(sub.mod);
  for (auto* c : {&cs, &cv})
    for (auto it = c->begin(); it != c->end();)
      it = r.window.contains(it->first.second) ? std::next(it) : c->erase(it);
  if (cs == cv) {
    r.iso = true;
    r.reason = "counit surjective onto V_Gamma and dimensions agree on the window";
  } else {
    for (auto& [k, n] : cs)
      if (!cv.count(k) || cv[k] != n) {
        r.reason = "dimension mismatch at object " + v.algebra().object(k.first).name + ", degree " +
                   std::to_string(k.second);
        return r;
      }
    r.reason = "dimension mismatch";
  }
  return r;
}

}  // namespace gta
