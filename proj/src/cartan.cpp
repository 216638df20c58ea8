#include "gta/cartan.hpp"

#include "gta/functors.hpp"

namespace gta {

int CartanAlgebra::block_index(const std::string& label) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (blocks[b].label == label) return static_cast<int>(b);
  return -1;
}

int CartanAlgebra::primitive_count(int object, int block) const {
  int n = 0;
  for (auto& p : prims)
    if (p.object == object && p.block == block) ++n;
  return n;
}

int CartanAlgebra::parent_object(int object) const { return parent->object_index(alg->object(object).name); }
int CartanAlgebra::cartan_object(int parent_object) const {
  return alg->object_index(parent->object(parent_object).name);
}

std::vector<int> opposite_index(const TriangularAlgebra& a, const TriangularAlgebra& op) {
  std::vector<int> out(a.size(), -1);
  for (int b = 0; b < a.size(); ++b) {
    const auto& e = a.element(b);
    if (e.x < 0 || e.h < 0 || e.y < 0) continue;
    int x = op.component_index(a.component(e.y).id), h = op.component_index(a.component(e.h).id),
        y = op.component_index(a.component(e.x).id);
    if (x < 0 || h < 0 || y < 0) continue;
    out[b] = op.triple_index(x, h, y);
  }
  return out;
}

CartanAlgebra analyze_cartan(const AlgebraPtr& a, int lambda) {
  CartanAlgebra c;
  c.parent = a;
  c.weight = lambda;
  c.alg = cartan_algebra(*a, lambda);
  const auto& Al = *c.alg;
  for (int b = 0; b < Al.size(); ++b)
    if (Al.element(b).degree < 0)
      throw NegativeDegreePresent("Cartan algebra at weight " + a->weight(lambda) + " has " + Al.element(b).id +
                                  " in degree " + std::to_string(Al.element(b).degree));
  std::vector<int> pos(Al.size(), -1);
  std::vector<std::string> labels;
  for (int b = 0; b < Al.size(); ++b)
    if (Al.element(b).degree == 0) {
      pos[b] = static_cast<int>(c.degree0.size());
      c.degree0.push_back(b);
      labels.push_back(Al.element(b).id);
    }
  const Field& f = Al.field();
  FinDimAlgebra fd(f, labels);
  auto dense = [&](const SparseVec& x) {
    VecQ v = fd.zero();
    for (auto& [b, s] : x) {
      if (pos[b] < 0) throw std::logic_error("degree-0 product leaves degree 0");
      v(pos[b]) = s;
    }
    return v;
  };
  const int n = fd.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SparseVec* p = Al.product(c.degree0[i], c.degree0[j]);
      if (!p) throw UnknownProduct("degree-0 product " + labels[i] + " * " + labels[j] + " is not tabulated");
      fd.set_product(i, j, dense(*p));
    }
  VecQ unit = fd.zero();
  std::vector<VecQ> start;
  for (int o = 0; o < Al.num_objects(); ++o) {
    VecQ u = dense(Al.unit(o));
    unit += u;
    if (!is_zero_vector(u)) start.push_back(u);
  }
  fd.set_unit(unit);
  c.radical0 = radical_findim(fd);
  auto prims = split_idempotents(fd, start);
  auto sparse = [&](const VecQ& v) {
    SparseVec x;
    for (int i = 0; i < n; ++i)
      if (!v(i).is_zero()) x.emplace_back(c.degree0[i], v(i));
    std::sort(x.begin(), x.end(), [](auto& p, auto& q) { return p.first < q.first; });
    return x;
  };
  for (auto& p : prims) {
    SparseVec e = sparse(p.e);
    int obj = Al.element(e.front().first).target;
    for (auto& [b, s] : e)
      if (Al.element(b).target != obj || Al.element(b).source != obj)
        throw std::logic_error("primitive idempotent spans several objects");
    c.prims.push_back({obj, p.block, e});
    if (p.block >= static_cast<int>(c.blocks.size())) {
      c.blocks.push_back({a->weight(lambda) + "#" + std::to_string(p.block), obj, e, p.block_dim});
    }
  }
  return c;
}

GradedModule projective_cartan(const CartanAlgebra& c, int block) {
  if (block < 0 || block >= static_cast<int>(c.blocks.size())) throw UnknownBlock("unknown block");
  const auto& b = c.blocks[block];
  GradedModule reg = regular_module(c.alg, b.object);
  SparseVec f = element_vector(reg, b.idempotent);
  Submodule sub = submodule(reg, span_closure(reg, {f}), "P_" + b.label);
  SparseVec gen = sub_coordinates(sub, reg, f);
  sub.mod.gens = {gen};
  return sub.mod;
}

GradedModule simple_cartan(const CartanAlgebra& c, int block) {
  GradedModule p = projective_cartan(c, block);
  const auto& Al = *c.alg;
  const auto& b = c.blocks[block];
  std::vector<SparseVec> rad;
  for (int i = 0; i < p.size(); ++i)
    if (p.vec(i).degree > 0) rad.push_back({{i, Al.field().one()}});
  for (Eigen::Index k = 0; k < c.radical0.cols(); ++k) {
    SparseVec j;
    for (Eigen::Index r = 0; r < c.radical0.rows(); ++r)
      if (!c.radical0(r, k).is_zero()) j.emplace_back(c.degree0[r], c.radical0(r, k));
    std::sort(j.begin(), j.end(), [](auto& x, auto& y) { return x.first < y.first; });
    SparseVec jf = p.act(j, p.gens[0]);
    if (!jf.empty()) rad.push_back(jf);
  }
  Quotient q = quotient(p, span_closure(p, rad), "L_" + b.label);
  q.mod.set_window({});
  return q.mod;
}

GradedModule injective_cartan(const CartanAlgebra& c, int block) {
  if (block < 0 || block >= static_cast<int>(c.blocks.size())) throw UnknownBlock("unknown block");
  const auto& b = c.blocks[block];
  AlgebraPtr op = opposite(*c.alg);
  auto idx = opposite_index(*c.alg, *op);
  SparseVec fop;
  for (auto& [g, s] : b.idempotent) fop.emplace_back(idx[g], s);
  std::sort(fop.begin(), fop.end(), [](auto& x, auto& y) { return x.first < y.first; });
  GradedModule reg = regular_module(op, b.object);
  SparseVec f = element_vector(reg, fop);
  Submodule sub = submodule(reg, span_closure(reg, {f}), "P^op_" + b.label);
  GradedModule i = dualize(sub.mod, c.alg);
  i.set_name("I_" + b.label);
  return i;
}

}  // namespace gta
