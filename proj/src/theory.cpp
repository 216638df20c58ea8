#include "gta/theory.hpp"

namespace gta {

std::string to_string(Family f) {
  switch (f) {
    case Family::Std: return "std";
    case Family::ProperStd: return "proper-std";
    case Family::ProperCostd: return "proper-costd";
    case Family::Costd: return "costd";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "std" || s == "delta") return Family::Std;
  if (s == "proper-std" || s == "delta-bar") return Family::ProperStd;
  if (s == "proper-costd" || s == "nabla-bar") return Family::ProperCostd;
  if (s == "costd" || s == "nabla") return Family::Costd;
  throw std::invalid_argument("unknown family '" + s + "'");
}

const CartanAlgebra& Theory::cartan(int weight) const {
  std::lock_guard lock(mu_);
  auto it = cartan_.find(weight);
  if (it == cartan_.end())
    it = cartan_.emplace(weight, std::make_unique<CartanAlgebra>(analyze_cartan(alg_, weight))).first;
  return *it->second;
}

std::vector<BlockRef> Theory::blocks_of_weight(int weight) const {
  std::vector<BlockRef> out;
  if (alg_->specials_of_weight(weight).empty()) return out;
  const auto& c = cartan(weight);
  for (std::size_t k = 0; k < c.blocks.size(); ++k) out.push_back({weight, static_cast<int>(k), c.blocks[k].label});
  return out;
}

std::vector<BlockRef> Theory::blocks() const {
  std::vector<BlockRef> out;
  for (int w = 0; w < alg_->num_weights(); ++w)
    for (auto& b : blocks_of_weight(w)) out.push_back(b);
  return out;
}

BlockRef Theory::block(const std::string& label) const {
  auto hash = label.rfind('#');
  if (hash == std::string::npos) throw UnknownBlock("block label '" + label + "' is not of the form weight#k");
  int w = alg_->weight_index(label.substr(0, hash));
  if (w < 0) throw UnknownBlock("unknown weight in block label '" + label + "'");
  for (auto& b : blocks_of_weight(w))
    if (b.label == label) return b;
  throw UnknownBlock("unknown block '" + label + "'");
}

GradedModule Theory::standard(const BlockRef& b, Family f) const {
  const auto& c = cartan(b.weight);
  switch (f) {
    case Family::Std: return standardize(c, projective_cartan(c, b.index), "Delta(" + b.label + ")");
    case Family::ProperStd: return standardize(c, simple_cartan(c, b.index), "DeltaBar(" + b.label + ")");
    case Family::ProperCostd: return costandardize(c, simple_cartan(c, b.index), "NablaBar(" + b.label + ")");
    case Family::Costd: return costandardize(c, injective_cartan(c, b.index), "Nabla(" + b.label + ")");
  }
  throw std::logic_error("family");
}

GradedModule Theory::irreducible(const BlockRef& b) const {
  const auto& a = *alg_;
  GradedModule pd = standard(b, Family::ProperStd);
  // v survives iff some g lands it in the weight space, which lives in degree 0
  std::vector<SparseVec> kill;
  for (auto& [key, vs] : pd.blocks()) {
    auto [d, obj] = key;
    if (!pd.window().contains(0)) throw std::logic_error("proper standard not known in degree 0");
    std::vector<SparseVec> cols(vs.size());
    int nrows = 0;
    std::map<std::pair<int, int>, int> row_of;  // (g, target vector) -> row
    for (int g = 0; g < a.size(); ++g) {
      const auto& e = a.element(g);
      if (e.source != obj || e.degree != -d || a.object(e.target).weight != b.weight) continue;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        if (!pd.known(g, vs[k])) throw ActionUnknown("irreducible: action of " + e.id + " unknown");
        for (auto& [w, s] : pd.act(g, vs[k])) {
          auto [it, fresh] = row_of.try_emplace({g, w}, nrows);
          if (fresh) ++nrows;
          cols[k].emplace_back(it->second, s);
        }
      }
    }
    MatQ m = zeros<Scalar>(nrows, static_cast<Eigen::Index>(vs.size()), a.field().zero());
    for (std::size_t k = 0; k < vs.size(); ++k)
      for (auto& [r, s] : cols[k]) m(r, static_cast<Eigen::Index>(k)) = s;
    MatQ ker = kernel(m, a.field().zero());
    for (Eigen::Index j = 0; j < ker.cols(); ++j) kill.push_back(from_block_coords(vs, ker.col(j)));
  }
  Quotient q = quotient(pd, linear_span(pd, kill), "L(" + b.label + ")");
  if (a.min_degree() >= 0 && pd.window().hi >= 0) q.mod.set_window({});
  return q.mod;
}

SparseVec Theory::projective_idempotent(const BlockRef& b) const {
  const auto& a = *alg_;
  const auto& c = cartan(b.weight);
  int u = c.parent_object(c.blocks[b.index].object);
  std::vector<int> basis;
  std::vector<int> pos(a.size(), -1);
  std::vector<std::string> labels;
  for (int g = 0; g < a.size(); ++g) {
    const auto& e = a.element(g);
    if (e.source == u && e.target == u && e.degree == 0) {
      pos[g] = static_cast<int>(basis.size());
      basis.push_back(g);
      labels.push_back(e.id);
    }
  }
  FinDimAlgebra fd(a.field(), labels);
  const int n = fd.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      VecQ v = fd.zero();
      for (auto& [g, s] : a.multiply_basis(basis[i], basis[j])) v(pos[g]) = s;
      fd.set_product(i, j, v);
    }
  VecQ unit = fd.zero();
  for (auto& [g, s] : a.unit(u)) unit(pos[g]) = s;
  fd.set_unit(unit);
  std::vector<PrimitiveIdempotent> prims;
  try {
    prims = split_idempotents(fd, {unit});
  } catch (const std::exception& ex) {
    throw SplitFailed(std::string("splitting (1_u A 1_u)_0 failed: ") + ex.what());
  }
  const auto& Al = *c.alg;
  for (auto& p : prims) {
    SparseVec bar;
    for (int i = 0; i < n; ++i) {
      if (p.e(i).is_zero() || !a.pure_h(basis[i])) continue;
      int t = Al.basis_index(a.element(basis[i]).id);
      if (t >= 0) bar.emplace_back(t, p.e(i));
    }
    std::sort(bar.begin(), bar.end(), [](auto& x, auto& y) { return x.first < y.first; });
    if (bar.empty() || block_of_idempotent(c, bar) != b.index) continue;
    SparseVec e;
    for (int i = 0; i < n; ++i)
      if (!p.e(i).is_zero()) e.emplace_back(basis[i], p.e(i));
    std::sort(e.begin(), e.end(), [](auto& x, auto& y) { return x.first < y.first; });
    return e;
  }
  throw SplitFailed("no primitive idempotent of (1_u A 1_u)_0 lifts block " + b.label);
}

GradedModule Theory::projective(const BlockRef& b) const {
  SparseVec e = projective_idempotent(b);
  int u = alg_->element(e.front().first).source;
  GradedModule reg = regular_module(alg_, u);
  SparseVec f = element_vector(reg, e);
  Submodule sub = submodule(reg, span_closure(reg, {f}), "P(" + b.label + ")");
  sub.mod.gens = {sub_coordinates(sub, reg, f)};
  sub.mod.gen_idempotent = e;
  return sub.mod;
}

int block_of_idempotent(const CartanAlgebra& c, const SparseVec& e) {
  const auto& Al = *c.alg;
  int obj = Al.element(e.front().first).target;
  std::vector<int> pos(Al.size(), -1);
  for (std::size_t i = 0; i < c.degree0.size(); ++i) pos[c.degree0[i]] = static_cast<int>(i);
  const Eigen::Index n = static_cast<Eigen::Index>(c.degree0.size());
  MatQ radt = c.radical0.transpose();
  auto rad = row_echelon(radt);
  for (auto& p : c.prims) {
    if (p.object != obj) continue;
    for (int z : c.degree0) {
      SparseVec prod = Al.multiply(Al.multiply(e, Al.basis_vector(z)), p.e);
      if (prod.empty()) continue;
      VecQ v = VecQ::Constant(n, Al.field().zero());
      for (auto& [g, s] : prod) v(pos[g]) = s;
      if (!is_zero_vector(reduce_mod(rad, v))) return p.block;
    }
  }
  return -1;
}

}  // namespace gta
