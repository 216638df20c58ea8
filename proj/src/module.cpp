#include "gta/module.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gta {

Window intersect(const Window& a, const Window& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

Window shifted(const Window& w, int by) {
  return {w.bounded_lo() ? w.lo + by : -kInf, w.bounded_hi() ? w.hi + by : kInf};
}

std::string to_string(const Window& w) {
  auto s = [](int d) { return d >= kInf ? std::string("inf") : d <= -kInf ? std::string("-inf") : std::to_string(d); };
  return "[" + s(w.lo) + ", " + s(w.hi) + "]";
}

GradedModule::GradedModule(AlgebraPtr a, std::string name, Window w)
    : alg_(std::move(a)), name_(std::move(name)), win_(w) {}

int GradedModule::add_vector(int object, int degree, std::string label) {
  if (final_) throw std::logic_error("module already finalized");
  vecs_.push_back({object, degree, std::move(label)});
  return static_cast<int>(vecs_.size()) - 1;
}

void GradedModule::set_action(int g, int v, SparseVec image) {
  if (final_) throw std::logic_error("module already finalized");
  if (image.empty())
    pending_.erase({v, g});
  else
    pending_[{v, g}] = std::move(image);
}

void GradedModule::finalize() {
  const int n = size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto &x = vecs_[a], &y = vecs_[b];
    return std::tie(x.degree, x.object, x.label) < std::tie(y.degree, y.object, y.label);
  });
  std::vector<int> newpos(n);
  for (int i = 0; i < n; ++i) newpos[order[i]] = i;
  std::vector<ModVec> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = vecs_[order[i]];
  for (int i = 1; i < n; ++i)
    if (sorted[i].label == sorted[i - 1].label && sorted[i].degree == sorted[i - 1].degree &&
        sorted[i].object == sorted[i - 1].object)
      throw std::logic_error("duplicate module vector label " + sorted[i].label + " in " + name_);
  vecs_ = std::move(sorted);
  auto remap = [&](const SparseVec& x) {
    SparseVec y;
    y.reserve(x.size());
    for (auto& [i, c] : x) y.emplace_back(newpos[i], c);
    std::sort(y.begin(), y.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return y;
  };
  act_.assign(n, {});
  for (auto& [key, img] : pending_) act_[newpos[key.first]].emplace_back(key.second, remap(img));
  pending_.clear();
  for (auto& gen : gens) gen = remap(gen);
  blocks_.clear();
  for (int i = 0; i < n; ++i) blocks_[{vecs_[i].degree, vecs_[i].object}].push_back(i);
  final_ = true;
}

bool GradedModule::known(int g, int v) const {
  const auto& e = alg_->element(g);
  const auto& x = vecs_[v];
  if (e.source != x.object) return true;
  return win_.contains(x.degree) && win_.contains(x.degree + e.degree);
}

const SparseVec& GradedModule::act(int g, int v) const {
  static const SparseVec zero;
  if (!known(g, v))
    throw ActionUnknown("action of " + alg_->element(g).id + " on " + vecs_[v].label + " in " + name_ +
                        " is outside the window " + to_string(win_));
  const auto& row = act_[v];
  auto it = std::lower_bound(row.begin(), row.end(), g, [](const auto& p, int k) { return p.first < k; });
  if (it != row.end() && it->first == g) return it->second;
  return zero;
}

SparseVec GradedModule::act(const AlgebraElement& a, const SparseVec& v) const {
  Accumulator acc;
  for (auto& [g, cg] : a)
    for (auto& [i, ci] : v) {
      if (alg_->element(g).source != vecs_[i].object) continue;
      acc.add(act(g, i), cg * ci);
    }
  return acc.take();
}

const std::vector<int>& GradedModule::block(int object, int degree) const {
  static const std::vector<int> none;
  auto it = blocks_.find({degree, object});
  return it == blocks_.end() ? none : it->second;
}

int GradedModule::min_degree() const { return vecs_.empty() ? kInf : vecs_.front().degree; }
int GradedModule::max_degree() const { return vecs_.empty() ? -kInf : vecs_.back().degree; }

std::string GradedModule::check_action() const {
  const auto& A = *alg_;
  for (int v = 0; v < size(); ++v) {
    for (auto& [g, img] : act_[v])
      for (auto& [w, c] : img) {
        if (vecs_[w].object != A.element(g).target || vecs_[w].degree != vecs_[v].degree + A.element(g).degree)
          return "action of " + A.element(g).id + " on " + vecs_[v].label + " is not homogeneous";
      }
    for (int g = 0; g < A.size(); ++g) {
      if (A.element(g).source != vecs_[v].object || !known(g, v)) continue;
      const SparseVec& gv = act(g, v);
      for (int h = 0; h < A.size(); ++h) {
        if (A.element(h).source != A.element(g).target) continue;
        const SparseVec* hg = A.product(h, g);
        if (!hg) continue;
        bool ok = true;
        for (auto& [w, c] : gv)
          if (!known(h, w)) ok = false;
        if (!ok || !win_.contains(vecs_[v].degree + A.element(g).degree + A.element(h).degree)) continue;
        SparseVec lhs = act(A.basis_vector(h), gv);
        SparseVec rhs = act(*hg, SparseVec{{v, A.field().one()}});
        if (!sparse_equal(lhs, rhs))
          return A.element(h).id + "*(" + A.element(g).id + "*" + vecs_[v].label + ") differs from (" +
                 A.element(h).id + "*" + A.element(g).id + ")*" + vecs_[v].label;
      }
    }
  }
  for (int o = 0; o < A.num_objects(); ++o)
    for (int v = 0; v < size(); ++v) {
      bool ok = true;
      for (auto& [g, c] : A.unit(o))
        if (!known(g, v)) ok = false;
      if (!ok) continue;
      SparseVec img = act(A.unit(o), SparseVec{{v, A.field().one()}});
      SparseVec expect = vecs_[v].object == o ? SparseVec{{v, A.field().one()}} : SparseVec{};
      if (!sparse_equal(img, expect)) return "unit 1_" + A.object(o).name + " acts wrongly on " + vecs_[v].label;
    }
  return {};
}

GradedModule regular_module(const AlgebraPtr& a, int u, int shift) {
  const auto& A = *a;
  int hi = A.cutoff() + std::min(0, A.min_degree());
  GradedModule m(a, "q^" + std::to_string(shift) + "A1_" + A.object(u).name,
                 {-kInf, A.truncated() ? hi - shift : kInf});
  std::vector<int> vec_of(A.size(), -1);
  for (int b = 0; b < A.size(); ++b) {
    const auto& e = A.element(b);
    if (e.source != u || e.degree > hi) continue;
    vec_of[b] = m.add_vector(e.target, e.degree - shift, e.id);
  }
  auto to_vec = [&](const SparseVec& x) {
    SparseVec y;
    for (auto& [b, c] : x) {
      if (vec_of[b] < 0) throw std::logic_error("element outside the regular module");
      y.emplace_back(vec_of[b], c);
    }
    return y;
  };
  for (int b = 0; b < A.size(); ++b) {
    if (vec_of[b] < 0) continue;
    for (int g = 0; g < A.size(); ++g) {
      if (A.element(g).source != A.element(b).target) continue;
      if (A.element(g).degree + A.element(b).degree > hi) continue;
      m.set_action(g, vec_of[b], to_vec(A.multiply_basis(g, b)));
    }
  }
  m.gens = {to_vec(A.unit(u))};
  m.free = true;
  m.finalize();
  return m;
}

int SpanData::dimension() const {
  int d = 0;
  for (auto& [k, e] : blocks) d += e.rank();
  return d;
}

VecQ block_coords(const GradedModule& v, const std::vector<int>& block, const SparseVec& x) {
  VecQ c = VecQ::Constant(static_cast<Eigen::Index>(block.size()), v.algebra().field().zero());
  for (auto& [i, s] : x) {
    auto it = std::lower_bound(block.begin(), block.end(), i);
    if (it == block.end() || *it != i) throw std::logic_error("vector leaves its block");
    c(it - block.begin()) = s;
  }
  return c;
}

SparseVec from_block_coords(const std::vector<int>& block, const VecQ& c) {
  SparseVec x;
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (!c(k).is_zero()) x.emplace_back(block[k], c(k));
  return x;
}

namespace {

using BlockKey = std::pair<int, int>;

std::map<BlockKey, SparseVec> split_blocks(const GradedModule& v, const SparseVec& x) {
  std::map<BlockKey, SparseVec> out;
  for (auto& [i, c] : x) out[{v.vec(i).degree, v.vec(i).object}].emplace_back(i, c);
  return out;
}

// Adds x to the echelon of its block; true if it was independent.
bool absorb(const GradedModule& v, std::map<BlockKey, Echelon<Scalar>>& blocks, const BlockKey& key,
            const SparseVec& x, VecQ* added) {
  const auto& block = v.block(key.second, key.first);
  VecQ c = block_coords(v, block, x);
  auto it = blocks.find(key);
  if (it != blocks.end()) c = reduce_mod(it->second, c);
  if (is_zero_vector(c)) return false;
  MatQ stacked;
  if (it == blocks.end()) {
    stacked = c.transpose();
  } else {
    stacked.resize(it->second.rows.rows() + 1, c.size());
    stacked.topRows(it->second.rows.rows()) = it->second.rows;
    stacked.row(it->second.rows.rows()) = c.transpose();
  }
  blocks[key] = row_echelon(stacked);
  if (added) *added = c;
  return true;
}

}  // namespace

SpanData linear_span(const GradedModule& v, const std::vector<SparseVec>& vecs) {
  SpanData s;
  for (auto& x : vecs)
    for (auto& [key, part] : split_blocks(v, x))
      if (v.window().contains(key.first)) absorb(v, s.blocks, key, part, nullptr);
  return s;
}

SpanData span_closure(const GradedModule& v, const std::vector<SparseVec>& vecs) {
  const auto& A = v.algebra();
  SpanData s;
  std::vector<std::pair<BlockKey, SparseVec>> work;
  for (auto& x : vecs)
    for (auto& [key, part] : split_blocks(v, x))
      if (v.window().contains(key.first)) work.push_back({key, part});
  while (!work.empty()) {
    auto [key, x] = std::move(work.back());
    work.pop_back();
    VecQ added;
    if (!absorb(v, s.blocks, key, x, &added)) continue;
    SparseVec y = from_block_coords(v.block(key.second, key.first), added);
    for (int g = 0; g < A.size(); ++g) {
      const auto& e = A.element(g);
      if (e.source != key.second) continue;
      int d = key.first + e.degree;
      if (!v.window().contains(d)) continue;
      SparseVec gy = v.act(A.basis_vector(g), y);
      if (!gy.empty()) work.push_back({{d, e.target}, std::move(gy)});
    }
  }
  return s;
}

Submodule submodule(const GradedModule& v, const SpanData& span, const std::string& name) {
  const auto& A = v.algebra();
  Submodule out{GradedModule(v.algebra_ptr(), name, v.window()), {}};
  std::map<BlockKey, int> first;  // first sub vector of each block
  for (auto& [key, ech] : span.blocks) {
    const auto& block = v.block(key.second, key.first);
    first[key] = static_cast<int>(out.embed.size());
    for (int r = 0; r < ech.rank(); ++r) {
      out.embed.push_back(from_block_coords(block, ech.rows.row(r).transpose()));
      out.mod.add_vector(key.second, key.first, v.vec(block[ech.pivots[r]]).label);
    }
  }
  for (std::size_t i = 0; i < out.embed.size(); ++i) {
    const auto& x = out.mod.vec(static_cast<int>(i));
    for (int g = 0; g < A.size(); ++g) {
      const auto& e = A.element(g);
      if (e.source != x.object) continue;
      int d = x.degree + e.degree;
      if (!v.window().contains(x.degree) || !v.window().contains(d)) continue;
      SparseVec gx = v.act(A.basis_vector(g), out.embed[i]);
      if (gx.empty()) continue;
      BlockKey key{d, e.target};
      auto it = span.blocks.find(key);
      if (it == span.blocks.end()) throw std::logic_error("span is not closed under the action");
      const auto& block = v.block(key.second, key.first);
      VecQ c = block_coords(v, block, gx);
      SparseVec img;
      for (int r = 0; r < it->second.rank(); ++r) {
        const Scalar& coef = c(it->second.pivots[r]);
        if (!coef.is_zero()) img.emplace_back(first[key] + r, coef);
      }
      if (!is_zero_vector(reduce_mod(it->second, c))) throw std::logic_error("span is not closed under the action");
      out.mod.set_action(g, static_cast<int>(i), img);
    }
  }
  out.mod.finalize();
  // vectors were added in (degree, object, pivot) order, which finalize keeps only up to labels
  std::vector<SparseVec> embed(out.embed.size());
  std::map<std::tuple<int, int, std::string>, int> where;
  for (int i = 0; i < out.mod.size(); ++i)
    where[{out.mod.vec(i).degree, out.mod.vec(i).object, out.mod.vec(i).label}] = i;
  {
    int i = 0;
    for (auto& [key, ech] : span.blocks) {
      const auto& block = v.block(key.second, key.first);
      for (int r = 0; r < ech.rank(); ++r, ++i)
        embed[where.at({key.first, key.second, v.vec(block[ech.pivots[r]]).label})] = out.embed[i];
    }
  }
  out.embed = std::move(embed);
  return out;
}

SparseVec sub_coordinates(const Submodule& s, const GradedModule& v, const SparseVec& x) {
  std::map<std::tuple<int, int, std::string>, Scalar> at;
  for (auto& [i, c] : x) at[{v.vec(i).degree, v.vec(i).object, v.vec(i).label}] = c;
  SparseVec out;
  for (int i = 0; i < s.mod.size(); ++i) {
    auto it = at.find({s.mod.vec(i).degree, s.mod.vec(i).object, s.mod.vec(i).label});
    if (it != at.end()) out.emplace_back(i, it->second);
  }
  Accumulator check;
  for (auto& [i, c] : out) check.add(s.embed[i], c);
  if (!sparse_equal(check.take(), x)) throw std::logic_error("vector is not in the submodule");
  return out;
}

SparseVec element_vector(const GradedModule& v, const SparseVec& elem) {
  const auto& A = v.algebra();
  SparseVec out;
  for (auto& [b, c] : elem) {
    const auto& e = A.element(b);
    int found = -1;
    for (int i = 0; i < v.size() && found < 0; ++i)
      if (v.vec(i).object == e.target && v.vec(i).label == e.id) found = i;
    if (found < 0) throw std::logic_error("element " + e.id + " is not a vector of " + v.name());
    out.emplace_back(found, c);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

Quotient quotient(const GradedModule& v, const SpanData& span, const std::string& name) {
  const auto& A = v.algebra();
  Quotient out{GradedModule(v.algebra_ptr(), name, v.window()), {}};
  std::vector<int> qpos(v.size(), -1);
  for (auto& [key, block] : v.blocks()) {
    std::set<int> piv;
    if (auto it = span.blocks.find(key); it != span.blocks.end())
      for (int p : it->second.pivots) piv.insert(p);
    for (std::size_t k = 0; k < block.size(); ++k)
      if (!piv.count(static_cast<int>(k))) {
        qpos[block[k]] = out.mod.add_vector(key.second, key.first, v.vec(block[k]).label);
        out.lift.push_back(block[k]);
      }
  }
  auto project = [&](const SparseVec& x) {
    Accumulator acc;
    for (auto& [key, part] : split_blocks(v, x)) {
      const auto& block = v.block(key.second, key.first);
      VecQ c = block_coords(v, block, part);
      if (auto it = span.blocks.find(key); it != span.blocks.end()) c = reduce_mod(it->second, c);
      for (Eigen::Index k = 0; k < c.size(); ++k)
        if (!c(k).is_zero()) {
          if (qpos[block[k]] < 0) throw std::logic_error("reduction left a pivot coordinate");
          acc.add(qpos[block[k]], c(k));
        }
    }
    return acc.take();
  };
  for (std::size_t i = 0; i < out.lift.size(); ++i) {
    int src = out.lift[i];
    for (int g = 0; g < A.size(); ++g) {
      if (A.element(g).source != v.vec(src).object || !v.known(g, src)) continue;
      const SparseVec& img = v.act(g, src);
      if (!img.empty()) out.mod.set_action(g, static_cast<int>(i), project(img));
    }
  }
  for (auto& gen : v.gens) {
    SparseVec p = project(gen);
    if (!p.empty()) out.mod.gens.push_back(p);
  }
  out.mod.finalize();
  std::vector<int> lift(out.lift.size());
  for (int i = 0; i < out.mod.size(); ++i) {
    const auto& x = out.mod.vec(i);
    for (int src : v.block(x.object, x.degree))
      if (v.vec(src).label == x.label) lift[i] = src;
  }
  out.lift = std::move(lift);
  return out;
}

GradedModule shift(const GradedModule& v, int n) {
  GradedModule m(v.algebra_ptr(), n == 0 ? v.name() : "q^" + std::to_string(n) + v.name(), shifted(v.window(), -n));
  for (int i = 0; i < v.size(); ++i) m.add_vector(v.vec(i).object, v.vec(i).degree - n, v.vec(i).label);
  for (int i = 0; i < v.size(); ++i)
    for (auto& [g, img] : v.actions(i)) m.set_action(g, i, img);
  m.gens = v.gens;
  m.free = v.free;
  m.finalize();
  return m;
}

GradedModule direct_sum(const std::vector<GradedModule>& parts, const std::string& name) {
  if (parts.empty()) throw std::invalid_argument("empty direct sum");
  Window w;
  for (auto& p : parts) w = intersect(w, p.window());
  GradedModule m(parts[0].algebra_ptr(), name, w);
  int offset = 0;
  bool all_free = true;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    for (int i = 0; i < p.size(); ++i)
      m.add_vector(p.vec(i).object, p.vec(i).degree, std::to_string(k) + ":" + p.vec(i).label);
    auto move = [&](const SparseVec& x) {
      SparseVec y;
      for (auto& [i, c] : x) y.emplace_back(i + offset, c);
      return y;
    };
    for (int i = 0; i < p.size(); ++i)
      for (auto& [g, img] : p.actions(i)) m.set_action(g, i + offset, move(img));
    for (auto& gen : p.gens) m.gens.push_back(move(gen));
    all_free = all_free && p.free;
    offset += p.size();
  }
  m.free = all_free;
  m.finalize();
  return m;
}

Character character(const GradedModule& v) {
  Character c;
  for (auto& [key, block] : v.blocks())
    if (v.window().contains(key.first)) c[{key.second, key.first}] = static_cast<int>(block.size());
  return c;
}

QSeries series_from_degrees(const std::map<int, int>& dims, const Window& w) {
  QSeries s;
  if (!w.bounded_lo() && !w.bounded_hi())
    s = QSeries(Direction::Poly);
  else if (!w.bounded_lo())
    s = QSeries(Direction::Down, w.hi);
  else if (!w.bounded_hi())
    s = QSeries(Direction::Up, -w.lo);
  else
    throw WindowExceedsKnowledge("window " + to_string(w) + " is bounded on both sides");
  for (auto& [d, n] : dims)
    if (w.contains(d) && n) s.set(-d, static_cast<std::uint64_t>(n));
  return s;
}

QSeries char_dim_q(const GradedModule& v, int object) {
  std::map<int, int> dims;
  for (auto& [key, block] : v.blocks())
    if (key.second == object) dims[key.first] += static_cast<int>(block.size());
  return series_from_degrees(dims, v.window());
}

QSeries dim_q(const GradedModule& v) {
  std::map<int, int> dims;
  for (auto& [key, block] : v.blocks()) dims[key.first] += static_cast<int>(block.size());
  return series_from_degrees(dims, v.window());
}

}  // namespace gta
