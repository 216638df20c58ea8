#include "gta/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gta {

namespace {
const SparseVec kZero;

template <class T, class Key>
std::vector<T> sorted_by(std::vector<T> v, Key key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  return v;
}
}  // namespace

std::string to_string(CompKind k) {
  switch (k) {
    case CompKind::X: return "X";
    case CompKind::H: return "H";
    case CompKind::Y: return "Y";
    case CompKind::Unit: return "UNIT";
    default: return "IDEMPOTENT";
  }
}

CompKind comp_kind_from_string(const std::string& s) {
  if (s == "X") return CompKind::X;
  if (s == "H") return CompKind::H;
  if (s == "Y") return CompKind::Y;
  if (s == "IDEMPOTENT") return CompKind::Idempotent;
  throw std::invalid_argument("unknown basis kind '" + s + "'");
}

bool fine_match(const std::string& a, const std::string& b) { return a.empty() || b.empty() || a == b; }

// ---------------------------------------------------------------- lookups

int TriangularAlgebra::object_index(const std::string& n) const {
  auto it = object_ids_.find(n);
  return it == object_ids_.end() ? -1 : it->second;
}
int TriangularAlgebra::weight_index(const std::string& n) const {
  auto it = weight_ids_.find(n);
  return it == weight_ids_.end() ? -1 : it->second;
}
int TriangularAlgebra::component_index(const std::string& id) const {
  auto it = comp_ids_.find(id);
  return it == comp_ids_.end() ? -1 : it->second;
}
int TriangularAlgebra::basis_index(const std::string& id) const {
  auto it = basis_ids_.find(id);
  return it == basis_ids_.end() ? -1 : it->second;
}
int TriangularAlgebra::triple_index(int x, int h, int y) const {
  auto it = triples_.find({x, h, y});
  return it == triples_.end() ? -1 : it->second;
}
int TriangularAlgebra::unit_component(int obj) const { return unit_comp_[obj]; }
int TriangularAlgebra::idempotent_component(int obj) const { return idem_comp_[obj]; }

bool TriangularAlgebra::pure_h(int b) const {
  const auto& e = basis_[b];
  return e.x >= 0 && e.y >= 0 && e.h >= 0 && comps_[e.x].kind == CompKind::Unit && comps_[e.y].kind == CompKind::Unit;
}

std::vector<int> TriangularAlgebra::specials_of_weight(int w) const {
  std::vector<int> out;
  for (int i = 0; i < num_objects(); ++i)
    if (objects_[i].weight == w) out.push_back(i);
  return out;
}

std::vector<int> TriangularAlgebra::descending_extension(int lam) const {
  std::vector<int> rest;
  for (int w = 0; w < num_weights(); ++w)
    if (leq(w, lam)) rest.push_back(w);
  std::vector<int> out;
  while (!rest.empty()) {
    for (std::size_t k = 0; k < rest.size(); ++k) {
      bool maximal = std::none_of(rest.begin(), rest.end(), [&](int v) { return less(rest[k], v); });
      if (maximal) {
        out.push_back(rest[k]);
        rest.erase(rest.begin() + static_cast<long>(k));
        break;
      }
    }
  }
  return out;
}

std::vector<int> TriangularAlgebra::ascending_extension(const std::vector<int>& ws) const {
  std::vector<int> rest = ws;
  std::sort(rest.begin(), rest.end());
  std::vector<int> out;
  while (!rest.empty()) {
    for (std::size_t k = 0; k < rest.size(); ++k) {
      bool minimal = std::none_of(rest.begin(), rest.end(), [&](int v) { return less(v, rest[k]); });
      if (minimal) {
        out.push_back(rest[k]);
        rest.erase(rest.begin() + static_cast<long>(k));
        break;
      }
    }
  }
  return out;
}

const SparseVec* TriangularAlgebra::product(int a, int b) const {
  if (basis_[a].source != basis_[b].target) return &kZero;
  const auto& slot = table_[static_cast<std::size_t>(a) * basis_.size() + b];
  return slot ? &*slot : nullptr;
}

const SparseVec& TriangularAlgebra::multiply_basis(int a, int b) const {
  if (const SparseVec* p = product(a, b)) return *p;
  if (basis_[a].degree + basis_[b].degree > cutoff_)
    throw CutoffExceeded("product " + basis_[a].id + " * " + basis_[b].id + " exceeds cutoff " +
                         std::to_string(cutoff_));
  throw UnknownProduct("product " + basis_[a].id + " * " + basis_[b].id + " is not tabulated");
}

AlgebraElement TriangularAlgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  Accumulator acc;
  for (auto& [i, ci] : a)
    for (auto& [j, cj] : b) {
      if (basis_[i].source != basis_[j].target) continue;
      acc.add(multiply_basis(i, j), ci * cj);
    }
  return acc.take();
}

AlgebraElement TriangularAlgebra::component_element(int c) const {
  const Component& k = comps_[c];
  auto need = [&](int x, int h, int y) {
    int b = triple_index(x, h, y);
    if (b < 0) throw CutoffExceeded("component " + k.id + " has no materialized basis element");
    return b;
  };
  switch (k.kind) {
    case CompKind::Unit: return objects_[k.to].unit;
    case CompKind::H:
    case CompKind::Idempotent: return basis_vector(need(unit_comp_[k.to], c, unit_comp_[k.from]));
    case CompKind::X:
    case CompKind::Y: {
      const int s = k.kind == CompKind::X ? k.from : k.to;
      if (idem_comp_[s] >= 0) {
        return k.kind == CompKind::X ? basis_vector(need(c, idem_comp_[s], unit_comp_[s]))
                                     : basis_vector(need(unit_comp_[s], idem_comp_[s], c));
      }
      Accumulator acc;
      for (auto& [b, coef] : objects_[s].unit) {
        if (!pure_h(b)) throw IntegrityError(objects_[s].name, "unit expansion is not in H(s,s)");
        const int h = basis_[b].h;
        acc.add(k.kind == CompKind::X ? need(c, h, unit_comp_[s]) : need(unit_comp_[s], h, c), coef);
      }
      return acc.take();
    }
  }
  return {};
}

std::optional<int> TriangularAlgebra::lower_bound(int i, int j) const {
  auto it = lower_.find({i, j});
  if (it == lower_.end()) return std::nullopt;
  return it->second;
}

std::string TriangularAlgebra::render_element(const AlgebraElement& a) const {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Scalar& c = a[k].second;
    bool neg = c.value() < 0 && c.modulus() == 0;
    Scalar mag = neg ? -c : c;
    if (k > 0) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (!mag.is_one()) out += mag.str() + "*";
    out += basis_[a[k].first].id;
  }
  return out;
}

// ---------------------------------------------------------------- builder

void AlgebraBuilder::ensure_units() {
  for (auto& o : objects) {
    if (o.weight.empty()) continue;
    std::string id = unit_id(o.name);
    bool have = std::any_of(comps.begin(), comps.end(), [&](const Comp& c) { return c.id == id; });
    if (!have) comps.push_back({id, CompKind::Unit, o.name, o.name, 0, {}, {}});
  }
}

namespace {
std::string fine_from(const AlgebraBuilder::Comp& c) {
  if (c.kind == CompKind::Unit) return {};
  return c.from_fine.empty() ? c.from : c.from_fine;
}
std::string fine_to(const AlgebraBuilder::Comp& c) {
  if (c.kind == CompKind::Unit) return {};
  return c.to_fine.empty() ? c.to : c.to_fine;
}
bool x_kind(CompKind k) { return k == CompKind::X || k == CompKind::Unit; }
bool h_kind(CompKind k) { return k == CompKind::H || k == CompKind::Idempotent; }
bool y_kind(CompKind k) { return k == CompKind::Y || k == CompKind::Unit; }
}  // namespace

std::string AlgebraBuilder::canonical_name(const Comp& x, const Comp& h, const Comp& y) const {
  std::vector<std::string> parts;
  if (x.kind == CompKind::X) parts.push_back(x.id);
  if (h.kind == CompKind::H) parts.push_back(h.id);
  if (y.kind == CompKind::Y) parts.push_back(y.id);
  if (parts.empty()) return h.id;
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += "." + parts[i];
  return out;
}

void AlgebraBuilder::generate_basis() {
  ensure_units();
  basis.clear();
  for (const auto& x : comps) {
    if (!x_kind(x.kind)) continue;
    for (const auto& h : comps) {
      if (!h_kind(h.kind) || h.to != x.from || !fine_match(fine_from(x), fine_to(h))) continue;
      for (const auto& y : comps) {
        if (!y_kind(y.kind) || y.to != h.from || !fine_match(fine_from(h), fine_to(y))) continue;
        if (x.kind == CompKind::Unit && x.to != h.to) continue;
        if (y.kind == CompKind::Unit && y.from != h.from) continue;
        int d = x.degree + h.degree + y.degree;
        if (d > cutoff) continue;
        basis.push_back({canonical_name(x, h, y), x.to, y.from, d, x.id, h.id, y.id});
      }
    }
  }
}

AlgebraPtr AlgebraBuilder::build() const {
  AlgebraBuilder b = *this;
  b.ensure_units();
  auto a = std::shared_ptr<TriangularAlgebra>(new TriangularAlgebra());
  a->name_ = b.name;
  a->field_ = b.field;
  a->cutoff_ = b.cutoff;
  a->complete_ = b.complete;

  // weights
  std::set<std::string> ws(b.weights.begin(), b.weights.end());
  for (auto& o : b.objects)
    if (!o.weight.empty()) ws.insert(o.weight);
  for (auto& [mu, lam] : b.covers) {
    ws.insert(mu);
    ws.insert(lam);
  }
  a->weights_.assign(ws.begin(), ws.end());
  for (std::size_t w = 0; w < a->weights_.size(); ++w) a->weight_ids_[a->weights_[w]] = static_cast<int>(w);
  const int nw = static_cast<int>(a->weights_.size());
  a->less_.assign(nw, std::vector<bool>(nw, false));
  for (auto& [mu, lam] : b.covers) {
    int m = a->weight_ids_.at(mu), l = a->weight_ids_.at(lam);
    if (m == l) throw IntegrityError(mu, "weight below itself");
    a->covers_.push_back({m, l});
    a->less_[m][l] = true;
  }
  std::sort(a->covers_.begin(), a->covers_.end());
  a->covers_.erase(std::unique(a->covers_.begin(), a->covers_.end()), a->covers_.end());
  for (int k = 0; k < nw; ++k)
    for (int i = 0; i < nw; ++i)
      if (a->less_[i][k])
        for (int j = 0; j < nw; ++j)
          if (a->less_[k][j]) a->less_[i][j] = true;
  for (int i = 0; i < nw; ++i)
    if (a->less_[i][i]) throw IntegrityError(a->weights_[i], "cycle in weight poset");

  // objects
  auto objs = sorted_by(b.objects, [](const Obj& o) { return o.name; });
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (a->object_ids_.count(objs[i].name)) throw IntegrityError(objs[i].name, "duplicate object");
    a->object_ids_[objs[i].name] = static_cast<int>(i);
    ObjectInfo info;
    info.name = objs[i].name;
    info.weight = objs[i].weight.empty() ? -1 : a->weight_ids_.at(objs[i].weight);
    a->objects_.push_back(info);
  }
  auto obj = [&](const std::string& n) {
    auto it = a->object_ids_.find(n);
    if (it == a->object_ids_.end()) throw IntegrityError(n, "undeclared object");
    return it->second;
  };

  // components
  auto comps = sorted_by(b.comps, [](const Comp& c) { return c.id; });
  a->unit_comp_.assign(objs.size(), -1);
  a->idem_comp_.assign(objs.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (a->comp_ids_.count(comps[c].id)) throw IntegrityError(comps[c].id, "duplicate basis id");
    a->comp_ids_[comps[c].id] = static_cast<int>(c);
    Component k{comps[c].id, comps[c].kind, obj(comps[c].from), obj(comps[c].to), comps[c].degree,
                fine_from(comps[c]), fine_to(comps[c])};
    if (k.kind == CompKind::Unit) a->unit_comp_[k.to] = static_cast<int>(c);
    if (k.kind == CompKind::Idempotent) {
      if (k.from != k.to) throw IntegrityError(k.id, "IDEMPOTENT must have equal endpoints");
      a->idem_comp_[k.to] = static_cast<int>(c);
    }
    a->comps_.push_back(k);
  }

  // basis
  auto elems = sorted_by(b.basis, [](const Elem& e) { return e.id; });
  const int n = static_cast<int>(elems.size());
  for (int i = 0; i < n; ++i) {
    const auto& e = elems[i];
    if (a->basis_ids_.count(e.id)) throw IntegrityError(e.id, "duplicate basis element");
    if (a->comp_ids_.count(e.id)) {
      const auto& c = a->comps_[a->comp_ids_.at(e.id)];
      bool self = (c.kind == CompKind::H || c.kind == CompKind::Idempotent || c.kind == CompKind::X ||
                   c.kind == CompKind::Y);
      if (!self) throw IntegrityError(e.id, "basis element shadows a component");
    }
    a->basis_ids_[e.id] = i;
    BasisElement be{e.id, obj(e.target), obj(e.source), e.degree, a->component_index(e.x), a->component_index(e.h),
                    a->component_index(e.y)};
    if (be.x >= 0 && be.h >= 0 && be.y >= 0) a->triples_[{be.x, be.h, be.y}] = i;
    a->basis_.push_back(be);
  }
  a->min_degree_ = 0;
  for (auto& e : a->basis_) a->min_degree_ = std::min(a->min_degree_, e.degree);

  auto id_of = [&](const std::string& id) {
    int k = a->basis_index(id);
    if (k < 0) throw IntegrityError(id, "undeclared basis element");
    return k;
  };
  auto to_sparse = [&](const Terms& t) {
    Accumulator acc;
    for (auto& [c, id] : t) acc.add(id_of(id), c);
    return acc.take();
  };

  // structure constants
  a->table_.assign(static_cast<std::size_t>(n) * n, std::nullopt);
  for (auto& [key, terms] : b.products) {
    int i = id_of(key.first), j = id_of(key.second);
    SparseVec v = to_sparse(terms);
    if (a->basis_[i].degree + a->basis_[j].degree > a->cutoff_) continue;
    if (a->basis_[i].source != a->basis_[j].target) {
      if (!v.empty()) throw IntegrityError(key.first + " * " + key.second, "product of non-composable elements");
      continue;
    }
    a->table_[static_cast<std::size_t>(i) * n + j] = std::move(v);
  }
  for (int o = 0; o < a->num_objects(); ++o) {
    int e = a->idem_comp_[o];
    if (e < 0 || a->unit_comp_[o] < 0) continue;
    int eb = a->triple_index(a->unit_comp_[o], e, a->unit_comp_[o]);
    if (eb < 0) continue;
    for (int k = 0; k < n; ++k) {
      auto& left = a->table_[static_cast<std::size_t>(eb) * n + k];
      if (!left && a->basis_[k].target == o && a->basis_[k].degree <= a->cutoff_) left = a->basis_vector(k);
      auto& right = a->table_[static_cast<std::size_t>(k) * n + eb];
      if (!right && a->basis_[k].source == o && a->basis_[k].degree <= a->cutoff_) right = a->basis_vector(k);
    }
  }
  if (a->complete_)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto& slot = a->table_[static_cast<std::size_t>(i) * n + j];
        if (!slot && a->basis_[i].source == a->basis_[j].target &&
            a->basis_[i].degree + a->basis_[j].degree <= a->cutoff_)
          slot = SparseVec{};
      }

  // units
  for (auto& o : objs) {
    int i = a->object_ids_.at(o.name);
    if (o.unit) {
      a->objects_[i].unit = to_sparse(*o.unit);
      continue;
    }
    int e = a->idem_comp_[i];
    int eb = (e >= 0 && a->unit_comp_[i] >= 0) ? a->triple_index(a->unit_comp_[i], e, a->unit_comp_[i]) : -1;
    if (eb < 0) throw IntegrityError(o.name, "missing unit expansion");
    a->objects_[i].unit = a->basis_vector(eb);
  }

  for (auto& [key, v] : b.lower_bounds) a->lower_[{obj(key.first), obj(key.second)}] = v;
  return a;
}

AlgebraBuilder AlgebraBuilder::from(const TriangularAlgebra& a) {
  AlgebraBuilder b;
  b.name = a.name();
  b.field = a.field();
  b.cutoff = a.cutoff();
  b.complete = a.complete();
  for (int w = 0; w < a.num_weights(); ++w) b.weights.push_back(a.weight(w));
  for (auto& [m, l] : a.covers()) b.covers.push_back({a.weight(m), a.weight(l)});
  auto terms = [&](const SparseVec& v) {
    Terms t;
    for (auto& [i, c] : v) t.push_back({c, a.element(i).id});
    return t;
  };
  for (int i = 0; i < a.num_objects(); ++i) {
    const auto& o = a.object(i);
    b.objects.push_back({o.name, o.weight >= 0 ? a.weight(o.weight) : "", terms(o.unit)});
  }
  for (int c = 0; c < a.num_components(); ++c) {
    const auto& k = a.component(c);
    Comp bc{k.id, k.kind, a.object(k.from).name, a.object(k.to).name, k.degree, {}, {}};
    if (k.kind != CompKind::Unit) {
      if (k.from_fine != bc.from) bc.from_fine = k.from_fine;
      if (k.to_fine != bc.to) bc.to_fine = k.to_fine;
    }
    b.comps.push_back(bc);
  }
  auto cid = [&](int c) { return c >= 0 ? a.component(c).id : std::string(); };
  for (int i = 0; i < a.size(); ++i) {
    const auto& e = a.element(i);
    b.basis.push_back(
        {e.id, a.object(e.target).name, a.object(e.source).name, e.degree, cid(e.x), cid(e.h), cid(e.y)});
  }
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      if (a.element(i).source != a.element(j).target) continue;
      if (const SparseVec* p = a.product(i, j)) b.products[{a.element(i).id, a.element(j).id}] = terms(*p);
    }
  for (auto& [key, v] : a.lower_bounds()) b.lower_bounds[{a.object(key.first).name, a.object(key.second).name}] = v;
  return b;
}

// ---------------------------------------------------------------- verification

bool VerificationReport::pass() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.pass; });
}

const AxiomResult* VerificationReport::find(const std::string& axiom) const {
  for (auto& r : axioms)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

namespace {
struct Collector {
  AxiomResult r;
  explicit Collector(std::string name) { r.axiom = std::move(name); }
  void fail(const std::string& msg) {
    r.pass = false;
    if (r.failures.size() < 5) r.failures.push_back(msg);
    ++r.failure_count;
  }
};

std::string profile(const TriangularAlgebra& a, int i, int j) {
  return "profile (" + a.object(i).name + "," + a.object(j).name + ")";
}
}  // namespace

VerificationReport verify_axioms(const TriangularAlgebra& a) {
  VerificationReport rep;
  rep.algebra = a.name();
  rep.cutoff = a.cutoff();
  const int n = a.size();
  const int D = a.cutoff();

  Collector basis("basis"), degree("degree"), assoc("associativity"), unit("unit"), special("special"),
      direction("direction"), finite("finiteness"), lower("lower-bound");

  auto kind = [&](int c) { return a.component(c).kind; };
  // (i) every element is a product of declared components, and every such product is an element
  for (int b = 0; b < n; ++b) {
    const auto& e = a.element(b);
    if (e.x < 0 || e.h < 0 || e.y < 0) {
      basis.fail(profile(a, e.target, e.source) + ": element " + e.id + " is not a product of declared X/H/Y");
      continue;
    }
    const auto &x = a.component(e.x), &h = a.component(e.h), &y = a.component(e.y);
    bool shape = x_kind(kind(e.x)) && h_kind(kind(e.h)) && y_kind(kind(e.y)) && x.from == h.to &&
                 h.from == y.to && x.to == e.target && y.from == e.source && fine_match(x.from_fine, h.to_fine) &&
                 fine_match(h.from_fine, y.to_fine);
    if (!shape) basis.fail(profile(a, e.target, e.source) + ": element " + e.id + " has inconsistent factors");
    if (x.degree + h.degree + y.degree != e.degree)
      degree.fail("element " + e.id + " has degree " + std::to_string(e.degree) + ", factors sum to " +
                  std::to_string(x.degree + h.degree + y.degree));
  }
  for (int xc = 0; xc < a.num_components(); ++xc) {
    if (!x_kind(kind(xc))) continue;
    const auto& x = a.component(xc);
    for (int hc = 0; hc < a.num_components(); ++hc) {
      const auto& h = a.component(hc);
      if (!h_kind(h.kind) || h.to != x.from || !fine_match(x.from_fine, h.to_fine)) continue;
      if (x.kind == CompKind::Unit && x.to != h.to) continue;
      for (int yc = 0; yc < a.num_components(); ++yc) {
        const auto& y = a.component(yc);
        if (!y_kind(y.kind) || y.to != h.from || !fine_match(h.from_fine, y.to_fine)) continue;
        if (y.kind == CompKind::Unit && y.from != h.from) continue;
        if (x.degree + h.degree + y.degree > D) continue;
        if (a.triple_index(xc, hc, yc) < 0)
          basis.fail(profile(a, x.to, y.from) + ": product " + x.id + "*" + h.id + "*" + y.id +
                     " is missing from the basis");
      }
    }
  }
  // closure, degree additivity
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto &ei = a.element(i), &ej = a.element(j);
      if (ei.source != ej.target || ei.degree + ej.degree > D) continue;
      const SparseVec* p = a.product(i, j);
      if (!p) {
        basis.fail(profile(a, ei.target, ej.source) + ": product " + ei.id + " * " + ej.id + " unknown");
        continue;
      }
      for (auto& [k, c] : *p) {
        const auto& ek = a.element(k);
        if (ek.degree != ei.degree + ej.degree)
          degree.fail(ei.id + " * " + ej.id + " has term " + ek.id + " of degree " + std::to_string(ek.degree));
        if (ek.target != ei.target || ek.source != ej.source)
          basis.fail(profile(a, ei.target, ej.source) + ": " + ei.id + " * " + ej.id + " has term " + ek.id +
                     " outside the profile");
      }
    }
  // associativity on composable triples with all partial degrees <= D
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto &ei = a.element(i), &ej = a.element(j);
      if (ei.source != ej.target || ei.degree + ej.degree > D) continue;
      const SparseVec* ij = a.product(i, j);
      if (!ij) continue;
      for (int k = 0; k < n; ++k) {
        const auto& ek = a.element(k);
        if (ej.source != ek.target) continue;
        if (ej.degree + ek.degree > D || ei.degree + ej.degree + ek.degree > D) continue;
        const SparseVec* jk = a.product(j, k);
        if (!jk) continue;
        Accumulator l, r;
        bool known = true;
        for (auto& [t, c] : *ij) {
          const SparseVec* p = a.product(t, k);
          if (!p) {
            known = false;
            break;
          }
          l.add(*p, c);
        }
        for (auto& [t, c] : *jk) {
          if (!known) break;
          const SparseVec* p = a.product(i, t);
          if (!p) {
            known = false;
            break;
          }
          r.add(*p, c);
        }
        if (known && !sparse_equal(l.take(), r.take()))
          assoc.fail("(" + ei.id + "*" + ej.id + ")*" + ek.id + " != " + ei.id + "*(" + ej.id + "*" + ek.id + ")");
      }
    }
  // units and orthogonality
  for (int o = 0; o < a.num_objects(); ++o) {
    const SparseVec& u = a.unit(o);
    for (auto& [b, c] : u) {
      const auto& e = a.element(b);
      if (e.target != o || e.source != o || e.degree != 0)
        unit.fail("unit of " + a.object(o).name + " uses " + e.id + " outside 1_i A_0 1_i");
      if (a.special(o) && !a.pure_h(b))
        unit.fail("unit of special " + a.object(o).name + " uses " + e.id + ", not in H(s,s)");
    }
    for (int b = 0; b < n; ++b) {
      const auto& e = a.element(b);
      if (e.degree > D) continue;
      SparseVec bv = a.basis_vector(b);
      try {
        if (e.target == o && !sparse_equal(a.multiply(u, bv), bv))
          unit.fail("1_" + a.object(o).name + " * " + e.id + " != " + e.id);
        if (e.source == o && !sparse_equal(a.multiply(bv, u), bv))
          unit.fail(e.id + " * 1_" + a.object(o).name + " != " + e.id);
      } catch (const std::out_of_range&) {
        unit.fail("products with the unit of " + a.object(o).name + " are not tabulated");
      }
    }
  }
  // X(s,s) = Y(s,s) = {1_s}; endpoints of X/H/Y are special where required
  for (int c = 0; c < a.num_components(); ++c) {
    const auto& k = a.component(c);
    switch (k.kind) {
      case CompKind::X:
        if (!a.special(k.from)) special.fail("X element " + k.id + " does not end at a special idempotent");
        else if (k.from == k.to && fine_match(k.from_fine, k.to_fine) && !k.from_fine.empty() &&
                 k.from_fine == k.to_fine)
          special.fail("X(" + a.object(k.to).name + "," + a.object(k.from).name + ") contains " + k.id +
                       " besides the unit");
        break;
      case CompKind::Y:
        if (!a.special(k.to)) special.fail("Y element " + k.id + " does not start at a special idempotent");
        else if (k.from == k.to && !k.from_fine.empty() && k.from_fine == k.to_fine)
          special.fail("Y(" + a.object(k.to).name + "," + a.object(k.from).name + ") contains " + k.id +
                       " besides the unit");
        break;
      case CompKind::H:
      case CompKind::Idempotent:
        if (!a.special(k.from) || !a.special(k.to))
          special.fail("H element " + k.id + " is not between special idempotents");
        break;
      default: break;
    }
  }
  for (int o = 0; o < a.num_objects(); ++o)
    if (a.special(o) && a.unit_component(o) < 0) special.fail("special " + a.object(o).name + " lacks 1_s");
  // direction axioms
  for (int c = 0; c < a.num_components(); ++c) {
    const auto& k = a.component(c);
    if (!a.special(k.from) || !a.special(k.to)) continue;
    if (k.kind == CompKind::Unit) continue;
    int wt = a.object(k.to).weight, wf = a.object(k.from).weight;
    if (k.kind == CompKind::X && !(k.from == k.to) && !a.less(wf, wt))
      direction.fail("X element " + k.id + " needs weight(" + a.object(k.to).name + ") > weight(" +
                     a.object(k.from).name + ")");
    if ((k.kind == CompKind::H || k.kind == CompKind::Idempotent) && wt != wf)
      direction.fail("H element " + k.id + " joins different weights");
    if (k.kind == CompKind::Y && !(k.from == k.to) && !a.less(wt, wf))
      direction.fail("Y element " + k.id + " needs weight(" + a.object(k.to).name + ") < weight(" +
                     a.object(k.from).name + ")");
  }
  // finiteness: holds on declared data; report what was checked
  for (int o = 0; o < a.num_objects(); ++o) {
    if (a.special(o)) continue;
    std::set<int> touched;
    for (int c = 0; c < a.num_components(); ++c) {
      const auto& k = a.component(c);
      if (k.kind == CompKind::X && k.to == o) touched.insert(k.from);
      if (k.kind == CompKind::Y && k.from == o) touched.insert(k.to);
    }
    (void)touched;  // finite by construction at the cutoff
  }
  // lower bounds
  for (int b = 0; b < n; ++b) {
    const auto& e = a.element(b);
    if (auto nb = a.lower_bound(e.target, e.source); nb && e.degree < *nb)
      lower.fail(e.id + " has degree " + std::to_string(e.degree) + " below N" + profile(a, e.target, e.source) +
                 " = " + std::to_string(*nb));
  }

  for (auto* c : {&basis, &degree, &assoc, &unit, &special, &direction, &finite, &lower}) rep.axioms.push_back(c->r);
  return rep;
}

// ---------------------------------------------------------------- derived algebras

std::set<int> upper_set_of(const TriangularAlgebra& a, int lambda) {
  std::set<int> s;
  for (int w = 0; w < a.num_weights(); ++w)
    if (a.leq(lambda, w)) s.insert(w);
  return s;
}

bool is_upper_set(const TriangularAlgebra& a, const std::set<int>& ws) {
  for (int m : ws)
    for (int v = 0; v < a.num_weights(); ++v)
      if (a.less(m, v) && !ws.count(v)) return false;
  return true;
}

bool is_lower_set(const TriangularAlgebra& a, const std::set<int>& ws) {
  for (int m : ws)
    for (int v = 0; v < a.num_weights(); ++v)
      if (a.less(v, m) && !ws.count(v)) return false;
  return true;
}

std::set<int> weight_set(const TriangularAlgebra& a, const std::vector<std::string>& labels) {
  std::set<int> s;
  for (auto& l : labels) {
    int w = a.weight_index(l);
    if (w < 0) throw IntegrityError(l, "unknown weight");
    s.insert(w);
  }
  return s;
}

namespace {

// Keep the basis elements accepted by `keep`; products are those of A with other terms deleted.
void filter_basis(AlgebraBuilder& b, const TriangularAlgebra& a, const std::function<bool(int)>& keep) {
  std::set<std::string> kept;
  std::vector<AlgebraBuilder::Elem> elems;
  for (auto& e : b.basis) {
    int i = a.basis_index(e.id);
    if (keep(i)) {
      kept.insert(e.id);
      elems.push_back(e);
    }
  }
  b.basis = elems;
  auto filt = [&](const AlgebraBuilder::Terms& t) {
    AlgebraBuilder::Terms out;
    for (auto& term : t)
      if (kept.count(term.second)) out.push_back(term);
    return out;
  };
  std::map<std::pair<std::string, std::string>, AlgebraBuilder::Terms> prods;
  for (auto& [key, t] : b.products)
    if (kept.count(key.first) && kept.count(key.second)) prods[key] = filt(t);
  b.products = prods;
  for (auto& o : b.objects)
    if (o.unit) o.unit = filt(*o.unit);
}

}  // namespace

AlgebraPtr quotient_upper_set(const TriangularAlgebra& a, const std::set<int>& upper) {
  if (!is_upper_set(a, upper)) throw NotUpperSet("weight set is not an upper set");
  AlgebraBuilder b = AlgebraBuilder::from(a);
  std::string label;
  for (int w : upper) label += (label.empty() ? "" : ",") + a.weight(w);
  b.name = a.name() + "/{" + label + "}";
  std::set<std::string> keep_obj;  // specials that survive
  for (int o = 0; o < a.num_objects(); ++o)
    if (a.special(o) && upper.count(a.object(o).weight)) keep_obj.insert(a.object(o).name);
  auto in_s = [&](int o) { return a.special(o) && upper.count(a.object(o).weight); };
  filter_basis(b, a, [&](int i) {
    const auto& e = a.element(i);
    if (e.x < 0 || e.y < 0) return false;
    return in_s(a.component(e.x).from) && in_s(a.component(e.y).to);
  });
  std::vector<AlgebraBuilder::Comp> comps;
  for (auto& c : b.comps) {
    int from = a.object_index(c.from), to = a.object_index(c.to);
    bool ok = true;
    switch (c.kind) {
      case CompKind::X: ok = in_s(from); break;
      case CompKind::Y: ok = in_s(to); break;
      default: ok = in_s(from) && in_s(to); break;
    }
    if (ok) comps.push_back(c);
  }
  b.comps = comps;
  for (auto& o : b.objects)
    if (!o.weight.empty() && !keep_obj.count(o.name)) o.weight.clear();
  std::vector<std::string> ws;
  for (int w : upper) ws.push_back(a.weight(w));
  b.weights = ws;
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto& [m, l] : b.covers)
    if (upper.count(a.weight_index(m)) && upper.count(a.weight_index(l))) covers.push_back({m, l});
  b.covers = covers;
  return b.build();
}

std::map<int, int> ideal_quotient_dims(const TriangularAlgebra& a, const std::set<int>& upper) {
  const int top = a.cutoff() + std::min(0, a.min_degree());
  std::map<int, SparseEchelon> ideal;
  std::map<int, int> total;
  for (int b = 0; b < a.size(); ++b)
    if (a.element(b).degree <= top) total[a.element(b).degree]++;
  for (int s = 0; s < a.num_objects(); ++s) {
    if (!a.special(s) || upper.count(a.object(s).weight)) continue;
    for (int h = 0; h < a.size(); ++h) {
      const auto& eh = a.element(h);
      if (eh.target != s) continue;
      AlgebraElement sh = a.multiply(a.unit(s), a.basis_vector(h));
      if (sh.empty()) continue;
      for (int g = 0; g < a.size(); ++g) {
        const auto& eg = a.element(g);
        if (eg.source != s || eg.degree + eh.degree > top) continue;
        ideal[eg.degree + eh.degree].add(a.multiply(a.basis_vector(g), sh));
      }
    }
  }
  std::map<int, int> out;
  for (auto& [d, n] : total) {
    int r = ideal.count(d) ? ideal.at(d).rank() : 0;
    if (n - r) out[d] = n - r;
  }
  return out;
}

AlgebraPtr restrict_objects(const TriangularAlgebra& a, const std::set<int>& objs, const std::set<int>& weights,
                            const std::string& name) {
  AlgebraBuilder b = AlgebraBuilder::from(a);
  b.name = name;
  filter_basis(b, a, [&](int i) {
    const auto& e = a.element(i);
    if (!objs.count(e.target) || !objs.count(e.source)) return false;
    for (int c : {e.x, e.h, e.y})
      if (c >= 0 && (!objs.count(a.component(c).from) || !objs.count(a.component(c).to))) return false;
    return true;
  });
  std::vector<AlgebraBuilder::Comp> comps;
  for (auto& c : b.comps)
    if (objs.count(a.object_index(c.from)) && objs.count(a.object_index(c.to))) comps.push_back(c);
  b.comps = comps;
  std::vector<AlgebraBuilder::Obj> os;
  for (auto& o : b.objects)
    if (objs.count(a.object_index(o.name))) os.push_back(o);
  b.objects = os;
  std::vector<std::string> ws;
  for (int w : weights) ws.push_back(a.weight(w));
  b.weights = ws;
  std::vector<std::pair<std::string, std::string>> covers;
  for (auto& [m, l] : b.covers)
    if (weights.count(a.weight_index(m)) && weights.count(a.weight_index(l))) covers.push_back({m, l});
  b.covers = covers;
  std::map<std::pair<std::string, std::string>, int> lb;
  for (auto& [k, v] : b.lower_bounds)
    if (objs.count(a.object_index(k.first)) && objs.count(a.object_index(k.second))) lb[k] = v;
  b.lower_bounds = lb;
  return b.build();
}

AlgebraPtr cartan_algebra(const TriangularAlgebra& a, int lambda) {
  auto sl = a.specials_of_weight(lambda);
  if (sl.empty()) throw EmptyFiber("no special idempotent of weight " + a.weight(lambda));
  std::set<int> objs(sl.begin(), sl.end());
  AlgebraBuilder b = AlgebraBuilder::from(a);
  b.name = a.name() + "[" + a.weight(lambda) + "]";
  filter_basis(b, a, [&](int i) {
    const auto& e = a.element(i);
    return a.pure_h(i) && objs.count(e.target) && objs.count(e.source);
  });
  std::vector<AlgebraBuilder::Comp> comps;
  for (auto& c : b.comps)
    if ((c.kind == CompKind::H || c.kind == CompKind::Idempotent || c.kind == CompKind::Unit) &&
        objs.count(a.object_index(c.from)) && objs.count(a.object_index(c.to)))
      comps.push_back(c);
  b.comps = comps;
  std::vector<AlgebraBuilder::Obj> os;
  for (auto& o : b.objects)
    if (objs.count(a.object_index(o.name))) os.push_back(o);
  b.objects = os;
  b.weights = {a.weight(lambda)};
  b.covers.clear();
  std::map<std::pair<std::string, std::string>, int> lb;
  for (auto& [k, v] : b.lower_bounds)
    if (objs.count(a.object_index(k.first)) && objs.count(a.object_index(k.second))) lb[k] = v;
  b.lower_bounds = lb;
  return b.build();
}

AlgebraPtr gamma_algebra(const TriangularAlgebra& a, const std::set<int>& gamma) {
  if (!is_lower_set(a, gamma)) throw NotLowerSet("weight set is not a lower set");
  std::set<int> objs;
  for (int o = 0; o < a.num_objects(); ++o)
    if (a.special(o) && gamma.count(a.object(o).weight)) objs.insert(o);
  std::string label;
  for (int w : gamma) label += (label.empty() ? "" : ",") + a.weight(w);
  return restrict_objects(a, objs, gamma, a.name() + "<" + label + ">");
}

AlgebraPtr opposite(const TriangularAlgebra& a) {
  AlgebraBuilder b = AlgebraBuilder::from(a);
  const std::string suffix = "^op";
  if (b.name.size() > suffix.size() && b.name.compare(b.name.size() - suffix.size(), suffix.size(), suffix) == 0)
    b.name.erase(b.name.size() - suffix.size());
  else
    b.name += suffix;
  std::map<std::string, const AlgebraBuilder::Comp*> byid;
  for (auto& c : b.comps) {
    std::swap(c.from, c.to);
    std::swap(c.from_fine, c.to_fine);
    if (c.kind == CompKind::X)
      c.kind = CompKind::Y;
    else if (c.kind == CompKind::Y)
      c.kind = CompKind::X;
  }
  for (auto& c : b.comps) byid[c.id] = &c;
  std::map<std::string, std::string> rename;
  for (auto& e : b.basis) {
    std::swap(e.target, e.source);
    std::swap(e.x, e.y);
    std::string nid = e.id;
    if (byid.count(e.x) && byid.count(e.h) && byid.count(e.y))
      nid = b.canonical_name(*byid[e.x], *byid[e.h], *byid[e.y]);
    rename[e.id] = nid;
    e.id = nid;
  }
  auto ren = [&](AlgebraBuilder::Terms t) {
    for (auto& term : t) term.second = rename.at(term.second);
    return t;
  };
  std::map<std::pair<std::string, std::string>, AlgebraBuilder::Terms> prods;
  for (auto& [key, t] : b.products) prods[{rename.at(key.second), rename.at(key.first)}] = ren(t);
  b.products = prods;
  for (auto& o : b.objects)
    if (o.unit) o.unit = ren(*o.unit);
  std::map<std::pair<std::string, std::string>, int> lb;
  for (auto& [k, v] : b.lower_bounds) lb[{k.second, k.first}] = v;
  b.lower_bounds = lb;
  return b.build();
}

AlgebraPtr reduce_presentation(const TriangularAlgebra& a, ReduceMode mode) {
  if (mode == ReduceMode::ToSpecial) {
    std::set<int> objs, ws;
    for (int o = 0; o < a.num_objects(); ++o)
      if (a.special(o)) objs.insert(o);
    for (int w = 0; w < a.num_weights(); ++w) ws.insert(w);
    return restrict_objects(a, objs, ws, a.name());
  }
  AlgebraBuilder b = AlgebraBuilder::from(a);
  // special s -> weight label of s
  std::map<std::string, std::string> objmap;
  std::map<std::string, int> fiber;
  for (int o = 0; o < a.num_objects(); ++o) {
    const auto& info = a.object(o);
    if (info.weight >= 0) {
      objmap[info.name] = a.weight(info.weight);
      ++fiber[a.weight(info.weight)];
    } else {
      objmap[info.name] = info.name;
    }
  }
  for (int o = 0; o < a.num_objects(); ++o)
    if (!a.special(o) && fiber.count(a.object(o).name))
      throw IntegrityError(a.object(o).name, "object name collides with a weight label");
  std::map<std::string, std::string> unit_rename;
  std::vector<AlgebraBuilder::Comp> comps;
  std::map<std::string, const AlgebraBuilder::Comp*> byid;
  for (auto& c : b.comps) {
    if (c.kind == CompKind::Unit) {
      unit_rename[c.id] = AlgebraBuilder::unit_id(objmap.at(c.from));
      continue;
    }
    AlgebraBuilder::Comp nc = c;
    nc.from_fine = c.from_fine.empty() ? c.from : c.from_fine;
    nc.to_fine = c.to_fine.empty() ? c.to : c.to_fine;
    nc.from = objmap.at(c.from);
    nc.to = objmap.at(c.to);
    if (nc.kind == CompKind::Idempotent && fiber[nc.to] > 1) nc.kind = CompKind::H;
    comps.push_back(nc);
  }
  std::map<std::string, AlgebraBuilder::Obj> objs;
  for (int o = 0; o < a.num_objects(); ++o) {
    const auto& info = a.object(o);
    const std::string& nn = objmap.at(info.name);
    auto& slot = objs[nn];
    slot.name = nn;
    slot.weight = info.weight >= 0 ? nn : "";
    AlgebraBuilder::Terms t = slot.unit.value_or(AlgebraBuilder::Terms{});
    for (auto& [i, c] : info.unit) t.push_back({c, a.element(i).id});
    slot.unit = t;
  }
  b.objects.clear();
  for (auto& [n, o] : objs) b.objects.push_back(o);
  for (auto& [n, o] : objs)
    if (!o.weight.empty()) comps.push_back({AlgebraBuilder::unit_id(n), CompKind::Unit, n, n, 0, {}, {}});
  b.comps = comps;
  for (auto& c : b.comps) byid[c.id] = &c;
  std::map<std::string, std::string> rename;
  for (auto& e : b.basis) {
    e.target = objmap.at(e.target);
    e.source = objmap.at(e.source);
    if (unit_rename.count(e.x)) e.x = unit_rename[e.x];
    if (unit_rename.count(e.y)) e.y = unit_rename[e.y];
    std::string nid = e.id;
    if (byid.count(e.x) && byid.count(e.h) && byid.count(e.y))
      nid = b.canonical_name(*byid[e.x], *byid[e.h], *byid[e.y]);
    rename[e.id] = nid;
    e.id = nid;
  }
  auto ren = [&](AlgebraBuilder::Terms t) {
    for (auto& term : t) term.second = rename.at(term.second);
    return t;
  };
  std::map<std::pair<std::string, std::string>, AlgebraBuilder::Terms> prods;
  for (auto& [key, t] : b.products) prods[{rename.at(key.first), rename.at(key.second)}] = ren(t);
  // pairs newly composable after merging objects multiply to zero
  for (auto& e1 : b.basis)
    for (auto& e2 : b.basis)
      if (e1.source == e2.target && e1.degree + e2.degree <= b.cutoff && !prods.count({e1.id, e2.id}))
        prods[{e1.id, e2.id}] = {};
  b.products = prods;
  for (auto& o : b.objects)
    if (o.unit) o.unit = ren(*o.unit);
  std::map<std::pair<std::string, std::string>, int> lb;
  for (auto& [k, v] : b.lower_bounds) {
    auto key = std::make_pair(objmap.at(k.first), objmap.at(k.second));
    lb[key] = lb.count(key) ? std::min(lb[key], v) : v;
  }
  b.lower_bounds = lb;
  return b.build();
}

}  // namespace gta
