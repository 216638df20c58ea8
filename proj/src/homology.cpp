#include "gta/homology.hpp"

#include <algorithm>
#include <set>

namespace gta {

namespace {

long lo_of(const GradedModule& v) { return v.window().bounded_lo() ? v.window().lo : v.min_degree(); }
long hi_of(const GradedModule& v) { return v.window().bounded_hi() ? v.window().hi : v.max_degree(); }

// Basis elements by source object.
std::vector<std::vector<int>> by_source(const TriangularAlgebra& a) {
  std::vector<std::vector<int>> out(a.num_objects());
  for (int g = 0; g < a.size(); ++g) out[a.element(g).source].push_back(g);
  return out;
}

struct System {
  std::vector<std::pair<int, int>> unknowns;
  SparseEchelon rows;
};

System build_system(const GradedModule& v, const GradedModule& w, int d, long lo, long hi) {
  const auto& a = v.algebra();
  System s;
  std::map<int, int> base;  // v -> first unknown
  for (int i = 0; i < v.size(); ++i) {
    long deg = v.vec(i).degree;
    if (deg < lo || deg > hi) continue;
    const auto& blk = w.block(v.vec(i).object, v.vec(i).degree + d);
    base[i] = static_cast<int>(s.unknowns.size());
    for (int x : blk) s.unknowns.emplace_back(i, x);
  }
  auto src = by_source(a);
  for (auto& [i, b0] : base) {
    const auto& vi = v.vec(i);
    const auto& wblk = w.block(vi.object, vi.degree + d);
    for (int g : src[vi.object]) {
      const auto& e = a.element(g);
      long td = static_cast<long>(vi.degree) + e.degree;
      if (td < lo || td > hi) continue;
      if (!v.known(g, i)) continue;
      const auto& tblk = w.block(e.target, static_cast<int>(td) + d);
      if (tblk.empty()) continue;
      bool ok = true;
      for (int x : wblk) ok = ok && w.known(g, x);
      if (!ok) continue;
      std::map<int, Accumulator> eq;  // target vector -> row
      for (auto& [u, c] : v.act(g, i)) {
        auto it = base.find(u);
        if (it == base.end()) throw std::logic_error("hom system: image leaves the source range");
        for (std::size_t k = 0; k < tblk.size(); ++k) eq[tblk[k]].add(it->second + static_cast<int>(k), c);
      }
      for (std::size_t k = 0; k < wblk.size(); ++k)
        for (auto& [y, c] : w.act(g, wblk[k])) eq[y].add(b0 + static_cast<int>(k), -c);
      for (auto& [y, acc] : eq)
        if (!acc.empty()) s.rows.add(acc.take());
    }
  }
  return s;
}

}  // namespace

HomSolutions hom_solutions(const GradedModule& v, const GradedModule& w, int d, long lo, long hi) {
  System s = build_system(v, w, d, lo, hi);
  const auto n = static_cast<Eigen::Index>(s.unknowns.size());
  const Field& f = v.algebra().field();
  MatQ m = zeros<Scalar>(s.rows.rank(), n, f.zero());
  Eigen::Index r = 0;
  for (auto& [p, row] : s.rows.rows()) {
    for (auto& [j, c] : row) m(r, j) = c;
    ++r;
  }
  return {s.unknowns, kernel(m, f.zero())};
}

HomDegree hom_degree(const GradedModule& v, const GradedModule& w, int d) {
  HomDegree h;
  h.degree = d;
  if (v.size() == 0) {
    h.certified = true;
    h.rule = "zero";
    return h;
  }
  const Window &vw = v.window(), &ww = w.window();
  // free on generators: f is determined by arbitrary images of the generators
  if (v.free && !v.gens.empty()) {
    bool inside = true;
    int dim = 0;
    for (auto& gen : v.gens) {
      const auto& x = v.vec(gen.front().first);
      int td = x.degree + d;
      if (!ww.contains(td)) inside = false;
      dim += static_cast<int>(w.block(x.object, td).size());
    }
    if (inside) {
      h.dim = dim;
      h.certified = true;
      h.rule = "free";
      return h;
    }
  }
  if (!v.gen_idempotent.empty() && v.gens.size() == 1) {
    const auto& x = v.vec(v.gens[0].front().first);
    int td = x.degree + d;
    if (ww.contains(td)) {
      SparseEchelon image;
      for (int k : w.block(x.object, td)) image.add(w.act(v.gen_idempotent, {{k, w.algebra().field().one()}}));
      h.dim = image.rank();
      h.certified = true;
      h.rule = "projective";
      return h;
    }
  }
  long lo = std::max<long>(lo_of(v), static_cast<long>(ww.lo) - d);
  long hi = std::min<long>(hi_of(v), static_cast<long>(ww.hi) - d);
  System s = build_system(v, w, d, lo, hi);
  h.dim = static_cast<int>(s.unknowns.size()) - s.rows.rank();
  if (!vw.bounded_lo() && !vw.bounded_hi() && !ww.bounded_lo() && !ww.bounded_hi()) {
    h.certified = true;
    h.rule = "finite";
  } else if (!ww.bounded_hi() && !vw.bounded_lo() && lo <= v.min_degree()) {
    long wmax = w.size() ? w.max_degree() : static_cast<long>(ww.lo) - 1;
    if (hi + d >= wmax || !vw.bounded_hi()) {
      h.certified = true;
      h.rule = "bounded-target";
    }
  }
  if (!h.certified) h.rule = "none";
  return h;
}

HomSpace hom_space(const GradedModule& v, const GradedModule& w) {
  HomSpace out;
  if (v.size() == 0 || (w.size() == 0 && !w.window().bounded_lo() && !w.window().bounded_hi())) {
    out.series = QSeries::zero();
    out.certified = true;
    return out;
  }
  const Window &vw = v.window(), &ww = w.window();
  long dlo, dhi;
  Direction dir;
  if (!ww.bounded_hi() && !vw.bounded_lo()) {
    long vmin = v.min_degree();
    long wmax = w.size() ? w.max_degree() : static_cast<long>(ww.lo) - 1;
    dhi = wmax - vmin;
    if (!ww.bounded_lo() && !vw.bounded_hi()) {
      dir = Direction::Poly;
      dlo = (w.size() ? w.min_degree() : 0) - static_cast<long>(v.max_degree());
    } else {
      dir = Direction::Up;
      dlo = -static_cast<long>(kInf);
      if (ww.bounded_lo()) dlo = std::max(dlo, ww.lo - vmin);
      if (vw.bounded_hi()) dlo = std::max(dlo, wmax - vw.hi);
    }
  } else if (!ww.bounded_lo() && !v.gens.empty()) {
    long gmax = -kInf;
    for (auto& g : v.gens) gmax = std::max<long>(gmax, v.vec(g.front().first).degree);
    if (w.size() == 0) {
      out.series = QSeries(Direction::Down, ww.hi - static_cast<int>(gmax));
      out.certified = true;
      return out;
    }
    dir = Direction::Down;
    dlo = w.min_degree() - gmax;
    dhi = ww.hi - gmax;
    if (!ww.bounded_hi()) {
      // W known everywhere: images of generators bound the degree
      long gmin = kInf;
      for (auto& g : v.gens) gmin = std::min<long>(gmin, v.vec(g.front().first).degree);
      dir = Direction::Poly;
      dhi = w.max_degree() - gmin;
    }
  } else {
    out.note = "no certificate applies: target not bounded above and source not finitely generated over a bounded-below target";
    out.series = QSeries(Direction::Poly);
    return out;
  }
  out.certified = true;
  if (dir == Direction::Down)
    out.series = QSeries(Direction::Down, static_cast<int>(dhi));
  else if (dir == Direction::Up)
    out.series = QSeries(Direction::Up, static_cast<int>(-dlo));
  else
    out.series = QSeries(Direction::Poly);
  for (long d = dlo; d <= dhi; ++d) {
    HomDegree h = hom_degree(v, w, static_cast<int>(d));
    if (!h.certified) {
      out.certified = false;
      if (out.note.empty()) out.note = "degree " + std::to_string(d) + " not certified";
    }
    if (h.dim) out.series.set(static_cast<int>(-d), static_cast<std::uint64_t>(h.dim));
    out.degrees[static_cast<int>(d)] = h;
  }
  return out;
}

Ext1Result ext1(const GradedModule& v, const GradedModule& w) {
  Ext1Result out;
  if (v.gens.empty() && v.size() > 0) {
    out.note = "source has no known generators";
    return out;
  }
  if (v.size() == 0) {
    out.series = QSeries::zero();
    out.certified = true;
    return out;
  }
  const auto& a = v.algebra();
  std::vector<GradedModule> parts;
  for (auto& g : v.gens) {
    const auto& x = v.vec(g.front().first);
    parts.push_back(regular_module(v.algebra_ptr(), x.object, -x.degree));
  }
  GradedModule p0 = direct_sum(parts, "P0");
  Window pw = p0.window();
  pw.hi = std::min(pw.hi, v.window().hi);
  p0.set_window(pw);
  // images of the P0 basis in V
  std::vector<SparseVec> img(p0.size());
  for (int i = 0; i < p0.size(); ++i) {
    if (!pw.contains(p0.vec(i).degree)) continue;
    const auto& lab = p0.vec(i).label;
    auto colon = lab.find(':');
    int k = std::stoi(lab.substr(0, colon));
    int g = a.basis_index(lab.substr(colon + 1));
    img[i] = v.act(a.basis_vector(g), v.gens[k]);
  }
  std::vector<SparseVec> ker;
  for (auto& [key, blk] : p0.blocks()) {
    auto [deg, obj] = key;
    if (!pw.contains(deg)) continue;
    const auto& vb = v.block(obj, deg);
    MatQ m = zeros<Scalar>(static_cast<Eigen::Index>(vb.size()), static_cast<Eigen::Index>(blk.size()),
                           a.field().zero());
    for (std::size_t j = 0; j < blk.size(); ++j)
      m.col(static_cast<Eigen::Index>(j)) = block_coords(v, vb, img[blk[j]]);
    MatQ k = kernel(m, a.field().zero());
    for (Eigen::Index c = 0; c < k.cols(); ++c) ker.push_back(from_block_coords(blk, k.col(c)));
  }
  Submodule kmod = submodule(p0, linear_span(p0, ker), "K");
  HomSpace hk = hom_space(kmod.mod, w), hp = hom_space(p0, w), hv = hom_space(v, w);
  if (!hk.certified || !hp.certified || !hv.certified) {
    out.note = "uncertified Hom: " + (hk.certified ? (hp.certified ? hv.note : hp.note) : hk.note);
    return out;
  }
  SignedSeries e = to_signed(hk.series) - to_signed(hp.series) + to_signed(hv.series);
  out.series = to_natural(e);
  out.certified = true;
  return out;
}

bool same_algebra(const TriangularAlgebra& a, const TriangularAlgebra& b) {
  if (&a == &b) return true;
  if (a.size() != b.size() || a.num_objects() != b.num_objects()) return false;
  for (int g = 0; g < a.size(); ++g)
    if (a.element(g).id != b.element(g).id) return false;
  return true;
}

IsoResult window_iso(const GradedModule& v, const GradedModule& w) {
  IsoResult r;
  r.window = intersect(v.window(), w.window());
  if (!same_algebra(v.algebra(), w.algebra())) {
    r.reason = "modules over different algebras";
    return r;
  }
  Character cv = character(v), cw = character(w);
  for (auto* pair : {&cv, &cw})
    for (auto it = pair->begin(); it != pair->end();)
      it = r.window.contains(it->first.second) ? std::next(it) : pair->erase(it);
  if (cv != cw) {
    std::set<std::pair<int, int>> keys;
    for (auto* c : {&cv, &cw})
      for (auto& [k, n] : *c) keys.insert(k);
    for (auto& k : keys) {
      int x = cv.count(k) ? cv[k] : 0, y = cw.count(k) ? cw[k] : 0;
      if (x != y) {
        r.reason = "characters differ at object " + v.algebra().object(k.first).name + ", degree " +
                   std::to_string(k.second) + " (" + std::to_string(x) + " vs " + std::to_string(y) + ")";
        return r;
      }
    }
  }
  if (cv.empty()) {
    r.iso = true;
    r.reason = "both zero on the window";
    return r;
  }
  long lo = r.window.bounded_lo() ? r.window.lo : std::min(v.min_degree(), w.min_degree());
  long hi = r.window.bounded_hi() ? r.window.hi : std::max(v.max_degree(), w.max_degree());
  HomSolutions s = hom_solutions(v, w, 0, lo, hi);
  if (s.basis.cols() == 0) {
    r.reason = "no nonzero degree-0 homomorphism on the window";
    return r;
  }
  std::map<std::pair<int, int>, int> idx;
  for (std::size_t k = 0; k < s.unknowns.size(); ++k) idx[s.unknowns[k]] = static_cast<int>(k);
  const Field& f = v.algebra().field();
  for (long t = 1; t <= 12; ++t) {
    VecQ c = VecQ::Constant(s.basis.rows(), f.zero());
    Scalar p = f.one();
    for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
      p *= f.of(t);
      c += s.basis.col(j) * p;
    }
    bool ok = true;
    for (auto& [key, vb] : v.blocks()) {
      auto [deg, obj] = key;
      if (!r.window.contains(deg)) continue;
      const auto& wb = w.block(obj, deg);
      MatQ m = zeros<Scalar>(static_cast<Eigen::Index>(wb.size()), static_cast<Eigen::Index>(vb.size()), f.zero());
      for (std::size_t j = 0; j < vb.size(); ++j)
        for (std::size_t i = 0; i < wb.size(); ++i) m(i, j) = c(idx.at({vb[j], wb[i]}));
      if (rank(m) != static_cast<int>(vb.size())) {
        ok = false;
        break;
      }
    }
    if (ok) {
      r.iso = true;
      r.reason = "generic degree-0 map invertible (t=" + std::to_string(t) + ")";
      return r;
    }
  }
  r.reason = "no invertible degree-0 map found among generic combinations";
  return r;
}

const QSeries* Multiplicities::find(const std::string& label) const {
  for (auto& [b, s] : mult)
    if (b.label == label) return &s;
  return nullptr;
}

Multiplicities multiplicities(const Theory& t, const GradedModule& v) {
  const auto& a = t.algebra();
  const Window& vw = v.window();
  if (vw.bounded_lo() && vw.bounded_hi()) throw WindowTooSmall("module known on a bounded window only");
  Multiplicities out;
  std::map<std::pair<int, int>, long> rest;  // (object, degree)
  for (auto& [k, n] : character(v)) rest[k] = n;
  Direction dir = vw.bounded_hi() ? Direction::Down : vw.bounded_lo() ? Direction::Up : Direction::Poly;
  long lo = v.size() ? v.min_degree() : 0, hi = v.size() ? v.max_degree() : -1;
  if (dir == Direction::Down) hi = vw.hi;
  if (dir == Direction::Up) lo = vw.lo;

  std::vector<bool> done(a.num_weights(), false);
  for (int step = 0; step < a.num_weights(); ++step) {
    int mu = -1;
    for (int w = 0; w < a.num_weights() && mu < 0; ++w) {
      if (done[w]) continue;
      bool minimal = true;
      for (int x = 0; x < a.num_weights(); ++x)
        if (!done[x] && a.less(x, w)) minimal = false;
      if (minimal) mu = w;
    }
    done[mu] = true;
    auto bs = t.blocks_of_weight(mu);
    if (bs.empty()) continue;
    auto specials = a.specials_of_weight(mu);
    std::vector<Character> simples;
    int lmin = 0, lmax = 0;
    MatQ m = zeros<Scalar>(static_cast<Eigen::Index>(specials.size()), static_cast<Eigen::Index>(bs.size()),
                           a.field().zero());
    for (std::size_t j = 0; j < bs.size(); ++j) {
      GradedModule l = t.irreducible(bs[j]);
      simples.push_back(character(l));
      for (auto& [k, n] : simples.back()) {
        lmin = std::min(lmin, k.second);
        lmax = std::max(lmax, k.second);
        for (std::size_t i = 0; i < specials.size(); ++i)
          if (k.first == specials[i]) {
            if (k.second != 0) throw std::logic_error("weight space of a simple outside degree 0");
            m(i, j) = a.field().of(n);
          }
      }
    }
    if (rank(m) != static_cast<int>(bs.size()))
      throw AmbiguousCharacters("simple characters of weight " + a.weight(mu) + " are linearly dependent");
    std::vector<QSeries> f(bs.size());
    for (auto& s : f)
      s = dir == Direction::Down ? QSeries(Direction::Down, static_cast<int>(hi))
          : dir == Direction::Up ? QSeries(Direction::Up, static_cast<int>(-lo))
                                 : QSeries(Direction::Poly);
    for (long d = lo; d <= hi; ++d) {
      VecQ rhs = VecQ::Constant(static_cast<Eigen::Index>(specials.size()), a.field().zero());
      bool any = false;
      for (std::size_t i = 0; i < specials.size(); ++i) {
        auto it = rest.find({specials[i], static_cast<int>(d)});
        if (it != rest.end() && it->second) {
          rhs(i) = a.field().of(it->second);
          any = true;
        }
      }
      if (!any) continue;
      auto sol = solve(m, rhs, a.field().zero());
      if (!sol) throw NegativeCoefficient("weight " + a.weight(mu) + " part in degree " + std::to_string(d) +
                                          " is not a combination of simple characters");
      for (std::size_t j = 0; j < bs.size(); ++j) {
        const mpq_class& q = (*sol)(j).value();
        if (q < 0 || q.get_den() != 1)
          throw NegativeCoefficient("multiplicity of " + bs[j].label + " in degree " + std::to_string(d) +
                                    " is " + (*sol)(j).str());
        long n = q.get_num().get_si();
        if (!n) continue;
        f[j].set(static_cast<int>(-d), static_cast<std::uint64_t>(n));
        for (auto& [k, dim] : simples[j]) {
          long td = d + k.second;
          if (td < lo || td > hi) continue;
          long& slot = rest[{k.first, static_cast<int>(td)}];
          slot -= n * dim;
          if (slot < 0)
            throw NegativeCoefficient("peeling " + bs[j].label + " leaves a negative dimension at object " +
                                      a.object(k.first).name + ", degree " + std::to_string(td));
        }
      }
    }
    for (std::size_t j = 0; j < bs.size(); ++j) out.mult.emplace_back(bs[j], f[j]);
    if (dir == Direction::Down) hi += lmin;
    if (dir == Direction::Up) lo += lmax;
  }
  for (auto& [k, n] : rest)
    if (n && k.second >= lo && k.second <= hi)
      throw NegativeCoefficient("character not exhausted at object " + a.object(k.first).name + ", degree " +
                                std::to_string(k.second));
  return out;
}

}  // namespace gta
