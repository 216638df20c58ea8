#include "gta/flags.hpp"

#include <algorithm>

#include "gta/parallel.hpp"

namespace gta {

namespace {

QSeries down_series(int trunc) { return trunc >= kInf ? QSeries(Direction::Poly) : QSeries(Direction::Down, trunc); }

int weight_of_element(const TriangularAlgebra& a, int e) {
  return a.object(a.component(a.element(e).h).to).weight;
}

// Rank of an element acting on a module.
int action_rank(const GradedModule& m, const SparseVec& elem) {
  const Field& f = m.algebra().field();
  if (m.size() == 0) return 0;
  MatQ mat = zeros<Scalar>(m.size(), m.size(), f.zero());
  for (int i = 0; i < m.size(); ++i)
    for (auto& [j, c] : m.act(elem, {{i, f.one()}})) mat(j, i) = c;
  return rank(mat);
}

GradedModule layer_sum(const Theory& t, const std::vector<std::pair<BlockRef, QSeries>>& mult, Family kind,
                       const AlgebraPtr& a, const Window& w) {
  std::vector<GradedModule> parts;
  for (auto& [b, s] : mult) {
    GradedModule base = t.standard(b, kind);
    for (auto& [e, c] : s.terms())
      for (std::uint64_t k = 0; k < c; ++k) parts.push_back(shift(base, e));
  }
  if (parts.empty()) return GradedModule(a, "0", w);
  return direct_sum(parts, "layer");
}

std::string series_note(const FlagMult& m) { return m.certified ? "" : m.note; }

}  // namespace

ProjectiveFlag build_projective_flag(const Theory& t, const BlockRef& b) {
  const auto& a = t.algebra();
  const auto& c = t.cartan(b.weight);
  GradedModule l = simple_cartan(c, b.index);
  if (l.size() == 0) throw NoSpecialWitness("simple of block " + b.label + " is zero");
  int best = 0;
  for (int i = 1; i < l.size(); ++i)
    if (std::make_pair(l.vec(i).degree, l.vec(i).object) < std::make_pair(l.vec(best).degree, l.vec(best).object))
      best = i;
  ProjectiveFlag pf;
  pf.object = c.parent_object(l.vec(best).object);
  pf.shift = -l.vec(best).degree;
  pf.q = regular_module(t.algebra_ptr(), pf.object, pf.shift);
  pf.order = a.descending_extension(b.weight);
  std::vector<int> pos(a.num_weights(), -1);
  for (std::size_t r = 0; r < pf.order.size(); ++r) pos[pf.order[r]] = static_cast<int>(r);
  const int n = static_cast<int>(pf.order.size());
  const Field& f = a.field();
  const auto& q = pf.q;
  std::vector<int> elem(q.size()), wpos(q.size());
  for (int i = 0; i < q.size(); ++i) {
    elem[i] = a.basis_index(q.vec(i).label);
    wpos[i] = pos[weight_of_element(a, elem[i])];
    if (wpos[i] < 0) throw std::logic_error("basis element of A1_u through a weight not below the block weight");
  }
  pf.flag.kind = Family::Std;
  pf.flag.chain.resize(n + 1);
  for (int r = 0; r <= n; ++r)
    for (int i = 0; i < q.size(); ++i)
      if (wpos[i] >= r) pf.flag.chain[r].push_back({{i, f.one()}});
  for (int r = 0; r < n; ++r) {
    FlagLayer layer;
    layer.weight = pf.order[r];
    auto bs = t.blocks_of_weight(layer.weight);
    std::vector<QSeries> mult(bs.size(), down_series(q.window().hi));
    const auto& cr = t.cartan(layer.weight);
    std::vector<GradedModule> simples;
    for (auto& bb : bs) simples.push_back(simple_cartan(cr, bb.index));
    // one generator 1_s y per y in Y(s, u), s of this weight
    for (int y = 0; y < a.num_components(); ++y) {
      const auto& yc = a.component(y);
      if (yc.kind != CompKind::Y && yc.kind != CompKind::Unit) continue;
      if (yc.from != pf.object || a.object(yc.to).weight != layer.weight) continue;
      const int vdeg = yc.degree - pf.shift;
      if (!q.window().contains(vdeg)) continue;
      SparseVec g = element_vector(q, a.component_element(y));
      if (g.empty()) continue;
      layer.gens.push_back(g);
      // A_lambda hbar splits as sum_b P(b)^(dim hbar L(b))
      SparseVec hbar;
      if (int ic = a.idempotent_component(yc.to); ic >= 0) {
        int id = cr.alg->basis_index(a.component(ic).id);
        if (id < 0) throw std::logic_error("idempotent " + a.component(ic).id + " missing from the Cartan algebra");
        hbar = {{id, f.one()}};
      } else {
        hbar = cr.alg->unit(cr.cartan_object(yc.to));
      }
      for (std::size_t k = 0; k < bs.size(); ++k) {
        int m = action_rank(simples[k], hbar);
        if (m) mult[k].add_to(-vdeg, static_cast<std::uint64_t>(m));
      }
    }
    for (std::size_t k = 0; k < bs.size(); ++k) layer.mult.emplace_back(bs[k], mult[k]);
    pf.flag.layers.push_back(layer);
  }
  return pf;
}

Report verify_flag(const Theory& t, const GradedModule& v, const Flag& f) {
  Report rep;
  rep.command = "verify-flag";
  rep.subject = v.name();
  const auto& a = v.algebra();
  std::set<int> seen;
  bool distinct = true;
  for (auto& l : f.layers) distinct = seen.insert(l.weight).second && distinct;
  rep.add("layer weights distinct", distinct ? Verdict::Pass : Verdict::Fail);
  const std::size_t n = f.layers.size();
  if (f.chain.size() != n + 1) {
    rep.add("chain length", Verdict::Fail, "expected " + std::to_string(n + 1) + " steps");
    return rep;
  }
  std::vector<SpanData> steps;
  for (auto& c : f.chain) steps.push_back(span_closure(v, c));
  {
    int total = 0;
    for (auto& [k, blk] : v.blocks())
      if (v.window().contains(k.first)) total += static_cast<int>(blk.size());
    bool ok = steps.front().dimension() == total && steps.back().dimension() == 0;
    rep.add("chain runs from the module to zero", ok ? Verdict::Pass : Verdict::Fail);
  }
  for (std::size_t r = 0; r < n; ++r) {
    // inclusion M_{r+1} in M_r
    bool inc = true;
    SpanData both = span_closure(v, [&] {
      auto x = f.chain[r];
      x.insert(x.end(), f.chain[r + 1].begin(), f.chain[r + 1].end());
      return x;
    }());
    inc = both.dimension() == steps[r].dimension();
    std::string lname = "layer " + std::to_string(r + 1) + " (weight " + a.weight(f.layers[r].weight) + ")";
    rep.add(lname + " inclusion", inc ? Verdict::Pass : Verdict::Fail);
    Submodule top = submodule(v, steps[r], "M");
    std::vector<SparseVec> lower;
    for (auto& [key, ech] : steps[r + 1].blocks) {
      const auto& blk = v.block(key.second, key.first);
      for (int k = 0; k < ech.rank(); ++k)
        lower.push_back(sub_coordinates(top, v, from_block_coords(blk, ech.rows.row(k).transpose())));
    }
    Quotient sq = quotient(top.mod, linear_span(top.mod, lower), "layer");
    GradedModule expect = layer_sum(t, f.layers[r].mult, f.kind, v.algebra_ptr(), v.window());
    IsoResult iso = window_iso(sq.mod, expect);
    auto& line = rep.add(lname + " isomorphic to declared sum", iso.iso ? Verdict::Pass : Verdict::Fail,
                         iso.reason + ", window " + to_string(iso.window));
    for (auto& [b, s] : f.layers[r].mult) line.series.emplace_back(b.label, s);
  }
  return rep;
}

FlagMult flag_multiplicity(const Theory& t, const GradedModule& v, const BlockRef& b, Family f) {
  FlagMult m;
  HomSpace h;
  switch (f) {
    case Family::Std: h = hom_space(v, t.standard(b, Family::ProperCostd)); break;
    case Family::ProperStd: h = hom_space(v, t.standard(b, Family::Costd)); break;
    case Family::Costd: h = hom_space(t.standard(b, Family::ProperStd), v); break;
    case Family::ProperCostd: h = hom_space(t.standard(b, Family::Std), v); break;
  }
  m.certified = h.certified;
  m.note = h.note;
  m.series = (f == Family::Std || f == Family::ProperStd) ? bar(h.series) : h.series;
  return m;
}

SupportReport support(const Theory& t, const GradedModule& v, Family f) {
  SupportReport r;
  r.flavor = f;
  for (auto& b : t.blocks()) {
    FlagMult m = flag_multiplicity(t, v, b, f);
    r.certified = r.certified && m.certified;
    if (!m.series.terms().empty()) {
      if (r.weights.empty() || r.weights.back() != b.weight) r.weights.push_back(b.weight);
      r.witnesses.push_back(b.label);
    }
  }
  return r;
}

Report bgg_check(const Theory& t, const BlockRef& b, int window, const Tau* tau) {
  Report rep;
  rep.command = "bgg";
  rep.subject = t.algebra().name() + " " + b.label;
  rep.window = window;
  const auto& a = t.algebra();
  ProjectiveFlag pf = build_projective_flag(t, b);
  rep.facts.emplace_back("Q", pf.q.name());
  bool split = true, q_is_p = false;
  SparseVec e;
  try {
    e = t.projective_idempotent(b);
    q_is_p = sparse_equal(e, a.unit(pf.object));
  } catch (const SplitFailed& ex) {
    split = false;
    rep.facts.emplace_back("split", std::string("failed: ") + ex.what() + "; aggregate Q-level check only");
  }
  GradedModule p;
  if (split && !q_is_p) p = t.projective(b);
  rep.facts.emplace_back("left side", q_is_p ? "flag layers of Q = P(b)" : split ? "Hom from split P(b)" : "none");

  auto blocks = t.blocks();
  const int nb = static_cast<int>(blocks.size());
  auto found = parallel_map<std::pair<Multiplicities, std::string>>(nb, [&](int i) {
    try {
      return std::make_pair(multiplicities(t, t.standard(blocks[i], Family::ProperCostd)), std::string());
    } catch (const std::exception& ex) {
      return std::make_pair(Multiplicities{}, blocks[i].label + ": " + ex.what());
    }
  });
  std::vector<Multiplicities> nabla_bar;
  for (auto& [m, err] : found) {
    nabla_bar.push_back(m);
    if (!err.empty()) rep.add("multiplicities of proper costandard", Verdict::Fail, err);
  }
  // dim_q 1_u L(c)
  std::vector<QSeries> head_dims =
      parallel_map<QSeries>(nb, [&](int i) { return char_dim_q(t.irreducible(blocks[i]), pf.object); });

  for (std::size_t ai = 0; ai < blocks.size(); ++ai) {
    const auto& x = blocks[ai];
    const QSeries* nl = nabla_bar[ai].find(b.label);
    if (!nl) continue;
    QSeries right = bar(*nl);
    QSeries flag_q = QSeries::zero();
    for (auto& layer : pf.flag.layers)
      for (auto& [bb, s] : layer.mult)
        if (bb.label == x.label) flag_q = s;
    if (split) {
      QSeries left;
      std::string how;
      bool cert = true;
      if (q_is_p) {
        left = flag_q * QSeries::monomial(-pf.shift);
        how = "flag";
      } else {
        FlagMult m = flag_multiplicity(t, p, x, Family::Std);
        left = m.series;
        cert = m.certified;
        how = "hom";
      }
      std::string detail;
      Verdict v = cert ? compare_series(left, right, window, &detail) : Verdict::Inconclusive;
      if (!cert) detail = "Hom not certified";
      auto& line = rep.add("(P(" + b.label + "):Delta(" + x.label + ")) = conj[NablaBar(" + x.label + "):L(" +
                               b.label + ")]",
                           v, detail.empty() ? how : how + "; " + detail);
      line.series.emplace_back("left", left);
      line.series.emplace_back("right", right);
      if (tau) {
        try {
          auto md = multiplicities(t, t.standard(x, Family::ProperStd));
          const QSeries* s = md.find(b.label);
          std::string d2;
          Verdict v2 = s ? compare_series(left, *s, window, &d2) : Verdict::Fail;
          auto& l2 = rep.add("(P(" + b.label + "):Delta(" + x.label + ")) = [DeltaBar(" + x.label + "):L(" +
                                 b.label + ")] under tau",
                             v2, d2);
          if (s) l2.series.emplace_back("proper standard side", *s);
        } catch (const std::exception& ex) {
          rep.add("tau route", Verdict::Fail, ex.what());
        }
      }
    }
    // aggregate over Q = q^shift A 1_u
    QSeries agg = QSeries::zero();
    bool ok = true;
    for (std::size_t ci = 0; ci < blocks.size(); ++ci) {
      const QSeries* m = nabla_bar[ai].find(blocks[ci].label);
      if (!m) {
        ok = false;
        continue;
      }
      if (head_dims[ci].terms().empty()) continue;
      agg = agg + (*m) * head_dims[ci];
    }
    if (!ok) continue;
    QSeries rhs = bar(agg) * QSeries::monomial(pf.shift);
    std::string detail;
    Verdict v = compare_series(flag_q, rhs, window, &detail);
    auto& line = rep.add("aggregate (Q:Delta(" + x.label + ")) = q^d conj(dim_q 1_u NablaBar(" + x.label + "))", v,
                         detail);
    line.series.emplace_back("flag", flag_q);
    line.series.emplace_back("characters", rhs);
  }
  return rep;
}

Report ascending_flag_check(const Theory& t, const GradedModule& v, const std::vector<std::set<int>>& gammas) {
  Report rep;
  rep.command = "ascending";
  rep.subject = v.name();
  const auto& a = t.algebra();
  struct Found {
    std::set<int> gamma;
    Submodule sub;
    std::map<std::string, QSeries> mult;
    bool ok = false;
  };
  auto discover = [&](int gi) {
    const auto& gamma = gammas[gi];
    std::pair<Found, CheckLine> res;
    std::string gl = "{";
    for (int w : gamma) gl += (gl.size() > 1 ? "," : "") + a.weight(w);
    gl += "}";
    res.second = {"Gamma " + gl, Verdict::Fail, "not a lower set", {}};
    if (!is_lower_set(a, gamma)) return res;
    GammaContext g = make_gamma(t.algebra_ptr(), gamma);
    Found fd{gamma, gamma_sub(g, v), {}, false};
    GradedModule m = fd.sub.mod;
    std::set<int> rest = gamma;
    std::string failure;
    std::vector<std::string> layer_notes;
    CheckLine layers_line;
    while (!rest.empty() && failure.empty()) {
      int lam = -1;
      for (int w : rest) {
        bool maximal = true;
        for (int x : rest)
          if (a.less(w, x)) maximal = false;
        if (maximal) {
          lam = w;
          break;
        }
      }
      std::set<int> smaller = rest;
      smaller.erase(lam);
      if (m.window().bounded_lo() && m.size() && m.min_degree() <= m.window().lo) {
        failure = "weight " + a.weight(lam) + ": module extends to the bottom of its window (degree " +
                  std::to_string(m.window().lo) + "), while Delta-layers are bounded below";
        break;
      }
      Submodule next = smaller.empty() ? Submodule{GradedModule(m.algebra_ptr(), "0", m.window()), {}}
                                       : gamma_sub(make_gamma(t.algebra_ptr(), smaller), m);
      if (smaller.empty()) next.mod.finalize();
      Quotient layer = quotient(m, linear_span(m, next.embed), "layer");
      const auto& c = t.cartan(lam);
      GradedModule wbar;
      try {
        wbar = cartan_truncate(c, layer.mod);
      } catch (const std::exception& ex) {
        failure = "weight " + a.weight(lam) + ": " + ex.what();
        break;
      }
      std::vector<std::pair<BlockRef, QSeries>> mult;
      std::vector<GradedModule> parts;
      for (auto& b : t.blocks_of_weight(lam)) {
        HomSpace h = hom_space(wbar, simple_cartan(c, b.index));
        if (!h.certified) {
          failure = "weight " + a.weight(lam) + ": head of the layer not certified (" + h.note + ")";
          break;
        }
        QSeries s = bar(h.series);
        mult.emplace_back(b, s);
        fd.mult[b.label] = s;
        GradedModule pb = projective_cartan(c, b.index);
        for (auto& [e, k] : s.terms())
          for (std::uint64_t i = 0; i < k; ++i) parts.push_back(shift(pb, e));
      }
      if (!failure.empty()) break;
      GradedModule expect = parts.empty() ? GradedModule(c.alg, "0", {}) : direct_sum(parts, "P");
      if (parts.empty()) expect.finalize();
      IsoResult proj = window_iso(wbar, expect);
      if (!proj.iso) {
        failure = "weight " + a.weight(lam) + ": weight space is not projective over the Cartan algebra (" +
                  proj.reason + ")";
        break;
      }
      IsoResult counit = window_iso(standardize(c, wbar, "j!"), layer.mod);
      if (!counit.iso) {
        failure = "weight " + a.weight(lam) + ": layer is not standardized from its weight space (" +
                  counit.reason + ")";
        break;
      }
      for (auto& [b, s] : mult) layers_line.series.emplace_back(b.label, s);
      m = next.mod;
      rest = smaller;
    }
    if (failure.empty()) {
      fd.ok = true;
      res.second = {"Gamma " + gl, Verdict::Pass,
                    "consistent with an ascending Delta-flag (finite family checked, not a proof)", layers_line.series};
    } else {
      res.second = {"Gamma " + gl, Verdict::Fail, "flag discovery failed at " + failure, {}};
    }
    res.first = std::move(fd);
    return res;
  };
  std::vector<Found> found;
  for (auto& [fd, line] : parallel_map<std::pair<Found, CheckLine>>(static_cast<int>(gammas.size()), discover)) {
    rep.lines.push_back(line);
    if (fd.sub.mod.algebra_ptr()) found.push_back(std::move(fd));
  }
  // nested pairs: V_Gamma inside V_Pi, with matching multiplicities on Gamma
  for (auto& x : found)
    for (auto& y : found) {
      if (&x == &y || !x.ok || !y.ok || x.gamma == y.gamma) continue;
      if (!std::includes(y.gamma.begin(), y.gamma.end(), x.gamma.begin(), x.gamma.end())) continue;
      std::vector<SparseVec> both = x.sub.embed;
      both.insert(both.end(), y.sub.embed.begin(), y.sub.embed.end());
      bool inside = linear_span(v, both).dimension() == linear_span(v, y.sub.embed).dimension();
      bool same = true;
      for (auto& [lab, s] : x.mult) {
        auto it = y.mult.find(lab);
        same = same && it != y.mult.end() && it->second.terms() == s.terms();
      }
      std::string name = "nested " + std::to_string(x.gamma.size()) + " in " + std::to_string(y.gamma.size()) +
                         " weights";
      rep.add(name, inside && same ? Verdict::Pass : Verdict::Fail,
              inside ? (same ? "submodule and multiplicities compatible" : "multiplicities differ")
                     : "V_Gamma not inside V_Pi");
    }
  return rep;
}

Report delta_refinement_check(const Theory& t, const GradedModule& v, int window) {
  Report rep;
  rep.command = "identity";
  rep.subject = "(V:DeltaBar(b)) = sum_a (V:Delta(a))(Delta(a):DeltaBar(b)) for " + v.name();
  rep.window = window;
  auto blocks = t.blocks();
  const int nb = static_cast<int>(blocks.size());
  std::vector<FlagMult> vd =
      parallel_map<FlagMult>(nb, [&](int i) { return flag_multiplicity(t, v, blocks[i], Family::Std); });
  for (auto& b : blocks) {
    FlagMult lhs = flag_multiplicity(t, v, b, Family::ProperStd);
    bool cert = lhs.certified;
    std::string note = series_note(lhs);
    QSeries rhs = QSeries::zero();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (vd[i].series.terms().empty()) {
        cert = cert && vd[i].certified;
        continue;
      }
      FlagMult dd = flag_multiplicity(t, t.standard(blocks[i], Family::Std), b, Family::ProperStd);
      cert = cert && vd[i].certified && dd.certified;
      if (!dd.series.terms().empty()) rhs = rhs + vd[i].series * dd.series;
    }
    std::string detail;
    Verdict verdict = cert ? compare_series(lhs.series, rhs, window, &detail) : Verdict::Inconclusive;
    auto& line = rep.add("b = " + b.label, verdict, cert ? detail : "uncertified Hom " + note);
    line.series.emplace_back("lhs", lhs.series);
    line.series.emplace_back("rhs", rhs);
  }
  return rep;
}

Report composition_refinement_check(const Theory& t, const GradedModule& v, int window) {
  Report rep;
  rep.command = "identity";
  rep.subject = "[V:L(b)] = sum_a (V:DeltaBar(a))[DeltaBar(a):L(b)] for " + v.name();
  rep.window = window;
  auto blocks = t.blocks();
  Multiplicities lhs = multiplicities(t, v);
  const int nb = static_cast<int>(blocks.size());
  std::vector<FlagMult> vd =
      parallel_map<FlagMult>(nb, [&](int i) { return flag_multiplicity(t, v, blocks[i], Family::ProperStd); });
  std::vector<Multiplicities> dl = parallel_map<Multiplicities>(
      nb, [&](int i) { return multiplicities(t, t.standard(blocks[i], Family::ProperStd)); });
  for (auto& b : blocks) {
    bool cert = true;
    QSeries rhs = QSeries::zero();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      cert = cert && vd[i].certified;
      const QSeries* m = dl[i].find(b.label);
      if (!m || vd[i].series.terms().empty() || m->terms().empty()) continue;
      rhs = rhs + vd[i].series * (*m);
    }
    const QSeries* l = lhs.find(b.label);
    std::string detail;
    Verdict verdict = !l ? Verdict::Fail : cert ? compare_series(*l, rhs, window, &detail) : Verdict::Inconclusive;
    auto& line = rep.add("b = " + b.label, verdict, detail);
    if (l) line.series.emplace_back("lhs", *l);
    line.series.emplace_back("rhs", rhs);
  }
  return rep;
}

}  // namespace gta
