// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "gta/commands.hpp"
#include "gta/corpus.hpp"
#include "gta/parallel.hpp"

using namespace gta;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

constexpr int kWindow = 8;
constexpr int kCutoff = 16;

BlockRef only_block(const Theory& t, const std::string& weight) {
  auto bs = t.blocks_of_weight(t.algebra().weight_index(weight));
  if (bs.size() != 1) throw std::logic_error("weight " + weight + " does not have exactly one block");
  return bs[0];
}

bool equal_on(const QSeries& got, const QSeries& want, int w, std::string* why) {
  std::string d;
  Verdict v = compare_series(got, want, w, &d);
  if (v != Verdict::Pass && why) *why = to_text(got) + " vs " + to_text(want) + (d.empty() ? "" : " (" + d + ")");
  return v == Verdict::Pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome axiom_gate() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (int D : {4, 8, 16})
    for (const char* n : {"ground", "matrix2", "poly", "e1", "nilhecke2"}) {
      auto r = verify_axioms(*make_corpus(n, D));
      o.expect(r.pass(), std::string(n) + " fails at D=" + std::to_string(D));
      ++checked;
    }
  auto muts = make_mutants(8);
  o.expect(muts.size() == 6, std::to_string(muts.size()) + " mutants");
  for (auto& m : muts) {
    auto r = verify_axioms(*m.algebra);
    const AxiomResult* ax = r.find(m.axiom);
    o.expect(ax && !ax->pass, m.name + " does not fail " + m.axiom);
  }
  double s = seconds_since(t0);
  o.expect(s < 5.0, "took " + std::to_string(s) + " s");
  if (o.pass) {
    std::ostringstream d;
    d.precision(2);
    d << std::fixed << checked << " verifications, " << muts.size() << " mutants, " << s << " s";
    o.detail = d.str();
  }
  return o;
}

Outcome quotient_consistency() {
  Outcome o;
  for (auto a : {make_E1(kCutoff), make_nilhecke2(kCutoff)}) {
    for (int l = 0; l < a->num_weights(); ++l) {
      std::set<int> upper;
      for (int m = 0; m < a->num_weights(); ++m)
        if (!a->less(m, l)) upper.insert(m);
      auto q = quotient_upper_set(*a, upper);
      std::map<int, int> restricted;
      for (int b = 0; b < q->size(); ++b) restricted[q->element(b).degree]++;
      auto direct = ideal_quotient_dims(*a, upper);
      int top = a->cutoff() + std::min(0, a->min_degree());
      for (auto it = restricted.begin(); it != restricted.end();)
        it = it->first > top ? restricted.erase(it) : std::next(it);
      o.expect(restricted == direct, a->name() + " at weight " + a->weight(l));
    }
  }
  if (o.pass) o.detail = "E1 and NH2, every weight, D=16";
  return o;
}

Outcome classification() {
  Outcome o;
  for (auto a : {make_E1(kCutoff), make_poly(kCutoff)}) {
    Theory t(a);
    auto bs = t.blocks();
    std::vector<GradedModule> ls;
    for (auto& b : bs) ls.push_back(t.irreducible(b));
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = i + 1; j < bs.size(); ++j)
        o.expect(!window_iso(ls[i], ls[j]).iso, a->name() + ": L(" + bs[i].label + ") ~ L(" + bs[j].label + ")");
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const CartanAlgebra& c = t.cartan(bs[i].weight);
      auto r = window_iso(cartan_truncate(c, ls[i]), simple_cartan(c, bs[i].index));
      o.expect(r.iso, a->name() + ": e_lambda L(" + bs[i].label + ") vs L_lambda: " + r.reason);
    }
  }
  if (o.pass) o.detail = "E1 (2 simples), poly (1 simple)";
  return o;
}

Outcome hom_orthogonality() {
  Outcome o;
  Theory t(make_E1(kCutoff));
  auto bs = t.blocks();
  for (auto [from, to] : {std::pair{Family::Std, Family::ProperCostd}, {Family::ProperStd, Family::Costd}})
    for (auto& b : bs)
      for (auto& c : bs) {
        HomSpace h = hom_space(t.standard(b, from), t.standard(c, to));
        std::string why;
        const std::string name = to_string(from) + "(" + b.label + ") -> " + to_string(to) + "(" + c.label + ")";
        o.expect(h.certified, name + " not certified: " + h.note);
        o.expect(equal_on(h.series, b.label == c.label ? QSeries::one() : QSeries::zero(), kWindow, &why),
                 name + ": " + why);
      }
  if (o.pass) o.detail = "8 Hom spaces on E1, window 8";
  return o;
}

Outcome bgg() {
  Outcome o;
  for (auto a : {make_E1(kCutoff), make_matrix(2)}) {
    Theory t(a);
    for (auto& b : t.blocks()) {
      Report r = bgg_check(t, b, kWindow);
      o.expect(r.verdict() == Verdict::Pass, a->name() + " block " + b.label + ": " + to_string(r.verdict()));
    }
  }
  Theory t(make_E1(kCutoff));
  BlockRef b0 = only_block(t, "0"), b1 = only_block(t, "1");
  std::string why;
  FlagMult fm = flag_multiplicity(t, t.projective(b1), b0, Family::Std);
  o.expect(fm.certified && equal_on(fm.series, QSeries::monomial(-1), kWindow, &why), "(P(b1):Delta(b0)) " + why);
  Multiplicities mu = multiplicities(t, t.standard(b0, Family::ProperCostd));
  const QSeries* m = mu.find(b1.label);
  o.expect(m && equal_on(*m, QSeries::monomial(1), kWindow, &why), "[NablaBar(b0):L(b1)] " + why);
  if (o.pass) o.detail = "E1 blocks 0#0 1#0, matrix2; (P(b1):Delta(b0)) = q^-1";
  return o;
}

Outcome explicit_flag() {
  Outcome o;
  Theory t(make_E1(kCutoff));
  BlockRef b0 = only_block(t, "0"), b1 = only_block(t, "1");
  ProjectiveFlag pf = build_projective_flag(t, b1);
  const auto& layers = pf.flag.layers;
  o.expect(layers.size() == 2, std::to_string(layers.size()) + " layers");
  if (layers.size() == 2) {
    std::string why;
    auto single = [&](const FlagLayer& l, const BlockRef& b, const QSeries& want, const std::string& name) {
      o.expect(l.mult.size() == 1 && l.mult[0].first.label == b.label &&
                   equal_on(l.mult[0].second, want, kWindow, &why),
               name + " " + why);
    };
    single(layers[0], b1, QSeries::one(), "layer 1");
    single(layers[1], b0, QSeries::monomial(-1), "layer 2");
  }
  Report r = verify_flag(t, pf.q, pf.flag);
  o.expect(r.verdict() == Verdict::Pass, "verify_flag " + to_string(r.verdict()));
  if (o.pass) o.detail = "{Delta(1#0): 1}, {Delta(0#0): q^-1}";
  return o;
}

Outcome ext_vanishing() {
  Outcome o;
  Theory t(make_E1(kCutoff));
  auto bs = t.blocks();
  int worst = kInf;
  for (auto [from, to] : {std::pair{Family::Std, Family::ProperCostd}, {Family::ProperStd, Family::Costd}})
    for (auto& b : bs)
      for (auto& c : bs) {
        Ext1Result e = ext1(t.standard(b, from), t.standard(c, to));
        const std::string name = to_string(from) + "(" + b.label + "), " + to_string(to) + "(" + c.label + ")";
        int w = e.series.direction() == Direction::Poly ? kInf : e.series.trunc();
        worst = std::min(worst, w);
        o.expect(e.certified, name + " not certified: " + e.note);
        o.expect(w >= 6, name + " certified only to " + std::to_string(w));
        o.expect(e.series.terms().empty(), name + " = " + to_text(e.series));
      }
  if (o.pass) o.detail = "8 pairs, certified window " + (worst >= kInf ? std::string("exact") : std::to_string(worst));
  return o;
}

Outcome duality() {
  Outcome o;
  auto a = make_E1(kCutoff);
  auto op = opposite(*a);
  Theory t(a);
  Tau tau = make_tau(*a, e1_tau());
  int n = 0;
  for (auto& b : t.blocks()) {
    for (Family f : {Family::Std, Family::ProperStd, Family::ProperCostd, Family::Costd}) {
      GradedModule v = t.standard(b, f);
      auto r = window_iso(dualize(dualize(v, op), a), v);
      o.expect(r.iso && r.window.lo <= -kWindow && r.window.hi >= kWindow, v.name() + " double dual: " + r.reason);
      ++n;
    }
    auto r = window_iso(tau_dualize(t.standard(b, Family::Std), tau), t.standard(b, Family::Costd));
    o.expect(r.iso, "Delta(" + b.label + ")^tau vs Nabla: " + r.reason);
    GradedModule l = t.irreducible(b);
    r = window_iso(tau_dualize(l, tau), l);
    o.expect(r.iso, "L(" + b.label + ")^tau: " + r.reason);
  }
  if (o.pass) o.detail = std::to_string(n) + " double duals, tau on Delta and L";
  return o;
}

Outcome truncation() {
  Outcome o;
  auto a = make_E1(kCutoff);
  Theory t(a);
  BlockRef b0 = only_block(t, "0"), b1 = only_block(t, "1");
  GammaContext g = make_gamma(a, {a->weight_index("0")});
  Theory tg(g.alg);
  auto gb = tg.blocks();
  o.expect(gb.size() == 1, "A_Gamma has " + std::to_string(gb.size()) + " blocks");
  if (!gb.empty()) {
    auto r = window_iso(gamma_shriek(g, tg.projective(gb[0])), t.projective(b0));
    o.expect(r.iso && r.window.hi >= kWindow, "j_! P_Gamma(b0) vs P(b0): " + r.reason);
  }
  CounitReport cr = counit_check(g, t.projective(b1));
  o.expect(cr.iso && cr.window.hi >= kWindow, "counit on P(b1): " + cr.reason);
  if (o.pass) o.detail = "Gamma = {0}";
  return o;
}

Outcome summation() {
  Outcome o;
  Theory t(make_E1(kCutoff));
  for (auto& b : t.blocks()) {
    GradedModule p = t.projective(b);
    for (Report r : {delta_refinement_check(t, p, kWindow), composition_refinement_check(t, p, kWindow)})
      o.expect(r.verdict() == Verdict::Pass, r.command + " on P(" + b.label + "): " + to_string(r.verdict()));
  }
  if (o.pass) o.detail = "both identities on P(0#0), P(1#0)";
  return o;
}

Outcome determinism() {
  Outcome o;
  struct Run {
    const char* cmd;
    Options opt;
  };
  std::vector<Run> runs;
  auto add = [&](const char* cmd, std::string alg, auto&& tweak) {
    Options x;
    x.algebra = std::move(alg);
    tweak(x);
    runs.push_back({cmd, x});
  };
  auto none = [](Options&) {};
  for (const char* alg : {"@e1", "@nilhecke2", "@e2", "@matrix2", "@poly"}) {
    add("verify", alg, none);
    add("info", alg, none);
    add("cartan", alg, none);
    add("export", alg, none);
  }
  add("bgg", "@e1", none);
  add("bgg", "@e2", none);
  add("bgg", "@e1", [](Options& x) { x.tau = true; });
  add("module", "@e1", [](Options& x) { x.module = "I:1#0"; });
  add("module", "@e1", [](Options& x) { x.module = "std:1#0", x.dual = "tau"; });
  add("decompose", "@e1", [](Options& x) { x.module = "P:1#0"; });
  add("hom", "@e1", [](Options& x) { x.module = "std:0#0", x.target = "proper-costd:0#0"; });
  add("ext1", "@e1", [](Options& x) { x.module = "proper-std:1#0", x.target = "costd:0#0"; });
  add("flag", "@e1", [](Options& x) { x.block = "1#0"; });
  add("truncate", "@e1", [](Options& x) { x.module = "P:1#0", x.gammas = {"0"}; });
  add("ascending", "@e1", [](Options& x) { x.module = "P:1#0", x.gammas = {"0", "0,1"}; });
  int compared = 0;
  for (auto& r : runs)
    for (bool json : {false, true}) {
      Options x = r.opt;
      x.json = json;
      std::string first;
      for (int threads : {1, 1, 4, 4}) {
        x.threads = threads;
        std::string out;
        try {
          out = run_command(r.cmd, x).out;
        } catch (const std::exception& e) {
          out = std::string("exception: ") + e.what();
        }
        if (first.empty())
          first = out;
        else
          o.expect(out == first, std::string(r.cmd) + " " + r.opt.algebra + (json ? " json" : "") + " differs at " +
                                     std::to_string(threads) + " threads");
        ++compared;
      }
    }
  set_threads(1);
  if (o.pass) o.detail = std::to_string(runs.size() * 2) + " reports, " + std::to_string(compared) + " runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"axiom gate", axiom_gate},
      {"restricted basis vs quotient dimensions", quotient_consistency},
      {"classification of simples", classification},
      {"Hom orthogonality", hom_orthogonality},
      {"BGG reciprocity", bgg},
      {"explicit Delta-flag of P(1#0)", explicit_flag},
      {"Ext^1 vanishing", ext_vanishing},
      {"duality", duality},
      {"truncation", truncation},
      {"multiplicity summation identities", summation},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
