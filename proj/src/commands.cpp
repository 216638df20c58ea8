#include "gta/commands.hpp"

#include <sstream>

#include "gta/corpus.hpp"
#include "gta/parallel.hpp"

namespace gta {

namespace {

bool known_on(const QSeries& s, int w) { return s.direction() == Direction::Poly || s.trunc() >= w; }

std::string weight_list(const TriangularAlgebra& a, const std::set<int>& ws) {
  std::string s = "{";
  for (int w : ws) s += (s.size() > 1 ? "," : "") + a.weight(w);
  return s + "}";
}

std::set<int> parse_gamma(const TriangularAlgebra& a, const std::string& text) {
  std::vector<std::string> labels;
  std::stringstream ss(text);
  for (std::string w; std::getline(ss, w, ',');)
    if (!w.empty()) labels.push_back(w);
  std::set<int> out;
  for (auto& l : labels) {
    int w = a.weight_index(l);
    if (w < 0) throw UsageError("unknown weight '" + l + "' in --gamma");
    out.insert(w);
  }
  if (!is_lower_set(a, out)) throw UsageError("--gamma " + text + " is not a lower set");
  return out;
}

Field convert_field(AlgebraBuilder& b, const std::string& spec) {
  Field f;
  try {
    f = Field::from_string(spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (f == b.field) return f;
  if (b.field.p != 0) throw UsageError("cannot change the field of an " + b.field.str() + " file");
  auto conv = [&](AlgebraBuilder::Terms& t) {
    AlgebraBuilder::Terms out;
    for (auto& [c, id] : t) {
      Scalar s(c.value(), f.p);
      if (!s.is_zero()) out.push_back({s, id});
    }
    t = out;
  };
  for (auto& o : b.objects)
    if (o.unit) conv(*o.unit);
  for (auto& [k, t] : b.products) conv(t);
  b.field = f;
  return f;
}

std::string render(const Report& r, bool json) {
  if (json) return render_json(r).dump() + "\n";
  return render_text(r);
}

Tau declared_tau(const Loaded& l) {
  if (l.tau.empty()) throw UsageError("tau requested but the algebra declares none");
  return make_tau(*l.alg, l.tau);
}

Report verify_report(const TriangularAlgebra& a) {
  Report rep;
  rep.command = "verify";
  rep.subject = a.name();
  VerificationReport v = verify_axioms(a);
  rep.facts.emplace_back("cutoff", a.truncated() ? std::to_string(a.cutoff()) : "none");
  rep.facts.emplace_back("basis size", std::to_string(a.size()));
  rep.facts.emplace_back("products", a.complete() ? "complete" : "as listed");
  for (auto& ax : v.axioms) {
    std::string detail;
    if (!ax.pass) {
      detail = std::to_string(ax.failure_count) + " failure(s)";
      if (!ax.failures.empty()) detail += "; first: " + ax.failures[0];
    }
    rep.add(ax.axiom, ax.pass ? Verdict::Pass : Verdict::Fail, detail);
  }
  return rep;
}

QSeries algebra_dims(const TriangularAlgebra& a) {
  std::map<int, int> dims;
  for (int b = 0; b < a.size(); ++b) dims[a.element(b).degree]++;
  Window w{-kInf, a.truncated() ? a.cutoff() + std::min(0, a.min_degree()) : kInf};
  return series_from_degrees(dims, w);
}

Report info_report(const Theory& t) {
  const auto& a = t.algebra();
  Report rep;
  rep.command = "info";
  rep.subject = a.name();
  rep.facts.emplace_back("field", a.field().str());
  rep.facts.emplace_back("cutoff", a.truncated() ? std::to_string(a.cutoff()) : "none");
  std::string objs;
  for (int i = 0; i < a.num_objects(); ++i) {
    objs += (i ? ", " : "") + a.object(i).name;
    if (a.special(i)) objs += " -> " + a.weight(a.object(i).weight);
  }
  rep.facts.emplace_back("objects", objs);
  std::string ws;
  for (int w = 0; w < a.num_weights(); ++w) ws += (w ? " " : "") + a.weight(w);
  rep.facts.emplace_back("weights", ws);
  std::string cov;
  for (auto& [m, l] : a.covers()) cov += (cov.empty() ? "" : ", ") + a.weight(m) + " < " + a.weight(l);
  rep.facts.emplace_back("covers", cov.empty() ? "none" : cov);
  rep.facts.emplace_back("components", std::to_string(a.num_components()));
  rep.facts.emplace_back("basis size", std::to_string(a.size()));
  auto& line = rep.add("graded dimension of the materialized basis", Verdict::Pass);
  line.series.emplace_back("dim_q A", algebra_dims(a));
  try {
    std::string bl;
    for (auto& b : t.blocks()) bl += (bl.empty() ? "" : " ") + b.label;
    rep.facts.emplace_back("blocks", bl.empty() ? "none" : bl);
  } catch (const std::exception& e) {
    rep.facts.emplace_back("blocks", std::string("unavailable: ") + e.what());
  }
  return rep;
}

Report cartan_report(const Theory& t, const std::string& weight) {
  const auto& a = t.algebra();
  Report rep;
  rep.command = "cartan";
  rep.subject = a.name();
  std::vector<int> ws;
  if (weight.empty()) {
    for (int w = 0; w < a.num_weights(); ++w) ws.push_back(w);
  } else {
    int w = a.weight_index(weight);
    if (w < 0) throw UsageError("unknown weight '" + weight + "'");
    ws.push_back(w);
  }
  for (int w : ws) {
    const std::string wl = "weight " + a.weight(w);
    const CartanAlgebra* c = nullptr;
    try {
      c = &t.cartan(w);
    } catch (const std::exception& e) {
      rep.add(wl, Verdict::Fail, e.what());
      continue;
    }
    auto& top = rep.add(wl, Verdict::Pass,
                        "degree-0 dimension " + std::to_string(c->degree0.size()) + ", radical dimension " +
                            std::to_string(c->radical0.cols()) + ", " + std::to_string(c->blocks.size()) + " block(s)");
    top.series.emplace_back("dim_q A_lambda", algebra_dims(*c->alg));
    for (std::size_t k = 0; k < c->blocks.size(); ++k) {
      const auto& b = c->blocks[k];
      int prims = 0;
      for (auto& p : c->prims)
        if (p.block == static_cast<int>(k)) ++prims;
      auto& line = rep.add("block " + b.label, Verdict::Pass,
                           "object " + c->alg->object(b.object).name + ", " + std::to_string(prims) +
                               " primitive idempotent(s), simple of dimension " + std::to_string(b.dim));
      line.series.emplace_back("dim_q P", dim_q(projective_cartan(*c, static_cast<int>(k))));
      line.series.emplace_back("dim_q L", dim_q(simple_cartan(*c, static_cast<int>(k))));
    }
  }
  return rep;
}

void add_characters(Report& rep, const GradedModule& m) {
  const auto& a = m.algebra();
  std::string problem = m.check_action();
  auto& line = rep.add("action consistent", problem.empty() ? Verdict::Pass : Verdict::Fail, problem);
  for (int o = 0; o < a.num_objects(); ++o) line.series.emplace_back("dim_q 1_" + a.object(o).name, char_dim_q(m, o));
}

Report module_report(const Theory& t, const Loaded& l, const Options& o) {
  if (o.module.empty()) throw UsageError("module needs --module FAMILY:BLOCK");
  GradedModule m = make_module(t, o.module);
  if (o.dual == "star") {
    m = dualize(m, opposite(t.algebra()));
  } else if (o.dual == "tau" || (o.dual.empty() && o.tau)) {
    m = tau_dualize(m, declared_tau(l));
  } else if (!o.dual.empty()) {
    throw UsageError("--dual must be star or tau");
  }
  Report rep;
  rep.command = "module";
  rep.subject = m.name();
  rep.window = o.window;
  rep.facts.emplace_back("known degrees", to_string(m.window()));
  rep.facts.emplace_back("vectors", std::to_string(m.size()));
  add_characters(rep, m);
  return rep;
}

Report decompose_report(const Theory& t, const Options& o) {
  if (o.module.empty()) throw UsageError("decompose needs --module FAMILY:BLOCK");
  GradedModule m = make_module(t, o.module);
  Report rep;
  rep.command = "decompose";
  rep.subject = m.name();
  rep.window = o.window;
  try {
    Multiplicities mu = multiplicities(t, m);
    for (auto& [b, s] : mu.mult) {
      auto& line = rep.add("[V:L(" + b.label + ")]", known_on(s, o.window) ? Verdict::Pass : Verdict::Inconclusive);
      line.series.emplace_back("mult", s);
    }
  } catch (const WindowTooSmall& e) {
    rep.add("composition multiplicities", Verdict::Inconclusive, e.what());
  } catch (const std::exception& e) {
    rep.add("composition multiplicities", Verdict::Fail, e.what());
  }
  auto blocks = t.blocks();
  auto fm = parallel_map<FlagMult>(static_cast<int>(blocks.size()),
                                   [&](int i) { return flag_multiplicity(t, m, blocks[i], Family::Std); });
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    bool ok = fm[i].certified && known_on(fm[i].series, o.window);
    auto& line = rep.add("(V:Delta(" + blocks[i].label + "))", ok ? Verdict::Pass : Verdict::Inconclusive,
                         fm[i].certified ? "" : fm[i].note);
    line.series.emplace_back("mult", fm[i].series);
  }
  return rep;
}

Report hom_report(const Theory& t, const Options& o, bool ext) {
  if (o.module.empty() || o.target.empty()) throw UsageError("needs --module and --target");
  GradedModule v = make_module(t, o.module), w = make_module(t, o.target);
  Report rep;
  rep.command = ext ? "ext1" : "hom";
  rep.subject = v.name() + " -> " + w.name();
  rep.window = o.window;
  QSeries s;
  bool cert;
  std::string note;
  if (ext) {
    Ext1Result e = ext1(v, w);
    s = e.series, cert = e.certified, note = e.note;
  } else {
    HomSpace h = hom_space(v, w);
    s = h.series, cert = h.certified, note = h.note;
  }
  Verdict verdict = !cert ? Verdict::Inconclusive : known_on(s, o.window) ? Verdict::Pass : Verdict::Inconclusive;
  if (cert && verdict == Verdict::Inconclusive) note = "certified only to q^" + std::to_string(-s.trunc());
  auto& line = rep.add(ext ? "dim_q Ext^1" : "dim_q Hom", verdict, note);
  line.series.emplace_back(ext ? "ext1" : "hom", s);
  return rep;
}

Report flag_report(const Theory& t, const Options& o) {
  if (o.block.empty()) throw UsageError("flag needs --b BLOCK");
  BlockRef b = resolve_block(t, o.block);
  ProjectiveFlag pf = build_projective_flag(t, b);
  Report rep = verify_flag(t, pf.q, pf.flag);
  rep.command = "flag";
  rep.subject = "Q(" + b.label + ") = " + pf.q.name();
  rep.window = o.window;
  std::string order;
  for (int w : pf.order) order += (order.empty() ? "" : " > ") + t.algebra().weight(w);
  rep.facts.emplace_back("layer order", order);
  for (std::size_t r = 0; r < pf.flag.layers.size(); ++r) {
    std::string ls;
    for (auto& [bb, s] : pf.flag.layers[r].mult) ls += (ls.empty() ? "" : ", ") + bb.label + ": " + to_text(s);
    rep.facts.emplace_back("layer " + std::to_string(r + 1), ls.empty() ? "0" : ls);
  }
  return rep;
}

Report bgg_report(const Theory& t, const Loaded& l, const Options& o) {
  std::optional<Tau> tau;
  if (o.tau) tau = declared_tau(l);
  const Tau* tp = tau ? &*tau : nullptr;
  if (!o.block.empty()) return bgg_check(t, resolve_block(t, o.block), o.window, tp);
  auto blocks = t.blocks();
  auto reps = parallel_map<Report>(static_cast<int>(blocks.size()),
                                   [&](int i) { return bgg_check(t, blocks[i], o.window, tp); });
  Report rep;
  rep.command = "bgg";
  rep.subject = t.algebra().name() + " (all blocks)";
  rep.window = o.window;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (auto& line : reps[i].lines) {
      CheckLine c = line;
      c.name = blocks[i].label + ": " + c.name;
      rep.lines.push_back(c);
    }
  return rep;
}

Report truncate_report(const Theory& t, const Options& o) {
  if (o.module.empty() || o.gammas.size() != 1) throw UsageError("truncate needs --module and one --gamma");
  const auto& a = t.algebra();
  std::set<int> gs = parse_gamma(a, o.gammas[0]);
  GammaContext g = make_gamma(t.algebra_ptr(), gs);
  GradedModule v = make_module(t, o.module);
  Report rep;
  rep.command = "truncate";
  rep.subject = v.name() + " at Gamma " + weight_list(a, gs);
  rep.window = o.window;
  Submodule sub = gamma_sub(g, v);
  Quotient quo = gamma_quot(g, v);
  GradedModule jv = gamma_truncate(g, v);
  auto& dims = rep.add("Gamma pieces", Verdict::Pass);
  dims.series.emplace_back("dim_q V", dim_q(v));
  dims.series.emplace_back("dim_q V_Gamma", dim_q(sub.mod));
  dims.series.emplace_back("dim_q V/V^Gamma", dim_q(quo.mod));
  dims.series.emplace_back("dim_q j V", dim_q(jv));
  CounitReport cr = counit_check(g, v);
  rep.add("counit j_! j V -> V_Gamma is an isomorphism", cr.iso ? Verdict::Pass : Verdict::Fail,
          cr.reason + ", window " + to_string(cr.window));
  return rep;
}

Report ascending_report(const Theory& t, const Options& o) {
  if (o.module.empty() || o.gammas.empty()) throw UsageError("ascending needs --module and at least one --gamma");
  std::vector<std::set<int>> gs;
  for (auto& s : o.gammas) gs.push_back(parse_gamma(t.algebra(), s));
  Report rep = ascending_flag_check(t, make_module(t, o.module), gs);
  rep.window = o.window;
  return rep;
}

std::string export_json(const TriangularAlgebra& a) {
  nlohmann::ordered_json j;
  j["name"] = a.name();
  j["field"] = a.field().str();
  j["cutoff"] = a.truncated() ? nlohmann::ordered_json(a.cutoff()) : nlohmann::ordered_json("none");
  j["complete"] = a.complete();
  auto objs = nlohmann::ordered_json::array();
  for (int i = 0; i < a.num_objects(); ++i) {
    nlohmann::ordered_json o;
    o["name"] = a.object(i).name;
    o["weight"] = a.special(i) ? nlohmann::ordered_json(a.weight(a.object(i).weight)) : nlohmann::ordered_json();
    objs.push_back(o);
  }
  j["objects"] = objs;
  auto covers = nlohmann::ordered_json::array();
  for (auto& [m, l] : a.covers()) covers.push_back({a.weight(m), a.weight(l)});
  j["covers"] = covers;
  auto basis = nlohmann::ordered_json::array();
  for (int b = 0; b < a.size(); ++b) {
    const auto& e = a.element(b);
    basis.push_back({{"id", e.id},
                     {"source", a.object(e.source).name},
                     {"target", a.object(e.target).name},
                     {"degree", e.degree}});
  }
  j["basis"] = basis;
  auto mul = nlohmann::ordered_json::array();
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y) {
      const SparseVec* p = a.product(x, y);
      if (!p || p->empty()) continue;
      auto terms = nlohmann::ordered_json::array();
      for (auto& [k, c] : *p) terms.push_back({c.str(), a.element(k).id});
      mul.push_back({a.element(x).id, a.element(y).id, terms});
    }
  j["mul"] = mul;
  return j.dump(2) + "\n";
}

}  // namespace

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 3;
  }
}

Loaded load_algebra(const Options& o) {
  if (o.algebra.empty()) throw UsageError("no algebra given");
  Loaded l;
  if (o.algebra[0] == '@') {
    const std::string name = o.algebra.substr(1);
    Field f;
    if (!o.field.empty()) {
      try {
        f = Field::from_string(o.field);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    }
    try {
      l.alg = make_corpus(name, o.cutoff, f);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (name == "e1") l.tau = e1_tau();
    return l;
  }
  GtaFile g = read_gta_file(o.algebra);
  if (!o.field.empty()) convert_field(g.builder, o.field);
  l.alg = build_gta(g);
  l.tau = g.tau;
  return l;
}

BlockRef resolve_block(const Theory& t, const std::string& s) {
  if (s.find('#') != std::string::npos) return t.block(s);
  int w = t.algebra().weight_index(s);
  if (w < 0) throw UsageError("unknown block or weight '" + s + "'");
  auto bs = t.blocks_of_weight(w);
  if (bs.size() != 1) throw UsageError("weight " + s + " has " + std::to_string(bs.size()) + " blocks; name one");
  return bs[0];
}

GradedModule injective_module(const Theory& t, const BlockRef& b) {
  Theory op(opposite(t.algebra()));
  GradedModule l = t.irreducible(b);
  for (auto& c : op.blocks_of_weight(b.weight)) {
    if (!window_iso(dualize(op.irreducible(c), t.algebra_ptr()), l).iso) continue;
    GradedModule i = dualize(op.projective(c), t.algebra_ptr());
    i.set_name("I(" + b.label + ")");
    return i;
  }
  throw std::logic_error("no projective of the opposite algebra has head dual to L(" + b.label + ")");
}

GradedModule make_module(const Theory& t, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("module must be FAMILY:BLOCK, got '" + spec + "'");
  const std::string fam = spec.substr(0, colon);
  BlockRef b = resolve_block(t, spec.substr(colon + 1));
  if (fam == "L") return t.irreducible(b);
  if (fam == "P") return t.projective(b);
  if (fam == "I") return injective_module(t, b);
  Family f;
  try {
    f = family_from_string(fam);
  } catch (const std::exception&) {
    throw UsageError("unknown module family '" + fam + "'");
  }
  return t.standard(b, f);
}

CommandResult run_command(const std::string& command, const Options& o) {
  static const std::set<std::string> known = {"verify", "info",  "cartan", "module",   "decompose", "hom",
                                              "ext1",   "flag",  "bgg",    "truncate", "ascending", "export"};
  if (!known.count(command)) throw UsageError("unknown command '" + command + "'");
  if (o.window < 0) throw UsageError("--window must be nonnegative");
  set_threads(o.threads);
  Loaded l = load_algebra(o);
  if (command == "export") return {0, o.json ? export_json(*l.alg) : export_gta(*l.alg, l.tau)};
  Theory t(l.alg);
  Report rep;
  if (command == "verify")
    rep = verify_report(*l.alg);
  else if (command == "info")
    rep = info_report(t);
  else if (command == "cartan")
    rep = cartan_report(t, o.weight);
  else if (command == "module")
    rep = module_report(t, l, o);
  else if (command == "decompose")
    rep = decompose_report(t, o);
  else if (command == "hom" || command == "ext1")
    rep = hom_report(t, o, command == "ext1");
  else if (command == "flag")
    rep = flag_report(t, o);
  else if (command == "bgg")
    rep = bgg_report(t, l, o);
  else if (command == "truncate")
    rep = truncate_report(t, o);
  else
    rep = ascending_report(t, o);
  return {exit_code(rep.verdict()), render(rep, o.json)};
}

}  // namespace gta
