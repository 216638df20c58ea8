#include "gta/format.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gta {

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> split_words(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({s.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

bool id_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '*' && c != '+' && c != '-' && c != '=' &&
         c != '#' && c != '[' && c != ']' && c != ',' && c != '(' && c != ')';
}

const std::set<std::string> kSections = {"algebra", "field", "objects", "poset", "special",
                                         "basis",   "mul",   "bounds",  "cutoff", "tau"};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  GtaFile run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      std::string s = raw.substr(0, raw.find('#'));
      auto words = split_words(s);
      if (words.empty()) continue;
      if (words[0].text[0] == '[') {
        header(s, words);
        continue;
      }
      if (section_.empty()) fail(words[0].col, "entry outside any section");
      entry(s, words);
    }
    finish();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(int col, const std::string& msg) const { throw ParseError(line_, col, msg); }

  void header(const std::string& s, const std::vector<Token>& words) {
    std::size_t open = s.find('['), close = s.find(']');
    if (close == std::string::npos) fail(static_cast<int>(open) + 1, "unterminated section header");
    for (std::size_t k = close + 1; k < s.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(s[k]))) fail(static_cast<int>(k) + 1, "text after section header");
    auto inner = split_words(s.substr(open + 1, close - open - 1));
    if (inner.empty()) fail(words[0].col, "empty section name");
    const int base = static_cast<int>(open) + 1;
    const std::string name = inner[0].text;
    if (!kSections.count(name)) fail(base + inner[0].col, "unknown section '" + name + "'");
    if (!seen_.insert(name).second) fail(base + inner[0].col, "section '" + name + "' repeated");
    for (std::size_t k = 1; k < inner.size(); ++k) {
      const auto& kv = inner[k].text;
      if (name == "mul" && (kv == "complete=true" || kv == "complete=false")) {
        out_.builder.complete = kv == "complete=true";
        continue;
      }
      fail(base + inner[k].col, "unknown key '" + kv + "' in section '" + name + "'");
    }
    section_ = name;
  }

  void expect_count(const std::vector<Token>& w, std::size_t n, const std::string& shape) {
    if (w.size() != n) fail(w.size() > n ? w[n].col : w.back().col, "expected '" + shape + "'");
  }

  int integer(const Token& t) {
    try {
      std::size_t used = 0;
      int v = std::stoi(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(t.col, "expected an integer, got '" + t.text + "'");
    }
  }

  void check_id(const Token& t) {
    for (std::size_t k = 0; k < t.text.size(); ++k)
      if (!id_char(t.text[k])) fail(t.col + static_cast<int>(k), "character not allowed in an id");
  }

  AlgebraBuilder::Terms terms(const std::string& s, std::size_t from) {
    AlgebraBuilder::Terms out;
    std::size_t i = from;
    auto skip = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (i < s.size() && s[i] == '0') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j == s.size()) return out;
    }
    bool first = true;
    while (true) {
      skip();
      if (i >= s.size()) {
        if (first) fail(static_cast<int>(i) + 1, "expected a term");
        break;
      }
      bool neg = false;
      if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
        skip();
      } else if (!first) {
        fail(static_cast<int>(i) + 1, "expected '+' or '-'");
      }
      auto word = [&] {
        std::size_t j = i;
        while (j < s.size() && (id_char(s[j]) || s[j] == '/')) ++j;
        if (j == i) fail(static_cast<int>(i) + 1, "expected a coefficient or id");
        Token t{s.substr(i, j - i), static_cast<int>(i) + 1};
        i = j;
        return t;
      };
      Token t = word();
      skip();
      Scalar c = out_.builder.field.one();
      if (i < s.size() && s[i] == '*') {
        try {
          c = out_.builder.field.parse(t.text);
        } catch (const std::exception& e) {
          fail(t.col, e.what());
        }
        ++i;
        skip();
        t = word();
      }
      check_id(t);
      if (t.text.find('/') != std::string::npos) fail(t.col, "character not allowed in an id");
      out.push_back({neg ? -c : c, t.text});
      first = false;
    }
    return out;
  }

  void entry(const std::string& s, const std::vector<Token>& w) {
    auto& b = out_.builder;
    if (section_ == "algebra") {
      expect_count(w, 2, "name <id>");
      if (w[0].text != "name") fail(w[0].col, "unknown key '" + w[0].text + "'");
      b.name = w[1].text;
    } else if (section_ == "field") {
      expect_count(w, 1, "rational | fp:<p>");
      try {
        b.field = Field::from_string(w[0].text);
      } catch (const std::exception& e) {
        fail(w[0].col, e.what());
      }
      if (field_set_) fail(w[0].col, "field given twice");
      if (seen_.count("mul") || seen_.count("objects")) fail(w[0].col, "[field] must come before [objects] and [mul]");
      field_set_ = true;
    } else if (section_ == "objects") {
      check_id(w[0]);
      AlgebraBuilder::Obj o{w[0].text, "", std::nullopt};
      if (w.size() > 1) {
        if (w[1].text != "unit" || w.size() < 3 || w[2].text != "=") fail(w[1].col, "expected 'unit = <terms>'");
        o.unit = terms(s, static_cast<std::size_t>(w[2].col));
      }
      b.objects.push_back(o);
    } else if (section_ == "poset") {
      if (w[0].text == "weight") {
        for (std::size_t k = 1; k < w.size(); ++k) b.weights.push_back(w[k].text);
        return;
      }
      expect_count(w, 3, "mu < lambda");
      if (w[1].text != "<") fail(w[1].col, "expected '<'");
      b.covers.push_back({w[0].text, w[2].text});
    } else if (section_ == "special") {
      expect_count(w, 3, "object -> weight");
      if (w[1].text != "->") fail(w[1].col, "expected '->'");
      special_.push_back({w[0].text, w[2].text});
    } else if (section_ == "basis") {
      if (w.size() >= 2 && w[1].text == "elem") {
        expect_count(w, 8, "id elem source target degree x h y");
        check_id(w[0]);
        auto opt = [](const Token& t) { return t.text == "-" ? std::string() : t.text; };
        b.basis.push_back({w[0].text, w[3].text, w[2].text, integer(w[4]), opt(w[5]), opt(w[6]), opt(w[7])});
        out_.explicit_basis = true;
        return;
      }
      if (w.size() != 5 && w.size() != 6) fail(w.back().col, "expected 'id KIND from to degree [(fine,fine)]'");
      check_id(w[0]);
      CompKind k;
      try {
        k = comp_kind_from_string(w[1].text);
      } catch (const std::exception& e) {
        fail(w[1].col, e.what());
      }
      AlgebraBuilder::Comp c{w[0].text, k, w[2].text, w[3].text, integer(w[4]), {}, {}};
      if (w.size() == 6) {
        const auto& t = w[5].text;
        std::size_t comma = t.find(',');
        if (t.size() < 3 || t.front() != '(' || t.back() != ')' || comma == std::string::npos)
          fail(w[5].col, "expected '(fine,fine)'");
        auto part = [](std::string x) { return x == "-" ? std::string() : x; };
        c.from_fine = part(t.substr(1, comma - 1));
        c.to_fine = part(t.substr(comma + 1, t.size() - comma - 2));
      }
      b.comps.push_back(c);
    } else if (section_ == "mul") {
      if (w.size() < 5 || w[1].text != "*" || w[3].text != "=") fail(w[0].col, "expected 'a * b = <terms>'");
      auto key = std::make_pair(w[0].text, w[2].text);
      if (b.products.count(key)) fail(w[0].col, "product given twice");
      b.products[key] = terms(s, static_cast<std::size_t>(w[3].col));
    } else if (section_ == "bounds") {
      expect_count(w, 4, "s t >= degree");
      if (w[2].text != ">=") fail(w[2].col, "expected '>='");
      b.lower_bounds[{w[0].text, w[1].text}] = integer(w[3]);
    } else if (section_ == "cutoff") {
      expect_count(w, 1, "<degree> | none");
      b.cutoff = w[0].text == "none" ? kInf : integer(w[0]);
      cutoff_set_ = true;
    } else if (section_ == "tau") {
      expect_count(w, 3, "a <-> b");
      if (w[1].text != "<->") fail(w[1].col, "expected '<->'");
      out_.tau.push_back({w[0].text, w[2].text});
    }
  }

  void finish() {
    auto& b = out_.builder;
    if (!cutoff_set_) b.cutoff = kInf;
    std::set<std::string> objs;
    for (auto& o : b.objects)
      if (!objs.insert(o.name).second) throw IntegrityError(o.name, "duplicate object");
    for (auto& [s, l] : special_) {
      auto it = std::find_if(b.objects.begin(), b.objects.end(), [&](auto& o) { return o.name == s; });
      if (it == b.objects.end()) throw IntegrityError(s, "special map names an undeclared object");
      if (!it->weight.empty()) throw IntegrityError(s, "object given two weights");
      it->weight = l;
    }
    std::set<std::string> comps;
    for (auto& c : b.comps) {
      if (!comps.insert(c.id).second) throw IntegrityError(c.id, "duplicate component");
      for (auto* o : {&c.from, &c.to})
        if (!objs.count(*o)) throw IntegrityError(*o, "component " + c.id + " names an undeclared object");
    }
    if (!out_.explicit_basis) b.generate_basis();
    b.ensure_units();
    comps.clear();
    for (auto& c : b.comps) comps.insert(c.id);
    std::set<std::string> elems;
    for (auto& e : b.basis) {
      if (!elems.insert(e.id).second) throw IntegrityError(e.id, "duplicate basis element");
      for (auto* o : {&e.source, &e.target})
        if (!objs.count(*o)) throw IntegrityError(*o, "element " + e.id + " names an undeclared object");
      for (auto* f : {&e.x, &e.h, &e.y})
        if (!f->empty() && !comps.count(*f)) throw IntegrityError(*f, "element " + e.id + " names an undeclared component");
    }
    auto check_terms = [&](const AlgebraBuilder::Terms& t, const std::string& where) {
      for (auto& [c, id] : t)
        if (!elems.count(id)) throw IntegrityError(id, where + " names an undeclared basis element");
    };
    for (auto& o : b.objects)
      if (o.unit) check_terms(*o.unit, "unit of " + o.name);
    for (auto& [key, t] : b.products) {
      for (auto* id : {&key.first, &key.second})
        if (!elems.count(*id)) throw IntegrityError(*id, "product names an undeclared basis element");
      check_terms(t, "product " + key.first + " * " + key.second);
    }
    for (auto& [k, v] : b.lower_bounds)
      for (auto* o : {&k.first, &k.second})
        if (!objs.count(*o)) throw IntegrityError(*o, "bound names an undeclared object");
    for (auto& [x, y] : out_.tau)
      for (auto* id : {&x, &y})
        if (!comps.count(*id)) throw IntegrityError(*id, "tau names an undeclared component");
  }

  const std::string& text_;
  GtaFile out_;
  int line_ = 0;
  std::string section_;
  std::set<std::string> seen_;
  bool field_set_ = false, cutoff_set_ = false;
  std::vector<std::pair<std::string, std::string>> special_;
};

std::string render_terms(const AlgebraBuilder::Terms& t) {
  if (t.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::string c = t[k].first.str();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (k == 0)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (c != "1") out += c + "*";
    out += t[k].second;
  }
  return out;
}

}  // namespace

GtaFile parse_gta(const std::string& text) { return Parser(text).run(); }

AlgebraPtr build_gta(const GtaFile& f) { return f.builder.build(); }

GtaFile read_gta_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_gta(ss.str());
}

std::string export_gta(const TriangularAlgebra& a, const std::vector<std::pair<std::string, std::string>>& tau) {
  AlgebraBuilder b = AlgebraBuilder::from(a);
  std::ostringstream o;
  o << "[algebra]\nname " << b.name << "\n\n[field]\n" << b.field.str() << "\n\n[objects]\n";
  // default unit: the IDEMPOTENT component of a special object
  std::vector<int> unit_elem(a.num_objects(), -1);
  for (int i = 0; i < a.num_objects(); ++i) {
    int e = a.idempotent_component(i), u = a.unit_component(i);
    if (e >= 0 && u >= 0) unit_elem[i] = a.triple_index(u, e, u);
  }
  for (int i = 0; i < a.num_objects(); ++i) {
    o << a.object(i).name;
    const auto& u = a.unit(i);
    bool dflt = unit_elem[i] >= 0 && u.size() == 1 && u[0].first == unit_elem[i] && u[0].second.is_one();
    if (!dflt) o << " unit = " << render_terms(*b.objects[i].unit);
    o << "\n";
  }
  o << "\n[poset]\n";
  if (a.num_weights()) {
    o << "weight";
    for (int w = 0; w < a.num_weights(); ++w) o << " " << a.weight(w);
    o << "\n";
  }
  for (auto& [m, l] : b.covers) o << m << " < " << l << "\n";
  o << "\n[special]\n";
  for (int i = 0; i < a.num_objects(); ++i)
    if (a.special(i)) o << a.object(i).name << " -> " << a.weight(a.object(i).weight) << "\n";
  o << "\n[basis]\n";
  for (auto& c : b.comps) {
    if (c.kind == CompKind::Unit) continue;
    o << c.id << " " << to_string(c.kind) << " " << c.from << " " << c.to << " " << c.degree;
    if (!c.from_fine.empty() || !c.to_fine.empty())
      o << " (" << (c.from_fine.empty() ? "-" : c.from_fine) << "," << (c.to_fine.empty() ? "-" : c.to_fine) << ")";
    o << "\n";
  }
  {
    AlgebraBuilder g = b;
    g.generate_basis();
    auto key = [](const AlgebraBuilder::Elem& e) {
      return std::make_tuple(e.id, e.target, e.source, e.degree, e.x, e.h, e.y);
    };
    std::set<decltype(key(b.basis[0]))> have, gen;
    for (auto& e : b.basis) have.insert(key(e));
    for (auto& e : g.basis) gen.insert(key(e));
    if (have != gen) {
      auto dash = [](const std::string& s) { return s.empty() ? std::string("-") : s; };
      for (auto& e : b.basis)
        o << e.id << " elem " << e.source << " " << e.target << " " << e.degree << " " << dash(e.x) << " "
          << dash(e.h) << " " << dash(e.y) << "\n";
    }
  }
  o << "\n[mul" << (b.complete ? " complete=true" : "") << "]\n";
  std::set<int> units;
  for (int e : unit_elem)
    if (e >= 0) units.insert(e);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const SparseVec* p = a.product(i, j);
      if (!p) continue;
      if (b.complete && p->empty()) continue;
      // products with the idempotent unit are filled in on load
      if ((units.count(i) && *p == a.basis_vector(j)) || (units.count(j) && *p == a.basis_vector(i))) continue;
      o << a.element(i).id << " * " << a.element(j).id << " = " << render_terms(b.products.at({a.element(i).id, a.element(j).id}))
        << "\n";
    }
  if (!b.lower_bounds.empty()) {
    o << "\n[bounds]\n";
    for (auto& [k, v] : b.lower_bounds) o << k.first << " " << k.second << " >= " << v << "\n";
  }
  if (a.truncated()) o << "\n[cutoff]\n" << a.cutoff() << "\n";
  if (!tau.empty()) {
    o << "\n[tau]\n";
    for (auto& [x, y] : tau) o << x << " <-> " << y << "\n";
  }
  return o.str();
}

}  // namespace gta
