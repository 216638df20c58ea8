#include "gta/report.hpp"

#include <sstream>

namespace gta {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive-window";
  }
  return "?";
}

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

Verdict Report::verdict() const {
  Verdict v = Verdict::Pass;
  for (auto& l : lines) v = worst(v, l.verdict);
  return v;
}

CheckLine& Report::add(std::string name, Verdict v, std::string detail) {
  lines.push_back({std::move(name), v, std::move(detail), {}});
  return lines.back();
}

Verdict compare_series(const QSeries& a, const QSeries& b, int w, std::string* detail) {
  try {
    if (eq_window(a, b, w)) return Verdict::Pass;
    for (int e = -w; e <= w; ++e)
      if (a[e] != b[e]) {
        if (detail) *detail = "coefficients of q^" + std::to_string(e) + " differ";
        break;
      }
    return Verdict::Fail;
  } catch (const WindowExceedsKnowledge& ex) {
    if (detail) *detail = ex.what();
    return Verdict::Inconclusive;
  }
}

std::string render_text(const Report& r) {
  std::ostringstream o;
  o << r.command << ": " << r.subject;
  if (r.window) o << " (window " << r.window << ")";
  o << "\n";
  for (auto& [k, v] : r.facts) o << "  " << k << ": " << v << "\n";
  for (auto& l : r.lines) {
    o << "  [" << to_string(l.verdict) << "] " << l.name;
    if (!l.detail.empty()) o << " -- " << l.detail;
    o << "\n";
    for (auto& [k, s] : l.series) o << "      " << k << " = " << to_text(s) << "\n";
  }
  o << "verdict: " << to_string(r.verdict()) << "\n";
  return o.str();
}

nlohmann::ordered_json render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["subject"] = r.subject;
  j["window"] = r.window;
  if (!r.facts.empty()) {
    nlohmann::ordered_json f = nlohmann::ordered_json::object();
    for (auto& [k, v] : r.facts) f[k] = v;
    j["facts"] = f;
  }
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (auto& l : r.lines) {
    nlohmann::ordered_json c;
    c["name"] = l.name;
    c["verdict"] = to_string(l.verdict);
    if (!l.detail.empty()) c["detail"] = l.detail;
    if (!l.series.empty()) {
      nlohmann::ordered_json s = nlohmann::ordered_json::object();
      for (auto& [k, q] : l.series) s[k] = to_json(q);
      c["series"] = s;
    }
    checks.push_back(c);
  }
  j["checks"] = checks;
  j["verdict"] = to_string(r.verdict());
  return j;
}

}  // namespace gta
