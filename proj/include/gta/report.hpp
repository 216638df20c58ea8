#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gta/qseries.hpp"

namespace gta {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);  // pass, fail, inconclusive-window
Verdict worst(Verdict a, Verdict b);

struct CheckLine {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<std::pair<std::string, QSeries>> series;
};

struct Report {
  std::string command;
  std::string subject;
  int window = 0;
  std::vector<CheckLine> lines;
  std::vector<std::pair<std::string, std::string>> facts;  // extra key/value output
  Verdict verdict() const;
  CheckLine& add(std::string name, Verdict v, std::string detail = {});
};

// Compare two series on [-w, w]; inconclusive when either is unknown there.
Verdict compare_series(const QSeries& a, const QSeries& b, int w, std::string* detail);

std::string render_text(const Report& r);
nlohmann::ordered_json render_json(const Report& r);

}  // namespace gta
