#include <doctest.h>

#include <json.hpp>

#include "gta/commands.hpp"

using namespace gta;

namespace {

Options opts(const std::string& alg) {
  Options o;
  o.algebra = alg;
  return o;
}

const std::string kData = GTA_DATA_DIR;

}  // namespace

TEST_CASE("verify reports every axiom and exits by verdict") {
  auto r = run_command("verify", opts(kData + "/e1.gta"));
  CHECK(r.exit_code == 0);
  for (const char* ax : {"basis", "degree", "associativity", "unit", "special", "direction"})
    CHECK(r.out.find(std::string("[pass] ") + ax) != std::string::npos);
  auto bad = run_command("verify", opts(kData + "/e1-bad-assoc.gta"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("[fail] associativity") != std::string::npos);
}

TEST_CASE("bgg json carries both series and the verdict") {
  Options o = opts(kData + "/e1.gta");
  o.block = "1#0";
  o.json = true;
  auto r = run_command("bgg", o);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "pass");
  CHECK(j["window"] == 8);
  bool seen = false;
  for (auto& c : j["checks"]) {
    CHECK(c["verdict"] == "pass");
    if (c["name"].get<std::string>().rfind("(P(1#0):Delta(0#0))", 0) == 0) {
      seen = true;
      CHECK(c["series"]["left"]["terms"].dump() == "[[-1,1]]");
      CHECK(c["series"]["right"]["terms"].dump() == "[[-1,1]]");
    }
  }
  CHECK(seen);
}

TEST_CASE("a window beyond the known degrees exits 3") {
  Options o = opts("@e1");
  o.cutoff = 4;
  o.module = "P:0#0";
  o.target = "std:0#0";
  o.window = 8;
  CHECK(run_command("hom", o).exit_code == 3);
  o.window = 3;
  CHECK(run_command("hom", o).exit_code == 0);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(run_command("frobnicate", opts("@e1")), UsageError);
  CHECK_THROWS_AS(run_command("verify", opts("@nosuch")), UsageError);
  Options o = opts("@e1");
  o.module = "widget:0#0";
  CHECK_THROWS_AS(run_command("module", o), UsageError);
  o.module = "P:1#0";
  o.gammas = {"1"};
  CHECK_THROWS_AS(run_command("truncate", o), UsageError);
  Options p = opts("@poly");
  p.tau = true;
  CHECK_THROWS_AS(run_command("bgg", p), UsageError);
  Options f = opts("@e1");
  f.field = "fp:4";
  CHECK_THROWS_AS(run_command("verify", f), UsageError);
}

TEST_CASE("fields") {
  Options o = opts(kData + "/e1.gta");
  o.field = "fp:3";
  auto r = run_command("info", o);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("field: fp:3") != std::string::npos);
  o.algebra = "@e1";
  CHECK(run_command("bgg", o).exit_code == 0);
}

TEST_CASE("export of a file reproduces it") {
  auto r = run_command("export", opts(kData + "/e1.gta"));
  Options o = opts("@e1");
  o.cutoff = 8;
  CHECK(r.out == run_command("export", o).out);
}
