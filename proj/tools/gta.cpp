#include <CLI11.hpp>
#include <iostream>

#include "gta/commands.hpp"

namespace {

struct Sub {
  const char* name;
  const char* help;
};

const Sub kSubs[] = {
    {"verify", "check the graded triangular basis axioms"},
    {"info", "objects, weights, blocks and graded dimension"},
    {"cartan", "Cartan algebras A_lambda and their blocks"},
    {"module", "construct std, proper-std, proper-costd, costd, L, P or I"},
    {"decompose", "composition and Delta-flag multiplicities of a module"},
    {"hom", "graded dimension of Hom between two modules"},
    {"ext1", "graded dimension of Ext^1 between two modules"},
    {"flag", "explicit Delta-flag of the projective of a block"},
    {"bgg", "BGG reciprocity for one block or all blocks"},
    {"truncate", "Gamma-truncation of a module and the counit check"},
    {"ascending", "ascending Delta-flag check over lower sets"},
    {"export", "write the algebra in .gta form"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded triangular algebras: standard modules and their identities"};
  app.require_subcommand(1);
  gta::Options o;
  std::string format = "text";
  for (auto& s : kSubs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("algebra", o.algebra, ".gta file or built-in (@ground @matrix2 @poly @e1 @nilhecke2 @e2)")
        ->required();
    sub->add_option("--window", o.window, "comparison window w: exponents in [-w, w]")->capture_default_str();
    sub->add_option("--cutoff", o.cutoff, "degree cutoff for built-in algebras")->capture_default_str();
    sub->add_option("--field", o.field, "rational or fp:<p>");
    sub->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_flag("--tau", o.tau, "use the anti-involution declared by the algebra");
    sub->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    sub->add_option("--b", o.block, "block label (weight#k) or weight");
    sub->add_option("--module", o.module, "FAMILY:BLOCK");
    sub->add_option("--target", o.target, "FAMILY:BLOCK");
    sub->add_option("--weight", o.weight, "weight");
    sub->add_option("--dual", o.dual, "star or tau");
    sub->add_option("--gamma", o.gammas, "lower set as comma-separated weights (repeatable)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  o.json = format == "json";
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    gta::CommandResult r = gta::run_command(command, o);
    std::cout << r.out;
    return r.exit_code;
  } catch (const gta::ParseError& e) {
    std::cerr << "gta: " << o.algebra << ": " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // UsageError, IntegrityError, unknown blocks and weights
    std::cerr << "gta: " << e.what() << "\n";
    return 2;
  } catch (const gta::WindowTooSmall& e) {
    std::cerr << "gta: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gta: error: " << e.what() << "\n";
    return 1;
  }
}
