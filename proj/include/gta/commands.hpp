#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gta/flags.hpp"
#include "gta/format.hpp"

namespace gta {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string algebra;  // a .gta path or @name
  int cutoff = 16;      // for built-ins
  int window = 8;
  std::string field;    // empty: as given by the source
  bool json = false;
  bool tau = false;
  int threads = 1;
  std::string block;                // --b
  std::string module;               // --module FAMILY:BLOCK
  std::string target;               // --target FAMILY:BLOCK
  std::string weight;               // --weight
  std::string dual;                 // --dual star|tau
  std::vector<std::string> gammas;  // --gamma w1,w2,...
};

struct Loaded {
  AlgebraPtr alg;
  std::vector<std::pair<std::string, std::string>> tau;
};
Loaded load_algebra(const Options& o);

// FAMILY is std, proper-std, proper-costd, costd (or delta, delta-bar, nabla-bar, nabla), L, P or I.
GradedModule make_module(const Theory& t, const std::string& spec);
// A block label such as 1#0, or a weight with a single block.
BlockRef resolve_block(const Theory& t, const std::string& s);
// I(b) as the dual of the projective over the opposite algebra whose head is dual to L(b).
GradedModule injective_module(const Theory& t, const BlockRef& b);

struct CommandResult {
  int exit_code = 0;
  std::string out;
};

// Exit codes: 0 pass, 1 fail, 2 usage or parse error (thrown as UsageError / ParseError), 3 window insufficient.
CommandResult run_command(const std::string& command, const Options& o);
int exit_code(Verdict v);

}  // namespace gta
