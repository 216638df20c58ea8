#pragma once

#include <set>
#include <string>
#include <vector>

#include "gta/gamma.hpp"
#include "gta/report.hpp"

namespace gta {

struct NoSpecialWitness : std::domain_error {
  using std::domain_error::domain_error;
};

struct FlagLayer {
  int weight = -1;
  std::vector<SparseVec> gens;  // vectors of the module generating the layer modulo the next step
  std::vector<std::pair<BlockRef, QSeries>> mult;
};

// M = M_0 > M_1 > ... > M_n = 0; layer r is M_{r-1}/M_r, chain[r] generates M_r.
struct Flag {
  Family kind = Family::Std;
  std::vector<FlagLayer> layers;
  std::vector<std::vector<SparseVec>> chain;
};

struct ProjectiveFlag {
  GradedModule q;  // q^shift A 1_u
  int object = -1;
  int shift = 0;
  std::vector<int> order;  // weights, largest first
  Flag flag;
};
ProjectiveFlag build_projective_flag(const Theory& t, const BlockRef& b);

Report verify_flag(const Theory& t, const GradedModule& v, const Flag& f);

// (V:Delta(b)), (V:DeltaBar(b)) by conjugated Hom into NablaBar(b), Nabla(b); (V:Nabla(b)), (V:NablaBar(b))
// by Hom from DeltaBar(b), Delta(b).
struct FlagMult {
  QSeries series;
  bool certified = false;
  std::string note;
};
FlagMult flag_multiplicity(const Theory& t, const GradedModule& v, const BlockRef& b, Family f);

struct SupportReport {
  Family flavor = Family::Std;
  std::vector<int> weights;
  std::vector<std::string> witnesses;
  bool certified = true;
};
SupportReport support(const Theory& t, const GradedModule& v, Family f);

Report bgg_check(const Theory& t, const BlockRef& b, int window, const Tau* tau = nullptr);
Report ascending_flag_check(const Theory& t, const GradedModule& v, const std::vector<std::set<int>>& gammas);
// (V:DeltaBar(b)) = sum_a (V:Delta(a)) (Delta(a):DeltaBar(b)).
Report delta_refinement_check(const Theory& t, const GradedModule& v, int window);
// [V:L(b)] = sum_a (V:DeltaBar(a)) [DeltaBar(a):L(b)].
Report composition_refinement_check(const Theory& t, const GradedModule& v, int window);

}  // namespace gta
