#pragma once

#include <set>
#include <string>
#include <vector>

#include "gta/homology.hpp"

namespace gta {

// Truncation to a finite lower set of weights, e_Gamma = sum of 1_s over specials of weight in Gamma.
struct GammaContext {
  AlgebraPtr parent;
  std::set<int> gamma;
  AlgebraPtr alg;  // e_Gamma A e_Gamma
  std::set<int> objects;  // parent objects of A_Gamma
  std::string label() const;
};
GammaContext make_gamma(const AlgebraPtr& a, const std::set<int>& gamma);

// Homogeneous generators in increasing degree, found within the window.
std::vector<SparseVec> find_generators(const GradedModule& m);

// V_Gamma = A e_Gamma V.
Submodule gamma_sub(const GammaContext& g, const GradedModule& v);
// V / V^Gamma with V^Gamma = {v : e_Gamma A v = 0}; the window loses the largest degree of a Y into S_Gamma.
Quotient gamma_quot(const GammaContext& g, const GradedModule& v);
// j^Gamma V = e_Gamma V over A_Gamma.
GradedModule gamma_truncate(const GammaContext& g, const GradedModule& v);
// j^Gamma_! M = A e_Gamma (x) M, from a presentation of M over A_Gamma.
GradedModule gamma_shriek(const GammaContext& g, const GradedModule& m);
// j^Gamma_* M, through duality with the opposite algebra.
GradedModule gamma_star(const GammaContext& g, const GradedModule& m);

// The counit j_! j V -> V_Gamma: surjective by construction, iso iff the characters agree.
struct CounitReport {
  bool iso = false;
  std::string reason;
  Window window;
};
CounitReport counit_check(const GammaContext& g, const GradedModule& v);

}  // namespace gta
