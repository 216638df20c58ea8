#pragma once

#include <string>
#include <vector>

#include "gta/cartan.hpp"

namespace gta {

struct WeightNotMinimal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAntiAutomorphism : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// j_! for the weight of c, applied to an A_lambda-module known up to some degree.
GradedModule standardize(const CartanAlgebra& c, const GradedModule& vbar, const std::string& name);
// j_* for an A_lambda-module known from some degree on.
GradedModule costandardize(const CartanAlgebra& c, const GradedModule& vbar, const std::string& name);
// j^lambda V = e_lambda V as an A_lambda-module.
GradedModule cartan_truncate(const CartanAlgebra& c, const GradedModule& v);

// V over B, phi[g] in B for each basis element g of `target`: (g f)(w) = f(phi[g] w).
GradedModule dual_via(const GradedModule& v, const AlgebraPtr& target, const std::vector<SparseVec>& phi,
                      const std::string& name);
// V over A -> V^* over `op`, which must be opposite(A) up to element names.
GradedModule dualize(const GradedModule& v, const AlgebraPtr& op);

// An anti-involution of A fixing the 1_i, given on component ids.
struct Tau {
  std::vector<SparseVec> image;  // per basis element
};
Tau make_tau(const TriangularAlgebra& a, const std::vector<std::pair<std::string, std::string>>& swaps);
GradedModule tau_dualize(const GradedModule& v, const Tau& t);

}  // namespace gta
