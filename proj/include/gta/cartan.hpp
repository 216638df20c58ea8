#pragma once

#include <string>
#include <vector>

#include "gta/findim.hpp"
#include "gta/module.hpp"

namespace gta {

struct NegativeDegreePresent : std::domain_error {
  using std::domain_error::domain_error;
};
struct UnknownBlock : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CartanBlock {
  std::string label;  // "lambda#k"
  int object = -1;    // object of the Cartan algebra carrying the chosen idempotent
  SparseVec idempotent;
  int dim = 0;  // dimension of the simple module
};

// A_lambda with its blocks, from a splitting of (A_lambda)_0.
struct CartanAlgebra {
  AlgebraPtr parent;
  int weight = -1;
  AlgebraPtr alg;
  std::vector<CartanBlock> blocks;
  // every primitive idempotent found: (object, block, element)
  struct Prim {
    int object;
    int block;
    SparseVec e;
  };
  std::vector<Prim> prims;
  MatQ radical0;                 // columns: radical of (A_lambda)_0, in degree-0 coordinates
  std::vector<int> degree0;      // Cartan basis elements of degree 0

  int block_index(const std::string& label) const;
  // Primitive idempotents of 1_s in block b.
  int primitive_count(int object, int block) const;
  // Parent object of a Cartan object.
  int parent_object(int object) const;
  int cartan_object(int parent_object) const;
};

CartanAlgebra analyze_cartan(const AlgebraPtr& a, int lambda);

GradedModule projective_cartan(const CartanAlgebra& c, int block);
GradedModule simple_cartan(const CartanAlgebra& c, int block);
GradedModule injective_cartan(const CartanAlgebra& c, int block);

// Element-wise identification of A with opposite(A)^op data: index in `op` of x h y reversed.
std::vector<int> opposite_index(const TriangularAlgebra& a, const TriangularAlgebra& op);

}  // namespace gta
