#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gta/functors.hpp"

namespace gta {

enum class Family { Std, ProperStd, ProperCostd, Costd };
std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct SplitFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlockRef {
  int weight = -1;
  int index = -1;
  std::string label;
};

// Lazily analysed Cartan algebras of one algebra, and the modules built from them.
class Theory {
 public:
  explicit Theory(AlgebraPtr a) : alg_(std::move(a)) {}

  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const TriangularAlgebra& algebra() const { return *alg_; }

  const CartanAlgebra& cartan(int weight) const;
  std::vector<BlockRef> blocks_of_weight(int weight) const;
  // All blocks, weights in index order; weights with no specials contribute nothing.
  std::vector<BlockRef> blocks() const;
  BlockRef block(const std::string& label) const;

  GradedModule standard(const BlockRef& b, Family f) const;
  GradedModule irreducible(const BlockRef& b) const;
  // P(b) = A e for a primitive idempotent e of (1_u A 1_u)_0 lifting the block idempotent.
  GradedModule projective(const BlockRef& b) const;
  // e as an element of A.
  SparseVec projective_idempotent(const BlockRef& b) const;

 private:
  AlgebraPtr alg_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<CartanAlgebra>> cartan_;
};

// Block of a primitive idempotent of (A_lambda)_0 given in Cartan coordinates, -1 if it is in the radical.
int block_of_idempotent(const CartanAlgebra& c, const SparseVec& e);

}  // namespace gta
