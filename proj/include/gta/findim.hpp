#pragma once

#include <string>
#include <vector>

#include "gta/linalg.hpp"

namespace gta {

struct CharacteristicTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSplit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite-dimensional unital algebra given by structure constants on a basis.
class FinDimAlgebra {
 public:
  FinDimAlgebra(Field f, std::vector<std::string> labels);

  int dim() const { return static_cast<int>(labels_.size()); }
  const Field& field() const { return field_; }
  const std::vector<std::string>& labels() const { return labels_; }

  void set_product(int i, int j, VecQ v) { table_[i * dim() + j] = std::move(v); }
  const VecQ& product(int i, int j) const { return table_[i * dim() + j]; }
  void set_unit(VecQ u) { unit_ = std::move(u); }
  const VecQ& unit() const { return unit_; }

  VecQ mul(const VecQ& a, const VecQ& b) const;
  VecQ basis_vector(int i) const;
  VecQ zero() const { return VecQ::Constant(dim(), field_.zero()); }

  // First failing triple/law, empty if associative and unital.
  std::string check_laws() const;

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::vector<VecQ> table_;
  VecQ unit_;
};

// Columns form a basis of the Jacobson radical.
MatQ radical_findim(const FinDimAlgebra& a);

struct PrimitiveIdempotent {
  VecQ e;
  int block = 0;
  int block_dim = 0;
};

// Complete orthogonal primitive idempotents refining `start` (default {1}).
std::vector<PrimitiveIdempotent> split_idempotents(const FinDimAlgebra& a, const std::vector<VecQ>& start = {});

// dim eAe / J(eAe) for an idempotent e.
int corner_semisimple_dim(const FinDimAlgebra& a, const MatQ& radical, const VecQ& e);

}  // namespace gta
