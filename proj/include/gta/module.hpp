#pragma once

#include <map>
#include <string>
#include <vector>

#include "gta/algebra.hpp"
#include "gta/linalg.hpp"
#include "gta/qseries.hpp"

namespace gta {

// Degrees in which a module is known exactly; +-kInf mean unbounded.
struct Window {
  int lo = -kInf;
  int hi = kInf;
  bool contains(int d) const { return lo <= d && d <= hi; }
  bool bounded_lo() const { return lo > -kInf; }
  bool bounded_hi() const { return hi < kInf; }
  bool operator==(const Window&) const = default;
};

Window intersect(const Window& a, const Window& b);
Window shifted(const Window& w, int by);
std::string to_string(const Window& w);

struct ActionUnknown : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ModVec {
  int object = -1;
  int degree = 0;
  std::string label;
};

// A graded left module over a TriangularAlgebra, known on a window. The
// action of basis element g on vector v is known when deg v and deg v + deg g
// lie in the window.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr a, std::string name, Window w);

  const TriangularAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Window& window() const { return win_; }
  void set_window(Window w) { win_ = w; }

  int size() const { return static_cast<int>(vecs_.size()); }
  const ModVec& vec(int i) const { return vecs_[i]; }
  const std::vector<ModVec>& vecs() const { return vecs_; }

  // Construction: add vectors and actions, then finalize() once.
  int add_vector(int object, int degree, std::string label);
  void set_action(int g, int v, SparseVec image);
  void finalize();

  bool known(int g, int v) const;
  const SparseVec& act(int g, int v) const;
  SparseVec act(const AlgebraElement& a, const SparseVec& v) const;
  // Nonzero (g, g v) pairs for vector v.
  const std::vector<std::pair<int, SparseVec>>& actions(int v) const { return act_[v]; }

  // Vectors of a given (object, degree) in increasing order.
  const std::vector<int>& block(int object, int degree) const;
  const std::map<std::pair<int, int>, std::vector<int>>& blocks() const { return blocks_; }  // key (degree, object)
  int min_degree() const;  // kInf if empty
  int max_degree() const;  // -kInf if empty

  // Homogeneous generators (as vectors of this module); `free` when the module is free on them.
  std::vector<SparseVec> gens;
  bool free = false;
  // P = A e with e idempotent and gens = {e}: Hom(P, W)_d = e W_d.
  AlgebraElement gen_idempotent;

  std::string check_action() const;

 private:
  AlgebraPtr alg_;
  std::string name_;
  Window win_;
  std::vector<ModVec> vecs_;
  std::vector<std::vector<std::pair<int, SparseVec>>> act_;
  std::map<std::pair<int, int>, SparseVec> pending_;
  std::map<std::pair<int, int>, std::vector<int>> blocks_;
  bool final_ = false;
};

// q^shift A 1_u, known up to degree cutoff(A) + min(0, min degree of A) + shift.
GradedModule regular_module(const AlgebraPtr& a, int u, int shift = 0);

// Per (degree, object) block, RREF of the A-span of `vecs` inside V, within V's window.
struct SpanData {
  std::map<std::pair<int, int>, Echelon<Scalar>> blocks;
  int dimension() const;
};
SpanData span_closure(const GradedModule& v, const std::vector<SparseVec>& vecs);
// The linear span only (no closure).
SpanData linear_span(const GradedModule& v, const std::vector<SparseVec>& vecs);

struct Submodule {
  GradedModule mod;
  std::vector<SparseVec> embed;  // sub vector -> expansion in V
};
Submodule submodule(const GradedModule& v, const SpanData& span, const std::string& name);
// Coordinates in the submodule of a vector of V lying in it.
SparseVec sub_coordinates(const Submodule& s, const GradedModule& v, const SparseVec& x);

struct Quotient {
  GradedModule mod;
  std::vector<int> lift;  // quotient vector -> vector of V it is the image of
};
Quotient quotient(const GradedModule& v, const SpanData& span, const std::string& name);

// q^n V, so (q^n V)_d = V_{d+n}.
GradedModule shift(const GradedModule& v, int n);
GradedModule direct_sum(const std::vector<GradedModule>& parts, const std::string& name);

// (object, degree) -> dimension, within the window.
using Character = std::map<std::pair<int, int>, int>;
Character character(const GradedModule& v);
// Direction from the window: DOWN if bounded below in knowledge-free sense (known up to hi).
QSeries char_dim_q(const GradedModule& v, int object);
QSeries dim_q(const GradedModule& v);
QSeries series_from_degrees(const std::map<int, int>& dims, const Window& w);

// The vector of a module whose labels are element ids (regular modules) for an algebra element.
SparseVec element_vector(const GradedModule& v, const SparseVec& elem);

// Dense coordinates of a sparse vector on a block.
VecQ block_coords(const GradedModule& v, const std::vector<int>& block, const SparseVec& x);
SparseVec from_block_coords(const std::vector<int>& block, const VecQ& c);

}  // namespace gta
