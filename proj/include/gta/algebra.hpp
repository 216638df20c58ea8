#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gta/sparse.hpp"

namespace gta {

constexpr int kInf = 1 << 20;

struct CutoffExceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct UnknownProduct : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct IntegrityError : std::invalid_argument {
  IntegrityError(std::string id, const std::string& what)
      : std::invalid_argument(what + ": " + id), id(std::move(id)) {}
  std::string id;
};
struct NotUpperSet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotLowerSet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptyFiber : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unit: the implicit 1_s in X(s,s) and Y(s,s). Idempotent: 1_s declared as a member of H(s,s).
enum class CompKind { X, H, Y, Unit, Idempotent };

std::string to_string(CompKind k);
CompKind comp_kind_from_string(const std::string& s);

// A component lies in 1_to A 1_from.
// After contracting weights a component remembers the original special
// idempotents it sat between (fine tags); units carry empty tags and match anything.
struct Component {
  std::string id;
  CompKind kind;
  int from = -1;
  int to = -1;
  int degree = 0;
  std::string from_fine, to_fine;
};

bool fine_match(const std::string& a, const std::string& b);

// The basis element x h y; x, h, y index components (-1 if undeclared).
struct BasisElement {
  std::string id;
  int target = -1;
  int source = -1;
  int degree = 0;
  int x = -1, h = -1, y = -1;
};

struct ObjectInfo {
  std::string name;
  int weight = -1;  // -1 for objects outside S
  SparseVec unit;   // expansion of 1_i in the basis
};

using AlgebraElement = SparseVec;

class AlgebraBuilder;

// Locally unital graded algebra presented by a graded triangular basis, with
// structure constants for all pairs of degree sum at most the cutoff.
class TriangularAlgebra {
 public:
  const std::string& name() const { return name_; }
  const Field& field() const { return field_; }
  int cutoff() const { return cutoff_; }
  bool truncated() const { return cutoff_ < kInf; }
  bool complete() const { return complete_; }

  int num_objects() const { return static_cast<int>(objects_.size()); }
  const ObjectInfo& object(int i) const { return objects_[i]; }
  int object_index(const std::string& name) const;
  bool special(int i) const { return objects_[i].weight >= 0; }

  int num_weights() const { return static_cast<int>(weights_.size()); }
  const std::string& weight(int w) const { return weights_[w]; }
  int weight_index(const std::string& name) const;
  bool less(int mu, int lam) const { return less_[mu][lam]; }
  bool leq(int mu, int lam) const { return mu == lam || less_[mu][lam]; }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  std::vector<int> specials_of_weight(int w) const;
  // Linear extension of {mu <= lam}, largest first, lexicographic tie-break.
  std::vector<int> descending_extension(int lam) const;
  // Linear extension of a weight set, smallest first.
  std::vector<int> ascending_extension(const std::vector<int>& ws) const;

  int num_components() const { return static_cast<int>(comps_.size()); }
  const Component& component(int c) const { return comps_[c]; }
  int component_index(const std::string& id) const;
  int unit_component(int obj) const;        // -1 unless special
  int idempotent_component(int obj) const;  // -1 if the unit is not a single idempotent

  int size() const { return static_cast<int>(basis_.size()); }
  const BasisElement& element(int b) const { return basis_[b]; }
  int basis_index(const std::string& id) const;
  int triple_index(int x, int h, int y) const;
  // x and y are units: the element is h in H(s,t).
  bool pure_h(int b) const;
  int min_degree() const { return min_degree_; }

  // nullptr when unknown (beyond the cutoff or not tabulated); empty when zero.
  const SparseVec* product(int a, int b) const;
  const SparseVec& multiply_basis(int a, int b) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement basis_vector(int b) const { return {{b, field_.one()}}; }

  // A component as an element of A (x = x 1_s, y = 1_t y).
  AlgebraElement component_element(int c) const;
  const SparseVec& unit(int obj) const { return objects_[obj].unit; }

  std::optional<int> lower_bound(int i, int j) const;
  const std::map<std::pair<int, int>, int>& lower_bounds() const { return lower_; }

  std::string render_element(const AlgebraElement& a) const;

 private:
  friend class AlgebraBuilder;
  TriangularAlgebra() = default;

  std::string name_;
  Field field_;
  int cutoff_ = 0;
  bool complete_ = false;
  std::vector<ObjectInfo> objects_;
  std::vector<std::string> weights_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<bool>> less_;
  std::vector<Component> comps_;
  std::vector<BasisElement> basis_;
  std::vector<std::optional<SparseVec>> table_;
  std::map<std::pair<int, int>, int> lower_;
  std::unordered_map<std::string, int> object_ids_, weight_ids_, comp_ids_, basis_ids_;
  std::map<std::tuple<int, int, int>, int> triples_;
  std::vector<int> unit_comp_, idem_comp_;
  int min_degree_ = 0;
};

using AlgebraPtr = std::shared_ptr<const TriangularAlgebra>;

// Mutable string-keyed description; every algebra transformation goes through it.
class AlgebraBuilder {
 public:
  using Terms = std::vector<std::pair<Scalar, std::string>>;
  struct Obj {
    std::string name;
    std::string weight;  // empty: not special
    std::optional<Terms> unit;
  };
  struct Comp {
    std::string id;
    CompKind kind;
    std::string from, to;
    int degree = 0;
    std::string from_fine, to_fine;  // empty: same as the object
  };
  struct Elem {
    std::string id, target, source;
    int degree = 0;
    std::string x, h, y;
  };

  std::string name = "A";
  Field field;
  int cutoff = 0;
  bool complete = false;
  std::vector<Obj> objects;
  std::vector<std::string> weights;
  std::vector<std::pair<std::string, std::string>> covers;  // (mu, lambda): mu < lambda
  std::vector<Comp> comps;
  std::vector<Elem> basis;
  std::map<std::pair<std::string, std::string>, Terms> products;
  std::map<std::pair<std::string, std::string>, int> lower_bounds;

  void add_object(const std::string& n, const std::string& weight = "") { objects.push_back({n, weight, {}}); }
  void add_component(const std::string& id, CompKind k, const std::string& from, const std::string& to, int degree) {
    comps.push_back({id, k, from, to, degree, {}, {}});
  }
  void set_product(const std::string& a, const std::string& b, Terms t) { products[{a, b}] = std::move(t); }

  // Adds the implicit unit components 1_s for special objects.
  void ensure_units();
  // Materializes every composable triple x h y of degree <= cutoff.
  void generate_basis();
  static std::string unit_id(const std::string& obj) { return "1_" + obj; }
  std::string canonical_name(const Comp& x, const Comp& h, const Comp& y) const;

  AlgebraPtr build() const;
  static AlgebraBuilder from(const TriangularAlgebra& a);
};

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::vector<std::string> failures;  // first few
  std::size_t failure_count = 0;
};

struct VerificationReport {
  std::string algebra;
  int cutoff = 0;
  std::vector<AxiomResult> axioms;
  bool pass() const;
  const AxiomResult* find(const std::string& axiom) const;
};

VerificationReport verify_axioms(const TriangularAlgebra& a);

AlgebraPtr quotient_upper_set(const TriangularAlgebra& a, const std::set<int>& upper);
// Degree -> dim of A / (A e A), e the sum of 1_s over special s with weight outside `upper`,
// by direct linear algebra on the structure constants. Degrees up to cutoff + min(0, min degree).
std::map<int, int> ideal_quotient_dims(const TriangularAlgebra& a, const std::set<int>& upper);
AlgebraPtr cartan_algebra(const TriangularAlgebra& a, int lambda);
AlgebraPtr opposite(const TriangularAlgebra& a);
// The idempotent truncation to a set of objects closed under the X/Y directions (S_Gamma, or S).
AlgebraPtr restrict_objects(const TriangularAlgebra& a, const std::set<int>& objs, const std::set<int>& weights,
                            const std::string& name);
enum class ReduceMode { ToSpecial, ContractWeights };
AlgebraPtr reduce_presentation(const TriangularAlgebra& a, ReduceMode mode);

// e_Gamma A e_Gamma for a lower set Gamma.
AlgebraPtr gamma_algebra(const TriangularAlgebra& a, const std::set<int>& gamma);
std::set<int> upper_set_of(const TriangularAlgebra& a, int lambda);
bool is_lower_set(const TriangularAlgebra& a, const std::set<int>& ws);
bool is_upper_set(const TriangularAlgebra& a, const std::set<int>& ws);
// Weights named by labels; throws IntegrityError on unknown labels.
std::set<int> weight_set(const TriangularAlgebra& a, const std::vector<std::string>& labels);

}  // namespace gta
