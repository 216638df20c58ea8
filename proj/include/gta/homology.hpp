#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gta/theory.hpp"

namespace gta {

struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AmbiguousCharacters : std::domain_error {
  using std::domain_error::domain_error;
};

struct HomDegree {
  int degree = 0;
  int dim = 0;
  bool certified = false;
  std::string rule;  // which certificate applied: bounded-target, finite, free, projective, or none
};

// Graded pieces Hom(V, W)_d, f(V_n) in W_{n+d}; series is sum dim Hom_d q^-d.
struct HomSpace {
  std::map<int, HomDegree> degrees;
  QSeries series;
  bool certified = false;
  std::string note;
};

HomDegree hom_degree(const GradedModule& v, const GradedModule& w, int d);
HomSpace hom_space(const GradedModule& v, const GradedModule& w);

// Solutions of the degree-d hom equations for source vectors with degrees in [lo, hi].
struct HomSolutions {
  std::vector<std::pair<int, int>> unknowns;  // (v, w): coefficient of w in f(v)
  MatQ basis;                                 // columns
};
HomSolutions hom_solutions(const GradedModule& v, const GradedModule& w, int d, long lo, long hi);

struct Ext1Result {
  QSeries series;
  bool certified = false;
  std::string note;
};
Ext1Result ext1(const GradedModule& v, const GradedModule& w);

// Isomorphism on the common window: characters, then a generic degree-0 map.
struct IsoResult {
  bool iso = false;
  std::string reason;
  Window window;
};
IsoResult window_iso(const GradedModule& v, const GradedModule& w);
bool same_algebra(const TriangularAlgebra& a, const TriangularAlgebra& b);

// [V:L(b)]_q by peeling simple characters off, lowest weight first.
struct Multiplicities {
  std::vector<std::pair<BlockRef, QSeries>> mult;
  const QSeries* find(const std::string& label) const;
};
Multiplicities multiplicities(const Theory& t, const GradedModule& v);

}  // namespace gta
