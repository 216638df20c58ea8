#pragma once

#include <string>
#include <vector>

#include "gta/algebra.hpp"

namespace gta {

AlgebraBuilder ground_builder(Field f = {});
AlgebraBuilder matrix_builder(int n, Field f = {});
AlgebraBuilder poly_builder(int cutoff, Field f = {});
// s0 < s1, xi in X(s1,s0), eta in Y(s0,s1), H(s0,s0) = {x^a}, eta*xi = x^1.
AlgebraBuilder e1_builder(int cutoff, Field f = {});
AlgebraBuilder nilhecke2_builder(int cutoff, Field f = {});
// Two specials a, b of weight 0 with H = matrix units over k[x], and c of weight 1 attached to a.
AlgebraBuilder e2_builder(int cutoff, Field f = {});

inline AlgebraPtr make_ground(Field f = {}) { return ground_builder(f).build(); }
inline AlgebraPtr make_matrix(int n, Field f = {}) { return matrix_builder(n, f).build(); }
inline AlgebraPtr make_poly(int cutoff, Field f = {}) { return poly_builder(cutoff, f).build(); }
inline AlgebraPtr make_E1(int cutoff, Field f = {}) { return e1_builder(cutoff, f).build(); }
inline AlgebraPtr make_nilhecke2(int cutoff, Field f = {}) { return nilhecke2_builder(cutoff, f).build(); }
inline AlgebraPtr make_E2(int cutoff, Field f = {}) { return e2_builder(cutoff, f).build(); }

// Names: ground, matrix<n>, poly, e1, e2, nilhecke2. Throws std::invalid_argument.
AlgebraPtr make_corpus(const std::string& name, int cutoff, Field f = {});
std::vector<std::string> corpus_names();

struct Mutant {
  std::string name;
  std::string axiom;  // the axiom expected to fail
  AlgebraPtr algebra;
};
std::vector<Mutant> make_mutants(int cutoff);

// tau on E1: xi <-> eta, everything in H fixed. Pairs of component ids.
std::vector<std::pair<std::string, std::string>> e1_tau();

}  // namespace gta
