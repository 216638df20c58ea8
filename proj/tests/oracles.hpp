#pragma once

// Independent models used to derive expected values. Nothing here touches the engine.

#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

// E1 inside 2x2 matrices over k[t]: every basis element is a monomial matrix unit E_ij t^n.
// 1_s0 = E00, 1_s1 = E11, xi = E10 t, eta = E01 t, x = E00 t^2.
struct E1Model {
  using Mono = std::tuple<int, int, int>;  // row, col, degree
  std::set<Mono> basis;

  explicit E1Model(int D) {
    std::vector<Mono> gens = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
    basis = {gens[0], gens[1]};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Mono> cur(basis.begin(), basis.end());
      for (auto& [i, j, n] : cur)
        for (auto& [k, l, m] : gens)
          if (j == k && n + m <= D && basis.insert({i, l, n + m}).second) grew = true;
    }
  }
  bool has(int i, int j, int n) const { return basis.count({i, j, n}) > 0; }
  // e factors as (i,k,m)(k,j,n-m) for some k in `through` and, if positive_only, with the
  // right factor of positive degree inside 1_k A 1_k.
  bool factors(int i, int j, int n, const std::set<int>& through) const {
    for (int k : through)
      for (int m = 0; m <= n; ++m)
        if (has(i, k, m) && has(k, j, n - m)) return true;
    return false;
  }

  using Char = std::map<std::pair<int, int>, int>;  // (object, degree) -> dim

  // Delta(b_j) = A 1_j modulo everything through objects of smaller weight (weight = index here).
  Char delta(int j) const {
    Char c;
    std::set<int> lower;
    for (int k = 0; k < j; ++k) lower.insert(k);
    for (auto& [r, col, n] : basis)
      if (col == j && !factors(r, col, n, lower)) c[{r, n}]++;
    return c;
  }
  // Proper standard: also kill A 1_j A_{>0} 1_j.
  Char proper_delta(int j) const {
    Char c;
    std::set<int> lower;
    for (int k = 0; k < j; ++k) lower.insert(k);
    for (auto& [r, col, n] : basis) {
      if (col != j || factors(r, col, n, lower)) continue;
      bool pos = false;
      for (int m = 0; m < n; ++m)
        if (has(r, j, m) && has(j, j, n - m) && !factors(j, j, n - m, lower)) pos = true;
      if (!pos) c[{r, n}]++;
    }
    return c;
  }
  // E1 is isomorphic to its opposite by transposition, so the costandard side is the dual
  // of the row version: object r, degree -n.
  Char nabla(int j) const {
    Char c;
    for (auto& [k, n] : delta(j)) c[{k.first, -k.second}] = n;
    return c;
  }
  Char proper_nabla(int j) const {
    Char c;
    for (auto& [k, n] : proper_delta(j)) c[{k.first, -k.second}] = n;
    return c;
  }
  // P(b_j) = A 1_j.
  Char projective(int j) const {
    Char c;
    for (auto& [r, col, n] : basis)
      if (col == j) c[{r, n}]++;
    return c;
  }
  // dim of A_{>=lambda} in each degree, lambda = weight index: kill everything through lower objects.
  std::map<int, int> upper_quotient_dims(int lambda) const {
    std::set<int> lower;
    for (int k = 0; k < lambda; ++k) lower.insert(k);
    std::map<int, int> d;
    for (auto& [r, col, n] : basis)
      if (!factors(r, col, n, lower)) d[n]++;
    return d;
  }
};

// NH_2 acting on k[x1,x2] by x1, x2 and the Demazure operator. Dimension of the span of the
// operators x1^a x2^b d^eps in each degree, computed as ranks of their matrices on
// polynomials of degree <= N (monomial degree counted in x, so grading is twice that).
std::map<int, int> nilhecke2_dims(int D);

}  // namespace oracle
