#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gta/scalar.hpp"

namespace gta {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatQ = Mat<Scalar>;
using VecQ = Vec<Scalar>;

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

template <class Derived>
bool is_zero_vector(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c, const S& zero) {
  return Mat<S>::Constant(r, c, zero);
}

// Reduced row echelon form; only the nonzero rows are kept.
template <class S>
struct Echelon {
  Mat<S> rows;
  std::vector<int> pivots;

  int rank() const { return static_cast<int>(pivots.size()); }
};

template <class Derived>
Echelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  Mat<S> a = m;
  const Eigen::Index nr = a.rows(), nc = a.cols();
  Echelon<S> out;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < nc && r < nr; ++c) {
    Eigen::Index p = r;
    while (p < nr && is_zero(a(p, c))) ++p;
    if (p == nr) continue;
    if (p != r) a.row(p).swap(a.row(r));
    S inv = a(r, c).inverse();
    for (Eigen::Index k = c; k < nc; ++k)
      if (!is_zero(a(r, k))) a(r, k) *= inv;
    for (Eigen::Index i = 0; i < nr; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      S f = a(i, c);
      for (Eigen::Index k = c; k < nc; ++k)
        if (!is_zero(a(r, k))) a(i, k) -= f * a(r, k);
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.rows = a.topRows(r);
  return out;
}

template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
  return row_echelon(m).rank();
}

// Columns span the right kernel.
template <class Derived>
Mat<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m, const typename Derived::Scalar& zero) {
  using S = typename Derived::Scalar;
  auto e = row_echelon(m);
  const Eigen::Index nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < nc; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Mat<S> k = zeros<S>(nc, static_cast<Eigen::Index>(free.size()), zero);
  S one = zero;
  one += S(1);
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = one;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (!is_zero(e.rows(r, free[j]))) k(e.pivots[r], j) = -e.rows(r, free[j]);
  }
  return k;
}

// One solution of m x = b, or nothing if inconsistent.
template <class D1, class D2>
std::optional<Vec<typename D1::Scalar>> solve(const Eigen::MatrixBase<D1>& m, const Eigen::MatrixBase<D2>& b,
                                              const typename D1::Scalar& zero) {
  using S = typename D1::Scalar;
  Mat<S> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  auto e = row_echelon(aug);
  Vec<S> x = Vec<S>::Constant(m.cols(), zero);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x(e.pivots[r]) = e.rows(r, m.cols());
  }
  return x;
}

// Reduce v modulo the row space of an echelon form (pivot entries cleared).
template <class S, class Derived>
Vec<S> reduce_mod(const Echelon<S>& e, const Eigen::MatrixBase<Derived>& v) {
  Vec<S> w = v;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    S f = w(e.pivots[r]);
    if (is_zero(f)) continue;
    for (Eigen::Index k = 0; k < w.size(); ++k)
      if (!is_zero(e.rows(r, k))) w(k) -= f * e.rows(r, k);
  }
  return w;
}

// A graded linear map V -> W (shift d: V_n -> W_{n+d}), blockwise by source degree.
struct GradedMap {
  int shift = 0;
  std::map<int, MatQ> blocks;  // source degree -> matrix (rows: target dim, cols: source dim)
};

struct DegreeSolution {
  VecQ particular;
  MatQ kernel;
};

// Per degree: a particular solution of M_d x = t_d plus the kernel, or nullopt if some degree is inconsistent.
std::optional<std::map<int, DegreeSolution>> solve_degreewise(const GradedMap& m, const std::map<int, VecQ>& targets,
                                                              const Field& f);

}  // namespace gta
