#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gta/scalar.hpp"

namespace gta {

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<std::pair<int, Scalar>>;

class Accumulator {
 public:
  void add(int i, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m_.try_emplace(i, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) m_.erase(it);
    }
  }
  void add(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return;
    for (auto& [i, x] : v) add(i, x * c);
  }
  void add(const SparseVec& v) {
    for (auto& [i, x] : v) add(i, x);
  }
  bool empty() const { return m_.empty(); }
  SparseVec take() const { return SparseVec(m_.begin(), m_.end()); }

 private:
  std::map<int, Scalar> m_;
};

inline SparseVec scaled(const SparseVec& v, const Scalar& c) {
  SparseVec out;
  if (c.is_zero()) return out;
  out.reserve(v.size());
  for (auto& [i, x] : v) out.emplace_back(i, x * c);
  return out;
}

inline SparseVec sparse_sum(const SparseVec& a, const SparseVec& b, const Scalar& cb) {
  Accumulator acc;
  acc.add(a);
  acc.add(b, cb);
  return acc.take();
}

inline bool sparse_equal(const SparseVec& a, const SparseVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  return true;
}

// Row echelon form kept sparse; rows normalized to leading coefficient 1.
class SparseEchelon {
 public:
  // Reduces x; returns true and stores it if independent.
  bool add(SparseVec x) {
    reduce(x);
    if (x.empty()) return false;
    Scalar inv = x.front().second.inverse();
    for (auto& [i, c] : x) c *= inv;
    int p = x.front().first;
    rows_.emplace(p, std::move(x));
    return true;
  }
  void reduce(SparseVec& x) const {
    std::size_t k = 0;
    while (k < x.size()) {
      auto it = rows_.find(x[k].first);
      if (it == rows_.end()) {
        ++k;
        continue;
      }
      Scalar f = x[k].second;
      Accumulator acc;
      acc.add(x);
      acc.add(it->second, -f);
      SparseVec y = acc.take();
      // entries before position k are untouched pivot-free coordinates
      x = std::move(y);
      k = 0;
      while (k < x.size() && !rows_.count(x[k].first)) ++k;
    }
  }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::map<int, SparseVec> rows_;
};

}  // namespace gta
