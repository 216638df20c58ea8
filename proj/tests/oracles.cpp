#include "oracles.hpp"

#include <gmpxx.h>

namespace oracle {

namespace {
using Poly = std::map<std::pair<int, int>, mpq_class>;

Poly demazure(const Poly& f) {
  Poly out;
  for (auto& [m, c] : f) {
    auto [i, j] = m;
    int lo = std::min(i, j), p = std::abs(i - j);
    mpq_class s = i > j ? c : mpq_class(-c);
    for (int t = 0; t < p; ++t) out[{lo + p - 1 - t, lo + t}] += s;
  }
  return out;
}

int rank(std::vector<std::vector<mpq_class>> rows) {
  int r = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (std::size_t k = r; k < rows.size(); ++k)
      if (rows[k][c] != 0) {
        piv = static_cast<int>(k);
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][c] == 0) continue;
      mpq_class f = rows[k][c] / rows[r][c];
      for (std::size_t l = c; l < cols; ++l) rows[k][l] -= f * rows[r][l];
    }
    ++r;
  }
  return r;
}
}  // namespace

std::map<int, int> nilhecke2_dims(int D) {
  const int N = D / 2 + 3;
  std::vector<std::pair<int, int>> monos;
  for (int s = 0; s <= N; ++s)
    for (int i = 0; i <= s; ++i) monos.push_back({i, s - i});
  std::map<std::pair<int, int>, int> pos;
  for (std::size_t k = 0; k < monos.size(); ++k) pos[monos[k]] = static_cast<int>(k);
  std::map<int, int> dims;
  for (int k = -1; 2 * k <= D; ++k) {
    std::vector<std::vector<mpq_class>> rows;
    for (int eps = 0; eps <= 1; ++eps) {
      int n = k + eps;
      if (n < 0) continue;
      for (int a = 0; a <= n; ++a) {
        std::vector<mpq_class> row(monos.size() * monos.size());
        for (std::size_t src = 0; src < monos.size(); ++src) {
          Poly f{{monos[src], 1}};
          if (eps) f = demazure(f);
          for (auto& [m, c] : f) {
            std::pair<int, int> t{m.first + a, m.second + n - a};
            auto it = pos.find(t);
            if (it != pos.end()) row[src * monos.size() + it->second] += c;
          }
        }
        rows.push_back(std::move(row));
      }
    }
    int r = rank(rows);
    if (r) dims[2 * k] = r;
  }
  return dims;
}

}  // namespace oracle
