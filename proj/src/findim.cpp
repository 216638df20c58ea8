#include "gta/findim.hpp"

#include <algorithm>
#include <numeric>

namespace gta {

FinDimAlgebra::FinDimAlgebra(Field f, std::vector<std::string> labels)
    : field_(f), labels_(std::move(labels)) {
  table_.assign(static_cast<std::size_t>(dim()) * dim(), VecQ::Constant(dim(), field_.zero()));
  unit_ = VecQ::Constant(dim(), field_.zero());
}

VecQ FinDimAlgebra::basis_vector(int i) const {
  VecQ v = zero();
  v(i) = field_.one();
  return v;
}

VecQ FinDimAlgebra::mul(const VecQ& a, const VecQ& b) const {
  VecQ out = zero();
  for (int i = 0; i < dim(); ++i) {
    if (a(i).is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b(j).is_zero()) continue;
      Scalar c = a(i) * b(j);
      const VecQ& p = product(i, j);
      for (int k = 0; k < dim(); ++k)
        if (!p(k).is_zero()) out(k) += c * p(k);
    }
  }
  return out;
}

std::string FinDimAlgebra::check_laws() const {
  for (int i = 0; i < dim(); ++i) {
    VecQ bi = basis_vector(i);
    if (mul(unit_, bi) != bi || mul(bi, unit_) != bi) return "unit fails on " + labels_[i];
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) {
        VecQ l = mul(product(i, j), basis_vector(k));
        VecQ r = mul(bi, product(j, k));
        if (l != r) return "associativity fails on (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")";
      }
  }
  return {};
}

MatQ radical_findim(const FinDimAlgebra& a) {
  const int n = a.dim();
  const Field& f = a.field();
  if (f.p != 0 && static_cast<unsigned long>(n) >= f.p)
    throw CharacteristicTooSmall("trace-form radical needs dim < p (dim " + std::to_string(n) + ", p " +
                                 std::to_string(f.p) + ")");
  // tr(L_{b_i b_j}) = sum_k coefficient of b_k in (b_i b_j) b_k
  MatQ t = zeros<Scalar>(n, n, f.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const VecQ& bij = a.product(i, j);
      Scalar tr = f.zero();
      for (int k = 0; k < n; ++k) {
        VecQ bk = a.basis_vector(k);
        VecQ prod = a.mul(bij, bk);
        tr += prod(k);
      }
      t(i, j) = tr;
    }
  return kernel(t, f.zero());
}

namespace {

using Poly = std::vector<Scalar>;  // low degree first

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly poly_sub(Poly a, const Poly& b, const Field& f) {
  if (a.size() < b.size()) a.resize(b.size(), f.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r, const Field& f) {
  trim(a);
  q.assign(std::max<int>(0, degree(a) - degree(b) + 1), f.zero());
  Scalar lead_inv = b.back().inverse();
  while (!a.empty() && degree(a) >= degree(b)) {
    int sh = degree(a) - degree(b);
    Scalar c = a.back() * lead_inv;
    q[sh] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] -= c * b[i];
    trim(a);
  }
  trim(q);
  r = a;
}

// s*a + t*b = gcd (monic).
void ext_gcd(Poly a, Poly b, Poly& s, Poly& t, const Field& f) {
  Poly s0{f.one()}, s1{}, t0{}, t1{f.one()};
  while (!b.empty()) {
    Poly q, r;
    poly_divmod(a, b, q, r, f);
    a = b;
    b = r;
    Poly ns = poly_sub(s0, poly_mul(q, s1, f), f);
    Poly nt = poly_sub(t0, poly_mul(q, t1, f), f);
    s0 = s1;
    s1 = ns;
    t0 = t1;
    t1 = nt;
  }
  Scalar inv = a.back().inverse();
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  s = s0;
  t = t0;
}

Scalar eval(const Poly& p, const Scalar& x, const Field& f) {
  Scalar r = f.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  if (n == 0 || n > 1000000) return out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

std::vector<Scalar> roots(const Poly& p, const Field& f) {
  std::vector<Scalar> out;
  if (p.empty()) return out;
  if (f.p != 0) {
    if (f.p > 100000) return out;
    for (unsigned long v = 0; v < f.p; ++v)
      if (eval(p, f.of(static_cast<long>(v)), f).is_zero()) out.push_back(f.of(static_cast<long>(v)));
    return out;
  }
  std::size_t low = 0;
  while (low < p.size() && p[low].is_zero()) ++low;
  if (low > 0) out.push_back(f.zero());
  mpz_class l = 1;
  for (std::size_t i = low; i < p.size(); ++i) l = lcm(l, p[i].value().get_den());
  mpz_class a0 = mpq_class(p[low].value() * l).get_num();
  mpz_class an = mpq_class(p.back().value() * l).get_num();
  auto dn = divisors(a0), dd = divisors(an);
  std::vector<mpq_class> cands;
  for (auto& x : dn)
    for (auto& y : dd) {
      mpq_class c(x, y);
      c.canonicalize();
      cands.push_back(c);
      cands.push_back(-c);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (auto& c : cands)
    if (eval(p, Scalar(c), f).is_zero()) out.push_back(Scalar(c));
  std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return a.value() < b.value(); });
  return out;
}

struct Splitter {
  const FinDimAlgebra& a;
  MatQ rad;
  std::vector<VecQ> found;

  MatQ span_rows(const std::vector<VecQ>& vs) const {
    MatQ m = zeros<Scalar>(static_cast<Eigen::Index>(vs.size()), a.dim(), a.field().zero());
    for (std::size_t i = 0; i < vs.size(); ++i) m.row(i) = vs[i].transpose();
    return m;
  }

  Echelon<Scalar> corner_radical(const VecQ& e) const {
    std::vector<VecQ> vs;
    for (Eigen::Index j = 0; j < rad.cols(); ++j) vs.push_back(a.mul(a.mul(e, rad.col(j)), e));
    if (vs.empty()) return row_echelon(zeros<Scalar>(0, a.dim(), a.field().zero()));
    return row_echelon(span_rows(vs));
  }

  VecQ eval_at(const Poly& p, const VecQ& x, const VecQ& e) const {
    VecQ r = a.zero(), pw = e;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_zero()) r += p[i] * pw;
      if (i + 1 < p.size()) pw = a.mul(pw, x);
    }
    return r;
  }

  // Minimal polynomial of x in eAe/eJe.
  Poly min_poly(const VecQ& x, const VecQ& e, const Echelon<Scalar>& j) const {
    const Field& f = a.field();
    std::vector<VecQ> powers{reduce_mod(j, e)};
    VecQ pw = e;
    for (int k = 1; k <= a.dim() + 1; ++k) {
      pw = a.mul(pw, x);
      VecQ r = reduce_mod(j, pw);
      MatQ m = zeros<Scalar>(a.dim(), k, f.zero());
      for (int c = 0; c < k; ++c) m.col(c) = powers[c];
      if (auto sol = solve(m, r, f.zero())) {
        Poly p(k + 1, f.zero());
        for (int c = 0; c < k; ++c) p[c] = -(*sol)(c);
        p[k] = f.one();
        return p;
      }
      powers.push_back(r);
    }
    throw std::logic_error("minimal polynomial not found");
  }

  VecQ lift(VecQ x) const {
    for (int it = 0; it < 64; ++it) {
      VecQ x2 = a.mul(x, x);
      if (x2 == x) return x;
      VecQ x3 = a.mul(x2, x);
      x = a.field().of(3) * x2 - a.field().of(2) * x3;
    }
    throw std::logic_error("idempotent lifting did not converge");
  }

  bool try_split(const VecQ& e, const VecQ& x, const Echelon<Scalar>& j) {
    const Field& f = a.field();
    Poly m = min_poly(x, e, j);
    if (degree(m) < 2) return false;
    for (const Scalar& r : roots(m, f)) {
      Poly lin{-r, f.one()}, g = m, pk{f.one()};
      for (;;) {
        Poly q, rem;
        poly_divmod(g, lin, q, rem, f);
        if (!rem.empty()) break;
        g = q;
        pk = poly_mul(pk, lin, f);
      }
      if (degree(g) < 1) continue;
      Poly s, t;
      ext_gcd(pk, g, s, t, f);
      VecQ e1 = lift(eval_at(poly_mul(t, g, f), x, e));
      VecQ e2 = e - e1;
      if (is_zero_vector(e1) || is_zero_vector(e2)) continue;
      split(e1);
      split(e2);
      return true;
    }
    return false;
  }

  void split(const VecQ& e) {
    const Field& f = a.field();
    std::vector<VecQ> cvs;
    for (int i = 0; i < a.dim(); ++i) cvs.push_back(a.mul(a.mul(e, a.basis_vector(i)), e));
    auto corner = row_echelon(span_rows(cvs));
    auto j = corner_radical(e);
    int qdim = corner.rank() - j.rank();
    if (qdim <= 1) {
      found.push_back(e);
      return;
    }
    std::vector<VecQ> cands;
    for (auto& v : cvs)
      if (!is_zero_vector(reduce_mod(j, v))) cands.push_back(v);
    const std::size_t base = cands.size();
    for (std::size_t p = 0; p < base; ++p)
      for (std::size_t q = p + 1; q < base; ++q) cands.push_back(cands[p] + cands[q]);
    for (std::size_t p = 0; p < base; ++p)
      for (std::size_t q = p + 1; q < base; ++q) cands.push_back(cands[p] + f.of(2) * cands[q]);
    for (auto& x : cands)
      if (try_split(e, x, j)) return;
    throw NotSplit("semisimple corner of dimension " + std::to_string(qdim) + " has no split idempotent over " +
                   f.str());
  }
};

}  // namespace

int corner_semisimple_dim(const FinDimAlgebra& a, const MatQ& radical, const VecQ& e) {
  Splitter sp{a, radical, {}};
  std::vector<VecQ> cvs;
  for (int i = 0; i < a.dim(); ++i) cvs.push_back(a.mul(a.mul(e, a.basis_vector(i)), e));
  return row_echelon(sp.span_rows(cvs)).rank() - sp.corner_radical(e).rank();
}

std::vector<PrimitiveIdempotent> split_idempotents(const FinDimAlgebra& a, const std::vector<VecQ>& start) {
  Splitter sp{a, radical_findim(a), {}};
  std::vector<VecQ> init = start;
  if (init.empty()) init.push_back(a.unit());
  for (auto& e : init)
    if (!is_zero_vector(e)) sp.split(e);

  const int m = static_cast<int>(sp.found.size());
  auto jech = row_echelon(sp.rad.transpose());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      bool linked = false;
      for (int i = 0; i < a.dim() && !linked; ++i) {
        VecQ b = a.basis_vector(i);
        if (!is_zero_vector(reduce_mod(jech, a.mul(a.mul(sp.found[p], b), sp.found[q]))) ||
            !is_zero_vector(reduce_mod(jech, a.mul(a.mul(sp.found[q], b), sp.found[p]))))
          linked = true;
      }
      if (linked) parent[find(q)] = find(p);
    }

  struct BlockKey {
    std::string label;
    int dim;
    int first;
  };
  std::map<int, std::vector<int>> members;
  for (int p = 0; p < m; ++p) members[find(p)].push_back(p);
  std::vector<BlockKey> keys;
  for (auto& [root, ms] : members) {
    std::string best;
    bool have = false;
    for (int p : ms)
      for (int i = 0; i < a.dim(); ++i)
        if (!sp.found[p](i).is_zero() && (!have || a.labels()[i] < best)) {
          best = a.labels()[i];
          have = true;
        }
    keys.push_back({best, static_cast<int>(ms.size()), ms.front()});
  }
  std::sort(keys.begin(), keys.end(), [](const BlockKey& x, const BlockKey& y) {
    if (x.label != y.label) return x.label < y.label;
    if (x.dim != y.dim) return x.dim < y.dim;
    return x.first < y.first;
  });
  std::vector<PrimitiveIdempotent> out;
  for (std::size_t b = 0; b < keys.size(); ++b)
    for (int p : members[find(keys[b].first)])
      out.push_back({sp.found[p], static_cast<int>(b), keys[b].dim});
  return out;
}

}  // namespace gta
