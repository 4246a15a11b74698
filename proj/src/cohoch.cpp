#include "qsym/cohoch.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

#include "qsym/errors.hpp"

namespace qsym {

namespace {

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;
using ZVec = std::vector<std::pair<int, mpz_class>>;

void monomials_rec(int d, int k, int pos, Exps& cur, std::vector<Exps>& out) {
  if (pos == d - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[pos] = a;
    monomials_rec(d, k - a, pos + 1, cur, out);
  }
}

std::vector<Exps> monomials(int d, int k) {
  std::vector<Exps> out;
  if (d == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  Exps cur(d, 0);
  monomials_rec(d, k, 0, cur, out);
  return out;
}

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

struct CoTerm {
  Exps left, right;
  mpz_class coef;
};

// Δ(x^a) = Σ_{b ≤ a} Π C(a_i, b_i) x^b ⊗ x^{a-b}
std::vector<CoTerm> coproduct(const Exps& a) {
  std::vector<CoTerm> out;
  Exps b(a.size(), 0);
  while (true) {
    CoTerm t;
    t.left = b;
    t.right.resize(a.size());
    t.coef = 1;
    for (size_t i = 0; i < a.size(); ++i) {
      t.right[i] = a[i] - b[i];
      t.coef *= binom(a[i], b[i]);
    }
    out.push_back(std::move(t));
    size_t i = 0;
    while (i < a.size() && b[i] == a[i]) b[i++] = 0;
    if (i == a.size()) break;
    ++b[i];
  }
  return out;
}

// Image of w^c in Sym(V) under the inclusion W → V.
Poly iota(const CochainComplex& cc, const Exps& c) {
  Poly p;
  p[Exps(cc.g_dim, 0)] = 1;
  for (int i = 0; i < cc.h_dim; ++i)
    for (int r = 0; r < c[i]; ++r) {
      Poly next;
      for (const auto& [m, v] : p)
        for (int j = 0; j < cc.g_dim; ++j) {
          if (sgn(cc.h_basis[i][j]) == 0) continue;
          Exps mm = m;
          ++mm[j];
          next[mm] += v * cc.h_basis[i][j];
        }
      p = std::move(next);
    }
  return p;
}

SparseVec to_sparse(const std::map<int, mpq_class>& acc) {
  SparseVec out;
  for (const auto& [i, v] : acc)
    if (sgn(v) != 0) out.emplace_back(i, v);
  return out;
}

int lookup(const BidegreeBasis& b, const Exps& key) {
  auto it = b.index.find(key);
  if (it == b.index.end()) throw InconsistencyError("cochain term outside the bidegree basis");
  return it->second;
}

// Leg boundaries inside a flattened monomial tuple.
int leg_start(const CochainComplex& cc, int leg) { return leg == 0 ? 0 : cc.h_dim + (leg - 1) * cc.g_dim; }
int leg_size(const CochainComplex& cc, int leg) { return leg == 0 ? cc.h_dim : cc.g_dim; }

Exps leg_of(const CochainComplex& cc, const Exps& m, int leg) {
  auto s = m.begin() + leg_start(cc, leg);
  return Exps(s, s + leg_size(cc, leg));
}

SparseVec d_basis(const CochainComplex& cc, int n, int w, int j) {
  const Exps& m = cc.bases[n][w].monomials[j];
  const BidegreeBasis& target = cc.bases[n + 1][w];
  const int nlegs = n + 1;
  std::map<int, mpq_class> acc;
  Exps tail(m.begin() + cc.h_dim, m.end());

  for (const auto& t : coproduct(leg_of(cc, m, 0)))
    for (const auto& [pm, pc] : iota(cc, t.right)) {
      Exps key = t.left;
      key.insert(key.end(), pm.begin(), pm.end());
      key.insert(key.end(), tail.begin(), tail.end());
      acc[lookup(target, key)] += pc * t.coef;
    }
  for (int leg = 1; leg < nlegs; ++leg) {
    const int s = leg_start(cc, leg);
    for (const auto& t : coproduct(leg_of(cc, m, leg))) {
      Exps key(m.begin(), m.begin() + s);
      key.insert(key.end(), t.left.begin(), t.left.end());
      key.insert(key.end(), t.right.begin(), t.right.end());
      key.insert(key.end(), m.begin() + s + cc.g_dim, m.end());
      mpq_class c(t.coef);
      if (leg % 2 == 1) c = -c;
      acc[lookup(target, key)] += c;
    }
  }
  Exps key = m;
  key.resize(m.size() + cc.g_dim, 0);
  acc[lookup(target, key)] += (n % 2 == 0) ? mpq_class(-1) : mpq_class(1);
  return to_sparse(acc);
}

SparseVec h_basis_action(const CochainComplex& cc, int n, int w, int k, int j) {
  const Exps& m = cc.bases[n][w].monomials[j];
  const BidegreeBasis& b = cc.bases[n][w];
  std::map<int, mpq_class> acc;
  for (int leg = 0; leg <= n; ++leg) {
    const int s = leg_start(cc, leg), sz = leg_size(cc, leg);
    const auto& ad = leg == 0 ? cc.ad_w[k] : cc.ad_v[k];
    for (int i = 0; i < sz; ++i) {
      if (m[s + i] == 0) continue;
      for (int l = 0; l < sz; ++l) {
        if (sgn(ad[i][l]) == 0) continue;
        Exps key = m;
        --key[s + i];
        ++key[s + l];
        acc[lookup(b, key)] += ad[i][l] * m[s + i];
      }
    }
  }
  return to_sparse(acc);
}

SparseVec combine(const std::vector<SparseVec>& cols, const SparseVec& v) {
  std::map<int, mpq_class> acc;
  for (const auto& [j, c] : v)
    for (const auto& [i, x] : cols[j]) acc[i] += c * x;
  return to_sparse(acc);
}

ZVec to_integer(const SparseVec& v, mpz_class* scale = nullptr) {
  mpz_class l = 1;
  for (const auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, mpz_class(x.get_num() * (l / x.get_den())));
  if (scale) *scale = l;
  return out;
}

// a·x - b·y
ZVec axpby(const mpz_class& a, const ZVec& x, const mpz_class& b, const ZVec& y) {
  ZVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

void remove_content(ZVec& x, ZVec& y) {
  mpz_class g = 0;
  for (const auto& e : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  for (const auto& e : y) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  if (g <= 1) return;
  for (auto& e : x) e.second /= g;
  for (auto& e : y) e.second /= g;
}

// Fraction-free echelon form; each row carries an optional combination record.
class Echelon {
 public:
  explicit Echelon(bool track) : track_(track) {}

  // Reduces v (and its record); returns true if v was independent and became a pivot.
  bool insert(ZVec v, ZVec rec, ZVec* residual_rec = nullptr) {
    while (!v.empty()) {
      auto it = rows_.find(v.front().first);
      if (it == rows_.end()) break;
      const auto& [p, prec] = it->second;
      mpz_class a = v.front().second, b = p.front().second, g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_class bs = b / g, as = a / g;
      v = axpby(bs, v, as, p);
      if (track_) rec = axpby(bs, rec, as, prec);
      remove_content(v, rec);
    }
    if (v.empty()) {
      if (residual_rec) *residual_rec = std::move(rec);
      return false;
    }
    const int lead = v.front().first;
    rows_.emplace(lead, std::make_pair(std::move(v), std::move(rec)));
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  bool track_;
  std::unordered_map<int, std::pair<ZVec, ZVec>> rows_;
};

SparseVec to_rational(const ZVec& v) {
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, mpq_class(x));
  return out;
}

// Coordinates of v in the span of independent rows, or nullopt.
std::optional<std::vector<mpq_class>> coords_in_span(const std::vector<std::vector<mpq_class>>& rows,
                                                     const std::vector<mpq_class>& v) {
  const int k = static_cast<int>(rows.size());
  const int d = static_cast<int>(v.size());
  // columns: rows as vectors, augmented by v; solve Σ c_i rows_i = v
  std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(k + 1));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < k; ++i) a[j][i] = rows[i][j];
    a[j][k] = v[j];
  }
  int r = 0;
  std::vector<int> pivcol;
  for (int c = 0; c < k && r < d; ++c) {
    int piv = -1;
    for (int i = r; i < d; ++i)
      if (sgn(a[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    for (int i = 0; i < d; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (int cc = c; cc <= k; ++cc) a[i][cc] -= f * a[r][cc];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (int i = r; i < d; ++i)
    if (sgn(a[i][k]) != 0) return std::nullopt;
  std::vector<mpq_class> out(k, 0);
  for (int i = 0; i < r; ++i) out[pivcol[i]] = a[i][k] / a[i][pivcol[i]];
  return out;
}

int dense_rank(const std::vector<std::vector<mpq_class>>& rows) {
  std::vector<SparseVec> sv;
  for (const auto& r : rows) {
    SparseVec s;
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
      if (sgn(r[i]) != 0) s.emplace_back(i, r[i]);
    sv.push_back(s);
  }
  return exact_rank(sv);
}

std::vector<mpq_class> ad_on(const LieAlgebra& g, const std::vector<mpq_class>& u, int j) {
  std::vector<mpq_class> e(g.dim, 0);
  e[j] = 1;
  return g.bracket(u, e);
}

}  // namespace

std::vector<mpq_class> LieAlgebra::bracket(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const {
  std::vector<mpq_class> out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpq_class ab = a[i] * b[j];
      for (int k = 0; k < dim; ++k)
        if (sgn(c(i, j, k)) != 0) out[k] += ab * c(i, j, k);
    }
  }
  return out;
}

LieAlgebra sl_algebra(int n) {
  if (n < 2) throw InvalidDimensionError("sl_N needs N >= 2");
  LieAlgebra g;
  g.name = "sl" + std::to_string(n);
  using IMat = std::vector<std::vector<mpq_class>>;
  std::vector<IMat> mats;
  auto zero = [n] { return IMat(n, std::vector<mpq_class>(n, 0)); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      IMat m = zero();
      m[i][j] = 1;
      mats.push_back(m);
      g.basis_names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  for (int k = 0; k + 1 < n; ++k) {
    IMat m = zero();
    m[k][k] = 1;
    m[k + 1][k + 1] = -1;
    mats.push_back(m);
    g.basis_names.push_back("H" + std::to_string(k + 1));
  }
  g.dim = static_cast<int>(mats.size());
  const int off = n * (n - 1);
  auto decompose = [&](const IMat& m) {
    std::vector<mpq_class> v(g.dim, 0);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) v[idx++] = m[i][j];
    mpq_class run = 0;
    for (int k = 0; k + 1 < n; ++k) {
      run += m[k][k];
      v[off + k] = run;
    }
    return v;
  };
  g.f.assign(static_cast<size_t>(g.dim) * g.dim * g.dim, 0);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      IMat c = zero();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) c[i][j] += mats[a][i][k] * mats[b][k][j] - mats[b][i][k] * mats[a][k][j];
      auto v = decompose(c);
      for (int k = 0; k < g.dim; ++k) g.f[(a * g.dim + b) * g.dim + k] = v[k];
    }
  return g;
}

std::vector<std::vector<mpq_class>> subalgebra_preset(int n, const std::string& which) {
  const int dim = n * n - 1, off = n * (n - 1);
  std::vector<std::vector<mpq_class>> out;
  if (which == "zero") return out;
  if (which == "cartan") {
    for (int k = 0; k + 1 < n; ++k) {
      std::vector<mpq_class> v(dim, 0);
      v[off + k] = 1;
      out.push_back(v);
    }
    return out;
  }
  if (which == "so") {
    auto idx = [n](int i, int j) { return i * (n - 1) + (j < i ? j : j - 1); };
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<mpq_class> v(dim, 0);
        v[idx(i, j)] = 1;
        v[idx(j, i)] = -1;
        out.push_back(v);
      }
    return out;
  }
  throw ParameterError("unknown subalgebra preset '" + which + "' (zero, cartan, so)");
}

mpq_class lie_axiom_defect(const LieAlgebra& g) {
  mpq_class worst = 0;
  auto upd = [&](const mpq_class& x) {
    mpq_class a = abs(x);
    if (a > worst) worst = a;
  };
  const int d = g.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) upd(g.c(i, j, k) + g.c(j, i, k));
  // [x_i,[x_j,x_k]] + cyclic
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          mpq_class s = 0;
          for (int l = 0; l < d; ++l)
            s += g.c(j, k, l) * g.c(i, l, m) + g.c(k, i, l) * g.c(j, l, m) + g.c(i, j, l) * g.c(k, l, m);
          upd(s);
        }
  return worst;
}

CochainComplex build_complex(const LieAlgebra& g, const std::vector<std::vector<mpq_class>>& h_basis, int max_degree,
                             int max_weight) {
  if (max_degree < 1 || max_weight < 1) throw ParameterError("max_degree and max_weight must be >= 1");
  if (g.dim < 1 || g.f.size() != static_cast<size_t>(g.dim) * g.dim * g.dim)
    throw ShapeError("structure constants must have dim^3 entries");
  if (lie_axiom_defect(g) != 0) throw DomainError("structure constants violate antisymmetry or Jacobi");
  for (const auto& u : h_basis)
    if (static_cast<int>(u.size()) != g.dim) throw ShapeError("h basis vectors must have g_dim coordinates");
  if (dense_rank(h_basis) != static_cast<int>(h_basis.size())) throw DomainError("h basis is linearly dependent");

  CochainComplex cc;
  cc.g = g;
  cc.h_basis = h_basis;
  cc.g_dim = g.dim;
  cc.h_dim = static_cast<int>(h_basis.size());
  cc.max_degree = max_degree;
  cc.max_weight = max_weight;

  for (int k = 0; k < cc.h_dim; ++k) {
    std::vector<std::vector<mpq_class>> adw;
    for (int i = 0; i < cc.h_dim; ++i) {
      auto c = coords_in_span(h_basis, g.bracket(h_basis[k], h_basis[i]));
      if (!c)
        throw DomainError("h is not a subalgebra: [u" + std::to_string(k + 1) + ", u" + std::to_string(i + 1) +
                          "] leaves the span");
      adw.push_back(*c);
    }
    cc.ad_w.push_back(adw);
    std::vector<std::vector<mpq_class>> adv;
    for (int j = 0; j < g.dim; ++j) adv.push_back(ad_on(g, h_basis[k], j));
    cc.ad_v.push_back(adv);
  }

  std::vector<std::vector<std::vector<Exps>>> mono(max_weight + 1);
  for (int k = 0; k <= max_weight; ++k) mono[k] = {monomials(cc.h_dim, k), monomials(cc.g_dim, k)};

  cc.bases.assign(max_degree + 2, std::vector<BidegreeBasis>(max_weight + 1));
  for (int n = 0; n <= max_degree + 1; ++n)
    for (int w = 0; w <= max_weight; ++w) {
      BidegreeBasis& b = cc.bases[n][w];
      // compositions of w into n+1 parts, each part filled with monomials of that degree
      std::vector<int> parts(n + 1, 0);
      std::function<void(int, int, Exps&)> rec = [&](int leg, int left, Exps& cur) {
        if (leg == n) {
          for (const auto& m : mono[left][leg == 0 ? 0 : 1]) {
            const size_t base = cur.size();
            cur.insert(cur.end(), m.begin(), m.end());
            b.index.emplace(cur, static_cast<int>(b.monomials.size()));
            b.monomials.push_back(cur);
            cur.resize(base);
          }
          return;
        }
        for (int a = 0; a <= left; ++a)
          for (const auto& m : mono[a][leg == 0 ? 0 : 1]) {
            const size_t base = cur.size();
            cur.insert(cur.end(), m.begin(), m.end());
            rec(leg + 1, left - a, cur);
            cur.resize(base);
          }
      };
      Exps cur;
      rec(0, w, cur);
    }

  cc.d.assign(max_degree + 1, std::vector<std::vector<SparseVec>>(max_weight + 1));
  for (int n = 0; n <= max_degree; ++n)
    for (int w = 0; w <= max_weight; ++w)
      for (int j = 0; j < cc.dim(n, w); ++j) cc.d[n][w].push_back(d_basis(cc, n, w, j));
  return cc;
}

SparseVec apply_d(const CochainComplex& cc, int n, int w, const SparseVec& v) {
  if (n < 0 || n > cc.max_degree || w < 0 || w > cc.max_weight) throw ParameterError("bidegree outside the complex");
  return combine(cc.d[n][w], v);
}

SparseVec apply_h(const CochainComplex& cc, int n, int w, int k, const SparseVec& v) {
  if (k < 0 || k >= cc.h_dim) throw ParameterError("h basis index out of range");
  std::map<int, mpq_class> acc;
  for (const auto& [j, c] : v)
    for (const auto& [i, x] : h_basis_action(cc, n, w, k, j)) acc[i] += c * x;
  return to_sparse(acc);
}

long d_squared_defect(const CochainComplex& cc) {
  long bad = 0;
  for (int n = 0; n + 1 <= cc.max_degree; ++n)
    for (int w = 0; w <= cc.max_weight; ++w)
      for (const auto& col : cc.d[n][w]) bad += static_cast<long>(combine(cc.d[n + 1][w], col).size());
  return bad;
}

int exact_rank(const std::vector<SparseVec>& vectors) {
  Echelon e(false);
  for (const auto& v : vectors) e.insert(to_integer(v), {});
  return e.rank();
}

std::vector<SparseVec> exact_kernel(const std::vector<SparseVec>& cols) {
  Echelon e(true);
  std::vector<SparseVec> out;
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
    mpz_class scale;
    ZVec v = to_integer(cols[j], &scale);
    ZVec rec{{j, scale}};
    ZVec res;
    if (!e.insert(std::move(v), rec, &res)) {
      ZVec dummy;
      remove_content(res, dummy);
      out.push_back(to_rational(res));
    }
  }
  return out;
}

std::vector<SparseVec> invariant_basis(const CochainComplex& cc, int n, int w) {
  const int dim = cc.dim(n, w);
  std::vector<SparseVec> cols(dim);
  for (int j = 0; j < dim; ++j) {
    SparseVec col;
    for (int k = 0; k < cc.h_dim; ++k)
      for (const auto& [i, x] : h_basis_action(cc, n, w, k, j)) col.emplace_back(k * dim + i, x);
    cols[j] = std::move(col);
  }
  return exact_kernel(cols);
}

long CohomologyTable::euler_defect(int w) const {
  long s = 0;
  for (int n = 0; n <= max_degree; ++n) s += (n % 2 == 0 ? 1 : -1) * (cochains[n][w] - dims[n][w]);
  s -= (max_degree % 2 == 0 ? 1 : -1) * rank_out[max_degree][w];
  return s;
}

CohomologyTable cohomology_dims(const CochainComplex& cc, bool invariant) {
  CohomologyTable t;
  t.invariant = invariant;
  t.max_degree = cc.max_degree;
  t.max_weight = cc.max_weight;
  const int D = cc.max_degree, W = cc.max_weight;
  t.cochains.assign(D + 1, std::vector<long>(W + 1, 0));
  t.rank_out.assign(D + 1, std::vector<long>(W + 1, 0));
  t.dims.assign(D + 1, std::vector<long>(W + 1, 0));
  for (int w = 0; w <= W; ++w)
    for (int n = 0; n <= D; ++n) {
      std::vector<SparseVec> images;
      if (invariant && cc.h_dim > 0) {
        auto inv = invariant_basis(cc, n, w);
        t.cochains[n][w] = static_cast<long>(inv.size());
        for (const auto& v : inv) images.push_back(apply_d(cc, n, w, v));
      } else {
        t.cochains[n][w] = cc.dim(n, w);
        images = cc.d[n][w];
      }
      t.rank_out[n][w] = exact_rank(images);
      t.dims[n][w] = t.cochains[n][w] - t.rank_out[n][w] - (n > 0 ? t.rank_out[n - 1][w] : 0);
    }
  return t;
}

long wedge_dim(const CochainComplex& cc, int n) {
  const int m = cc.g_dim - cc.h_dim;
  if (n < 0 || n > m) return 0;
  return binom(m, n).get_si();
}

long invariant_wedge_dim(const CochainComplex& cc, int n) {
  const int m = cc.g_dim - cc.h_dim;
  if (n < 0 || n > m) return 0;
  if (cc.h_dim == 0) return wedge_dim(cc, n);
  // complement of h spanned by coordinate vectors, chosen greedily
  std::vector<std::vector<mpq_class>> span = cc.h_basis;
  std::vector<int> comp;
  for (int j = 0; j < cc.g_dim && static_cast<int>(comp.size()) < m; ++j) {
    std::vector<mpq_class> e(cc.g_dim, 0);
    e[j] = 1;
    span.push_back(e);
    if (dense_rank(span) == static_cast<int>(span.size()))
      comp.push_back(j);
    else
      span.pop_back();
  }
  // ad_u on g/h in complement coordinates
  std::vector<std::vector<std::vector<mpq_class>>> act(cc.h_dim, std::vector<std::vector<mpq_class>>(m));
  for (int k = 0; k < cc.h_dim; ++k)
    for (int a = 0; a < m; ++a) {
      auto c = coords_in_span(span, cc.ad_v[k][comp[a]]);
      if (!c) throw InconsistencyError("complement does not span g");
      act[k][a].assign(c->begin() + cc.h_dim, c->end());
    }
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == n) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < static_cast<int>(subsets.size()); ++i) idx[subsets[i]] = i;
  const int sz = static_cast<int>(subsets.size());
  std::vector<SparseVec> cols(sz);
  for (int j = 0; j < sz; ++j) {
    std::map<int, mpq_class> acc;
    for (int k = 0; k < cc.h_dim; ++k)
      for (int pos = 0; pos < n; ++pos)
        for (int b = 0; b < m; ++b) {
          const mpq_class& c = act[k][subsets[j][pos]][b];
          if (sgn(c) == 0) continue;
          std::vector<int> s = subsets[j];
          s[pos] = b;
          // sort with sign
          int sign = 1;
          bool repeat = false;
          for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
              if (s[x] == s[y]) repeat = true;
              if (s[x] > s[y]) sign = -sign;
            }
          if (repeat) continue;
          std::sort(s.begin(), s.end());
          acc[k * sz + idx.at(s)] += sign * c;
        }
    cols[j] = to_sparse(acc);
  }
  return static_cast<long>(exact_kernel(cols).size());
}

SparseVec wedge_cocycle(const CochainComplex& cc, const std::vector<std::vector<mpq_class>>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 1 || n > cc.max_degree + 1 || n > cc.max_weight) throw ParameterError("cocycle degree outside the complex");
  for (const auto& x : xs)
    if (static_cast<int>(x.size()) != cc.g_dim) throw ShapeError("X_i must have g_dim coordinates");
  const BidegreeBasis& b = cc.bases[n][n];
  std::map<int, mpq_class> acc;
  std::vector<int> choice(n, 0);
  while (true) {
    mpq_class c = 1;
    for (int i = 0; i < n && c != 0; ++i) c *= xs[i][choice[i]];
    if (c != 0) {
      Exps key(cc.h_dim + n * cc.g_dim, 0);
      for (int i = 0; i < n; ++i) key[cc.h_dim + i * cc.g_dim + choice[i]] = 1;
      acc[lookup(b, key)] += c;
    }
    int i = 0;
    while (i < n && ++choice[i] == cc.g_dim) choice[i++] = 0;
    if (i == n) break;
  }
  return to_sparse(acc);
}

bool is_coboundary(const CochainComplex& cc, int n, int w, const SparseVec& v) {
  if (v.empty()) return true;
  if (n == 0) return false;
  if (n - 1 > cc.max_degree) throw ParameterError("bidegree outside the complex");
  std::vector<SparseVec> images = cc.d[n - 1][w];
  const int r = exact_rank(images);
  images.push_back(v);
  return exact_rank(images) == r;
}

}  // namespace qsym
