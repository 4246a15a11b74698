#include "qsym/rootdata.hpp"

#include <algorithm>
#include <queue>

#include "qsym/errors.hpp"

namespace qsym {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Comparison: return "comparison";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

Weight add(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw ShapeError("weight dimension mismatch");
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Weight sub(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw ShapeError("weight dimension mismatch");
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Weight scale(const Rat& c, const Weight& a) {
  Weight r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool is_zero(const Weight& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == Rat(0); });
}

Weight type_a_vector(int n, int i, int j) {
  Weight w(n, Rat(0));
  w[i - 1] += 1;
  w[j - 1] -= 1;
  return w;
}

std::vector<Weight> RootSystem::roots() const {
  std::vector<Weight> out = positive_roots;
  for (const auto& r : positive_roots) out.push_back(scale(Rat(-1), r));
  return out;
}

Rat pairing(const RootSystem& rs, const Weight& a, const Weight& b) {
  const size_t n = rs.form.size();
  if (a.size() != n || b.size() != n) throw ShapeError("weight dimension does not match root system");
  Rat s(0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == Rat(0)) continue;
    for (size_t j = 0; j < n; ++j) s += a[i] * rs.form[i][j] * b[j];
  }
  return s;
}

Weight coroot(const RootSystem& rs, const Weight& a) {
  Rat n = pairing(rs, a, a);
  if (n == Rat(0)) throw DomainError("coroot of a null vector");
  return scale(Rat(2) / n, a);
}

bool is_root(const RootSystem& rs, const Weight& a) {
  for (const auto& r : rs.positive_roots)
    if (r == a || scale(Rat(-1), r) == a) return true;
  return false;
}

RootSystem build_type_a(int n) {
  if (n < 2) throw InvalidDimensionError("type A needs N >= 2, got N=" + std::to_string(n));
  RootSystem rs;
  rs.rank = n - 1;
  rs.type_a = true;
  rs.ambient_dim = n;
  rs.form.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.form[i][j] = Rat(i == j ? 1 : 0) - Rat(1, n);
  for (int i = 1; i < n; ++i) rs.simple_roots.push_back(type_a_vector(n, i, i + 1));
  rs.d.assign(n - 1, Rat(1));
  rs.cartan.assign(n - 1, std::vector<int>(n - 1, 0));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) {
      Rat v = Rat(2) * pairing(rs, rs.simple_roots[i], rs.simple_roots[j]) /
              pairing(rs, rs.simple_roots[i], rs.simple_roots[i]);
      rs.cartan[i][j] = static_cast<int>(boost::rational_cast<long long>(v));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) rs.positive_roots.push_back(type_a_vector(n, i, j));
  return rs;
}

RootSystem build_from_cartan(const std::vector<std::vector<int>>& cartan) {
  const int r = static_cast<int>(cartan.size());
  if (r < 1) throw InvalidDimensionError("empty Cartan matrix");
  for (const auto& row : cartan)
    if (static_cast<int>(row.size()) != r) throw ShapeError("Cartan matrix is not square");
  for (int i = 0; i < r; ++i) {
    if (cartan[i][i] != 2) throw DomainError("Cartan matrix diagonal must be 2");
    for (int j = 0; j < r; ++j)
      if (i != j && (cartan[i][j] > 0 || ((cartan[i][j] == 0) != (cartan[j][i] == 0))))
        throw DomainError("not a Cartan matrix");
  }
  // Symmetrizer d_i a_ij = d_j a_ji, propagated along the Dynkin graph.
  std::vector<Rat> d(r, Rat(0));
  for (int start = 0; start < r; ++start) {
    if (d[start] != Rat(0)) continue;
    d[start] = 1;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < r; ++j) {
        if (i == j || cartan[i][j] == 0) continue;
        Rat dj = d[i] * Rat(cartan[i][j]) / Rat(cartan[j][i]);
        if (d[j] == Rat(0)) {
          d[j] = dj;
          q.push(j);
        } else if (d[j] != dj) {
          throw DomainError("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  Rat dmin = *std::min_element(d.begin(), d.end());
  for (auto& x : d) x /= dmin;

  RootSystem rs;
  rs.rank = r;
  rs.type_a = false;
  rs.ambient_dim = r;
  rs.cartan = cartan;
  rs.d = d;
  rs.form.assign(r, std::vector<Rat>(r, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rs.form[i][j] = d[i] * Rat(cartan[i][j]);
  for (int i = 0; i < r; ++i) {
    Weight w(r, Rat(0));
    w[i] = 1;
    rs.simple_roots.push_back(w);
  }
  if (!form_positive_definite(rs)) throw DomainError("Cartan matrix is not of finite type");
  // Positive roots by root strings, height by height.
  std::vector<Weight> layer = rs.simple_roots;
  rs.positive_roots = layer;
  auto known = [&](const Weight& w) {
    return std::find(rs.positive_roots.begin(), rs.positive_roots.end(), w) != rs.positive_roots.end();
  };
  while (!layer.empty()) {
    std::vector<Weight> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < r; ++i) {
        int p = 0;
        Weight down = beta;
        while (true) {
          down = sub(down, rs.simple_roots[i]);
          if (!known(down)) break;
          ++p;
        }
        Rat c = Rat(2) * pairing(rs, beta, rs.simple_roots[i]) / pairing(rs, rs.simple_roots[i], rs.simple_roots[i]);
        long long q = p - boost::rational_cast<long long>(c);
        if (q > 0) {
          Weight up = add(beta, rs.simple_roots[i]);
          if (!known(up) && std::find(next.begin(), next.end(), up) == next.end()) next.push_back(up);
        }
      }
    }
    for (const auto& w : next) rs.positive_roots.push_back(w);
    layer = next;
  }
  return rs;
}

bool cartan_consistent(const RootSystem& rs) {
  for (int i = 0; i < rs.rank; ++i) {
    Rat ii = pairing(rs, rs.simple_roots[i], rs.simple_roots[i]);
    if (ii != Rat(2) * rs.d[i]) return false;
    for (int j = 0; j < rs.rank; ++j) {
      Rat ij = pairing(rs, rs.simple_roots[i], rs.simple_roots[j]);
      if (Rat(2) * ij / ii != Rat(rs.cartan[i][j])) return false;
      if (ij != rs.d[i] * Rat(rs.cartan[i][j])) return false;
    }
  }
  return true;
}

bool form_positive_definite(const RootSystem& rs) {
  const int r = rs.rank;
  RatMatrix g(r, std::vector<Rat>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g[i][j] = pairing(rs, rs.simple_roots[i], rs.simple_roots[j]);
  // Leading principal minors via exact Gaussian elimination without pivoting:
  // the k-th minor equals the product of the first k pivots.
  Rat minor(1);
  for (int k = 0; k < r; ++k) {
    if (g[k][k] <= Rat(0)) return false;
    minor *= g[k][k];
    if (minor <= Rat(0)) return false;
    for (int i = k + 1; i < r; ++i) {
      Rat f = g[i][k] / g[k][k];
      for (int j = k; j < r; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return true;
}

RootOrder::RootOrder(const RootSystem& rs, const Weight& first_vector) {
  if (static_cast<int>(first_vector.size()) != rs.ambient_dim)
    throw ShapeError("order vector dimension mismatch");
  if (is_zero(first_vector)) throw ParameterError("degenerate first vector for the root order");
  basis_.push_back(first_vector);
  for (int k = 0; k < rs.ambient_dim; ++k) {
    Weight e(rs.ambient_dim, Rat(0));
    e[k] = 1;
    basis_.push_back(e);
  }
  for (const auto& a : rs.positive_roots) {
    bool all_zero = true;
    for (size_t k = 0; k < basis_.size(); ++k)
      if (value(a, static_cast<int>(k)) != Rat(0)) all_zero = false;
    if (all_zero) throw ParameterError("irregular root order");
  }
}

Rat RootOrder::value(const Weight& a, int k) const {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * basis_[k][i];
  return s;
}

int RootOrder::compare(const Weight& a, const Weight& b) const {
  Weight diff = sub(a, b);
  for (size_t k = 0; k < basis_.size(); ++k) {
    Rat v = value(diff, static_cast<int>(k));
    if (v > Rat(0)) return 1;
    if (v < Rat(0)) return -1;
  }
  return 0;
}

}  // namespace qsym
