#include "qsym/satake.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qsym/errors.hpp"

namespace qsym {

const char* tag_name(HermitianTag t) {
  switch (t) {
    case HermitianTag::S: return "S";
    case HermitianTag::C: return "C";
    case HermitianTag::NonHermitian: return "nonHermitian";
  }
  return "unknown";
}

bool SatakeData::in_X(int i) const { return std::find(X.begin(), X.end(), i) != X.end(); }

size_t RootPartition::total() const {
  size_t n = P0.size() + C0.size();
  for (const auto& [k, v] : Pi) n += v.size();
  for (const auto& [k, v] : Ci) n += v.size();
  for (const auto& [k, v] : Pij) n += v.size();
  for (const auto& [k, v] : Cij) n += v.size();
  return n;
}

SatakeData build_aiii(int n, int p) {
  if (n < 2) throw InvalidDimensionError("AIII needs N >= 2, got N=" + std::to_string(n));
  if (p <= 0 || 2 * p > n)
    throw ParameterError("AIII needs 0 < p <= N/2, got N=" + std::to_string(n) + " p=" + std::to_string(p));
  SatakeData sd;
  sd.root_system = build_type_a(n);
  sd.n = n;
  sd.p = p;
  for (int i = p + 1; i <= n - p - 1; ++i) sd.X.push_back(i);
  for (int i = 1; i < n; ++i) sd.tau.push_back(n - i);
  // Θ(L_k) = L_{N+1-k} on the outer blocks, L_k on the middle block.
  sd.theta.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 1; k <= n; ++k) {
    bool middle = k > p && k <= n - p;
    int img = middle ? k : n + 1 - k;
    sd.theta[img - 1][k - 1] = 1;
  }
  if (2 * p == n) {
    sd.tag = HermitianTag::S;
    sd.distinguished = {p};
  } else {
    sd.tag = HermitianTag::C;
    sd.distinguished = {p, n - p};
  }
  sd.z_nu.assign(n, Rat(0));
  for (int k = 0; k < n; ++k) sd.z_nu[k] = (k < p ? Rat(1) : Rat(0)) - Rat(p, n);
  sd.cascade = cascade(sd);
  return sd;
}

Weight apply_theta(const SatakeData& sd, const Weight& w) {
  const size_t n = sd.theta.size();
  if (w.size() != n) throw ShapeError("weight dimension mismatch in Θ");
  Weight out(n, Rat(0));
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l) out[k] += sd.theta[k][l] * w[l];
  return out;
}

static Rat dot(const Weight& a, const Weight& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_compact(const SatakeData& sd, const Weight& root) { return dot(root, sd.z_nu) == Rat(0); }

bool strongly_orthogonal(const RootSystem& rs, const Weight& a, const Weight& b) {
  if (pairing(rs, a, b) != Rat(0)) return false;
  return !is_root(rs, add(a, b)) && !is_root(rs, sub(a, b));
}

std::vector<Weight> cascade(const SatakeData& sd) {
  const RootSystem& rs = sd.root_system;
  RootOrder order(rs, sd.z_nu);
  std::vector<Weight> out;
  while (true) {
    const Weight* best = nullptr;
    for (const auto& a : rs.positive_roots) {
      bool ok = std::all_of(out.begin(), out.end(), [&](const Weight& g) { return strongly_orthogonal(rs, a, g); });
      if (ok && (!best || order.greater(a, *best))) best = &a;
    }
    if (!best || is_compact(sd, *best)) break;
    out.push_back(*best);
  }
  return out;
}

std::vector<Rat> restriction(const SatakeData& sd, const Weight& w) {
  std::vector<Rat> c;
  for (const auto& g : sd.cascade) c.push_back(pairing(sd.root_system, w, g) / pairing(sd.root_system, g, g));
  return c;
}

RootPartition partition_roots(const SatakeData& sd) {
  if (sd.cascade.empty()) throw StructuralError("partition needs a nonempty cascade");
  RootPartition part;
  const Rat half(1, 2);
  for (const auto& a : sd.root_system.positive_roots) {
    std::vector<Rat> c = restriction(sd, a);
    std::vector<int> nz;
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != Rat(0)) nz.push_back(static_cast<int>(i));
    bool compact = is_compact(sd, a);
    if (nz.empty()) {
      if (!compact) throw StructuralError("noncompact root with zero restriction");
      part.C0.push_back(a);
    } else if (nz.size() == 1 && c[nz[0]] == Rat(1)) {
      part.P0.push_back(a);
    } else if (nz.size() == 1 && c[nz[0]] == half) {
      (compact ? part.Ci : part.Pi)[nz[0] + 1].push_back(a);
    } else if (nz.size() == 2 && (c[nz[0]] == half || c[nz[0]] == -half) &&
               (c[nz[1]] == half || c[nz[1]] == -half)) {
      (compact ? part.Cij : part.Pij)[{nz[0] + 1, nz[1] + 1}].push_back(a);
    } else {
      throw StructuralError("root restriction matches no partition class");
    }
  }
  return part;
}

NormalizationConstants normalization_constants(const SatakeData& sd) {
  if (sd.tag == HermitianTag::NonHermitian) throw DomainError("normalization constants need a Hermitian pair");
  if (!sd.root_system.type_a) throw UnsupportedError("normalization constants are implemented for type A");
  NormalizationConstants nc;
  int noncompact = 0;
  for (const auto& a : sd.root_system.positive_roots)
    if (!is_compact(sd, a)) ++noncompact;
  const double dim_m = 2.0 * noncompact;
  const double hdual = sd.n;
  nc.a_sigma = std::sqrt(2.0 * hdual / dim_m);
  if (sd.tag == HermitianTag::S) {
    nc.has_z_formula = true;
    Weight z(sd.n, Rat(0));
    for (const auto& g : sd.cascade) z = add(z, scale(Rat(1, 2), g));
    nc.z_formula = z;
    nc.z_formula_matches = (z == sd.z_nu);
  }
  return nc;
}

std::vector<std::vector<Rat>> restricted_simple_roots(const SatakeData& sd) {
  std::vector<std::vector<Rat>> out;
  for (int i = 1; i <= sd.root_system.rank; ++i) {
    if (sd.in_X(i) || sd.tau[i - 1] < i) continue;
    out.push_back(restriction(sd, sd.root_system.simple_roots[i - 1]));
  }
  return out;
}

std::vector<std::vector<Rat>> expected_restricted_basis(const SatakeData& sd) {
  const size_t s = sd.cascade.size();
  std::vector<std::vector<Rat>> out;
  for (size_t i = 0; i + 1 < s; ++i) {
    std::vector<Rat> v(s, Rat(0));
    v[i] = Rat(1, 2);
    v[i + 1] = Rat(-1, 2);
    out.push_back(v);
  }
  std::vector<Rat> last(s, Rat(0));
  last[s - 1] = sd.tag == HermitianTag::S ? Rat(1) : Rat(1, 2);
  out.push_back(last);
  return out;
}

// Longest element of the parabolic subgroup W_X applied to a weight.
static Weight apply_wX(const SatakeData& sd, const Weight& w) {
  const RootSystem& rs = sd.root_system;
  std::vector<int> word;
  auto act = [&](Weight v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const Weight& a = rs.simple_roots[*it - 1];
      v = sub(v, scale(pairing(rs, v, coroot(rs, a)), a));
    }
    return v;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    for (int j : sd.X) {
      Weight img = act(rs.simple_roots[j - 1]);
      if (std::find(rs.positive_roots.begin(), rs.positive_roots.end(), img) != rs.positive_roots.end()) {
        word.push_back(j);
        grew = true;
        break;
      }
    }
  }
  return act(w);
}

static std::vector<Rat> simple_coordinates(const RootSystem& rs, const Weight& w) {
  if (!rs.type_a) return w;
  std::vector<Rat> c(rs.rank, Rat(0));
  Rat run(0);
  for (int k = 0; k < rs.rank; ++k) {
    run += w[k];
    c[k] = run;
  }
  return c;
}

bool SatakeChecks::all() const {
  return theta_involution && theta_fixes_X && theta_is_minus_wX_tau && cascade_strongly_orthogonal &&
         cascade_equal_length && cascade_noncompact && zero_restriction_is_X_span && restricted_basis_ok &&
         distinguished_matches_cascade;
}

SatakeChecks check_satake(const SatakeData& sd) {
  const RootSystem& rs = sd.root_system;
  SatakeChecks c;
  c.theta_involution = true;
  for (int k = 0; k < rs.ambient_dim; ++k) {
    Weight e(rs.ambient_dim, Rat(0));
    e[k] = 1;
    if (apply_theta(sd, apply_theta(sd, e)) != e) c.theta_involution = false;
  }
  c.theta_fixes_X = std::all_of(sd.X.begin(), sd.X.end(), [&](int i) {
    return apply_theta(sd, rs.simple_roots[i - 1]) == rs.simple_roots[i - 1];
  });
  c.theta_is_minus_wX_tau = true;
  for (int i = 1; i <= rs.rank; ++i) {
    Weight rhs = scale(Rat(-1), apply_wX(sd, rs.simple_roots[sd.tau[i - 1] - 1]));
    if (apply_theta(sd, rs.simple_roots[i - 1]) != rhs) c.theta_is_minus_wX_tau = false;
  }
  c.cascade_strongly_orthogonal = true;
  c.cascade_equal_length = true;
  c.cascade_noncompact = true;
  for (size_t i = 0; i < sd.cascade.size(); ++i) {
    if (is_compact(sd, sd.cascade[i])) c.cascade_noncompact = false;
    if (pairing(rs, sd.cascade[i], sd.cascade[i]) != pairing(rs, sd.cascade[0], sd.cascade[0]))
      c.cascade_equal_length = false;
    for (size_t j = i + 1; j < sd.cascade.size(); ++j)
      if (!strongly_orthogonal(rs, sd.cascade[i], sd.cascade[j])) c.cascade_strongly_orthogonal = false;
  }
  c.zero_restriction_is_X_span = true;
  for (const auto& a : rs.positive_roots) {
    auto r = restriction(sd, a);
    bool zero = std::all_of(r.begin(), r.end(), [](const Rat& x) { return x == Rat(0); });
    auto sc = simple_coordinates(rs, a);
    bool in_x = true;
    for (int k = 0; k < rs.rank; ++k)
      if (sc[k] != Rat(0) && !sd.in_X(k + 1)) in_x = false;
    if (zero != in_x) c.zero_restriction_is_X_span = false;
  }
  if (!sd.cascade.empty()) {
    auto got = restricted_simple_roots(sd);
    auto want = expected_restricted_basis(sd);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    c.restricted_basis_ok = got == want;
    const Weight& gs = sd.cascade.back();
    const Weight& ad = rs.simple_roots[sd.distinguished.front() - 1];
    if (sd.tag == HermitianTag::S) {
      c.distinguished_matches_cascade = ad == gs;
    } else {
      auto r = restriction(sd, ad);
      std::vector<Rat> half_gs(sd.cascade.size(), Rat(0));
      half_gs.back() = Rat(1, 2);
      c.distinguished_matches_cascade = r == half_gs;
    }
  }
  return c;
}

}  // namespace qsym
