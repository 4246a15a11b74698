#include "qsym/sln.hpp"

#include <algorithm>
#include <cmath>

#include "qsym/errors.hpp"

namespace qsym {

Mat Representation::operator()(const Mat& x) const {
  if (x.rows() != n || x.cols() != n) throw ShapeError("representation argument must be N x N");
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x(i, j) != 0.0) out += x(i, j) * gens[i * n + j];
  return out;
}

Representation fundamental_rep(int n) {
  if (n < 2) throw InvalidDimensionError("sl_N needs N >= 2");
  Representation r;
  r.n = n;
  r.dim = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      if (i == j) e -= eye(n) / double(n);
      r.gens.push_back(e);
    }
  return r;
}

Representation trivial_rep(int n) {
  Representation r;
  r.n = n;
  r.dim = 1;
  r.gens.assign(n * n, Mat::Zero(1, 1));
  return r;
}

Representation tensor_rep(const Representation& a, const Representation& b) {
  if (a.n != b.n) throw ShapeError("tensor product of representations of different sl_N");
  Representation r;
  r.n = a.n;
  r.dim = a.dim * b.dim;
  Mat ia = eye(a.dim), ib = eye(b.dim);
  for (size_t x = 0; x < a.gens.size(); ++x) r.gens.push_back(kron(a.gens[x], ib) + kron(ia, b.gens[x]));
  return r;
}

Representation tensor_rep(const std::vector<Representation>& reps) {
  if (reps.empty()) throw ShapeError("empty representation list");
  Representation r = reps.front();
  for (size_t k = 1; k < reps.size(); ++k) r = tensor_rep(r, reps[k]);
  return r;
}

double homomorphism_residual(const Representation& rep) {
  const int n = rep.n;
  double worst = 0;
  for (int x = 0; x < n * n; ++x)
    for (int y = 0; y < n * n; ++y) {
      Mat ex = Mat::Zero(n, n), ey = Mat::Zero(n, n);
      ex(x / n, x % n) = 1.0;
      ey(y / n, y % n) = 1.0;
      Mat lhs = rep(commutator(ex, ey));
      Mat rhs = commutator(rep.gens[x], rep.gens[y]);
      worst = std::max(worst, fro(lhs - rhs));
    }
  return worst;
}

Mat ad_matrix(const Mat& g) {
  Mat ginv = g.inverse();
  return kron(g, ginv.transpose());
}

Mat ad_of(const Mat& x) {
  const int n = static_cast<int>(x.rows());
  return kron(x, eye(n)) - kron(eye(n), x.transpose());
}

Mat casimir(const Mat& coeff, const Representation& rep) {
  const int n2 = rep.n * rep.n;
  Mat out = Mat::Zero(rep.dim, rep.dim);
  for (int x = 0; x < n2; ++x) {
    Mat y = Mat::Zero(rep.dim, rep.dim);
    bool any = false;
    for (int k = 0; k < n2; ++k)
      if (std::abs(coeff(x, k)) > 0) {
        y += coeff(x, k) * rep.gens[k];
        any = true;
      }
    if (any) out += rep.gens[x] * y;
  }
  return out;
}

Mat PairRealization::theta(const Mat& x) const { return theta_conj * x * theta_conj.inverse(); }

PairRealization realize(int n, int p) {
  PairRealization pr;
  pr.sd = build_aiii(n, p);
  pr.n = n;
  pr.p = p;
  pr.a_nu = normalization_constants(pr.sd).a_sigma;
  const int n2 = n * n;
  pr.Z = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) pr.Z(k, k) = kI * (k < p ? 1.0 - double(p) / n : -double(p) / n);
  pr.adZ = ad_of(pr.Z);
  Mat id = eye(n2);
  Mat ad2 = pr.adZ * pr.adZ;
  pr.proj_k = id + ad2;
  pr.proj_mplus = (-ad2 - kI * pr.adZ) / 2.0;
  pr.proj_mminus = (-ad2 + kI * pr.adZ) / 2.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n), f = Mat::Zero(n, n);
      e(i, j) = 1.0;
      f(j, i) = 1.0;
      pr.basis.push_back(e);
      pr.dual_basis.push_back(f);
    }
  pr.t_u = Mat::Zero(n2, n2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pr.t_u(i * n + j, j * n + i) += 1.0;
  Vec vi = vec_rowmajor(eye(n));
  pr.t_u -= vi * vi.transpose() / double(n);
  pr.t_k = pr.proj_k * pr.t_u;
  pr.t_mplus = pr.proj_mplus * pr.t_u;
  pr.t_mminus = pr.proj_mminus * pr.t_u;
  pr.r = Mat::Zero(n2, n2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pr.r(j * n + i, i * n + j) += kI;
      pr.r(i * n + j, j * n + i) -= kI;
    }
  Mat g1 = cayley(pr, 1.0);
  pr.theta_conj = g1.inverse() * expm(kPi * pr.Z) * g1;
  return pr;
}

Symbol parse_symbol(const std::string& s) {
  if (s == "t_u") return Symbol::TU;
  if (s == "t_k") return Symbol::TK;
  if (s == "t_mplus") return Symbol::TMPlus;
  if (s == "t_mminus") return Symbol::TMMinus;
  if (s == "r") return Symbol::R;
  if (s == "casimir_k") return Symbol::CasimirK;
  if (s == "casimir_u") return Symbol::CasimirU;
  if (s == "Z") return Symbol::Z;
  throw ParameterError("unknown tensor symbol '" + s + "'");
}

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::TU: return "t_u";
    case Symbol::TK: return "t_k";
    case Symbol::TMPlus: return "t_mplus";
    case Symbol::TMMinus: return "t_mminus";
    case Symbol::R: return "r";
    case Symbol::CasimirK: return "casimir_k";
    case Symbol::CasimirU: return "casimir_u";
    case Symbol::Z: return "Z";
  }
  return "?";
}

int LegTensor::total_dim() const {
  int d = 1;
  for (int s : spaces) d *= s;
  return d;
}

LegTensor LegTensor::relabel(const std::vector<int>& order) const {
  if (order.size() != spaces.size()) throw ShapeError("relabel order length mismatch");
  std::vector<int> phys(spaces.size());
  for (size_t k = 0; k < order.size(); ++k) phys[order[k]] = spaces[k];
  return LegTensor{phys, relabel_legs(data, phys, order)};
}

std::vector<int> rep_dims(const std::vector<Representation>& reps) {
  std::vector<int> d;
  for (const auto& r : reps) d.push_back(r.dim);
  return d;
}

Mat embed_one(const std::vector<int>& dims, int leg, const Mat& op) {
  if (leg < 0 || leg >= static_cast<int>(dims.size())) throw ShapeError("leg index out of range");
  int left = 1, right = 1;
  for (int k = 0; k < leg; ++k) left *= dims[k];
  for (size_t k = leg + 1; k < dims.size(); ++k) right *= dims[k];
  return kron(kron(eye(left), op), eye(right));
}

Mat embed_two(const Mat& coeff, const std::vector<Representation>& reps, int a, int b) {
  const int nl = static_cast<int>(reps.size());
  if (a < 0 || b < 0 || a >= nl || b >= nl || a == b) throw ShapeError("invalid leg pair");
  const int n2 = reps[a].n * reps[a].n;
  std::vector<int> dims = rep_dims(reps);
  int total = 1;
  for (int d : dims) total *= d;
  Mat out = Mat::Zero(total, total);
  for (int x = 0; x < n2; ++x) {
    Mat y = Mat::Zero(reps[b].dim, reps[b].dim);
    bool any = false;
    for (int k = 0; k < n2; ++k)
      if (std::abs(coeff(x, k)) > 0) {
        y += coeff(x, k) * reps[b].gens[k];
        any = true;
      }
    if (!any || reps[a].gens[x].isZero(0) || y.isZero(0)) continue;
    out += embed_one(dims, a, reps[a].gens[x]) * embed_one(dims, b, y);
  }
  return out;
}

LegTensor build_leg_tensor(const PairRealization& pr, Symbol symbol, const std::vector<Representation>& reps,
                           const std::vector<int>& legs) {
  for (const auto& r : reps)
    if (r.n != pr.n) throw ShapeError("representation is not of sl_" + std::to_string(pr.n));
  std::vector<int> dims = rep_dims(reps);
  bool two = symbol == Symbol::TU || symbol == Symbol::TK || symbol == Symbol::TMPlus ||
             symbol == Symbol::TMMinus || symbol == Symbol::R;
  if (two && legs.size() != 2)
    throw ShapeError(std::string(symbol_name(symbol)) + " needs two legs, got " + std::to_string(legs.size()));
  if (!two && legs.size() != 1)
    throw ShapeError(std::string(symbol_name(symbol)) + " needs one leg, got " + std::to_string(legs.size()));
  for (int l : legs)
    if (l < 0 || l >= static_cast<int>(reps.size())) throw ShapeError("leg label out of range");
  LegTensor lt;
  lt.spaces = dims;
  switch (symbol) {
    case Symbol::TU: lt.data = embed_two(pr.t_u, reps, legs[0], legs[1]); break;
    case Symbol::TK: lt.data = embed_two(pr.t_k, reps, legs[0], legs[1]); break;
    case Symbol::TMPlus: lt.data = embed_two(pr.t_mplus, reps, legs[0], legs[1]); break;
    case Symbol::TMMinus: lt.data = embed_two(pr.t_mminus, reps, legs[0], legs[1]); break;
    case Symbol::R: lt.data = embed_two(pr.r, reps, legs[0], legs[1]); break;
    case Symbol::CasimirK: lt.data = embed_one(dims, legs[0], casimir(pr.t_k, reps[legs[0]])); break;
    case Symbol::CasimirU: lt.data = embed_one(dims, legs[0], casimir(pr.t_u, reps[legs[0]])); break;
    case Symbol::Z: lt.data = embed_one(dims, legs[0], reps[legs[0]](pr.Z)); break;
  }
  return lt;
}

static std::pair<int, int> root_indices(const Weight& g) {
  int a = -1, b = -1;
  for (size_t k = 0; k < g.size(); ++k) {
    if (g[k] == Rat(1)) a = static_cast<int>(k);
    if (g[k] == Rat(-1)) b = static_cast<int>(k);
  }
  return {a, b};
}

Mat cayley(const PairRealization& pr, double phi) {
  Mat s = Mat::Zero(pr.n, pr.n);
  for (const auto& g : pr.sd.cascade) {
    auto [a, b] = root_indices(g);
    s(a, b) += 1.0;
    s(b, a) += 1.0;
  }
  return expm(kI * (kPi * phi / 4.0) * s);
}

Mat kphi_basis(const PairRealization& pr, double phi) {
  Mat ad = ad_matrix(cayley(pr, phi - 1.0));
  std::vector<int> cols;
  for (int x = 0; x < pr.n * pr.n; ++x)
    if (std::abs(pr.proj_k(x, x)) > 0.5) cols.push_back(x);
  Mat out(pr.n * pr.n, cols.size());
  for (size_t c = 0; c < cols.size(); ++c) out.col(c) = ad.col(cols[c]);
  return out;
}

double cayley_lemma_residual(const PairRealization& pr, double phi) {
  Mat g = cayley(pr, phi);
  Mat gi = g.inverse();
  const double c = std::cos(kPi * phi / 2), s = std::sin(kPi * phi / 2);
  double worst = 0;
  for (const auto& gam : pr.sd.cascade) {
    auto [a, b] = root_indices(gam);
    Mat xp = Mat::Zero(pr.n, pr.n), xm = Mat::Zero(pr.n, pr.n), h = Mat::Zero(pr.n, pr.n);
    xp(a, b) = 1.0;
    xm(b, a) = 1.0;
    h(a, a) = 1.0;
    h(b, b) = -1.0;
    Mat x = -kI * (xp + xm), y = -kI * (xp - xm);
    worst = std::max(worst, fro(g * x * gi - x));
    worst = std::max(worst, fro(g * y * gi - (c * y - s * h)));
    worst = std::max(worst, fro(g * h * gi - (s * y + c * h)));
  }
  return worst;
}

double r_rotation_residual(const PairRealization& pr, double phi) {
  Mat ad = ad_matrix(cayley(pr, phi));
  Mat d = ad * pr.r * ad.transpose() - std::cos(kPi * phi / 2) * pr.r;
  Mat pm = pr.proj_mplus + pr.proj_mminus;
  return fro(pm * d * pm.transpose());
}

static Mat offspace_projector(const PairRealization& pr, double phi) {
  Mat kb = kphi_basis(pr, phi);
  return eye(pr.n * pr.n) - kb * kb.adjoint();
}

static double offspace_norm(const PairRealization& pr, const Mat& q, const Mat& x) {
  Mat l = ad_of(x);
  Mat d = -(l * pr.r + pr.r * l.transpose());
  return fro(q * d * q.transpose());
}

double cobracket_offspace_residual(const PairRealization& pr, double phi, const Mat& x) {
  return offspace_norm(pr, offspace_projector(pr, phi), x);
}

double coisotropy_residual(const PairRealization& pr, double phi) {
  Mat kb = kphi_basis(pr, phi);
  Mat q = eye(pr.n * pr.n) - kb * kb.adjoint();
  double worst = 0;
  for (Eigen::Index c = 0; c < kb.cols(); ++c)
    worst = std::max(worst, offspace_norm(pr, q, unvec_rowmajor(kb.col(c), pr.n, pr.n)));
  return worst;
}

cd omega_pairing(const PairRealization& pr, const Mat& coeff) {
  const int n2 = pr.n * pr.n;
  std::vector<Mat> az;
  for (int x = 0; x < n2; ++x) az.push_back(commutator(pr.basis[x], pr.Z));
  cd s = 0;
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y)
      if (std::abs(coeff(x, y)) > 0) s += coeff(x, y) * (commutator(az[x], az[y]) * pr.Z).trace();
  return s;
}

std::map<std::string, double> fix_theta_residuals(const PairRealization& pr, double phi) {
  const int n = pr.n, p = pr.p;
  Mat kb = kphi_basis(pr, phi);
  auto e = [n](int i, int j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
  };
  auto dist = [&](const Mat& x) { return distance_to_span(vec_rowmajor(x), kb); };
  std::map<std::string, double> out;
  if (pr.sd.tag == HermitianTag::S) {
    // cos(πφ/2)(X + θX) - i sin(πφ/2) H, i.e. X + θX - s_o H with s_o = i tan(πφ/2)
    Mat x = e(p - 1, p), h = e(p - 1, p - 1) - e(p, p);
    out["distinguished"] = dist(std::cos(kPi * phi / 2) * (x + pr.theta(x)) - kI * std::sin(kPi * phi / 2) * h);
  } else {
    // c_o = -cot(π(φ-1)/4), scaled to stay finite at φ = 1
    const double a = kPi * (phi - 1) / 4;
    Mat x = e(p - 1, p), x2 = e(n - p - 1, n - p);
    out["distinguished_p"] = dist(std::sin(a) * x - std::cos(a) * pr.theta(x));
    out["distinguished_N-p"] = dist(std::cos(a) * x2 - std::sin(a) * pr.theta(x2));
  }
  for (int i = 1; i < n; ++i) {
    if (std::find(pr.sd.distinguished.begin(), pr.sd.distinguished.end(), i) != pr.sd.distinguished.end()) continue;
    Mat x = e(i - 1, i);
    if (pr.sd.in_X(i)) {
      out["X_E" + std::to_string(i)] = dist(x);
      out["X_F" + std::to_string(i)] = dist(x.transpose());
    } else {
      out["nondistinguished_" + std::to_string(i)] = dist(x + pr.theta(x));
    }
  }
  return out;
}

}  // namespace qsym
