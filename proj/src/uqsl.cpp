#include "qsym/uqsl.hpp"

#include <algorithm>
#include <cmath>

#include "qsym/errors.hpp"
#include "qsym/sln.hpp"

namespace qsym {

namespace {

void check_q(double q) {
  if (!(q > 0) || !std::isfinite(q)) throw ParameterError("q must be a positive real, got " + std::to_string(q));
}

Mat unit(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// (q^m - 1)/(q^{-1} - 1), continued to -m at q = 1
double qdiff(double m, double q) {
  if (std::abs(std::log(q)) < 1e-14) return -m;
  return (std::pow(q, m) - 1.0) / (1.0 / q - 1.0);
}

// Simple root α_i in L-coordinates.
std::vector<double> alpha(int n, int i) {
  std::vector<double> a(n, 0.0);
  a[i - 1] = 1;
  a[i] = -1;
  return a;
}

std::vector<double> theta_l(const SatakeData& sd, const std::vector<double>& w) {
  const int n = sd.n;
  std::vector<double> out(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out[k] += boost::rational_cast<double>(sd.theta[k][l]) * w[l];
  return out;
}

// Invariant form on L-coordinates restricted to trace-zero vectors.
double form(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  double sa = 0, sb = 0, d = 0;
  for (int k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    d += a[k] * b[k];
  }
  return d - sa * sb / n;
}

double minus_norm(const SatakeData& sd, int i) {
  auto a = alpha(sd.n, i);
  auto ta = theta_l(sd, a);
  std::vector<double> m(sd.n);
  for (int k = 0; k < sd.n; ++k) m[k] = 0.5 * (a[k] - ta[k]);
  return form(m, m);
}

double cnorm(cd a, cd b) { return std::abs(a - b); }

std::vector<std::pair<int, int>> mudrov_shape(int n, int r) {
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i) {
    if (i < n - r) pos.emplace_back(i, i);
    if (i < r || i >= n - r) pos.emplace_back(i, n - 1 - i);
  }
  return pos;
}

}  // namespace

Mat UqFundamental::K_omega(const std::vector<double>& omega) const {
  if (static_cast<int>(omega.size()) != n) throw ShapeError("K_omega needs N coordinates");
  double mean = 0;
  for (double w : omega) mean += w / n;
  Mat m = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = std::pow(q, omega[j] - mean);
  return m;
}

UqFundamental fundamental(int n, double q) {
  if (n < 2) throw InvalidDimensionError("U_q(sl_N) needs N >= 2");
  check_q(q);
  UqFundamental u;
  u.n = n;
  u.q = q;
  for (int i = 0; i + 1 < n; ++i) {
    u.E.push_back(std::sqrt(q) * unit(n, i, i + 1));
    u.F.push_back(unit(n, i + 1, i) / std::sqrt(q));
    Mat k = eye(n);
    k(i, i) = q;
    k(i + 1, i + 1) = 1.0 / q;
    u.K.push_back(k);
  }
  return u;
}

double relations_residual(const UqFundamental& u) {
  const int r = u.n - 1;
  const double q = u.q;
  const bool classical = std::abs(std::log(q)) < 1e-14;
  double worst = 0;
  for (int i = 0; i < r; ++i) {
    Mat ki = u.K[i].inverse();
    for (int j = 0; j < r; ++j) {
      int a = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
      worst = std::max(worst, fro(u.K[i] * u.E[j] * ki - std::pow(q, a) * u.E[j]));
      worst = std::max(worst, fro(u.K[i] * u.F[j] * ki - std::pow(q, -a) * u.F[j]));
      Mat rhs = Mat::Zero(u.n, u.n);
      if (i == j) {
        if (classical) {
          rhs(i, i) = 1.0;
          rhs(i + 1, i + 1) = -1.0;
        } else {
          rhs = (u.K[i] - ki) / (q - 1.0 / q);
        }
      }
      worst = std::max(worst, fro(commutator(u.E[i], u.F[j]) - rhs));
      if (std::abs(i - j) == 1) {
        const double q2 = q + 1.0 / q;
        worst = std::max(worst, fro(u.E[i] * u.E[i] * u.E[j] - q2 * u.E[i] * u.E[j] * u.E[i] +
                                    u.E[j] * u.E[i] * u.E[i]));
        worst = std::max(worst, fro(u.F[i] * u.F[i] * u.F[j] - q2 * u.F[i] * u.F[j] * u.F[i] +
                                    u.F[j] * u.F[i] * u.F[i]));
      } else if (i != j) {
        worst = std::max(worst, fro(commutator(u.E[i], u.E[j])));
        worst = std::max(worst, fro(commutator(u.F[i], u.F[j])));
      }
      worst = std::max(worst, fro(commutator(u.K[i], u.K[j])));
    }
  }
  return worst;
}

Mat r_matrix(int n, double q) {
  if (n < 2) throw InvalidDimensionError("R-matrix needs N >= 2");
  check_q(q);
  Mat r = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i * n + j, i * n + j) = i == j ? 1.0 / q : 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r(i * n + j, j * n + i) += 1.0 / q - q;  // e_ij ⊗ e_ji
  return r;
}

double r_matrix_scalar(int n, double q) { return std::pow(q, 1.0 / n); }

Mat flip(int n) {
  Mat s = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

Mat alternating_antidiagonal(int k) {
  Mat a = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i) a(i, k - 1 - i) = (i % 2 == 0) ? 1.0 : -1.0;
  return a;
}

Mat lusztig_w0(int n, double q) {
  check_q(q);
  return std::pow(q, (n - 1) / 2.0) * alternating_antidiagonal(n);
}

Mat lusztig_wX(int n, int p, double q) {
  check_q(q);
  if (p <= 0 || 2 * p > n) throw ParameterError("AIII needs 0 < p <= N/2");
  Mat t = eye(n);
  const int m = n - 2 * p;
  if (m > 0) t.block(p, p, m, m) = std::pow(q, (n - 1) / 2.0 - p) * alternating_antidiagonal(m);
  return t;
}

cd z_factor(int n, int p, int i) {
  if (2 * p == n) return 1.0;
  auto zd = [&](int k) -> cd {
    cd ph = std::exp(kI * kPi * double(p) / double(n));
    double sg = k < p ? ((p % 2) ? -1.0 : 1.0) : -(((n - p) % 2) ? -1.0 : 1.0);
    return ph * sg;
  };
  return zd(i - 1) / zd(i);
}

cd kappa(int n, int p, int i) {
  double ang = std::arg(z_factor(n, p, i));
  if (ang < 0) ang += 2 * kPi;
  return std::exp(kI * ang / 2.0);
}

CoidealParams standard_params(int n, int p, double q) {
  check_q(q);
  SatakeData sd = build_aiii(n, p);
  CoidealParams t;
  t.n = n;
  t.p = p;
  t.tag = sd.tag;
  t.q = q;
  t.c.assign(n, 0.0);
  t.s.assign(n, 0.0);
  for (int i = 1; i < n; ++i)
    if (!sd.in_X(i)) t.c[i] = std::pow(q, -minus_norm(sd, i));
  return t;
}

CoidealParams s_type_params(int n, double q, cd s_p, bool complex_family) {
  if (n % 2) throw ParameterError("S-type needs even N");
  CoidealParams t = standard_params(n, n / 2, q);
  t.s[t.p] = s_p;
  t.complex_family = complex_family;
  validate_params(t);
  return t;
}

CoidealParams c_type_params(int n, int p, double q, cd c_p, bool complex_family) {
  if (2 * p >= n) throw ParameterError("C-type needs 2p < N");
  CoidealParams t = standard_params(n, p, q);
  if (std::abs(c_p) == 0) throw DomainError("c_p must be nonzero");
  t.c[p] = c_p;
  t.c[n - p] = 1.0 / (q * c_p);
  t.complex_family = complex_family;
  validate_params(t);
  return t;
}

void validate_params(const CoidealParams& t) {
  if (static_cast<int>(t.c.size()) != t.n || static_cast<int>(t.s.size()) != t.n)
    throw ShapeError("parameter vectors must have N entries");
  CoidealParams ref = standard_params(t.n, t.p, t.q);
  if (ref.tag != t.tag) throw DomainError("parameter tag does not match (N, p)");
  const double tol = 1e-12;
  for (int i = 1; i < t.n; ++i) {
    bool dist = i == t.p || (t.tag == HermitianTag::C && i == t.n - t.p);
    if (dist) continue;
    if (cnorm(t.c[i], ref.c[i]) > tol * std::max(1.0, std::abs(ref.c[i])) || std::abs(t.s[i]) > tol)
      throw DomainError("non-distinguished parameters are fixed (index " + std::to_string(i) + ")");
  }
  if (t.tag == HermitianTag::S) {
    if (cnorm(t.c[t.p], ref.c[t.p]) > tol * std::abs(ref.c[t.p])) throw DomainError("S-type c_p is fixed to q^-2");
    if (!t.complex_family && std::abs(t.s[t.p].real()) > tol * std::max(1.0, std::abs(t.s[t.p])))
      throw DomainError("S-type s_p must be purely imaginary");
  } else {
    cd cp = t.c[t.p], ct = t.c[t.n - t.p];
    if (!t.complex_family && (std::abs(cp.imag()) > tol * std::abs(cp) || cp.real() <= 0))
      throw DomainError("C-type c_p must be a positive real");
    cd want = ref.c[t.p] * ref.c[t.n - t.p];
    if (cnorm(cp * ct, want) > tol * std::abs(want)) throw DomainError("C-type c_p c_{N-p} must equal q^-1");
    if (std::abs(t.s[t.p]) > tol || std::abs(t.s[t.n - t.p]) > tol) throw DomainError("C-type s_i vanish");
  }
}

std::vector<Mat> CoidealGenerators::all() const {
  std::vector<Mat> out = B;
  out.insert(out.end(), X_part.begin(), X_part.end());
  out.insert(out.end(), cartan.begin(), cartan.end());
  return out;
}

CoidealGenerators coideal_generators(const CoidealParams& t) {
  validate_params(t);
  const int n = t.n, p = t.p;
  const double q = t.q;
  UqFundamental u = fundamental(n, q);
  Mat T = lusztig_wX(n, p, q);
  Mat Ti = T.inverse();
  CoidealGenerators g;
  for (int i = 1; i < n; ++i) {
    bool in_x = i > p && i < n - p;
    if (in_x) {
      g.X_part.push_back(u.E[i - 1]);
      g.X_part.push_back(u.F[i - 1]);
      continue;
    }
    const int tau = n - i;
    Mat ki = u.K[i - 1].inverse();
    Mat b = u.F[i - 1] - t.c[i] * z_factor(n, p, tau) * T * u.E[tau - 1] * Ti * ki;
    if (std::abs(t.s[i]) > 0) {
      Mat d = Mat::Zero(n, n);
      d(i - 1, i - 1) = qdiff(-1, q);
      d(i, i) = qdiff(1, q);
      b += t.s[i] * kappa(n, p, i) * d;
    }
    g.B.push_back(b);
    g.B_index.push_back(i);
    if (!t.complex_family) {
      g.B.push_back(b.adjoint());
      g.B_index.push_back(i);
    }
  }
  for (int i = 0; i < n - p; ++i) {
    Mat d = Mat::Zero(n, n);
    d(i, i) = 1.0;
    if (i < p) d(n - 1 - i, n - 1 - i) = 1.0;
    g.cartan.push_back(d);
  }
  return g;
}

Mat kmatrix_closed_form(const CoidealParams& t) {
  const int n = t.n, p = t.p;
  const double q = t.q;
  Mat k = Mat::Zero(n, n);
  Mat ap = alternating_antidiagonal(p);
  if (t.tag == HermitianTag::S) {
    double y = ((p - 1) % 2 ? -1.0 : 1.0) * std::pow(q, 1.0 / (2 * p) - p);
    k.block(0, 0, p, p) = std::sqrt(q) * (q + 1) * t.s_p() * eye(p);
    k.block(0, p, p, p) = -ap.transpose();
    k.block(p, 0, p, p) = ap;
    return y * k;
  }
  cd cp = t.c_p();
  const double N = n, P = p;
  cd lam = std::exp(-kI * kPi * P / N) * std::pow(q, 1.0 / N - (N - P) - P / N) * std::pow(cp, -2.0 * P / N);
  cd mu = std::exp(kI * kPi * (N - P) / N) * std::pow(q, 1.0 / N - P + (N - P) / N) * std::pow(cp, 2.0 * (N - P) / N);
  k.block(0, 0, p, p) = (lam + mu) * eye(p);
  k.block(p, p, n - 2 * p, n - 2 * p) = lam * eye(n - 2 * p);
  k.block(0, n - p, p, p) = -std::pow(q, (N + 1) / 2 - P) * cp * lam * ap.transpose();
  k.block(n - p, 0, p, p) = std::pow(q, -(N + 1) / 2 + P) / cp * mu * ap;
  return k;
}

cd kmatrix_closed_n1(const CoidealParams& t) {
  const double N = t.n, P = t.p, q = t.q;
  if (t.tag == HermitianTag::S) return std::pow(q, 1.0 / (2 * P) - P);
  double sg = (t.p % 2) ? -1.0 : 1.0;
  return sg * std::exp(-kI * kPi * P / N) * std::pow(q, 0.5 - P / N + 1.0 / N - N / 2) *
         std::pow(t.c_p(), 1.0 - 2 * P / N);
}

double commutant_residual(const Mat& K, const CoidealGenerators& g) {
  double worst = 0;
  for (const Mat& x : g.all()) worst = std::max(worst, fro(commutator(K, x)));
  return worst;
}

double reflection_residual(const Mat& K, double q) {
  const int n = static_cast<int>(K.rows());
  Mat rh = flip(n) * r_matrix(n, q);
  Mat k1 = kron(K, eye(n));
  return fro(k1 * rh * k1 * rh - rh * k1 * rh * k1);
}

KMatrixResult solve_kmatrix(const CoidealParams& t, double tol) {
  const int n = t.n, p = t.p;
  CoidealGenerators gens = coideal_generators(t);
  auto pos = mudrov_shape(n, p);
  std::vector<Mat> all = gens.all();
  Mat sys = Mat::Zero(static_cast<Eigen::Index>(all.size()) * n * n, static_cast<Eigen::Index>(pos.size()));
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t c = 0; c < pos.size(); ++c) {
      Mat e = unit(n, pos[c].first, pos[c].second);
      sys.block(a * n * n, c, n * n, 1) = vec_rowmajor(commutator(e, all[a]));
    }
  Mat ns = null_space(sys);
  if (ns.cols() != 1)
    throw StructuralError("commutant within the Mudrov family is " + std::to_string(ns.cols()) + "-dimensional");
  Mat K = Mat::Zero(n, n);
  for (size_t c = 0; c < pos.size(); ++c) K(pos[c].first, pos[c].second) = ns(c, 0);
  double anti = 0;
  for (int i = 0; i < n; ++i)
    if (i < p || i >= n - p) anti = std::max(anti, std::abs(K(i, n - 1 - i)));
  if (anti < 1e-12 * fro(K)) throw StructuralError("no nonconstant solution");
  K *= kmatrix_closed_n1(t) / K(n - 1, 0);

  KMatrixResult kr;
  kr.params = t;
  kr.K = K;
  Mat closed = kmatrix_closed_form(t);
  kr.closed_form_residual = fro(K - closed) / fro(closed);

  MudrovData& md = kr.mudrov;
  md.r_block = p;
  if (t.tag == HermitianTag::C) {
    md.lambda = K(p, p);
    md.mu = K(0, 0) - md.lambda;
    kr.lambda_residual = std::abs(md.lambda - closed(p, p)) / std::abs(closed(p, p));
  } else {
    // λ, μ are the roots of x² - K_11 x - y_1 y_N
    cd sum = K(0, 0), prod = -K(0, n - 1) * K(n - 1, 0);
    cd disc = std::sqrt(sum * sum - 4.0 * prod);
    md.lambda = (sum + disc) / 2.0;
    md.mu = (sum - disc) / 2.0;
  }
  for (int i = 0; i < p; ++i) md.y.push_back(K(i, n - 1 - i));
  for (int i = n - p; i < n; ++i) md.y.push_back(K(i, n - 1 - i));
  for (int i = 0; i < p; ++i)
    md.constraint_residual =
        std::max(md.constraint_residual, std::abs(K(i, n - 1 - i) * K(n - 1 - i, i) + md.lambda * md.mu));

  Eigen::ComplexEigenSolver<Mat> es(K);
  for (int i = 0; i < n; ++i) kr.eigenvalues.push_back(es.eigenvalues()(i));
  kr.commutant_residual = commutant_residual(K, gens);
  kr.reflection_residual = reflection_residual(K, t.q);
  if (kr.closed_form_residual > tol)
    throw InconsistencyError("solved K deviates from the closed form by " + std::to_string(kr.closed_form_residual));
  kr.fit = infer_s_mu(kr, std::log(t.q));
  kr.inferred_s = kr.fit.s;
  kr.inferred_s_plus_mu = kr.fit.s_plus_mu;
  return kr;
}

Mat kz_k_matrix(int n, int p, double h, cd sigma, cd g) {
  PairRealization pr = realize(n, p);
  std::vector<Representation> reps{fundamental_rep(n)};
  Mat ck = build_leg_tensor(pr, Symbol::CasimirK, reps, {0}).data;
  Mat z = build_leg_tensor(pr, Symbol::Z, reps, {0}).data;
  return g * expm(-h * ck + kPi * (1.0 - kI * sigma) * z);
}

cd closed_form_s_plus_mu(const CoidealParams& t) {
  const double q = t.q, h = std::log(q);
  if (t.tag == HermitianTag::S) {
    cd sp = t.s_p();
    cd a = std::sqrt(q) * (q + 1) / 2.0;
    return (2.0 / kPi) * std::log(std::sqrt(1.0 - q * (q + 1) * (q + 1) * sp * sp / 4.0) - a * kI * sp);
  }
  return (2.0 / kPi) * std::log(t.c_p()) + h / kPi;
}

namespace {

struct Cluster {
  cd value;
  int mult = 0;
};

std::vector<Cluster> cluster(const std::vector<cd>& ev, double tol) {
  std::vector<Cluster> out;
  for (cd e : ev) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) { return std::abs(c.value - e) <= tol; });
    if (it == out.end()) {
      out.push_back({e, 1});
    } else {
      it->value = (it->value * double(it->mult) + e) / double(it->mult + 1);
      ++it->mult;
    }
  }
  return out;
}

// greedy nearest pairing; returns the largest pair distance
double match_multisets(std::vector<cd> a, std::vector<cd> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0;
  for (cd x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cd u, cd v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

double match_moduli(std::vector<cd> a, std::vector<cd> b) {
  std::vector<double> ma, mb;
  for (cd x : a) ma.push_back(std::abs(x));
  for (cd x : b) mb.push_back(std::abs(x));
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  double worst = 0;
  for (size_t i = 0; i < ma.size(); ++i) worst = std::max(worst, std::abs(ma[i] - mb[i]));
  return worst;
}

std::vector<cd> diag_values(const Mat& m) {
  std::vector<cd> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(m(i, i));
  return out;
}

}  // namespace

SMuFit infer_s_mu(const KMatrixResult& kr, double h, double rel_tol) {
  const CoidealParams& t = kr.params;
  const int n = t.n, p = t.p;
  double scale = 0;
  for (cd e : kr.eigenvalues) scale = std::max(scale, std::abs(e));
  const double tol = rel_tol * scale;

  // the KZ-side matrix is diagonal; read off c1, c2 from σ = 0, g = 1
  Mat base = kz_k_matrix(n, p, h, 0.0, 1.0);
  Mat off = base;
  off.diagonal().setZero();
  if (fro(off) > 1e-12 * fro(base)) throw InconsistencyError("KZ-side K-matrix is not diagonal");
  const cd z1 = kI * (1.0 - double(p) / n), z2 = -kI * (double(p) / n);
  const cd e1 = base(0, 0) / std::exp(kPi * z1), e2 = base(n - 1, n - 1) / std::exp(kPi * z2);  // e^{-h c_k}

  auto clusters = cluster(kr.eigenvalues, tol);
  if (clusters.size() != 2)
    throw ComparisonError("expected two eigenvalue clusters, found " + std::to_string(clusters.size()));

  struct Candidate {
    cd sigma, g;
  };
  std::vector<Candidate> fits;
  for (int a = 0; a < 2; ++a) {
    const Cluster& c1 = clusters[a];
    const Cluster& c2 = clusters[1 - a];
    if (c1.mult != p || c2.mult != n - p) continue;
    cd ratio = -(c1.value / c2.value) * (e2 / e1);
    cd sigma = std::log(ratio) / kPi;
    cd g = c1.value / (e1 * std::exp(kPi * (1.0 - kI * sigma) * z1));
    // snap to the nearest N-th root of unity
    double k = std::round(std::arg(g) * n / (2 * kPi));
    cd root = std::exp(2.0 * kPi * kI * k / double(n));
    if (std::abs(g - root) > rel_tol) continue;
    Mat m = kz_k_matrix(n, p, h, sigma, root);
    if (match_multisets(diag_values(m), kr.eigenvalues) > tol) continue;
    fits.push_back({sigma, root});
  }
  if (fits.empty()) throw ComparisonError("no central element fits the K-matrix eigenvalues");

  SMuFit fit;
  size_t pick = 0;
  if (fits.size() > 1) {
    if (t.tag != HermitianTag::S) throw ComparisonError("eigenvalue fit is ambiguous");
    cd want = (p - 1) % 2 ? -1.0 : 1.0;
    auto it = std::find_if(fits.begin(), fits.end(), [&](const Candidate& c) { return std::abs(c.g - want) < 1e-9; });
    if (it == fits.end()) throw ComparisonError("no fit with the expected central element");
    pick = static_cast<size_t>(it - fits.begin());
    for (const auto& c : fits)
      if (std::abs(c.sigma - fits[pick].sigma) > rel_tol) fit.ambiguous = true;
  }
  fit.s_plus_mu = fits[pick].sigma;
  fit.g = fits[pick].g;
  if (t.tag == HermitianTag::S) {
    cd c = -kI * t.s_p();
    fit.s = ((2.0 / kPi) * std::log(std::sqrt(1.0 + c * c) + c)).real();
  } else {
    fit.s = ((2.0 / kPi) * std::log(t.c_p())).real();
  }
  fit.closed_form_s_plus_mu = closed_form_s_plus_mu(t);
  fit.closed_form_residual = std::abs(fit.s_plus_mu - fit.closed_form_s_plus_mu);
  fit.modulus_residual = match_moduli(diag_values(kz_k_matrix(n, p, h, fit.s_plus_mu, fit.g)), kr.eigenvalues);
  return fit;
}

QuasiKResult quasi_k_in_rep(int n, int p, double q) {
  if (2 * p != n) throw UnsupportedError("quasi-K route is implemented for S-type only");
  check_q(q);
  SatakeData sd = build_aiii(n, p);
  UqFundamental u = fundamental(n, q);
  const int r = n - 1;

  // weights of End(V) in simple-root coordinates: e_ab (a < b) has weight α_a + ... + α_{b-1}
  using W = std::vector<int>;
  std::map<W, Mat> X;
  X[W(r, 0)] = eye(n);
  struct Slot {
    W w;
    int a, b;
  };
  std::vector<Slot> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      W w(r, 0);
      for (int k = a; k < b; ++k) w[k] = 1;
      slots.push_back({w, a, b});
    }
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& x, const Slot& y) { return x.b - x.a < y.b - y.a; });

  // Θ(α_i) = -α_{τ(i)}, (α_i, Θα_i) from the involution
  std::vector<double> a_theta(n, 0.0);
  for (int i = 1; i < n; ++i) a_theta[i] = form(alpha(n, i), theta_l(sd, alpha(n, i)));

  auto rhs = [&](const W& mu, int i) -> Mat {
    W mp = mu;
    mp[i - 1] -= 1;
    mp[n - i - 1] -= 1;
    auto it = X.find(mp);
    if (it == X.end()) return Mat::Zero(n, n);
    // c'_i = q^{(α_i,Θα_i)/2}; the bar involution inverts q and fixes E_j
    const double cp = std::pow(q, a_theta[i] / 2), cp_bar = 1.0 / cp;
    Mat xi = -u.E[n - i - 1];
    return it->second * (cp_bar * xi) * u.K[i - 1] -
           std::pow(q, -a_theta[i]) * u.K[i - 1].inverse() * (cp * xi) * it->second;
  };

  QuasiKResult res;
  for (const Slot& s : slots) {
    Vec lhs(r * n * n), b(r * n * n);
    Mat e = unit(n, s.a, s.b);
    for (int i = 1; i < n; ++i) {
      lhs.segment((i - 1) * n * n, n * n) = vec_rowmajor(commutator(u.F[i - 1], e));
      b.segment((i - 1) * n * n, n * n) = vec_rowmajor(rhs(s.w, i));
    }
    cd x = lhs.dot(b) / lhs.squaredNorm();
    res.recursion_residual = std::max(res.recursion_residual, (lhs * x - b).norm());
    X[s.w] = x * e;
  }
  // weights outside the support of End(V) must receive a vanishing right-hand side
  std::vector<W> support;
  for (const auto& [w, m] : X) support.push_back(w);
  for (const W& w0 : support)
    for (int i = 1; i < n; ++i) {
      W mu = w0;
      mu[i - 1] += 1;
      mu[n - i - 1] += 1;
      if (X.count(mu)) continue;
      for (int j = 1; j < n; ++j) res.recursion_residual = std::max(res.recursion_residual, fro(rhs(mu, j)));
    }
  if (res.recursion_residual > 1e-9)
    throw InconsistencyError("quasi-K recursion residual " + std::to_string(res.recursion_residual));

  res.X = Mat::Zero(n, n);
  for (const auto& [w, m] : X) res.X += m;

  Mat xi = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> l(n, 0.0);
    l[i] = 1;
    auto tl = theta_l(sd, l);
    for (int k = 0; k < n; ++k) l[k] = 0.5 * (l[k] + tl[k]);
    xi(i, i) = std::pow(q, -form(l, l));
  }
  res.K = res.X * xi * lusztig_w0(n, q).inverse();
  Mat kc = solve_kmatrix(standard_params(n, p, q)).K;
  cd sc = (kc.adjoint() * res.K).trace() / (kc.adjoint() * kc).trace();
  res.scalar_vs_commutant = sc;
  res.comparison_residual = fro(res.K - sc * kc) / fro(res.K);
  return res;
}

cd q_number(int m, double q) {
  if (std::abs(q - 1.0) < 1e-14) return double(m);
  return (std::pow(q, m) - std::pow(q, -m)) / (q - 1.0 / q);
}

Mat sl2_B(int n, cd c, cd s, double q) {
  if (n < 0) throw ParameterError("sl2 module needs n >= 0");
  check_q(q);
  if (std::abs(c) == 0) throw ParameterError("c must be nonzero");
  const int d = 2 * n + 1;
  Mat E = Mat::Zero(d, d), F = Mat::Zero(d, d), Ki = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    Ki(k, k) = std::pow(q, -(2.0 * n - 2.0 * k));
    if (k + 1 < d) F(k + 1, k) = 1.0;
    if (k > 0) E(k - 1, k) = q_number(k, q) * q_number(2 * n - k + 1, q);
  }
  return F - c * E * Ki + s * (Ki - eye(d));
}

Vec sl2_spherical(int n, cd c, cd s, double q) {
  Mat b = sl2_B(n, c, s, q);
  Mat ns = null_space(b);
  if (ns.cols() == 0) throw SolverError("B has trivial kernel");
  Vec v = ns.col(0);
  if (std::abs(v(0)) < 1e-12 * v.norm()) throw SolverError("spherical vector has no highest weight component");
  return v / v(0);
}

}  // namespace qsym
