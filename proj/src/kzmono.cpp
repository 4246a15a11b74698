#include "qsym/kzmono.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_psi.h>

#include "qsym/errors.hpp"

namespace qsym {

namespace {

constexpr double kEuler = 0.57721566490153286061;

void check_square_same(const KZProblem& p) {
  const auto n = p.A_0.rows();
  for (const Mat* m : {&p.A_minus1, &p.A_0, &p.A_1})
    if (m->rows() != n || m->cols() != n) throw ShapeError("KZ coefficient matrices must be square of equal size");
}

bool near_pole(cd z) {
  return z.real() <= 0.5 && std::abs(z.imag()) < 1e-12 && std::abs(z.real() - std::round(z.real())) < 1e-12;
}

}  // namespace

SylvesterSolver::SylvesterSolver(const Mat& a, double resonance_threshold) : threshold_(resonance_threshold) {
  Eigen::ComplexEigenSolver<Mat> es(a);
  if (es.info() == Eigen::Success) {
    s_ = es.eigenvectors();
    d_ = es.eigenvalues();
    Eigen::JacobiSVD<Mat> svd(s_);
    const auto& sv = svd.singularValues();
    double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (cond <= 1e8) {
      sinv_ = s_.inverse();
      return;
    }
  }
  eigen_ = false;
  Eigen::ComplexSchur<Mat> cs(a);
  q_ = cs.matrixU();
  t_ = cs.matrixT();
  d_ = t_.diagonal();
}

Mat SylvesterSolver::solve(int k, const Mat& b) const {
  const auto n = d_.size();
  double gap = INFINITY;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) gap = std::min(gap, std::abs(double(k) - (d_(i) - d_(j))));
  if (gap < threshold_) throw ResonanceError(k, gap);
  if (eigen_) {
    Mat bt = sinv_ * b * s_;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) bt(i, j) /= double(k) - (d_(i) - d_(j));
    return s_ * bt * sinv_;
  }
  Mat c = q_.adjoint() * b * q_;
  Mat y = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec rhs = c.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs -= t_(i, j) * y.col(i);
    Mat m = (double(k) + t_(j, j)) * Mat::Identity(n, n) - t_;
    y.col(j) = m.triangularView<Eigen::Upper>().solve(rhs);
  }
  return q_ * y * q_.adjoint();
}

AssociatorResult frobenius_monodromy(const KZProblem& prob) {
  check_square_same(prob);
  const int n = static_cast<int>(prob.A_0.rows());
  const Mat id = eye(n);
  AssociatorResult res;

  // Sum of H_k (1/2)^k for the recursion `next`, stopped on a two-term tail estimate.
  auto series = [&](const SylvesterSolver& solver, auto next) {
    Mat h = id, sum = id;
    double prev = 0;
    for (int k = 1; k <= prob.max_order; ++k) {
      h = solver.solve(k, next(h));
      double term = fro(h) * std::pow(0.5, k);
      sum += h * std::pow(0.5, k);
      double est = term + prev;
      prev = term;
      if (k >= 2 && est <= prob.tol * std::max(1.0, fro(sum))) {
        res.order_used = std::max(res.order_used, k);
        res.tail_estimate = std::max(res.tail_estimate, est);
        return sum;
      }
      if (!std::isfinite(est)) throw TruncationError(k, est);
      if (k == prob.max_order) throw TruncationError(prob.max_order, est);
    }
    return sum;
  };

  SylvesterSolver s0(prob.A_0), s1(prob.A_1);
  Mat u = Mat::Zero(n, n), v = Mat::Zero(n, n);
  Mat h0 = series(s0, [&](const Mat& prev) {
    u = prev - u;
    v = prev + v;
    return Mat(prob.A_minus1 * u - prob.A_1 * v);
  });
  Mat w = Mat::Zero(n, n);
  v = Mat::Zero(n, n);
  Mat h1 = series(s1, [&](const Mat& prev) {
    w = (prev + w) / 2.0;
    v = prev + v;
    return Mat(-prob.A_minus1 * w - prob.A_0 * v);
  });
  const double lhalf = std::log(0.5);
  Mat g0 = h0 * expm(prob.A_0 * lhalf);
  Mat g1 = h1 * expm(prob.A_1 * lhalf);
  res.psi = g1.partialPivLu().solve(g0);
  return res;
}

static cd hbar(double h) { return cd(h, 0) / (kPi * kI); }

KZProblem cyclotomic_problem(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu,
                             double h, const KZOptions& opt) {
  if (reps.size() != 3) throw ShapeError("the cyclotomic associator needs three legs");
  const cd hb = hbar(h);
  auto t = [&](Symbol sym, std::vector<int> legs) { return build_leg_tensor(pr, sym, reps, legs).data; };
  Mat tk12 = t(Symbol::TK, {1, 2});
  Mat tm12 = t(Symbol::TMPlus, {1, 2}) + t(Symbol::TMMinus, {1, 2});
  KZProblem prob;
  prob.A_minus1 = hb * (tk12 - tm12);
  prob.A_1 = hb * t(Symbol::TU, {1, 2});
  // only s + μ enters
  prob.A_0 = hb * (2.0 * t(Symbol::TK, {0, 1}) + t(Symbol::CasimirK, {1})) + (s + mu) * t(Symbol::Z, {1});
  prob.tol = opt.tol;
  prob.max_order = opt.max_order;
  return prob;
}

AssociatorResult psi_kz(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu, double h,
                        const KZOptions& opt) {
  return frobenius_monodromy(cyclotomic_problem(pr, reps, s, mu, h, opt));
}

AssociatorResult phi_kz(const PairRealization& pr, const std::vector<Representation>& reps, double h,
                        const KZOptions& opt) {
  if (reps.size() != 3) throw ShapeError("the Drinfeld associator needs three legs");
  const cd hb = hbar(h);
  KZProblem prob;
  prob.A_0 = hb * build_leg_tensor(pr, Symbol::TU, reps, {0, 1}).data;
  prob.A_1 = hb * build_leg_tensor(pr, Symbol::TU, reps, {1, 2}).data;
  prob.A_minus1 = Mat::Zero(prob.A_0.rows(), prob.A_0.cols());
  prob.tol = opt.tol;
  prob.max_order = opt.max_order;
  return frobenius_monodromy(prob);
}

Mat r_kz(const PairRealization& pr, const std::vector<Representation>& reps, double h) {
  if (reps.size() != 2) throw ShapeError("R needs two legs");
  return expm(-h * build_leg_tensor(pr, Symbol::TU, reps, {0, 1}).data);
}

Mat ribbon_kz(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu, double h,
              cd central_g, RibbonVariant variant) {
  if (reps.size() != 2) throw ShapeError("the ribbon braid needs two legs");
  Mat x = -h * (2.0 * build_leg_tensor(pr, Symbol::TK, reps, {0, 1}).data +
                build_leg_tensor(pr, Symbol::CasimirK, reps, {1}).data);
  Mat z1 = build_leg_tensor(pr, Symbol::Z, reps, {1}).data;
  switch (variant) {
    case RibbonVariant::Sigma: x -= kPi * kI * (s + mu) * z1; break;
    case RibbonVariant::Plain: x += kPi * (1.0 - kI * (s + mu)) * z1; break;
    case RibbonVariant::NonHermitian: break;
  }
  return expm(x) * central_g;
}

cd complex_digamma(cd z) {
  static const bool off = (gsl_set_error_handler_off(), true);
  (void)off;
  if (near_pole(z)) throw DomainError("digamma pole at z = " + std::to_string(z.real()));
  gsl_sf_result re, im;
  int status = gsl_sf_complex_psi_e(z.real(), z.imag(), &re, &im);
  if (status != GSL_SUCCESS) throw DomainError(std::string("digamma evaluation failed: ") + gsl_strerror(status));
  return {re.val, im.val};
}

cd complex_trigamma(cd z) {
  if (near_pole(z)) throw DomainError("trigamma pole at z = " + std::to_string(z.real()));
  cd acc = 0;
  while (z.real() < 12.0) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  // asymptotic series with Bernoulli numbers B_2 ... B_14
  static const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
  cd zi = 1.0 / z, z2 = zi * zi;
  cd s = zi + 0.5 * z2;
  cd pw = z2 * zi;
  for (double bk : b) {
    s += bk * pw;
    pw *= z2;
  }
  return acc + s;
}

Mat first_order_oracle(const PairRealization& pr, const std::vector<Representation>& reps, cd s) {
  if (reps.size() != 3) throw ShapeError("the oracle acts on three legs");
  auto t = [&](Symbol sym) { return build_leg_tensor(pr, sym, reps, {1, 2}).data; };
  Mat tmp = t(Symbol::TMPlus), tmm = t(Symbol::TMMinus);
  cd psim = complex_digamma(0.5 - kI * s / 2.0);
  cd psip = complex_digamma(0.5 + kI * s / 2.0);
  Mat inner = std::log(2.0) * t(Symbol::TU) + kEuler * (tmp + tmm) + psim * tmp + psip * tmm;
  return inner / (kPi * kI);
}

Mat first_order_oracle_derivative(const PairRealization& pr, const std::vector<Representation>& reps, cd s) {
  if (reps.size() != 3) throw ShapeError("the oracle acts on three legs");
  auto t = [&](Symbol sym) { return build_leg_tensor(pr, sym, reps, {1, 2}).data; };
  Mat tmp = t(Symbol::TMPlus), tmm = t(Symbol::TMMinus);
  cd tp = complex_trigamma(0.5 + kI * s / 2.0), tm = complex_trigamma(0.5 - kI * s / 2.0);
  cd sech = 1.0 / std::cosh(kPi * s / 2.0);
  return (tp - tm) / (4.0 * kPi) * (tmp + tmm) - (kPi / 4.0) * sech * sech * (tmp - tmm);
}

std::map<std::string, double> identity_residuals(const PairRealization& pr, const Representation& v, cd s, cd mu,
                                                 double h, const KZOptions& opt) {
  const int d = v.dim;
  const Representation vv = tensor_rep(v, v);
  const std::vector<int> dims{d, d, d};
  const Mat i1 = eye(d), i2 = eye(d * d);
  auto psi = [&](std::vector<Representation> reps) { return psi_kz(pr, reps, s, mu, h, opt).psi; };
  std::map<std::string, double> out;

  const Mat ps = psi({v, v, v});
  const Mat phi = phi_kz(pr, {v, v, v}, h, opt).psi;
  {
    Mat lhs = kron(i1, phi) * psi({v, vv, v}) * kron(ps, i1);
    Mat rhs = psi({v, v, vv}) * psi({vv, v, v});
    out["mixed_pentagon"] = fro(lhs - rhs);
  }
  {
    const Mat r = r_kz(pr, {v, v}, h);
    Mat r12 = kron(r, i1), r23 = kron(i1, r), r13 = relabel_legs(kron(r, i1), dims, {0, 2, 1});
    auto perm = [&](const std::vector<int>& o) { return relabel_legs(phi, dims, o); };
    Mat dr1 = r_kz(pr, {vv, v}, h), dr2 = r_kz(pr, {v, vv}, h);
    out["hexagon_1"] = fro(dr1 - perm({2, 0, 1}) * r13 * perm({0, 2, 1}).inverse() * r23 * phi);
    out["hexagon_2"] = fro(dr2 - perm({1, 2, 0}).inverse() * r13 * perm({1, 0, 2}) * r12 * phi.inverse());
  }
  {
    const Mat r = r_kz(pr, {v, v}, h);
    const Mat r12 = kron(i1, r);
    const Mat r21 = relabel_legs(r12, dims, {0, 2, 1});
    const Mat ps021 = relabel_legs(ps, dims, {0, 2, 1});
    const Mat ex = expm(kPi * v(pr.Z));
    const Mat b2 = kron(i2, ex), b12 = kron(kron(i1, ex), ex);
    auto check = [&](RibbonVariant var, bool twisted, const std::string& tag) {
      auto beta2 = [&](const Mat& m) { return twisted ? Mat(b2 * m * b2.inverse()) : m; };
      auto beta12 = [&](const Mat& m) { return twisted ? Mat(b12 * m * b12.inverse()) : m; };
      Mat e = ribbon_kz(pr, {v, v}, s, mu, h, 1.0, var);
      Mat e01 = kron(e, i1);
      Mat e02 = relabel_legs(e01, dims, {0, 2, 1});
      Mat tail = beta2(ps021.inverse() * r12 * ps);
      Mat lhs1 = ribbon_kz(pr, {vv, v}, s, mu, h, 1.0, var);
      Mat rhs1 = ps.inverse() * r21 * ps021 * e02 * tail;
      Mat lhs2 = ribbon_kz(pr, {v, vv}, s, mu, h, 1.0, var);
      Mat rhs2 = r21 * ps021 * e02 * tail * e01 * beta12(ps.inverse());
      out[tag + "_1"] = fro(lhs1 - rhs1);
      out[tag + "_2"] = fro(lhs2 - rhs2);
    };
    check(RibbonVariant::Sigma, true, "ribbon_coproduct");
    check(RibbonVariant::Plain, false, "ribbon_plain_coproduct");
  }
  {
    double worst = 0;
    for (int x = 0; x < pr.n * pr.n; ++x) {
      if (std::abs(pr.proj_k(x, x)) < 0.5) continue;
      Mat t = v(pr.basis[x]);
      Mat tot = kron_all({t, i1, i1}) + kron_all({i1, t, i1}) + kron_all({i1, i1, t});
      worst = std::max(worst, fro(ps * tot - tot * ps));
    }
    out["psi_intertwiner"] = worst;
  }
  return out;
}

}  // namespace qsym
