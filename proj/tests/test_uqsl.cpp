#include "doctest.h"

#include <cmath>

#include "qsym/errors.hpp"
#include "qsym/sln.hpp"
#include "qsym/uqsl.hpp"

using namespace qsym;

namespace {

Mat e(int n, int i, int j) {  // 1-based matrix unit
  Mat m = Mat::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return m;
}

const double kH = 0.1;
const double kQ = std::exp(kH);

}  // namespace

TEST_CASE("fundamental representation relations") {
  for (int n = 2; n <= 6; ++n)
    for (double q : {1.0, kQ, std::exp(0.2), 0.7}) {
      auto u = fundamental(n, q);
      CHECK(relations_residual(u) <= 1e-12);
    }
  auto u = fundamental(3, kQ);
  CHECK(fro(u.E[0] - std::sqrt(kQ) * e(3, 1, 2)) < 1e-15);
  CHECK(fro(u.F[1] - e(3, 3, 2) / std::sqrt(kQ)) < 1e-15);
  // K_{α_1} = K_1
  CHECK(fro(u.K_omega({1, -1, 0}) - u.K[0]) < 1e-14);
  CHECK_THROWS_AS(fundamental(3, -1.0), ParameterError);
  CHECK_THROWS_AS(fundamental(1, kQ), InvalidDimensionError);
}

TEST_CASE("R-matrix") {
  Mat r2 = r_matrix(2, kQ);
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = 1.0 / kQ;
  want(1, 1) = 1.0;
  want(2, 2) = 1.0;
  want(3, 3) = 1.0 / kQ;
  want += (1.0 / kQ - kQ) * kron(e(2, 1, 2), e(2, 2, 1));
  CHECK(fro(r2 - want) < 1e-15);
  for (int n = 2; n <= 4; ++n) {
    CHECK(fro(r_matrix(n, 1.0) - eye(n * n)) < 1e-15);
    Mat rh = flip(n) * r_matrix(n, kQ);
    Mat a = kron(rh, eye(n)), b = kron(eye(n), rh);
    CHECK(fro(a * b * a - b * a * b) < 1e-12);
    // Hecke relation (Ř - q^{-1})(Ř + q) = 0
    Mat i2 = eye(n * n);
    CHECK(fro((rh - i2 / kQ) * (rh + kQ * i2)) < 1e-12);
  }
  CHECK(std::abs(r_matrix_scalar(4, kQ) - std::exp(kH / 4)) < 1e-15);
  CHECK_THROWS_AS(r_matrix(3, 0.0), ParameterError);
}

TEST_CASE("Lusztig elements") {
  Mat w = lusztig_w0(2, kQ);
  Mat want(2, 2);
  want << 0, 1, -1, 0;
  CHECK(fro(w - std::sqrt(kQ) * want) < 1e-15);
  CHECK(fro(lusztig_wX(3, 1, kQ) - eye(3)) < 1e-15);
  CHECK(fro(lusztig_wX(4, 2, kQ) - eye(4)) < 1e-15);
  for (int n = 1; n <= 7; ++n) {
    Mat a = alternating_antidiagonal(n);
    CHECK(fro(a * a - ((n - 1) % 2 ? -1.0 : 1.0) * eye(n)) < 1e-15);
  }
  // T_{w0} sends E_i to a multiple of F_{N-i} under conjugation
  auto u = fundamental(4, kQ);
  Mat t = lusztig_w0(4, kQ);
  for (int i = 1; i < 4; ++i) {
    Mat img = t * u.E[i - 1] * t.inverse();
    Mat f = u.F[4 - i - 1];
    cd ratio = img(4 - i, 4 - i - 1) / f(4 - i, 4 - i - 1);
    CHECK(fro(img - ratio * f) < 1e-13);
  }
  Mat wx = lusztig_wX(5, 1, kQ);
  CHECK(fro(wx.block(1, 1, 3, 3) - std::pow(kQ, 1.0) * alternating_antidiagonal(3)) < 1e-14);
}

TEST_CASE("coideal generators: explicit forms") {
  // N = 2, t = 0
  auto g2 = coideal_generators(standard_params(2, 1, kQ));
  Mat b1 = e(2, 2, 1) / std::sqrt(kQ) - std::pow(kQ, -2.0) * std::sqrt(kQ) * e(2, 1, 2) *
                                            Mat(Eigen::Vector2cd(1.0 / kQ, kQ).asDiagonal());
  CHECK(fro(g2.B[0] - b1) < 1e-14);

  // C-type, B_p = q^{-1/2} e_{p+1,p} - q^{N/2-p} c_p e_{p+1,N-p+1}
  for (auto [n, p] : {std::pair{3, 1}, {5, 2}, {5, 1}, {6, 2}}) {
    cd cp = 1.3;
    auto t = c_type_params(n, p, kQ, cp);
    auto g = coideal_generators(t);
    for (size_t k = 0; k < g.B.size(); k += 2) {
      int i = g.B_index[k];
      Mat want;
      if (i == p)
        want = e(n, p + 1, p) / std::sqrt(kQ) - std::pow(kQ, n / 2.0 - p) * cp * e(n, p + 1, n - p + 1);
      else if (i < p)
        want = e(n, i + 1, i) / std::sqrt(kQ) - e(n, n - i, n - i + 1) / std::sqrt(kQ);
      else
        continue;
      CHECK(fro(g.B[k] - want) < 1e-13);
    }
  }

  // S-type distinguished generator, N = 4
  cd sp(0, 0.3);
  auto gs = coideal_generators(s_type_params(4, kQ, sp));
  auto u = fundamental(4, kQ);
  Mat kpi = u.K[1].inverse();
  Mat bp = u.F[1] - std::pow(kQ, -2.0) * u.E[1] * kpi + sp * (kpi - eye(4)) / (1.0 / kQ - 1.0);
  CHECK(fro(gs.B[2] - bp) < 1e-13);
}

TEST_CASE("coideal generators: classical limit") {
  // at q = 1 and t = 0, B_i = F_i + θ(F_i) with θ = Ad M
  for (auto [n, p] : {std::pair{2, 1}, {4, 2}, {6, 3}, {3, 1}, {5, 2}, {6, 1}, {7, 2}}) {
    Mat m;
    if (2 * p == n) {
      m = alternating_antidiagonal(n);
    } else {
      m = Mat::Zero(n, n);
      Mat ap = alternating_antidiagonal(p);
      m.block(0, n - p, p, p) = -ap.transpose();
      m.block(p, p, n - 2 * p, n - 2 * p) = eye(n - 2 * p);
      m.block(n - p, 0, p, p) = -ap;
    }
    for (double q : {1.0, 1.0 + 1e-6}) {
      auto g = coideal_generators(standard_params(n, p, q));
      for (size_t k = 0; k < g.B.size(); k += 2) {
        int i = g.B_index[k];
        Mat f = e(n, i + 1, i);
        CHECK(fro(g.B[k] - (f + m * f * m.inverse())) < (q == 1.0 ? 1e-14 : 1e-5));
      }
    }
  }
}

TEST_CASE("coideal parameter validation") {
  CHECK_THROWS_AS(s_type_params(4, kQ, cd(0.3, 0)), DomainError);
  CHECK_NOTHROW(s_type_params(4, kQ, cd(0.3, 0), true));
  CHECK_THROWS_AS(c_type_params(3, 1, kQ, -1.0), DomainError);
  CHECK_THROWS_AS(c_type_params(3, 1, kQ, cd(1, 1)), DomainError);
  CHECK_THROWS_AS(c_type_params(4, 2, kQ, 1.0), ParameterError);
  auto t = standard_params(5, 2, kQ);
  CHECK(std::abs(t.c[1] - 1.0 / kQ) < 1e-15);
  CHECK(std::abs(t.c[2] - std::pow(kQ, -0.5)) < 1e-15);
  CHECK(std::abs(t.c[3] - std::pow(kQ, -0.5)) < 1e-15);
  CHECK(std::abs(standard_params(4, 2, kQ).c[2] - std::pow(kQ, -2.0)) < 1e-15);
  t.c[1] = 2.0;
  CHECK_THROWS_AS(validate_params(t), DomainError);
  auto u = standard_params(5, 2, kQ);
  u.c[3] = 5.0;
  CHECK_THROWS_AS(validate_params(u), DomainError);
  // κ_i² = z_i with phase in [0, π)
  for (int n : {3, 5, 6})
    for (int i = 1; i < n; ++i) {
      cd k = kappa(n, 1, i);
      CHECK(std::abs(k * k - z_factor(n, 1, i)) < 1e-14);
      CHECK(std::arg(k) >= -1e-15);
      CHECK(std::arg(k) < kPi);
    }
}

TEST_CASE("K-matrix: explicit values") {
  auto k2 = solve_kmatrix(standard_params(2, 1, kQ));
  Mat want(2, 2);
  want << 0, -1, 1, 0;
  CHECK(fro(k2.K - want / std::sqrt(kQ)) < 1e-13);

  cd sp(0, 0.3);
  auto t4 = s_type_params(4, kQ, sp);
  auto k4 = solve_kmatrix(t4);
  Mat a2 = alternating_antidiagonal(2);
  Mat blk = Mat::Zero(4, 4);
  blk.block(0, 0, 2, 2) = std::sqrt(kQ) * (kQ + 1) * sp * eye(2);
  blk.block(0, 2, 2, 2) = -a2.transpose();
  blk.block(2, 0, 2, 2) = a2;
  Mat k4want = -std::pow(kQ, 0.25 - 2) * blk;
  CHECK((k4.K - k4want).cwiseAbs().maxCoeff() < 1e-10);

  auto k3 = solve_kmatrix(standard_params(3, 1, kQ));
  cd lam = std::exp(-kI * kPi / 3.0) * std::pow(kQ, 1.0 / 3 - 2);
  cd mu = -std::exp(-kI * kPi / 3.0) * std::pow(kQ, 1.0 / 3 - 1);
  CHECK(std::abs(k3.mudrov.lambda - lam) < 1e-12);
  CHECK(std::abs(k3.mudrov.mu - mu) < 1e-12);
  CHECK(std::abs(k3.K(1, 1) - lam) < 1e-12);
}

TEST_CASE("K-matrix: invariants over a parameter sweep") {
  std::vector<CoidealParams> cases;
  for (int p : {1, 2, 3}) {
    cases.push_back(standard_params(2 * p, p, kQ));
    for (double b : {0.3, -0.7, 1.1}) cases.push_back(s_type_params(2 * p, kQ, cd(0, b)));
  }
  for (auto [n, p] : {std::pair{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}, {6, 2}, {7, 3}}) {
    cases.push_back(standard_params(n, p, kQ));
    for (double c : {0.5, 1.0, 1.7}) cases.push_back(c_type_params(n, p, kQ, c));
  }
  for (double h : {0.02, 0.2}) {
    cases.push_back(s_type_params(4, std::exp(h), cd(0, 0.4)));
    cases.push_back(c_type_params(5, 2, std::exp(h), 0.8));
  }
  for (const auto& t : cases) {
    CAPTURE(t.n);
    CAPTURE(t.p);
    auto kr = solve_kmatrix(t);
    CHECK(kr.commutant_residual <= 1e-10);
    CHECK(kr.reflection_residual <= 1e-10);
    CHECK(kr.closed_form_residual <= 1e-12);
    CHECK(kr.lambda_residual <= 1e-12);
    CHECK(kr.mudrov.constraint_residual <= 1e-12);
    CHECK(std::abs(kr.K(t.n - 1, 0) - kmatrix_closed_n1(t)) < 1e-13);
    CHECK(std::abs(kmatrix_closed_form(t)(t.n - 1, 0) - kmatrix_closed_n1(t)) < 1e-13);
    CHECK(kr.fit.closed_form_residual <= 1e-9);
    CHECK(kr.fit.modulus_residual <= 1e-9);
    CHECK(std::abs(std::pow(kr.fit.g, t.n) - 1.0) < 1e-12);
    CHECK(std::abs(kr.inferred_s_plus_mu.imag()) < 1e-9);
    // μ ∈ hℝ: s+μ - s is small with h
    CHECK(std::abs(kr.inferred_s_plus_mu.real() - kr.inferred_s) < 2.0 * std::log(t.q));
  }
}

TEST_CASE("K-matrix: parameter inference") {
  for (int n : {2, 4, 6}) {
    auto kr = solve_kmatrix(standard_params(n, n / 2, kQ));
    CHECK(std::abs(kr.inferred_s_plus_mu) < 1e-12);
    CHECK(kr.inferred_s == doctest::Approx(0.0));
    CHECK(std::abs(kr.fit.g - ((n / 2 - 1) % 2 ? -1.0 : 1.0)) < 1e-12);
  }
  for (auto [n, p] : {std::pair{3, 1}, {5, 2}, {6, 1}}) {
    auto kr = solve_kmatrix(standard_params(n, p, kQ));
    CHECK(std::abs(kr.inferred_s_plus_mu) < 1e-12);
    CHECK(std::abs(kr.fit.g - 1.0) < 1e-12);
  }
  // C-type closed form (2/π) log c + h/π
  auto kc = solve_kmatrix(c_type_params(5, 2, kQ, 1.7));
  CHECK(std::abs(kc.inferred_s_plus_mu - (2 / kPi * std::log(1.7) + kH / kPi)) < 1e-9);
  CHECK(kc.inferred_s == doctest::Approx(2 / kPi * std::log(1.7)));

  // S-type: closed form with c = 0.3; both signs fit the spectrum
  auto ks = solve_kmatrix(s_type_params(4, kQ, cd(0, 0.3)));
  double a = std::sqrt(kQ) * (kQ + 1) / 2 * 0.3;
  CHECK(std::abs(ks.inferred_s_plus_mu - 2 / kPi * std::log(std::sqrt(1 + a * a) + a)) < 1e-9);
  CHECK(ks.inferred_s == doctest::Approx(2 / kPi * std::asinh(0.3)));
  CHECK(ks.fit.ambiguous);
  CHECK(std::abs(ks.fit.g + 1.0) < 1e-12);
  auto kneg = solve_kmatrix(s_type_params(4, kQ, cd(0, -0.3)));
  CHECK(kneg.inferred_s_plus_mu.real() == doctest::Approx(-ks.inferred_s_plus_mu.real()));

  // Casimir of k acts by p - 1/N and N - p - 1/N on the two blocks
  for (auto [n, p] : {std::pair{4, 2}, {5, 2}, {3, 1}}) {
    Mat m = kz_k_matrix(n, p, 1.0, 0.0, 1.0);
    cd z1 = kI * (1.0 - double(p) / n);
    CHECK(std::abs(m(0, 0) - std::exp(-(p - 1.0 / n) + kPi * z1)) < 1e-12);
    CHECK(std::abs(m(n - 1, n - 1) - std::exp(-(n - p - 1.0 / n) - kPi * kI * double(p) / double(n))) < 1e-12);
  }

  // an out-of-family matrix is rejected
  KMatrixResult bogus = ks;
  bogus.eigenvalues = {1.0, 1.0, 2.0, 2.0};
  CHECK_THROWS_AS(infer_s_mu(bogus, kH), ComparisonError);
}

TEST_CASE("K-matrix: generic complex family") {
  auto t = c_type_params(4, 1, kQ, cd(0.8, 0.3), true);
  auto kr = solve_kmatrix(t);
  CHECK(kr.reflection_residual <= 1e-10);
  CHECK(kr.closed_form_residual <= 1e-12);
  CHECK(kr.fit.closed_form_residual <= 1e-9);
}

TEST_CASE("quasi-K route") {
  auto r2 = quasi_k_in_rep(2, 1, kQ);
  CHECK(fro(r2.X - eye(2)) < 1e-14);
  Mat want(2, 2);
  want << 0, -1, 1, 0;
  CHECK(fro(r2.K - want / std::sqrt(kQ)) < 1e-13);
  for (int n : {4, 6, 8}) {
    auto r = quasi_k_in_rep(n, n / 2, kQ);
    CHECK(r.recursion_residual <= 1e-12);
    CHECK(std::abs(std::abs(r.scalar_vs_commutant) - 1.0) < 1e-12);
    CHECK(r.comparison_residual < 1e-12);
  }
  CHECK_THROWS_AS(quasi_k_in_rep(3, 1, kQ), UnsupportedError);
}

TEST_CASE("sl2 spherical vector") {
  cd c(0.7, 0.2), s(0.3, -0.4);
  auto v0 = sl2_spherical(0, c, s, kQ);
  CHECK(v0.size() == 1);
  CHECK(fro(sl2_B(0, c, s, kQ)) < 1e-15);

  auto v1 = sl2_spherical(1, c, s, kQ);
  cd q2 = q_number(2, kQ);
  CHECK(std::abs(v1(1) - s * (1.0 - kQ * kQ) / (c * kQ * kQ * q2)) < 1e-12);
  CHECK(std::abs(v1(2) - 1.0 / (c * kQ * kQ * q2)) < 1e-12);

  for (int n : {2, 3, 4}) {
    auto v = sl2_spherical(n, c, s, kQ);
    CHECK((sl2_B(n, c, s, kQ) * v).norm() / v.norm() <= 1e-12);
  }
  CHECK(std::abs(q_number(3, kQ) - (kQ * kQ + 1 + 1 / (kQ * kQ))) < 1e-14);
  CHECK_THROWS_AS(sl2_B(-1, c, s, kQ), ParameterError);
}
