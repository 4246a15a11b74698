#include "qsym/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>

#include "qsym/braidb.hpp"
#include "qsym/cohoch.hpp"
#include "qsym/errors.hpp"
#include "qsym/kzmono.hpp"
#include "qsym/sln.hpp"
#include "qsym/uqsl.hpp"

namespace qsym {

namespace {

struct Outcome {
  bool passed;
  double measured;
  double threshold;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double max_entry(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Outcome c1_s_type() {
  const double q = std::exp(0.1);
  auto t = s_type_params(4, q, cd(0, 0.3));
  auto kr = solve_kmatrix(t);
  // (-1)^{p-1} q^{1/(2p)-p} [[q^{1/2}(q+1) s_p I_p, -A_p^T], [A_p, 0]]
  const int p = 2;
  Mat a = alternating_antidiagonal(p);
  Mat block = Mat::Zero(4, 4);
  block.topLeftCorner(p, p) = std::sqrt(q) * (q + 1) * t.s_p() * eye(p);
  block.topRightCorner(p, p) = -a.transpose();
  block.bottomLeftCorner(p, p) = a;
  Mat want = -std::pow(q, 1.0 / (2 * p) - p) * block;
  const double entry = max_entry(kr.K - want);
  const double worst = std::max(entry, kr.reflection_residual);
  return {worst <= 1e-10, worst, 1e-10,
          "entrywise " + fmt("%.2e", entry) + ", reflection " + fmt("%.2e", kr.reflection_residual)};
}

Outcome c2_c_type() {
  const double q = std::exp(0.1);
  auto t = c_type_params(3, 1, q, std::pow(q, -0.5));
  auto kr = solve_kmatrix(t);
  const double entry = max_entry(kr.K - kmatrix_closed_form(t));
  const double worst = std::max({entry, kr.lambda_residual, kr.commutant_residual, kr.mudrov.constraint_residual});
  return {worst <= 1e-10, worst, 1e-10,
          "entrywise " + fmt("%.2e", entry) + ", lambda " + fmt("%.2e", kr.lambda_residual) + ", commutant " +
              fmt("%.2e", kr.commutant_residual)};
}

Outcome c3_parameter_formulas() {
  const double q = std::exp(0.05);
  std::vector<CoidealParams> sweep;
  for (double a : {-0.6, -0.2, 0.1, 0.35, 0.8}) sweep.push_back(s_type_params(a < 0 ? 2 : 4, q, cd(0, a)));
  for (double c : {0.4, 0.9, 1.3, 2.0, 3.5}) sweep.push_back(c_type_params(c < 1.5 ? 3 : 5, c < 1.5 ? 1 : 2, q, c));
  double worst = 0;
  for (const auto& t : sweep) {
    auto kr = solve_kmatrix(t);
    worst = std::max(worst, std::abs(kr.inferred_s_plus_mu - closed_form_s_plus_mu(t)));
  }
  double standard = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}, {5, 2}})
    standard = std::max(standard, std::abs(solve_kmatrix(standard_params(n, p, q)).inferred_s_plus_mu));
  const double m = std::max(worst, standard);
  return {m <= 1e-9, m, 1e-9,
          "sweep of 10 (5 S, 5 C) " + fmt("%.2e", worst) + ", t = 0 " + fmt("%.2e", standard)};
}

Outcome c4_first_order() {
  auto pr = realize(2, 1);
  auto v = fundamental_rep(2);
  bool ok = true;
  double worst = 0;
  std::string detail;
  for (double s : {0.0, 0.4}) {
    Mat o = first_order_oracle(pr, {v, v, v}, s);
    const double e2 = fro((psi_kz(pr, {v, v, v}, s, 0.0, 1e-2).psi - eye(8)) / 1e-2 - o);
    const double e3 = fro((psi_kz(pr, {v, v, v}, s, 0.0, 1e-3).psi - eye(8)) / 1e-3 - o);
    const double ratio = e2 / e3;
    ok = ok && ratio >= 5 && ratio <= 20 && e3 <= 10 * 1e-3;
    worst = std::max(worst, e3);
    detail += "s=" + fmt("%g", s) + ": ratio " + fmt("%.3f", ratio) + ", err(1e-3) " + fmt("%.2e", e3) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, worst, 1e-2, detail};
}

Outcome c5_pentagon_hexagon() {
  auto pr = realize(2, 1);
  auto res = identity_residuals(pr, fundamental_rep(2), 0.4, 0.0, 0.05);
  double worst = 0;
  std::string detail;
  for (const char* k : {"mixed_pentagon", "hexagon_1", "hexagon_2", "ribbon_coproduct_1", "ribbon_coproduct_2"}) {
    worst = std::max(worst, res.at(k));
    detail += std::string(k) + " " + fmt("%.1e", res.at(k)) + ", ";
  }
  detail.resize(detail.size() - 2);
  return {worst <= 1e-8, worst, 1e-8, detail};
}

Outcome c6_kohno_drinfeld() {
  auto r = kohno_drinfeld_compare(standard_params(2, 1, std::exp(0.05)), {"r", "s1", "r s1", "r s1 r s1"}, 2);
  return {r.max_delta <= 1e-6, r.max_delta, 1e-6,
          "g = " + fmt("%.6f", r.fit.g.real()) + fmt("%+.6fi", r.fit.g.imag()) + ", s+mu = " +
              fmt("%.3e", std::abs(r.fit.s_plus_mu))};
}

Outcome c7_gamma3() {
  const double h = 0.05;
  auto kr = solve_kmatrix(standard_params(2, 1, std::exp(h)));
  auto qrep = build_rep(qside_data(kr), 3);
  auto krep = build_rep(kzside_data(2, 1, h, kr.fit.s_plus_mu, kr.fit.g), 3);
  double wq = 0, wk = 0;
  for (const auto& [k, v] : relation_residuals(qrep)) wq = std::max(wq, v);
  for (const auto& [k, v] : relation_residuals(krep)) wk = std::max(wk, v);
  const double worst = std::max(wq, wk);
  return {worst <= 1e-8 && qrep.dim == 16 && krep.dim == 16, worst, 1e-8,
          "dim " + std::to_string(qrep.dim) + ", q-side " + fmt("%.1e", wq) + ", KZ side " + fmt("%.1e", wk)};
}

Outcome c8_omega_pairing() {
  double worst = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
    auto pr = realize(n, p);
    const double dim_m = 2.0 * p * (n - p);
    worst = std::max(worst, std::abs(omega_pairing(pr, pr.t_mplus) - kI * dim_m / 2.0));
    worst = std::max(worst, std::abs(omega_pairing(pr, pr.t_mminus) + kI * dim_m / 2.0));
    worst = std::max(worst, std::abs(omega_pairing(pr, pr.t_k)));
  }
  return {worst <= 1e-12, worst, 1e-12, "(2,1), (3,1), (4,2) on t^{m+}, t^{m-}, t^k"};
}

Outcome c9_cayley() {
  double rot = 0, coiso = 0, gen = 0;
  for (auto [n, p] : std::vector<std::pair<int, int>>{{4, 2}, {3, 1}}) {
    auto pr = realize(n, p);
    for (double phi : {0.3, 0.7, 1.0}) {
      rot = std::max(rot, r_rotation_residual(pr, phi));
      coiso = std::max(coiso, coisotropy_residual(pr, phi));
      for (const auto& [k, v] : fix_theta_residuals(pr, phi)) gen = std::max(gen, v);
    }
  }
  const bool ok = rot <= 1e-12 && coiso <= 1e-12 && gen <= 1e-10;
  return {ok, std::max(rot, coiso), 1e-12,
          "rotation " + fmt("%.1e", rot) + ", coisotropy " + fmt("%.1e", coiso) + ", generators " + fmt("%.1e", gen)};
}

Outcome c10_cohomology() {
  long mismatches = 0;
  std::string detail;
  {
    auto cc = build_complex(sl_algebra(2), subalgebra_preset(2, "zero"), 3, 4);
    auto t = cohomology_dims(cc);
    const long want[] = {1, 3, 3, 1};
    for (int n = 0; n <= 3; ++n)
      for (int w = 0; w <= 4; ++w) mismatches += t.dims[n][w] != (w == n ? want[n] : 0);
    detail += "h=0 diagonal (" + std::to_string(t.dims[0][0]) + "," + std::to_string(t.dims[1][1]) + "," +
              std::to_string(t.dims[2][2]) + "," + std::to_string(t.dims[3][3]) + ")";
    mismatches += d_squared_defect(cc);
  }
  {
    auto cc = build_complex(sl_algebra(2), subalgebra_preset(2, "cartan"), 3, 4);
    auto t = cohomology_dims(cc, true);
    mismatches += t.dims[0][0] != 1;
    for (int w = 0; w <= 4; ++w) mismatches += t.dims[1][w] != 0;
    for (int w = 0; w <= 4; ++w) mismatches += t.dims[2][w] != (w == 2 ? 1 : 0);
    detail += "; Cartan invariant H^1 = " + std::to_string(t.dims[1][1]) + ", H^2 = " + std::to_string(t.dims[2][2]);
    mismatches += d_squared_defect(cc);
  }
  return {mismatches == 0, static_cast<double>(mismatches), 0, detail};
}

Outcome c11_spherical() {
  const double q = std::exp(0.1);
  double worst = 0;
  for (auto [c, s] : std::vector<std::pair<cd, cd>>{{cd(0.7, 0.2), cd(0.3, -0.4)}, {1.0, 0.0}, {cd(1.5), cd(0, 0.8)}}) {
    Vec v = sl2_spherical(1, c, s, q);
    const cd q2 = q + 1.0 / q;
    const cd a1 = s * (1.0 - q * q) / (c * q * q * q2);
    const cd a2 = 1.0 / (c * q * q * q2);
    worst = std::max({worst, std::abs(v(0) - 1.0), std::abs(v(1) - a1), std::abs(v(2) - a2)});
  }
  return {worst <= 1e-12, worst, 1e-12, "three (c, s) points at q = e^0.1"};
}

Outcome c12_quasi_k() {
  auto r = quasi_k_in_rep(4, 2, std::exp(0.1));
  const double unimod = std::abs(std::abs(r.scalar_vs_commutant) - 1.0);
  const double worst = std::max(r.comparison_residual, unimod);
  return {worst <= 1e-9, worst, 1e-9,
          "scalar " + fmt("%.12f", r.scalar_vs_commutant.real()) + fmt("%+.12fi", r.scalar_vs_commutant.imag()) +
              ", recursion " + fmt("%.1e", r.recursion_residual)};
}

struct Entry {
  const char* name;
  std::function<Outcome()> fn;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> t{
      {"AIII S-type K-matrix (N=4, p=2)", c1_s_type},
      {"AIII C-type K-matrix (N=3, p=1)", c2_c_type},
      {"s+mu closed forms over a sweep", c3_parameter_formulas},
      {"Psi first-order expansion", c4_first_order},
      {"mixed pentagon, hexagons, ribbon braid", c5_pentagon_hexagon},
      {"Kohno-Drinfeld traces (N=2, n=2)", c6_kohno_drinfeld},
      {"Gamma_3 relations (dim 16)", c7_gamma3},
      {"Omega pairing", c8_omega_pairing},
      {"Cayley rotation, coisotropy, generators", c9_cayley},
      {"co-Hochschild dimensions", c10_cohomology},
      {"sl2 spherical vector (n=1)", c11_spherical},
      {"quasi-K against commutant route", c12_quasi_k},
  };
  return t;
}

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw ParameterError("criterion id must be in 1.." + std::to_string(kCriterionCount));
  const Entry& e = table()[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = e.fn();
    r.passed = o.passed;
    r.measured = o.measured;
    r.threshold = o.threshold;
    r.detail = o.detail;
  } catch (const Error& err) {
    r.passed = false;
    r.detail = std::string(error_kind_name(err.kind())) + ": " + err.what();
  } catch (const std::exception& err) {
    r.passed = false;
    r.detail = err.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(bool parallel) {
  std::vector<CriterionResult> out;
  if (!parallel) {
    for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i));
    return out;
  }
  std::vector<std::future<CriterionResult>> jobs;
  for (int i = 1; i <= kCriterionCount; ++i) jobs.push_back(std::async(std::launch::async, run_criterion, i));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%s] %2d  %-42s measured %.3e  bound %.1e  (%.2fs)  ", r.passed ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.measured, r.threshold, r.seconds);
  return buf + r.detail;
}

}  // namespace qsym
