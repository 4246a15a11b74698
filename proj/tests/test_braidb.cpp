#include "doctest.h"

#include <cmath>
#include <random>

#include "qsym/braidb.hpp"
#include "qsym/errors.hpp"

using namespace qsym;

namespace {

double worst(const std::map<std::string, double>& m) {
  double w = 0;
  for (const auto& [k, v] : m) w = std::max(w, v);
  return w;
}

Mat random_invertible(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(d(gen), d(gen));
  return m + 3.0 * eye(n);
}

const double kH = 0.05;

}  // namespace

TEST_CASE("identity data gives identity generators") {
  BraidData d;
  d.dim_v = 2;
  d.dim_w = 3;
  d.E = eye(6);
  d.R_hat = eye(9);
  for (int n = 1; n <= 3; ++n) {
    auto rep = build_rep(d, n);
    CHECK(rep.dim == 2 * static_cast<int>(std::pow(3, n)));
    CHECK(fro(rep.rho1 - eye(rep.dim)) == 0.0);
    for (const auto& s : rep.sigma) CHECK(fro(s - eye(rep.dim)) == 0.0);
    CHECK(worst(relation_residuals(rep)) == 0.0);
  }
  CHECK(build_rep(d, 3).grouping == "(((V⊗W)⊗W)⊗W)");
  d.psi = [](int) { return eye(5); };
  CHECK_THROWS_AS(build_rep(d, 2), ShapeError);
  d.psi = nullptr;
  d.E = eye(5);
  CHECK_THROWS_AS(build_rep(d, 2), ShapeError);
  d.E = eye(6);
  CHECK_THROWS_AS(build_rep(d, 4), UnsupportedError);
  d.E = Mat::Zero(6, 6);
  CHECK_THROWS_AS(build_rep(d, 2), StructuralError);
}

TEST_CASE("word parsing") {
  auto w = parse_word("r s1^2 s2^-1 r1");
  REQUIRE(w.size() == 4);
  CHECK(w[0] == std::pair{0, 1});
  CHECK(w[1] == std::pair{1, 2});
  CHECK(w[2] == std::pair{2, -1});
  CHECK(w[3] == std::pair{0, 1});
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("x1"), ParameterError);
  CHECK_THROWS_AS(parse_word("s0"), ParameterError);
  CHECK_THROWS_AS(parse_word("s1^0"), ParameterError);
  CHECK_THROWS_AS(parse_word("s1^a"), ParameterError);
}

TEST_CASE("q-side relations") {
  for (auto t : {standard_params(2, 1, std::exp(kH)), standard_params(3, 1, std::exp(kH)),
                 s_type_params(2, std::exp(kH), cd(0, 0.4)), c_type_params(3, 1, std::exp(kH), 1.3)}) {
    auto kr = solve_kmatrix(t);
    for (int n : {2, 3}) {
      if (t.n == 3 && n == 3) continue;
      auto rep = build_rep(qside_data(kr), n);
      for (const auto& [k, v] : relation_residuals(rep)) {
        CAPTURE(k);
        CHECK(v <= 1e-8);
      }
      if (n == 3) CHECK(relation_residuals(rep).size() == 3);
    }
  }
  auto rep = build_rep(qside_data(solve_kmatrix(standard_params(3, 1, std::exp(kH)))), 2);
  CHECK(worst(relation_residuals(rep)) <= 1e-8);
}

TEST_CASE("KZ-side relations and negative control") {
  auto d = kzside_data(2, 1, kH, 0.0, 1.0);
  auto r2 = build_rep(d, 2);
  CHECK(relation_residuals(r2).at("type_b") <= 1e-8);
  auto r3 = build_rep(d, 3);
  for (const auto& [k, v] : relation_residuals(r3)) {
    CAPTURE(k);
    CHECK(v <= 1e-8);
  }
  BraidRep bad = r2;
  bad.sigma[0](0, 1) += 1e-3;
  CHECK(relation_residuals(bad).at("type_b") >= 1e-4);

  // a looser series tolerance shows up in the residuals, a tight one removes it
  auto loose = build_rep(kzside_data(2, 1, kH, 0.3, 1.0, {1e-4, 200}), 3);
  auto tight = build_rep(kzside_data(2, 1, kH, 0.3, 1.0, {1e-12, 200}), 3);
  CHECK(worst(relation_residuals(tight)) <= 1e-10);
  CHECK(worst(relation_residuals(loose)) >= worst(relation_residuals(tight)));
}

TEST_CASE("traces are conjugation invariant") {
  auto rep = build_rep(kzside_data(2, 1, kH, 0.2, 1.0), 2);
  Mat t = random_invertible(rep.dim, 7);
  auto conj = conjugate(rep, t);
  for (const char* w : {"r", "s1", "r s1 r^-1 s1^2", "r^3"}) {
    Word word = parse_word(w);
    CHECK(std::abs(evaluate_word(rep, word).trace() - evaluate_word(conj, word).trace()) < 1e-9);
  }
  // relabeling both W legs by the flip leaves σ_1² traces unchanged
  Mat sw = kron(eye(2), flip(2));
  auto flipped = conjugate(rep, sw);
  Word s2 = parse_word("s1^2");
  CHECK(std::abs(evaluate_word(rep, s2).trace() - evaluate_word(flipped, s2).trace()) < 1e-12);
  CHECK(std::abs(evaluate_word(rep, {}).trace() - double(rep.dim)) < 1e-14);
  CHECK_THROWS_AS(evaluate_word(rep, parse_word("s2")), ParameterError);
}

TEST_CASE("Kohno-Drinfeld comparison") {
  const double q = std::exp(kH);
  std::vector<std::string> w2{"", "r", "s1", "r s1 r s1", "r^-1 s1^2 r^2", "s1^-1 r s1 r^-1"};
  std::vector<std::string> w3 = w2;
  for (const char* x : {"s2", "r s2 s1", "r s1 s2 r s1 s2^-1", "s2 r s1^2 s2 r"}) w3.push_back(x);

  auto base = kohno_drinfeld_compare(standard_params(2, 1, q), {"", "r", "s1", "r s1 r s1"}, 2);
  CHECK(base.max_delta <= 1e-6);
  CHECK(std::abs(base.traces[0].q_side - 8.0) < 1e-14);
  CHECK(base.traces[0].delta == 0.0);

  struct Case {
    CoidealParams t;
    int n;
  };
  std::vector<Case> cases{{standard_params(2, 1, q), 3},        {s_type_params(2, q, cd(0, 0.3)), 3},
                          {standard_params(3, 1, q), 3},        {c_type_params(3, 1, q, 1.4), 2},
                          {s_type_params(4, q, cd(0, -0.5)), 2}, {c_type_params(4, 1, q, 0.7), 2}};
  for (const auto& c : cases) {
    CAPTURE(c.t.n);
    CAPTURE(c.n);
    auto r = kohno_drinfeld_compare(c.t, c.n == 3 ? w3 : w2, c.n);
    CHECK(r.max_delta <= 1e-6);
    CHECK(r.det_residual <= 1e-8);
    CHECK(worst(r.qside_relations) <= 1e-8);
    CHECK(worst(r.kzside_relations) <= 1e-8);
    CHECK(std::abs(r.r_scalar - std::pow(q, 1.0 / c.t.n)) < 1e-15);
  }
}

TEST_CASE("Kohno-Drinfeld: wrong parameters are detected") {
  const double q = std::exp(kH);
  auto t = c_type_params(3, 1, q, 1.4);
  auto kr = solve_kmatrix(t);
  auto qrep = build_rep(qside_data(kr), 2);
  Word w = parse_word("r s1 r s1");
  cd want = evaluate_word(qrep, w).trace();
  auto good = build_rep(kzside_data(3, 1, kH, kr.fit.s_plus_mu, kr.fit.g), 2);
  CHECK(std::abs(evaluate_word(good, w).trace() - want) < 1e-9);
  auto shifted = build_rep(kzside_data(3, 1, kH, kr.fit.s_plus_mu + 0.05, kr.fit.g), 2);
  CHECK(std::abs(evaluate_word(shifted, w).trace() - want) > 1e-4);
  auto rotated = build_rep(kzside_data(3, 1, kH, kr.fit.s_plus_mu, kr.fit.g * std::exp(2.0 * kPi * kI / 3.0)), 2);
  CHECK(std::abs(evaluate_word(rotated, parse_word("r")).trace() - evaluate_word(qrep, parse_word("r")).trace()) >
        1e-4);
}
