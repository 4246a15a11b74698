#include "doctest.h"

#include <gmpxx.h>

#include "qsym/cohoch.hpp"
#include "qsym/errors.hpp"

using namespace qsym;

namespace {

using QVec = std::vector<mpq_class>;

QVec unit(int dim, int i) {
  QVec v(dim, 0);
  v[i] = 1;
  return v;
}

long monomial_count(int vars, int degree) {
  // C(degree + vars - 1, degree), and 1 for degree 0
  if (degree == 0) return 1;
  if (vars == 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), degree + vars - 1, degree);
  return r.get_si();
}

bool equal(const SparseVec& a, const SparseVec& b) { return a == b; }

}  // namespace

TEST_CASE("sl_N structure constants") {
  auto g2 = sl_algebra(2);
  auto g3 = sl_algebra(3);
  CHECK(g2.dim == 3);
  CHECK(g3.dim == 8);
  CHECK(lie_axiom_defect(g2) == 0);
  CHECK(lie_axiom_defect(g3) == 0);
  // basis E12, E21, H1
  CHECK(g2.basis_names == std::vector<std::string>{"E12", "E21", "H1"});
  CHECK(g2.c(2, 0, 0) == 2);
  CHECK(g2.c(2, 1, 1) == -2);
  CHECK(g2.c(0, 1, 2) == 1);
  auto bad = g2;
  bad.f[(0 * 3 + 1) * 3 + 2] = 2;
  CHECK(lie_axiom_defect(bad) > 0);
  CHECK_THROWS_AS(build_complex(bad, {}, 1, 1), DomainError);
  CHECK_THROWS_AS(sl_algebra(1), InvalidDimensionError);
}

TEST_CASE("bidegree bases count compositions") {
  auto g = sl_algebra(2);
  for (const char* h : {"zero", "cartan", "so"}) {
    auto cc = build_complex(g, subalgebra_preset(2, h), 3, 4);
    for (int n = 0; n <= 4; ++n)
      for (int w = 0; w <= 4; ++w) {
        CAPTURE(n);
        CAPTURE(w);
        CHECK(cc.dim(n, w) == monomial_count(cc.h_dim + n * cc.g_dim, w));
      }
  }
  auto cc = build_complex(g, {}, 1, 1);
  CHECK(cc.dim(1, 1) == 3);
  CHECK(cc.dim(0, 1) == 0);
  CHECK(cc.dim(0, 0) == 1);
  CHECK(cc.dim(2, 0) == 1);
}

TEST_CASE("d squared vanishes and d is h-equivariant") {
  auto g2 = sl_algebra(2);
  for (const char* h : {"zero", "cartan", "so"}) {
    auto cc = build_complex(g2, subalgebra_preset(2, h), 3, 4);
    CHECK(d_squared_defect(cc) == 0);
    for (int n = 0; n <= 2; ++n)
      for (int w = 0; w <= 3; ++w)
        for (int k = 0; k < cc.h_dim; ++k)
          for (int j = 0; j < cc.dim(n, w); j += 3) {
            SparseVec e{{j, mpq_class(1)}};
            CHECK(equal(apply_d(cc, n, w, apply_h(cc, n, w, k, e)), apply_h(cc, n + 1, w, k, apply_d(cc, n, w, e))));
          }
  }
  auto g3 = sl_algebra(3);
  for (const char* h : {"cartan", "so"}) {
    auto cc = build_complex(g3, subalgebra_preset(3, h), 2, 2);
    CHECK(d_squared_defect(cc) == 0);
  }
}

TEST_CASE("d in degree zero") {
  auto cc = build_complex(sl_algebra(2), {}, 1, 1);
  // dT = T_{0,1} - T ⊗ 1 vanishes on the unit and nowhere else
  CHECK(cc.d[0][0][0].empty());
  auto cc2 = build_complex(sl_algebra(2), subalgebra_preset(2, "cartan"), 1, 2);
  // d(H) = H ⊗ 1 + 1 ⊗ H - H ⊗ 1 = 1 ⊗ H
  const auto& dh = cc2.d[0][1][0];
  REQUIRE(dh.size() == 1);
  CHECK(dh[0].second == 1);
  std::vector<int> key{0, 0, 0, 1};
  CHECK(cc2.bases[1][1].monomials[dh[0].first] == key);
}

TEST_CASE("sl2 with h = 0: cohomology is the exterior algebra") {
  auto cc = build_complex(sl_algebra(2), subalgebra_preset(2, "zero"), 3, 4);
  auto t = cohomology_dims(cc);
  const long want[] = {1, 3, 3, 1};
  for (int n = 0; n <= 3; ++n)
    for (int w = 0; w <= 4; ++w) {
      CAPTURE(n);
      CAPTURE(w);
      CHECK(t.dims[n][w] == (w == n ? want[n] : 0));
    }
  for (int w = 0; w <= 4; ++w) CHECK(t.euler_defect(w) == 0);
  // invariant flag with h = 0 changes nothing
  CHECK(cohomology_dims(cc, true).dims == t.dims);
}

TEST_CASE("sl2 over its Cartan and over so2") {
  for (const char* h : {"cartan", "so"}) {
    CAPTURE(h);
    auto cc = build_complex(sl_algebra(2), subalgebra_preset(2, h), 3, 4);
    auto full = cohomology_dims(cc);
    auto inv = cohomology_dims(cc, true);
    for (int n = 0; n <= 3; ++n)
      for (int w = 0; w <= 4; ++w) {
        CAPTURE(n);
        CAPTURE(w);
        CHECK(full.dims[n][w] == (w == n ? wedge_dim(cc, n) : 0));
        CHECK(inv.dims[n][w] == (w == n ? invariant_wedge_dim(cc, n) : 0));
        CHECK(inv.cochains[n][w] <= full.cochains[n][w]);
      }
    for (int n = 0; n <= 2; ++n)
      for (int w = 0; w <= 3; ++w)
        for (const auto& v : invariant_basis(cc, n, w))
          for (int k = 0; k < cc.h_dim; ++k) CHECK(apply_h(cc, n, w, k, v).empty());
    CHECK(inv.dims[0][0] == 1);
    CHECK(inv.dims[1][1] == 0);
    CHECK(inv.dims[2][2] == 1);
    CHECK(full.dims[1][1] == 2);
    for (int w = 0; w <= 4; ++w) {
      CHECK(full.euler_defect(w) == 0);
      CHECK(inv.euler_defect(w) == 0);
    }
  }
}

TEST_CASE("sl3 at low bidegrees") {
  auto g = sl_algebra(3);
  struct Case {
    const char* h;
    std::vector<long> full, inv;
  };
  for (const auto& c : std::vector<Case>{{"zero", {1, 8, 28}, {1, 8, 28}},
                                         {"cartan", {1, 6, 15}, {1, 0, 3}},
                                         {"so", {1, 5, 10}, {1, 0, 0}}}) {
    CAPTURE(c.h);
    auto cc = build_complex(g, subalgebra_preset(3, c.h), 2, 2);
    auto full = cohomology_dims(cc);
    auto inv = cohomology_dims(cc, true);
    for (int n = 0; n <= 2; ++n)
      for (int w = 0; w <= 2; ++w) {
        CAPTURE(n);
        CAPTURE(w);
        CHECK(full.dims[n][w] == (w == n ? c.full[n] : 0));
        CHECK(inv.dims[n][w] == (w == n ? c.inv[n] : 0));
        if (w == n) {
          CHECK(wedge_dim(cc, n) == c.full[n]);
          CHECK(invariant_wedge_dim(cc, n) == c.inv[n]);
        }
      }
  }
}

TEST_CASE("wedge cocycles") {
  auto g = sl_algebra(2);
  const int E = 0, F = 1, H = 2;
  auto zero = build_complex(g, {}, 3, 3);
  auto cartan = build_complex(g, subalgebra_preset(2, "cartan"), 3, 3);
  for (const auto* cc : {&zero, &cartan}) {
    for (const auto& xs : std::vector<std::vector<QVec>>{{unit(3, E)},
                                                          {unit(3, E), unit(3, F)},
                                                          {unit(3, E), unit(3, E)},
                                                          {unit(3, H), unit(3, E)},
                                                          {unit(3, E), unit(3, F), unit(3, H)}}) {
      const int n = static_cast<int>(xs.size());
      auto v = wedge_cocycle(*cc, xs);
      CHECK(apply_d(*cc, n, n, v).empty());
    }
  }
  auto nonzero = [](const CochainComplex& cc, const std::vector<QVec>& xs) {
    return !is_coboundary(cc, static_cast<int>(xs.size()), static_cast<int>(xs.size()), wedge_cocycle(cc, xs));
  };
  CHECK(nonzero(zero, {unit(3, E)}));
  CHECK(nonzero(zero, {unit(3, E), unit(3, F)}));
  CHECK_FALSE(nonzero(zero, {unit(3, E), unit(3, E)}));
  CHECK(nonzero(zero, {unit(3, E), unit(3, F), unit(3, H)}));
  // antisymmetry of the class: X⊗Y + Y⊗X is exact
  auto xy = wedge_cocycle(zero, {unit(3, E), unit(3, H)});
  auto yx = wedge_cocycle(zero, {unit(3, H), unit(3, E)});
  SparseVec sum = xy;
  sum.insert(sum.end(), yx.begin(), yx.end());
  std::sort(sum.begin(), sum.end());
  CHECK(is_coboundary(zero, 2, 2, sum));
  CHECK_FALSE(nonzero(cartan, {unit(3, H)}));
  CHECK(nonzero(cartan, {unit(3, E)}));
  CHECK(nonzero(cartan, {unit(3, E), unit(3, F)}));
  CHECK_FALSE(nonzero(cartan, {unit(3, E), unit(3, F), unit(3, H)}));
}

TEST_CASE("exact rank and kernel") {
  // rows of a rank-2 rational matrix
  std::vector<SparseVec> v{{{0, mpq_class(1, 2)}, {1, mpq_class(1, 3)}},
                           {{0, mpq_class(3)}, {1, mpq_class(2)}},
                           {{1, mpq_class(1, 7)}, {2, mpq_class(5)}}};
  CHECK(exact_rank(v) == 2);
  auto k = exact_kernel(v);
  REQUIRE(k.size() == 1);
  // column 1 is six times column 0
  REQUIRE(k[0].size() == 2);
  CHECK(k[0][0].second == -6 * k[0][1].second);
  std::vector<SparseVec> cols{{{0, mpq_class(2, 3)}}, {{0, mpq_class(-5, 4)}}, {{1, mpq_class(1, 9)}}};
  auto kc = exact_kernel(cols);
  REQUIRE(kc.size() == 1);
  mpq_class s0 = 0;
  for (const auto& [j, c] : kc[0]) s0 += c * cols[j][0].second * (j < 2 ? 1 : 0);
  CHECK(s0 == 0);
  CHECK(exact_rank({}) == 0);
  CHECK(exact_kernel({{}, {}}).size() == 2);
}

TEST_CASE("argument validation") {
  auto g = sl_algebra(2);
  CHECK_THROWS_AS(build_complex(g, {unit(3, 0), unit(3, 1)}, 2, 2), DomainError);
  CHECK_THROWS_AS(build_complex(g, {unit(3, 0), unit(3, 0)}, 2, 2), DomainError);
  CHECK_THROWS_AS(build_complex(g, {QVec(2, 0)}, 2, 2), ShapeError);
  CHECK_THROWS_AS(build_complex(g, {}, 0, 2), ParameterError);
  CHECK_THROWS_AS(build_complex(g, {}, 2, 0), ParameterError);
  CHECK_THROWS_AS(subalgebra_preset(2, "levi"), ParameterError);
  // the Borel subalgebra is closed
  auto cc = build_complex(g, {unit(3, 0), unit(3, 2)}, 2, 2);
  auto t = cohomology_dims(cc);
  CHECK(t.dims[1][1] == 1);
  CHECK(t.dims[2][2] == 0);
  CHECK(t.dims[0][0] == 1);
}
