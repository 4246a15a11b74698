#include "doctest.h"

#include "qsym/errors.hpp"
#include "qsym/rootdata.hpp"

using namespace qsym;

TEST_CASE("type A form values") {
  auto rs2 = build_type_a(2);
  CHECK(rs2.positive_roots.size() == 1);
  CHECK(pairing(rs2, rs2.simple_roots[0], rs2.simple_roots[0]) == Rat(2));

  auto rs3 = build_type_a(3);
  CHECK(rs3.positive_roots.size() == 3);
  Weight l1{Rat(1), Rat(0), Rat(0)}, l2{Rat(0), Rat(1), Rat(0)};
  CHECK(pairing(rs3, l1, l1) == Rat(2, 3));
  CHECK(pairing(rs3, l1, l2) == Rat(-1, 3));

  // (L_i - L_{i+1}, L_{i+1} - L_{i+2}) expanded by hand: -(L_{i+1},L_{i+1}) + cross terms = -1
  auto rs4 = build_type_a(4);
  CHECK(rs4.positive_roots.size() == 6);
  CHECK(pairing(rs4, rs4.simple_roots[0], rs4.simple_roots[1]) == Rat(-1));
}

TEST_CASE("pairing examples") {
  auto rs = build_type_a(4);
  auto a1 = rs.simple_roots[0];
  CHECK(pairing(rs, a1, coroot(rs, a1)) == Rat(2));
  CHECK(pairing(rs, type_a_vector(4, 1, 4), type_a_vector(4, 2, 3)) == Rat(0));
  CHECK(pairing(rs, a1, Weight(4, Rat(0))) == Rat(0));
  CHECK_THROWS_AS(pairing(rs, a1, Weight(3, Rat(0))), ShapeError);
}

TEST_CASE("invalid dimension") {
  CHECK_THROWS_AS(build_type_a(1), InvalidDimensionError);
  try {
    build_type_a(0);
  } catch (const Error& e) {
    CHECK(e.code() == 10);
  }
}

TEST_CASE("Cartan consistency, positivity and root count") {
  for (int n = 2; n <= 7; ++n) {
    auto rs = build_type_a(n);
    CHECK(cartan_consistent(rs));
    CHECK(form_positive_definite(rs));
    CHECK(static_cast<int>(rs.roots().size()) == n * (n - 1));
    for (const auto& a : rs.roots()) CHECK(pairing(rs, a, a) == Rat(2));
  }
}

TEST_CASE("generic Cartan path") {
  // B2: short roots have square length 2
  auto b2 = build_from_cartan({{2, -2}, {-1, 2}});
  CHECK(b2.positive_roots.size() == 4);
  CHECK(cartan_consistent(b2));
  CHECK(form_positive_definite(b2));
  Rat shortest = pairing(b2, b2.positive_roots[0], b2.positive_roots[0]);
  for (const auto& a : b2.positive_roots) shortest = std::min(shortest, pairing(b2, a, a));
  CHECK(shortest == Rat(2));

  auto g2 = build_from_cartan({{2, -1}, {-3, 2}});
  CHECK(g2.positive_roots.size() == 6);
  CHECK(cartan_consistent(g2));

  auto a3 = build_from_cartan({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  CHECK(a3.positive_roots.size() == 6);

  auto d4 = build_from_cartan({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  CHECK(d4.positive_roots.size() == 12);
  CHECK(form_positive_definite(d4));

  // affine A1 is not of finite type
  CHECK_THROWS_AS(build_from_cartan({{2, -2}, {-2, 2}}), DomainError);
  CHECK_THROWS_AS(build_from_cartan({{2, 1}, {1, 2}}), DomainError);
}

TEST_CASE("root order puts noncompact roots above compact ones") {
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}, {5, 1}, {5, 2}, {6, 2}}) {
    auto rs = build_type_a(n);
    Weight z(n);
    for (int k = 0; k < n; ++k) z[k] = (k < p ? Rat(1) : Rat(0)) - Rat(p, n);
    RootOrder order(rs, z);
    for (const auto& a : rs.positive_roots)
      for (const auto& b : rs.positive_roots) {
        Rat va = order.value(a, 0), vb = order.value(b, 0);
        if (va != Rat(0) && vb == Rat(0)) CHECK(order.greater(a, b));
      }
    for (const auto& a : rs.positive_roots) CHECK(order.compare(a, a) == 0);
  }
  auto rs = build_type_a(3);
  CHECK_THROWS_AS(RootOrder(rs, Weight(3, Rat(0))), ParameterError);
}
