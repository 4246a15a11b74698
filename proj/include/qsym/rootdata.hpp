#pragma once

#include <vector>

#include <boost/rational.hpp>

namespace qsym {

using Rat = boost::rational<long long>;
using Weight = std::vector<Rat>;
using RatMatrix = std::vector<std::vector<Rat>>;

// A root system given by its Cartan matrix. Type A_{N-1} uses the L_1..L_N
// coordinates; any other Cartan matrix uses the simple-root basis.
struct RootSystem {
  int rank = 0;
  bool type_a = false;
  int ambient_dim = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<Weight> simple_roots;
  RatMatrix form;  // Gram matrix of (.,.) in ambient coordinates
  std::vector<Rat> d;
  std::vector<Weight> positive_roots;

  std::vector<Weight> roots() const;  // positive then negative
};

RootSystem build_type_a(int n);
RootSystem build_from_cartan(const std::vector<std::vector<int>>& cartan);

Rat pairing(const RootSystem& rs, const Weight& a, const Weight& b);
Weight coroot(const RootSystem& rs, const Weight& a);

Weight add(const Weight& a, const Weight& b);
Weight sub(const Weight& a, const Weight& b);
Weight scale(const Rat& c, const Weight& a);
bool is_zero(const Weight& a);
Weight type_a_vector(int n, int i, int j);  // L_i - L_j, 1-based

bool is_root(const RootSystem& rs, const Weight& a);

// Exact checks of the defining invariants.
bool cartan_consistent(const RootSystem& rs);
bool form_positive_definite(const RootSystem& rs);

// Lexicographic order: roots compared by their values on first_vector, then on the
// coordinate unit vectors.
class RootOrder {
 public:
  RootOrder(const RootSystem& rs, const Weight& first_vector);
  const Weight& first_vector() const { return basis_.front(); }
  // Sign of a - b in the order: -1, 0 or 1.
  int compare(const Weight& a, const Weight& b) const;
  bool greater(const Weight& a, const Weight& b) const { return compare(a, b) > 0; }
  Rat value(const Weight& a, int k) const;

 private:
  std::vector<Weight> basis_;
};

}  // namespace qsym
