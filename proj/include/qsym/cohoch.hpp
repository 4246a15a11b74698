#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qsym {

using SparseVec = std::vector<std::pair<int, mpq_class>>;  // sorted by index, no zero entries

// Finite-dimensional Lie algebra over Q: [x_i, x_j] = Σ_k f[(i*dim + j)*dim + k] x_k.
struct LieAlgebra {
  std::string name;
  int dim = 0;
  std::vector<std::string> basis_names;
  std::vector<mpq_class> f;

  const mpq_class& c(int i, int j, int k) const { return f[(i * dim + j) * dim + k]; }
  std::vector<mpq_class> bracket(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;
};

// sl_N with basis E_ij (i ≠ j, row-major) followed by H_k = E_kk - E_{k+1,k+1}.
LieAlgebra sl_algebra(int n);
// Subalgebra presets inside sl_N, as coordinate rows: "zero", "cartan", "so" (X = -X^T).
std::vector<std::vector<mpq_class>> subalgebra_preset(int n, const std::string& which);

// Max of |f_ijk + f_jik| and the Jacobi identity, exactly; 0 means a Lie algebra.
mpq_class lie_axiom_defect(const LieAlgebra& g);

struct BidegreeBasis {
  // Each element is leg 0 exponents (h_dim entries) then n blocks of g_dim exponents.
  std::vector<std::vector<int>> monomials;
  std::map<std::vector<int>, int> index;
};

struct CochainComplex {
  LieAlgebra g;
  std::vector<std::vector<mpq_class>> h_basis;
  int g_dim = 0, h_dim = 0;
  int max_degree = 0, max_weight = 0;
  std::vector<std::vector<BidegreeBasis>> bases;  // [n][w], n = 0 … max_degree + 1
  // d: (n, w) → (n+1, w) as sparse columns, one per source basis element; n = 0 … max_degree
  std::vector<std::vector<std::vector<SparseVec>>> d;
  // ad of the k-th h basis element in h coordinates: ad_w[k][i] is [u_k, u_i]
  std::vector<std::vector<std::vector<mpq_class>>> ad_w;
  // ad of the k-th h basis element on g: ad_v[k][j] is [u_k, x_j]
  std::vector<std::vector<std::vector<mpq_class>>> ad_v;

  int dim(int n, int w) const { return static_cast<int>(bases[n][w].monomials.size()); }
};

CochainComplex build_complex(const LieAlgebra& g, const std::vector<std::vector<mpq_class>>& h_basis,
                             int max_degree = 3, int max_weight = 4);

SparseVec apply_d(const CochainComplex& cc, int n, int w, const SparseVec& v);
// Diagonal action of the k-th h basis element on bidegree (n, w).
SparseVec apply_h(const CochainComplex& cc, int n, int w, int k, const SparseVec& v);

// Number of nonzero entries of d∘d over all bidegrees with both maps built.
long d_squared_defect(const CochainComplex& cc);

// Exact rank by fraction-free integer elimination (vectors are cleared of denominators first).
int exact_rank(const std::vector<SparseVec>& vectors);
// Kernel of v ↦ Σ_j c_j cols_j, as integer coefficient vectors over the column index.
std::vector<SparseVec> exact_kernel(const std::vector<SparseVec>& cols);

// Basis of the h-invariants in bidegree (n, w).
std::vector<SparseVec> invariant_basis(const CochainComplex& cc, int n, int w);

struct CohomologyTable {
  bool invariant = false;
  int max_degree = 0, max_weight = 0;
  std::vector<std::vector<long>> cochains;  // [n][w] dimension of the (sub)complex
  std::vector<std::vector<long>> rank_out;  // [n][w] rank of d out of (n, w)
  std::vector<std::vector<long>> dims;      // [n][w] dim H^{n,w}

  // Σ_n (-1)^n (dim C^{n,w} - dim H^{n,w}) + (-1)^D rank d_D; zero when the ranks are consistent.
  long euler_defect(int w) const;
};

CohomologyTable cohomology_dims(const CochainComplex& cc, bool invariant = false);

// dim ⋀^n(g/h), and its h-invariant part computed on the exterior algebra directly.
long wedge_dim(const CochainComplex& cc, int n);
long invariant_wedge_dim(const CochainComplex& cc, int n);

// The cochain 1 ⊗ X_1 ⊗ … ⊗ X_n, X_i given in g coordinates.
SparseVec wedge_cocycle(const CochainComplex& cc, const std::vector<std::vector<mpq_class>>& xs);
// Whether v in bidegree (n, w) lies in the image of d from (n-1, w).
bool is_coboundary(const CochainComplex& cc, int n, int w, const SparseVec& v);

}  // namespace qsym
