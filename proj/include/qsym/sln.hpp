#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/satake.hpp"

namespace qsym {

// A representation of sl_N, stored by its values on the traceless parts e_ij - δ_ij I/N.
struct Representation {
  int n = 0;
  int dim = 0;
  std::vector<Mat> gens;  // index i*N + j

  Mat operator()(const Mat& x) const;
};

Representation fundamental_rep(int n);
Representation trivial_rep(int n);
Representation tensor_rep(const Representation& a, const Representation& b);
Representation tensor_rep(const std::vector<Representation>& reps);
// max over basis pairs of ||rho([X,Y]) - [rho X, rho Y]||
double homomorphism_residual(const Representation& rep);

// Elements of g⊗g are N^2 x N^2 coefficient matrices C with t = sum C[x,y] e_x ⊗ e_y,
// e_x = e_ij for x = i*N + j.
struct PairRealization {
  int n = 0;
  int p = 0;
  SatakeData sd;
  double a_nu = 0;
  Mat Z;
  Mat adZ;  // on gl_N coordinates
  Mat proj_k, proj_mplus, proj_mminus;
  std::vector<Mat> basis, dual_basis;  // (e_x, e^x) with Tr(e_x e^y) = δ
  Mat t_u, t_k, t_mplus, t_mminus, r;
  Mat theta_conj;  // θ = Ad(theta_conj)

  Mat theta(const Mat& x) const;
  Mat t_m() const { return t_mplus + t_mminus; }
};

PairRealization realize(int n, int p);

// Matrix of Ad(g) on gl_N coordinates.
Mat ad_matrix(const Mat& g);
// Matrix of ad(X) on gl_N coordinates.
Mat ad_of(const Mat& x);
// Element sum_x,y C[x,y] rho(e_x) rho(e_y) of U(g).
Mat casimir(const Mat& coeff, const Representation& rep);

enum class Symbol { TU, TK, TMPlus, TMMinus, R, CasimirK, CasimirU, Z };
Symbol parse_symbol(const std::string& s);
const char* symbol_name(Symbol s);

struct LegTensor {
  std::vector<int> spaces;
  Mat data;

  int total_dim() const;
  // The same operator with tensor position k holding the factor order[k].
  LegTensor relabel(const std::vector<int>& order) const;
};

std::vector<int> rep_dims(const std::vector<Representation>& reps);
Mat embed_one(const std::vector<int>& dims, int leg, const Mat& op);
Mat embed_two(const Mat& coeff, const std::vector<Representation>& reps, int a, int b);

LegTensor build_leg_tensor(const PairRealization& pr, Symbol symbol, const std::vector<Representation>& reps,
                           const std::vector<int>& legs);

Mat cayley(const PairRealization& pr, double phi);
// Orthonormal basis (columns, gl_N coordinates) of k_φ^C = Ad g_{φ-1}(k^C).
Mat kphi_basis(const PairRealization& pr, double phi);

// max deviation of Ad g_φ on x_i, y_i, H_{γ_i} from the closed rotation formulas
double cayley_lemma_residual(const PairRealization& pr, double phi);
double r_rotation_residual(const PairRealization& pr, double phi);
// norm of δ_r(X) projected orthogonally to k_φ⊗g + g⊗k_φ
double cobracket_offspace_residual(const PairRealization& pr, double phi, const Mat& x);
double coisotropy_residual(const PairRealization& pr, double phi);
cd omega_pairing(const PairRealization& pr, const Mat& coeff);

// Distances of the Letzter-type generators of k_φ^C to the subspace, keyed by a short label.
std::map<std::string, double> fix_theta_residuals(const PairRealization& pr, double phi);

}  // namespace qsym
