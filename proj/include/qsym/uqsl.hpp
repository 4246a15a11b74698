#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/satake.hpp"

namespace qsym {

// Fundamental representation of U_q(sl_N), q = e^h.
struct UqFundamental {
  int n = 0;
  double q = 1;
  std::vector<Mat> E, F, K;  // index i-1 for i = 1..N-1

  // K_ω e_j = q^{(ω, L_j)}, ω given in L-coordinates (its trace part is ignored).
  Mat K_omega(const std::vector<double>& omega) const;
};

UqFundamental fundamental(int n, double q);
// max over the defining relations (Cartan action, [E_i,F_j], q-Serre, far commutation)
double relations_residual(const UqFundamental& u);

// R = q^{-1/N} (π⊗π)(R_univ); the dropped factor is r_matrix_scalar.
Mat r_matrix(int n, double q);
double r_matrix_scalar(int n, double q);
Mat flip(int n);

// Alternating antidiagonal: A_k[i, k-1-i] = (-1)^i.
Mat alternating_antidiagonal(int k);
Mat lusztig_w0(int n, double q);
Mat lusztig_wX(int n, int p, double q);

// Parameters c_i and s_i indexed 1..N-1 (entry 0 unused).
struct CoidealParams {
  int n = 0, p = 0;
  HermitianTag tag = HermitianTag::S;
  double q = 1;
  std::vector<cd> c, s;
  bool complex_family = false;  // the generic family; skips the reality conditions

  cd c_p() const { return c[p]; }
  cd s_p() const { return s[p]; }
};

CoidealParams standard_params(int n, int p, double q);
// S-type (N = 2p): s_p must be imaginary unless complex_family.
CoidealParams s_type_params(int n, double q, cd s_p, bool complex_family = false);
// C-type (2p < N): c_p > 0 unless complex_family; c_{N-p} = q^{-1} / c_p.
CoidealParams c_type_params(int n, int p, double q, cd c_p, bool complex_family = false);
void validate_params(const CoidealParams& t);

// z_i and κ_i (κ_i² = z_i with phase in [0, 1)·π).
cd z_factor(int n, int p, int i);
cd kappa(int n, int p, int i);

struct CoidealGenerators {
  std::vector<Mat> B;        // B_i and B_i^* for i outside X
  std::vector<int> B_index;  // simple root of each entry of B
  std::vector<Mat> X_part;   // E_i, F_i for i in X
  std::vector<Mat> cartan;   // spanning set of h^θ
  std::vector<Mat> all() const;
};

CoidealGenerators coideal_generators(const CoidealParams& t);

struct MudrovData {
  cd lambda, mu;
  int r_block = 0;
  std::vector<cd> y;  // y_1..y_r then y_{N-r+1}..y_N
  double constraint_residual = 0;  // max |y_i y_{N-i+1} + λμ|
};

struct SMuFit {
  double s = 0;
  cd s_plus_mu;
  cd g;                          // fitted central element, a scalar N-th root of unity
  bool ambiguous = false;        // another sign of s+μ fits the eigenvalues as well
  cd closed_form_s_plus_mu;
  double closed_form_residual = 0;
  double modulus_residual = 0;   // eigenvalue moduli of K against the KZ-side matrix
};

struct KMatrixResult {
  CoidealParams params;
  Mat K;
  MudrovData mudrov;
  std::vector<cd> eigenvalues;
  double inferred_s = 0;
  cd inferred_s_plus_mu;
  SMuFit fit;
  double commutant_residual = 0;
  double reflection_residual = 0;
  double closed_form_residual = 0;  // against the explicit block formula
  double lambda_residual = 0;       // C-type: K_{p+1,p+1} against the closed λ
};

// Explicit block formulas for K.
Mat kmatrix_closed_form(const CoidealParams& t);
cd kmatrix_closed_n1(const CoidealParams& t);

KMatrixResult solve_kmatrix(const CoidealParams& t, double tol = 1e-9);

double commutant_residual(const Mat& K, const CoidealGenerators& g);
// ||K_1 R̂ K_1 R̂ - R̂ K_1 R̂ K_1||, R̂ = ΣR
double reflection_residual(const Mat& K, double q);

// exp(-h C^k + π(1 - iσ) Z) g in the fundamental representation.
Mat kz_k_matrix(int n, int p, double h, cd sigma, cd g);
cd closed_form_s_plus_mu(const CoidealParams& t);

SMuFit infer_s_mu(const KMatrixResult& kr, double h, double rel_tol = 1e-6);

struct QuasiKResult {
  Mat X;                   // π_V of the quasi-K-matrix
  Mat K;                   // X ξ' T_{w0}^{-1}
  double recursion_residual = 0;
  cd scalar_vs_commutant;  // K = scalar · solve_kmatrix(t = 0).K
  double comparison_residual = 0;
};

QuasiKResult quasi_k_in_rep(int n, int p, double q);

// Vector of the (2n+1)-dimensional module (basis F^k ξ) killed by F - cEK^{-1} + s(K^{-1} - 1),
// scaled so its first coefficient is 1.
Vec sl2_spherical(int n, cd c, cd s, double q);
Mat sl2_B(int n, cd c, cd s, double q);
cd q_number(int m, double q);

}  // namespace qsym
