#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qsym/kzmono.hpp"
#include "qsym/linalg.hpp"
#include "qsym/uqsl.hpp"

namespace qsym {

// Input quadruple on V ⊗ W^{⊗n} with the parenthesization ((V⊗W)⊗W)⊗W.
struct BraidData {
  int dim_v = 0, dim_w = 0;
  Mat E;      // ribbon braid on V ⊗ W
  Mat R_hat;  // braiding ΣR on W ⊗ W
  // Ψ on (V ⊗ W^{⊗(i-1)}) ⊗ W ⊗ W, used by σ_i; an empty function means Ψ = 1
  std::function<Mat(int i)> psi;
};

struct BraidRep {
  int n = 0;
  int dim = 0;
  Mat rho1;
  std::vector<Mat> sigma;  // σ_1 … σ_{n-1}
  std::string grouping;
};

BraidRep build_rep(const BraidData& data, int n);
BraidRep conjugate(const BraidRep& rep, const Mat& t);

// commute_i_j, braid_i_j, rho_sigma_i, type_b
std::map<std::string, double> relation_residuals(const BraidRep& rep);

// Word tokens: r (ρ_1), s<i> (σ_i), each optionally followed by ^k with k a nonzero integer.
using Word = std::vector<std::pair<int, int>>;  // (generator, power); generator 0 is ρ_1
Word parse_word(const std::string& text);
Mat evaluate_word(const BraidRep& rep, const Word& w);

// Quantum-group side: E = R_21 (1 ⊗ K) R and ΣR with the universal normalization q^{1/N} reinstated.
BraidData qside_data(const KMatrixResult& kr);
// KZ side: E'' g from the fitted (s+μ, g), R_KZ = exp(-h t^u) and Ψ_KZ.
BraidData kzside_data(int n, int p, double h, cd s_plus_mu, cd g, const KZOptions& opt = {});

struct WordTrace {
  std::string word;
  cd q_side, kz_side;
  double delta = 0;
};

struct KohnoDrinfeldResult {
  SMuFit fit;
  std::vector<WordTrace> traces;
  double max_delta = 0;
  double det_residual = 0;  // |det ρ_1(q) - det ρ_1(KZ)|
  double r_scalar = 0;      // q^{1/N} reinstated in R
  std::map<std::string, double> qside_relations, kzside_relations;
};

KohnoDrinfeldResult kohno_drinfeld_compare(const CoidealParams& t, const std::vector<std::string>& words, int n,
                                           const KZOptions& opt = {});

}  // namespace qsym
