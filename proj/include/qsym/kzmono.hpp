#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/sln.hpp"

namespace qsym {

struct KZProblem {
  Mat A_minus1, A_0, A_1;
  double tol = 1e-12;
  int max_order = 200;
};

struct AssociatorResult {
  Mat psi;
  int order_used = 0;
  double tail_estimate = 0;
};

// Solves k X - (A X - X A) = B for a fixed A and varying k, B.
class SylvesterSolver {
 public:
  explicit SylvesterSolver(const Mat& a, double resonance_threshold = 1e-8);
  Mat solve(int k, const Mat& b) const;
  bool uses_eigenbasis() const { return eigen_; }

 private:
  bool eigen_ = true;
  double threshold_;
  Vec d_;
  Mat s_, sinv_;
  Mat q_, t_;  // complex Schur fallback A = Q T Q*
};

AssociatorResult frobenius_monodromy(const KZProblem& prob);

struct KZOptions {
  double tol = 1e-12;
  int max_order = 200;
};

// The three-leg coefficient matrices of the cyclotomic equation.
KZProblem cyclotomic_problem(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu,
                             double h, const KZOptions& opt = {});

AssociatorResult psi_kz(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu, double h,
                        const KZOptions& opt = {});
AssociatorResult phi_kz(const PairRealization& pr, const std::vector<Representation>& reps, double h,
                        const KZOptions& opt = {});
Mat r_kz(const PairRealization& pr, const std::vector<Representation>& reps, double h);

enum class RibbonVariant { Sigma, Plain, NonHermitian };
Mat ribbon_kz(const PairRealization& pr, const std::vector<Representation>& reps, cd s, cd mu, double h,
              cd central_g, RibbonVariant variant);

cd complex_digamma(cd z);
cd complex_trigamma(cd z);

// (1/πi)[log 2 t^u + γ t^m + ψ(½ - is/2) t^{m+} + ψ(½ + is/2) t^{m-}] on legs (1,2).
Mat first_order_oracle(const PairRealization& pr, const std::vector<Representation>& reps, cd s);
// (1/4π)(ψ'(½+is/2) - ψ'(½-is/2)) t^m - (π/4) sech²(πs/2)(t^{m+} - t^{m-}) on legs (1,2).
Mat first_order_oracle_derivative(const PairRealization& pr, const std::vector<Representation>& reps, cd s);

// mixed_pentagon, hexagon_1, hexagon_2, ribbon_coproduct_1, ribbon_coproduct_2, psi_intertwiner
std::map<std::string, double> identity_residuals(const PairRealization& pr, const Representation& v, cd s, cd mu,
                                                 double h, const KZOptions& opt = {});

}  // namespace qsym
