#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qsym/rootdata.hpp"

namespace qsym {

enum class HermitianTag { S, C, NonHermitian };
const char* tag_name(HermitianTag t);

struct SatakeData {
  RootSystem root_system;
  int n = 0;
  int p = 0;
  std::vector<int> X;    // 1-based simple-root indices
  std::vector<int> tau;  // tau[i-1] = image of i, 1-based
  RatMatrix theta;       // Θ on ambient coordinates: (Θw)_k = sum_l theta[k][l] w_l
  HermitianTag tag = HermitianTag::NonHermitian;
  std::vector<int> distinguished;
  std::vector<Weight> cascade;
  Weight z_nu;  // -i Z_ν as a weight-space vector

  bool in_X(int i) const;
};

struct RootPartition {
  std::vector<Weight> P0, C0;
  std::map<int, std::vector<Weight>> Pi, Ci;                  // keyed by i = 1..s
  std::map<std::pair<int, int>, std::vector<Weight>> Pij, Cij;  // keyed by i < j

  size_t total() const;
};

struct NormalizationConstants {
  double a_sigma = 0;
  bool has_z_formula = false;
  Weight z_formula;  // (1/2) sum_j H_{γ_j}, S-type only
  bool z_formula_matches = false;
};

SatakeData build_aiii(int n, int p);

Weight apply_theta(const SatakeData& sd, const Weight& w);
bool is_compact(const SatakeData& sd, const Weight& root);
bool strongly_orthogonal(const RootSystem& rs, const Weight& a, const Weight& b);

std::vector<Weight> cascade(const SatakeData& sd);
RootPartition partition_roots(const SatakeData& sd);
NormalizationConstants normalization_constants(const SatakeData& sd);

// Coefficients c_i of the restriction sum_i c_i γ_i of a weight to the span of the H_{γ_i}.
std::vector<Rat> restriction(const SatakeData& sd, const Weight& w);

// Restrictions of the simple roots outside X, one per τ-orbit, in γ coordinates.
std::vector<std::vector<Rat>> restricted_simple_roots(const SatakeData& sd);
// The expected basis {½(γ_i − γ_{i+1})} ∪ {γ_s} (S) or ∪ {½γ_s} (C), in γ coordinates.
std::vector<std::vector<Rat>> expected_restricted_basis(const SatakeData& sd);

struct SatakeChecks {
  bool theta_involution = false;
  bool theta_fixes_X = false;
  bool theta_is_minus_wX_tau = false;
  bool cascade_strongly_orthogonal = false;
  bool cascade_equal_length = false;
  bool cascade_noncompact = false;
  bool zero_restriction_is_X_span = false;
  bool restricted_basis_ok = false;
  bool distinguished_matches_cascade = false;
  bool all() const;
};
SatakeChecks check_satake(const SatakeData& sd);

}  // namespace qsym
