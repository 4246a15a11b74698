#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qsym {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

Mat eye(int n);
Mat kron(const Mat& a, const Mat& b);
Mat kron_all(const std::vector<Mat>& factors);
Mat expm(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);

// Frobenius norm; every residual in the library is measured with it.
double fro(const Mat& a);

// Orthonormal basis (columns) of the kernel of m; singular values <= rel_tol * s_max count as zero.
Mat null_space(const Mat& m, double rel_tol = 1e-10);

// Relative distance ||x - P x|| / ||x|| from x to the column span of basis.
double distance_to_span(const Vec& x, const Mat& basis);

// Matrix of the leg permutation: new tensor position k holds old factor order[k].
Mat permutation_matrix(const std::vector<int>& dims, const std::vector<int>& order);

// An operator given on the tensor factors reordered as `order` (position k = physical factor order[k]),
// transported to the physical factor ordering.
Mat relabel_legs(const Mat& op, const std::vector<int>& dims, const std::vector<int>& order);

// vec in row-major order, matching the e_ij -> i*N+j indexing used throughout.
Vec vec_rowmajor(const Mat& m);
Mat unvec_rowmajor(const Vec& v, int rows, int cols);

}  // namespace qsym
