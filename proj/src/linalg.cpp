#include "qsym/linalg.hpp"

#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "qsym/errors.hpp"

namespace qsym {

Mat eye(int n) { return Mat::Identity(n, n); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron_all(const std::vector<Mat>& factors) {
  Mat out = Mat::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Mat expm(const Mat& a) { return a.exp(); }

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

double fro(const Mat& a) { return a.norm(); }

Mat null_space(const Mat& m, double rel_tol) {
  if (m.rows() == 0) return eye(static_cast<int>(m.cols()));
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * std::max(smax, 1e-300)) ++rank;
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double distance_to_span(const Vec& x, const Mat& basis) {
  double nx = x.norm();
  if (nx == 0.0) return 0.0;
  if (basis.cols() == 0) return 1.0;
  Eigen::HouseholderQR<Mat> qr(basis);
  Eigen::Index r = std::min(basis.rows(), basis.cols());
  Mat q = qr.householderQ() * Mat::Identity(basis.rows(), r);
  Vec proj = q * (q.adjoint() * x);
  return (x - proj).norm() / nx;
}

Mat permutation_matrix(const std::vector<int>& dims, const std::vector<int>& order) {
  if (dims.size() != order.size()) throw ShapeError("permutation length mismatch");
  const int n = static_cast<int>(dims.size());
  int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims[order[k]];
  Mat p = Mat::Zero(total, total);
  std::vector<int> idx(n, 0);
  for (int old = 0; old < total; ++old) {
    int r = old;
    for (int k = n - 1; k >= 0; --k) {
      idx[k] = r % dims[k];
      r /= dims[k];
    }
    int nw = 0;
    for (int k = 0; k < n; ++k) nw = nw * new_dims[k] + idx[order[k]];
    p(nw, old) = 1.0;
  }
  return p;
}

Mat relabel_legs(const Mat& op, const std::vector<int>& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> reordered(n), inverse(n);
  for (int k = 0; k < n; ++k) {
    reordered[k] = dims[order[k]];
    inverse[order[k]] = k;
  }
  Mat p = permutation_matrix(reordered, inverse);
  return p * op * p.transpose();
}

Vec vec_rowmajor(const Mat& m) {
  Vec v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

Mat unvec_rowmajor(const Vec& v, int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

}  // namespace qsym
