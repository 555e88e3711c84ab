#ifndef CAFF_TENSORS_HPP
#define CAFF_TENSORS_HPP

#include <Eigen/Dense>
#include <vector>

namespace caff {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Dense rank-3 tensor, row-major.
struct Tensor3 {
  int n = 0;
  std::vector<double> v;

  Tensor3() = default;
  explicit Tensor3(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_) {}
  double operator()(int i, int j, int k) const { return v[(i * n + j) * n + k]; }
  double& operator()(int i, int j, int k) { return v[(i * n + j) * n + k]; }
};

// Dense rank-4 tensor, row-major.
struct Tensor4 {
  int n = 0;
  std::vector<double> v;

  Tensor4() = default;
  explicit Tensor4(int n_)
      : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_) {}
  double operator()(int i, int j, int k, int l) const {
    return v[((i * n + j) * n + k) * n + l];
  }
  double& operator()(int i, int j, int k, int l) {
    return v[((i * n + j) * n + k) * n + l];
  }
};

// Squared h-norm of fully lowered tensors: every index contracted with
// the inverse metric.
double norm2_lowered(const Vec& t, const Mat& h_inv);
double norm2_lowered(const Mat& t, const Mat& h_inv);
double norm2_lowered(const Tensor3& t, const Mat& h_inv);
double norm2_lowered(const Tensor4& t, const Mat& h_inv);

// Basis matrix B (columns = frame vectors in coordinates) with
// B^T h B = I, from the Cholesky factor of h: B = L^{-T}, upper
// triangular. B^{-1} = L^T.
Mat frame_from_metric(const Mat& h);

// Frame components of fully lowered tensors: contract every index with B.
Vec to_frame(const Vec& t, const Mat& B);
Mat to_frame(const Mat& t, const Mat& B);
Tensor3 to_frame(const Tensor3& t, const Mat& B);
Tensor4 to_frame(const Tensor4& t, const Mat& B);

}  // namespace caff

#endif  // CAFF_TENSORS_HPP
