#include "caff/tensors.hpp"

#include "caff/errors.hpp"

namespace caff {

double norm2_lowered(const Vec& t, const Mat& h_inv) {
  return t.dot(h_inv * t);
}

double norm2_lowered(const Mat& t, const Mat& h_inv) {
  return (h_inv * t * h_inv * t.transpose()).trace();
}

double norm2_lowered(const Tensor3& t, const Mat& h_inv) {
  const int n = t.n;
  Tensor3 u(n);  // raise the first index, then the second, then the third
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += h_inv(a, i) * t(i, j, k);
        u(a, j, k) = s;
      }
  Tensor3 w(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += h_inv(b, j) * u(a, j, k);
        w(a, b, k) = s;
      }
  double total = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += h_inv(c, k) * w(a, b, k);
        total += s * t(a, b, c);
      }
  return total;
}

double norm2_lowered(const Tensor4& t, const Mat& h_inv) {
  const int n = t.n;
  Tensor4 u = t;
  // Raise one index at a time.
  for (int idx = 0; idx < 4; ++idx) {
    Tensor4 next(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = 0;
            for (int m = 0; m < n; ++m) {
              switch (idx) {
                case 0: s += h_inv(i, m) * u(m, j, k, l); break;
                case 1: s += h_inv(j, m) * u(i, m, k, l); break;
                case 2: s += h_inv(k, m) * u(i, j, m, l); break;
                default: s += h_inv(l, m) * u(i, j, k, m); break;
              }
            }
            next(i, j, k, l) = s;
          }
    u = next;
  }
  double total = 0;
  for (std::size_t p = 0; p < t.v.size(); ++p) total += t.v[p] * u.v[p];
  return total;
}

Mat frame_from_metric(const Mat& h) {
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) {
    throw NotConvexError("metric is not positive definite");
  }
  const Mat L = llt.matrixL();
  const int n = static_cast<int>(h.rows());
  return L.transpose()
      .triangularView<Eigen::Upper>()
      .solve(Mat::Identity(n, n));
}

Vec to_frame(const Vec& t, const Mat& B) { return B.transpose() * t; }

Mat to_frame(const Mat& t, const Mat& B) { return B.transpose() * t * B; }

Tensor3 to_frame(const Tensor3& t, const Mat& B) {
  const int n = t.n;
  Tensor3 u(n), w(n), r(n);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += B(i, a) * t(i, j, k);
        u(a, j, k) = s;
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += B(j, b) * u(a, j, k);
        w(a, b, k) = s;
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += B(k, c) * w(a, b, k);
        r(a, b, c) = s;
      }
  return r;
}

Tensor4 to_frame(const Tensor4& t, const Mat& B) {
  const int n = t.n;
  Tensor4 u = t;
  for (int idx = 0; idx < 4; ++idx) {
    Tensor4 next(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = 0;
            for (int m = 0; m < n; ++m) {
              switch (idx) {
                case 0: s += B(m, i) * u(m, j, k, l); break;
                case 1: s += B(m, j) * u(i, m, k, l); break;
                case 2: s += B(m, k) * u(i, j, m, l); break;
                default: s += B(m, l) * u(i, j, k, m); break;
              }
            }
            next(i, j, k, l) = s;
          }
    u = next;
  }
  return u;
}

}  // namespace caff
