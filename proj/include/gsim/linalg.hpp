#ifndef GSIM_LINALG_HPP
#define GSIM_LINALG_HPP

#include <vector>

#include "gsim/common.hpp"

namespace gsim {

/// Dense row-major matrix, just large enough for the needs of this library
/// (channel matrices, covariance matrices, transform blocks).
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

/// y = M x
void matvec(const Mat& m, VecView x, std::span<double> y);

/// y = M^T x
void matvec_transposed(const Mat& m, VecView x, std::span<double> y);

bool is_symmetric(const Mat& m, double tol);

/// Factor a symmetric positive-semidefinite matrix as K = A A^T using a
/// diagonally pivoted Cholesky. Pivots below -tol * max_diag are rejected as
/// non-PSD; pivots in [-tol*max_diag, 0] are treated as zero (rank deficiency).
/// The returned A is square (k x k) with trailing zero columns when K is
/// rank-deficient.
Mat cholesky_psd(const Mat& k, double tol = 1e-10);

}  // namespace gsim

#endif
