#include "gsim/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gsim {

void matvec(const Mat& m, VecView x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(y.size()) != m.rows)
    throw InvalidInput("matvec: shape mismatch");
  for (int i = 0; i < m.rows; ++i) {
    const double* row = &m.a[static_cast<size_t>(i) * m.cols];
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void matvec_transposed(const Mat& m, VecView x, std::span<double> y) {
  if (static_cast<int>(x.size()) != m.rows || static_cast<int>(y.size()) != m.cols)
    throw InvalidInput("matvec_transposed: shape mismatch");
  std::fill(y.begin(), y.end(), 0.0);
  for (int i = 0; i < m.rows; ++i) {
    const double* row = &m.a[static_cast<size_t>(i) * m.cols];
    const double xi = x[i];
    for (int j = 0; j < m.cols; ++j) y[j] += row[j] * xi;
  }
}

bool is_symmetric(const Mat& m, double tol) {
  if (m.rows != m.cols) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

Mat cholesky_psd(const Mat& k, double tol) {
  const int n = k.rows;
  if (n != k.cols) throw InvalidInput("cholesky_psd: matrix not square");

  // Work on a copy of the residual; pivot on the largest remaining diagonal.
  Mat r = k;
  Mat l(n, n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(k(i, i)));
  const double cutoff = tol * std::max(max_diag, 1.0);

  for (int step = 0; step < n; ++step) {
    int piv = step;
    for (int i = step; i < n; ++i)
      if (r(perm[i], perm[i]) > r(perm[piv], perm[piv])) piv = i;
    std::swap(perm[step], perm[piv]);
    const int p = perm[step];
    const double d = r(p, p);
    if (d < -cutoff) throw InvalidInput("covariance matrix is not positive semidefinite");
    if (d <= cutoff) break;  // remaining block is numerically zero
    const double root = std::sqrt(d);
    l(p, step) = root;
    for (int i = step + 1; i < n; ++i) {
      const int q = perm[i];
      l(q, step) = r(q, p) / root;
    }
    for (int i = step + 1; i < n; ++i) {
      const int q = perm[i];
      for (int j = step + 1; j < n; ++j) {
        const int s = perm[j];
        r(q, s) -= l(q, step) * l(s, step);
      }
    }
  }
  return l;
}

}  // namespace gsim
