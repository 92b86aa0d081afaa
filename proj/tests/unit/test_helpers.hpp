#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

// Dense reference routines used only by tests. They avoid the library's
// code paths so expected values do not inherit its bugs.
namespace testing_ref {

inline Eigen::MatrixXd omega(int n) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    o(2 * j, 2 * j + 1) = 1;
    o(2 * j + 1, 2 * j) = -1;
  }
  return o;
}

/// Plain Gauss elimination determinant with partial pivoting.
inline double det(Eigen::MatrixXd m) {
  const auto n = m.rows();
  double d = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      m.row(p).swap(m.row(k));
      d = -d;
    }
    d *= m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      m.row(i) -= f * m.row(k);
    }
  }
  return d;
}

inline bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

inline bool rel_near(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

inline Eigen::MatrixXd diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d[i++] = x;
  return d.asDiagonal();
}

}  // namespace testing_ref
