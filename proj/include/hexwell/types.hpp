#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hexwell {

using Index = Eigen::Index;

using Vector2d = Eigen::Vector2d;
using Vector2cd = Eigen::Vector2cd;
using Matrix2d = Eigen::Matrix2d;
using Matrix2cd = Eigen::Matrix2cd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;
using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;

using complexd = std::complex<double>;

// Integer coefficient pair (m1, m2) for lattice combinations m1*a + m2*b.
struct Index2 {
  int m1 = 0;
  int m2 = 0;

  friend bool operator==(const Index2& a, const Index2& b) {
    return a.m1 == b.m1 && a.m2 == b.m2;
  }
  friend bool operator<(const Index2& a, const Index2& b) {
    if (a.m1 != b.m1) return a.m1 < b.m1;
    return a.m2 < b.m2;
  }
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace hexwell
