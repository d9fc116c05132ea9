#pragma once

// Explicit low-order fixtures for the D^3 and D^4 diagonal jet kernels: the
// explicit 3x3/4x4 jet matrices, the congruence matrices X that split them,
// and the surviving diagonal blocks. Frame order (s, d2, d3[, d4]).

#include <Eigen/Dense>
#include <complex>

namespace fixtures {

using Cx = std::complex<double>;

inline Cx cpow(Cx base, double e) { return std::exp(e * std::log(base)); }

inline Eigen::MatrixXcd jk3(double a, double b, double c, Cx z, Cx w) {
  Cx wb = std::conj(w);
  Cx q = 1.0 - z * wb;
  Eigen::MatrixXcd m(3, 3);
  m << q * q, b * z * q, c * z * q,
      b * wb * q, b * (1.0 + b * z * wb), b * c * z * wb,
      c * wb * q, b * c * z * wb, c * (1.0 + c * z * wb);
  return m * cpow(q, -a - b - c - 2.0);
}

inline Eigen::MatrixXcd x3(double b, double c) {
  Eigen::MatrixXcd x(3, 3);
  x << 1, 0, 0,
      0, 1, 1,
      0, -c, b;
  return x;
}

// blocks of x3 * jk3 * x3^adj: a 2x2 order-two jet of the (a, b+c) kernel and
// the 1x1 constant bc(b+c)
inline Eigen::MatrixXcd jk3_block2(double a, double b, double c, Cx z, Cx w) {
  Cx wb = std::conj(w);
  Cx q = 1.0 - z * wb;
  double s = b + c;
  Eigen::MatrixXcd m(2, 2);
  m << q * q, s * z * q,
      s * wb * q, s * (1.0 + s * z * wb);
  return m * cpow(q, -a - b - c - 2.0);
}

inline Cx jk3_block1(double a, double b, double c, Cx z, Cx w) {
  Cx q = 1.0 - z * std::conj(w);
  return b * c * (b + c) * cpow(q, -a - b - c - 2.0);
}

// order-three congruence on D^3 (frame s, d2, d3, d2^2, d2 d3, d3^2)
inline Eigen::MatrixXcd x3_order3(double b, double c) {
  Eigen::MatrixXcd x(6, 6);
  x << 1, 0, 0, 0, 0, 0,
      0, 1, 1, 0, 0, 0,
      0, 0, 0, 1, 2, 1,
      0, -c, b, 0, 0, 0,
      0, 0, 0, -c, b - c, b,
      0, 0, 0, c * (c + 1), -2 * (b + 1) * (c + 1), b * (b + 1);
  return x;
}

inline Eigen::MatrixXcd jk4(double a, double b, double c, double d, Cx z, Cx w) {
  Cx wb = std::conj(w);
  Cx q = 1.0 - z * wb;
  Eigen::MatrixXcd m(4, 4);
  m << q * q, b * z * q, c * z * q, d * z * q,
      b * wb * q, b * (1.0 + b * z * wb), b * c * z * wb, b * d * z * wb,
      c * wb * q, b * c * z * wb, c * (1.0 + c * z * wb), c * d * z * wb,
      d * wb * q, b * d * z * wb, c * d * z * wb, d * (1.0 + d * z * wb);
  return m * cpow(q, -a - b - c - d - 2.0);
}

inline Eigen::MatrixXcd x4(double b, double c, double d) {
  Eigen::MatrixXcd x(4, 4);
  x << 1, 0, 0, 0,
      0, 1, 1, 1,
      0, -(c + d), b, b,
      0, 0, -d, c;
  return x;
}

}  // namespace fixtures
