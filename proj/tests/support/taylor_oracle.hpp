#pragma once

// Independent coefficient extraction for matrix kernels on the diagonal:
// trapezoid rule on two circles picks out the coefficient of
// z^zdeg wbar^wdeg in G(z, w), entrywise. Spectrally accurate for radii
// well inside the disc; no series algebra shared with the implementation.

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace taylor_oracle {

using Cx = std::complex<double>;

inline Eigen::MatrixXcd coefficient(
    const std::function<Eigen::MatrixXcd(Cx, Cx)>& gram, int rows, int zdeg, int wdeg,
    double radius = 0.35, int nodes = 48) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rows, rows);
  for (int s = 0; s < nodes; ++s) {
    double th = 2.0 * M_PI * s / nodes;
    Cx z = std::polar(radius, th);
    for (int t = 0; t < nodes; ++t) {
      double ph = 2.0 * M_PI * t / nodes;
      Cx w = std::polar(radius, -ph);  // wbar runs over radius*e^{i ph}
      acc += gram(z, w) * std::polar(1.0, -zdeg * th - wdeg * ph);
    }
  }
  return acc / (static_cast<double>(nodes) * nodes * std::pow(radius, zdeg + wdeg));
}

}  // namespace taylor_oracle
