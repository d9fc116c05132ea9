#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jetlab/jets.hpp"

namespace jetlab {

// Orthogonalizing combination of transverse derivatives for one collapse step:
// sigma_k = sum_j (-1)^j C(k,j) (b)_k(c)_k / ((b)_{k-j}(c)_j) A^(k-j) B^j
// over a direction pair (A, B) carrying weights (b, c).
struct SigmaFrame {
  int k = 0;
  double beta = 0.0, gamma = 0.0;
  std::vector<double> coeffs;  // index j = 0..k, coefficient on A^(k-j) B^j
};

SigmaFrame sigma_frame(int k, double beta, double gamma);

// ||sigma_k(w)||^2 from the Gram pairing (m = 3, transverse pair (d2, d3)).
// w must satisfy w_2 = w_3; w_1 is free.
double sigma_norm_sq(int k, const std::vector<double>& weights, const Point& w);

// Closed forms for diagnostics: the Gram value matches the non-alternating sum;
// the alternating variant is reported alongside, never used.
double sigma_norm_constant(int k, double beta, double gamma);             // k! sum_i C(k,i)(b)_k^2(c)_k^2/((b)_{k-i}(c)_i)
double sigma_norm_constant_alternating(int k, double beta, double gamma); // same with (-1)^i

// max over k != l < n and samples of |<sigma_k, sigma_l>| / (||sigma_k|| ||sigma_l||)
double verify_sigma_orthogonality(int n, const std::vector<double>& weights,
                                  const std::vector<Point>& samples);

struct WilkinsKernel {
  double constant = 1.0;    // C_ell, Gram-derived
  double exp_first = 0.0;   // exponent on (1 - z_1 conj(w_1)), as -exp_first
  double exp_rest = 0.0;    // exponent on the collapsed factor, as -exp_rest
  ProductKernel as_product_kernel() const;  // two-factor kernel on D^2 (without the constant)
};

struct DecompositionNode {
  std::vector<int> ell;  // (l_1, ..., l_{m-2}); empty for m = 2
  int jet_order = 0;     // n - |ell|
  WilkinsKernel kernel;
  double constant_stagewise = 1.0;    // product of non-alternating closed forms
  double constant_alternating = 1.0;      // alternating-sign closed form product (diagnostics)
  std::vector<FrameVector> frame;     // jet_order vectors over the ambient jet index set
};

// Stagewise collapse of the last two transverse slots; nodes in nested order
// (outer index first). m = 2 yields the single trivial node.
std::vector<DecompositionNode> decomposition_tree(int m, int n, const std::vector<double>& weights);

WilkinsKernel wilkins_kernel(int m, int n, const std::vector<int>& ell,
                             const std::vector<double>& weights);

struct CongruenceTransform {
  Eigen::MatrixXcd x;                       // rows = component frame coefficient vectors
  std::vector<std::vector<int>> grouping;   // row indices per component
  std::vector<DecompositionNode> nodes;
  double off_block_residual = 0.0;          // at the probe point
  int worst_row = -1, worst_col = -1;       // offending entry of X G X^*
  double condition_number = 0.0;
};

CongruenceTransform block_diagonalize(int m, int n, const std::vector<double>& weights,
                                      const Point& w);

struct DecompositionCheck {
  double max_cross_residual = 0.0;    // normalized cross-component pairings
  double max_wilkins_residual = 0.0;  // component Gram vs C_ell * Wilkins jet Gram
  bool dims_ok = false;               // sum of jet orders == N
  std::vector<DecompositionNode> nodes;
  std::vector<double> node_residuals;  // per-node kernel-match residual
};

DecompositionCheck verify_orthogonal_decomposition(int m, int n, const std::vector<double>& weights,
                                                   const std::vector<Point>& samples);

}  // namespace jetlab
