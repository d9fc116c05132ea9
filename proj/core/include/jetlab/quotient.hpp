#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jetlab/jets.hpp"

namespace jetlab {

// Power-series Gram of the jet kernel restricted to the full diagonal, graded
// by total degree: block p holds, for slots (alpha, beta), the coefficient of
// z^(p-|alpha|) wbar^(q-|beta|) in the entry G_{alpha beta}. Slots with
// p < |alpha| are structural zeros (their monomial is the zero vector), so the
// active leading principal submatrix of each block is positive definite and
// off-degree blocks vanish identically.
struct SeriesGram {
  JetIndexSet index_set;
  std::vector<double> weights;
  int degree = 0;                         // truncation P
  std::vector<Eigen::MatrixXcd> blocks;   // diagonal blocks, N x N
  std::vector<int> active;                // active dimension per degree
  std::vector<int> grades;                // |alpha| per slot

  int active_dim() const;                 // sum of active
};

// Full-diagonal restriction; m = 1 is the degenerate scalar case (k must be 1).
SeriesGram series_gram(const ProductKernel& k, int order, int degree);

// Off-degree coefficient block (p, q) by the same series expansion; identically
// zero for p != q, kept for the vanishing property test.
Eigen::MatrixXcd series_gram_block(const ProductKernel& k, int order, int p, int q);

struct QuotientBasis {
  JetIndexSet index_set;
  int degree = 0;
  std::vector<int> active;
  std::vector<Eigen::MatrixXcd> chol;  // per-degree lower Cholesky factor (active x active)
  double smallest_pivot = 0.0;
};

// Degree-major Cholesky orthonormalization, positive diagonal convention.
// Basis vector (p, j) has slot coefficients chol[p].col(j), slot alpha carrying
// the monomial z^(p-|alpha|).
QuotientBasis orthonormal_basis(const SeriesGram& g);

struct Reconstruction {
  Eigen::MatrixXcd matrix;      // N x N reconstructed kernel value
  double tail_bound = 0.0;      // rigorous geometric bound on the dropped degrees
  double rounding_bound = 0.0;  // eps * accumulated coefficient mass
};

Reconstruction quotient_kernel_from_basis(const QuotientBasis& basis, const SeriesGram& g, Cx z,
                                          Cx w, int truncation);

// Compression of multiplication by the diagonal coordinate in the orthonormal
// basis; strictly block-subdiagonal in degree, top degree row dropped.
struct TruncatedOperator {
  JetIndexSet index_set;
  int degree = 0;
  std::vector<int> active;
  std::vector<int> offsets;  // row offset of each degree block
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

TruncatedOperator compressed_operator_matrix(const SeriesGram& g);

// Orthogonal projections onto the closed spans of the groups' kernel sections,
// extended degree-wise; returns max over groups of ||PT - TP||_inf with the
// final degree excluded (truncation boundary).
double check_reducing_projection(const TruncatedOperator& t, const SeriesGram& g,
                                 const Eigen::MatrixXcd& frame_rows,
                                 const std::vector<std::vector<int>>& grouping);

}  // namespace jetlab
