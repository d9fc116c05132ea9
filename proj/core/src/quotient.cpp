#include "jetlab/quotient.hpp"

#include <cmath>
#include <limits>

#include "jetlab/parallel.hpp"
#include <stdexcept>

#include "jetlab/special.hpp"

namespace jetlab {

int SeriesGram::active_dim() const {
  int total = 0;
  for (int a : active) total += a;
  return total;
}

namespace {

// (s)_n / n! computed incrementally per call site
std::vector<double> binom_series(double s, int maxn) {
  std::vector<double> b(maxn + 1);
  b[0] = 1.0;
  for (int n = 1; n <= maxn; ++n) b[n] = b[n - 1] * (s + n - 1) / n;
  return b;
}

// x-series of d^a/dz^a d^b/du^b (1 - z u)^(-lambda) written as
// z^(b-a) sum_n f_n x^n, x = z u; symmetric in (z, u), so a > b swaps roles.
std::vector<double> factor_series(double lambda, int a, int b, int maxn) {
  int lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> poly(lo + 1);
  for (int t = 0; t <= lo; ++t) {
    poly[t] = binomial(lo, t) * (factorial(hi) / factorial(hi - lo + t)) *
              (pochhammer(lambda, lo) / pochhammer(lambda, lo - t));
  }
  std::vector<double> bs = binom_series(lambda + a + b, maxn);
  std::vector<double> out(maxn + 1, 0.0);
  for (int n = 0; n <= maxn; ++n) {
    for (int t = 0; t <= lo && t <= n; ++t) out[n] += poly[t] * bs[n - t];
  }
  double scale = pochhammer(lambda, hi);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b,
                             int maxn) {
  std::vector<double> out(maxn + 1, 0.0);
  for (int i = 0; i <= maxn; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= maxn; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// x-series of the restricted entry G_{alpha beta}: the product of the factor
// series, plus the count of internally paired excess monomials. A factor with
// z-excess meeting a factor with wbar-excess contributes an extra power of
// x = z wbar, shifting where each coefficient sits.
struct EntrySeries {
  std::vector<double> coeffs;
  int paired = 0;
};

EntrySeries entry_series(const std::vector<double>& weights, const MultiIndex& za,
                         const MultiIndex& wb, int maxn) {
  EntrySeries out;
  out.coeffs = binom_series(weights[0], maxn);
  int zpow = 0, wpow = 0;
  for (std::size_t s = 0; s < za.size(); ++s) {
    out.coeffs = convolve(out.coeffs, factor_series(weights[s + 1], za[s], wb[s], maxn), maxn);
    int e = wb[s] - za[s];
    if (e > 0) zpow += e;
    if (e < 0) wpow -= e;
  }
  out.paired = std::min(zpow, wpow);
  return out;
}

}  // namespace

SeriesGram series_gram(const ProductKernel& k, int order, int degree) {
  int m = k.factors();
  if (order < 1) throw std::invalid_argument("series_gram: order >= 1");
  if (m == 1 && order != 1) throw std::invalid_argument("series_gram: m = 1 needs order 1");
  if (degree < 0) throw std::invalid_argument("series_gram: degree >= 0");
  double stotal = 0.0;
  for (double w : k.weights) stotal += w;
  // coefficient growth ~ degree^(s-1); guard against double overflow
  if ((stotal + 2.0 * (order - 1)) * std::log1p(degree) > 600.0) {
    throw std::invalid_argument("series_gram: truncation too large for double precision");
  }

  SeriesGram g;
  g.index_set = jet_index_set(m - 1, order);
  g.weights = k.weights;
  g.degree = degree;
  int n = g.index_set.size();
  for (const MultiIndex& a : g.index_set.indices) g.grades.push_back(multi_total(a));
  g.active.resize(degree + 1);
  for (int p = 0; p <= degree; ++p) {
    int cnt = 0;
    for (int gi : g.grades) {
      if (gi <= p) ++cnt;
    }
    g.active[p] = cnt;
  }
  g.blocks.assign(degree + 1, Eigen::MatrixXcd::Zero(n, n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (int j = 0; j < n; ++j) {
      EntrySeries e =
          entry_series(g.weights, g.index_set.indices[i], g.index_set.indices[j], degree);
      for (int p = 0; p <= degree; ++p) {
        int nu = p - std::max(g.grades[i], g.grades[j]) - e.paired;
        if (nu >= 0) g.blocks[p](static_cast<int>(i), j) = e.coeffs[nu];
      }
    }
  });
  return g;
}

Eigen::MatrixXcd series_gram_block(const ProductKernel& k, int order, int p, int q) {
  int m = k.factors();
  JetIndexSet a = jet_index_set(m - 1, order);
  int n = a.size();
  int maxn = std::max(p, q);
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int gi = multi_total(a.indices[i]), gj = multi_total(a.indices[j]);
      int zexp = p - gi, wexp = q - gj;
      if (zexp < 0 || wexp < 0) continue;
      // monomials are z^(nu + paired + S+) u^(nu + paired + S-)
      if (zexp - wexp != gj - gi) continue;  // p != q
      EntrySeries e = entry_series(k.weights, a.indices[i], a.indices[j], maxn);
      int nu = std::min(zexp, wexp) - e.paired;
      if (nu >= 0) block(i, j) = e.coeffs[nu];
    }
  }
  return block;
}

QuotientBasis orthonormal_basis(const SeriesGram& g) {
  QuotientBasis b;
  b.index_set = g.index_set;
  b.degree = g.degree;
  b.active = g.active;
  b.smallest_pivot = std::numeric_limits<double>::infinity();
  for (int p = 0; p <= g.degree; ++p) {
    int n = g.active[p];
    Eigen::MatrixXcd blk = g.blocks[p].topLeftCorner(n, n);
    Eigen::LLT<Eigen::MatrixXcd> llt(blk);
    if (llt.info() != Eigen::Success) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk, Eigen::EigenvaluesOnly);
      throw std::runtime_error("orthonormal_basis: lost positive definiteness at degree " +
                               std::to_string(p) +
                               ", smallest eigenvalue " + std::to_string(es.eigenvalues()(0)));
    }
    Eigen::MatrixXcd l = llt.matrixL();
    for (int i = 0; i < n; ++i) b.smallest_pivot = std::min(b.smallest_pivot, l(i, i).real());
    b.chol.push_back(std::move(l));
  }
  return b;
}

Reconstruction quotient_kernel_from_basis(const QuotientBasis& basis, const SeriesGram& g, Cx z,
                                          Cx w, int truncation) {
  if (truncation > basis.degree) {
    throw std::invalid_argument("quotient_kernel_from_basis: truncation beyond basis degree");
  }
  int n = g.index_set.size();
  double r = std::max(std::abs(z), std::abs(w));
  if (!(r < 1.0)) throw std::domain_error("quotient_kernel_from_basis: need |z|, |w| < 1");

  Reconstruction rec;
  rec.matrix = Eigen::MatrixXcd::Zero(n, n);
  double mass = 0.0;
  for (int p = 0; p <= truncation; ++p) {
    int np = basis.active[p];
    Eigen::MatrixXcd vz = Eigen::MatrixXcd::Zero(n, np);
    Eigen::MatrixXcd vw = Eigen::MatrixXcd::Zero(n, np);
    for (int i = 0; i < np; ++i) {
      Cx zp = std::pow(z, p - g.grades[i]);
      Cx wp = std::pow(w, p - g.grades[i]);
      for (int c = 0; c < np; ++c) {
        vz(i, c) = basis.chol[p](i, c) * zp;
        vw(i, c) = basis.chol[p](i, c) * wp;
      }
    }
    Eigen::MatrixXcd term = vz * vw.adjoint();
    rec.matrix += term;
    mass += term.cwiseAbs().maxCoeff();
  }
  rec.rounding_bound = 8.0 * 2.2e-16 * mass;

  // geometric tail: coefficient growth ratio bounded by (S + p)/(p + 1) past
  // the truncation, S = sum of weights + 2(order-1)
  double stotal = 0.0;
  for (double x : g.weights) stotal += x;
  double s = stotal + 2.0 * (g.index_set.order - 1);
  double rho = std::max(1.0, (s + truncation) / (truncation + 1.0));
  double q = rho * r * r;
  if (!(q < 1.0)) {
    throw std::domain_error("quotient_kernel_from_basis: radius too close to 1 for the tail bound");
  }
  double tail_max = 0.0;
  for (int i = 0; i < n; ++i) {
    double di = g.blocks[truncation](i, i).real();
    double ti = di * std::pow(r, 2.0 * (truncation - g.grades[i])) * q / (1.0 - q);
    tail_max = std::max(tail_max, ti);
  }
  rec.tail_bound = tail_max;
  return rec;
}

TruncatedOperator compressed_operator_matrix(const SeriesGram& g) {
  QuotientBasis basis = orthonormal_basis(g);
  TruncatedOperator t;
  t.index_set = g.index_set;
  t.degree = g.degree;
  t.active = g.active;
  int dim = 0;
  for (int p = 0; p <= g.degree; ++p) {
    t.offsets.push_back(dim);
    dim += g.active[p];
  }
  t.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (int p = 0; p < g.degree; ++p) {
    int np = g.active[p], nq = g.active[p + 1];
    // multiplication by the coordinate raises the degree by one and keeps the
    // slot; express the embedded ON vectors in the next degree's ON basis
    Eigen::MatrixXcd embed = Eigen::MatrixXcd::Zero(nq, np);
    embed.topLeftCorner(np, np) = basis.chol[p];
    Eigen::MatrixXcd block =
        basis.chol[p + 1].triangularView<Eigen::Lower>().solve(embed);
    t.matrix.block(t.offsets[p + 1], t.offsets[p], nq, np) = block;
  }
  return t;
}

double check_reducing_projection(const TruncatedOperator& t, const SeriesGram& g,
                                 const Eigen::MatrixXcd& frame_rows,
                                 const std::vector<std::vector<int>>& grouping) {
  QuotientBasis basis = orthonormal_basis(g);
  int n = g.index_set.size();
  if (frame_rows.cols() != n) {
    throw std::invalid_argument("check_reducing_projection: frame row arity mismatch");
  }
  int dim = t.dim();
  double worst = 0.0;
  for (const std::vector<int>& group : grouping) {
    // span of the group's kernel sections, degree-extended: slot beta of row x
    // contributes at graded position (shift + grade(beta), beta)
    std::vector<Eigen::VectorXcd> cols;
    for (int r : group) {
      int maxg = 0;
      for (int i = 0; i < n; ++i) {
        if (frame_rows(r, i) != Cx(0.0, 0.0)) maxg = std::max(maxg, g.grades[i]);
      }
      for (int shift = 0; shift + maxg <= g.degree; ++shift) {
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < n; ++i) {
          if (frame_rows(r, i) == Cx(0.0, 0.0)) continue;
          int p = shift + g.grades[i];
          y(t.offsets[p] + i) = frame_rows(r, i);
        }
        // to orthonormal coordinates: per-degree multiply by chol^*
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        for (int p = 0; p <= g.degree; ++p) {
          int np = g.active[p];
          v.segment(t.offsets[p], np) =
              basis.chol[p].adjoint() * y.segment(t.offsets[p], np);
        }
        cols.push_back(v);
      }
    }
    Eigen::MatrixXcd w(dim, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) w.col(static_cast<int>(c)) = cols[c];
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(w, Eigen::ComputeThinU);
    double thresh = svd.singularValues()(0) * 1e-10;
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > thresh) ++rank;
    }
    Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
    Eigen::MatrixXcd proj = u * u.adjoint();
    Eigen::MatrixXcd comm = proj * t.matrix - t.matrix * proj;
    // truncation corrupts the top degree; exclude its rows and columns
    int cut = t.offsets[g.degree];
    double local = comm.topLeftCorner(cut, cut).cwiseAbs().maxCoeff();
    worst = std::max(worst, local);
  }
  return worst;
}

}  // namespace jetlab
