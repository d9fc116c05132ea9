#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "jetlab/jets.hpp"

namespace jetlab {

// g(z) = e^(i theta) (z - a) / (1 - conj(a) z), |a| < 1, carried as the
// SU(1,1) element [[alpha, beta], [conj(beta), conj(alpha)]] acting by
// g(z) = (alpha z + beta) / (conj(beta) z + conj(alpha)). The lift makes the
// automorphy factor j(g, z) = conj(beta) z + conj(alpha) compose by exact
// algebra: j(gh, z) = j(g, hz) j(h, z), so integer-weight cocycles carry no
// branch ambiguity at all.
struct MobiusMap {
  Cx alpha{1.0, 0.0};
  Cx beta{0.0, 0.0};

  MobiusMap() = default;
  MobiusMap(Cx a_, double theta_);  // normal form: alpha = e^(i theta/2)/s, beta = -a alpha

  Cx a() const { return -beta / alpha; }
  double theta() const { return 2.0 * std::arg(alpha); }

  Cx apply(Cx z) const;
  Cx j_factor(Cx z) const { return std::conj(beta) * z + std::conj(alpha); }
  MobiusMap inverse() const;
  // derivative of order p >= 1: (-1)^(p-1) p! conj(beta)^(p-1) j_factor(z)^(-p-1)
  Cx derivative(int p, Cx z) const;
  static MobiusMap identity() { return MobiusMap(); }
};

// h then g; result in normal form.
MobiusMap mobius_compose(const MobiusMap& g, const MobiusMap& h);

struct AutoTuple {
  std::vector<MobiusMap> maps;

  int dim() const { return static_cast<int>(maps.size()); }
  Point apply(const Point& p) const;
  AutoTuple inverse() const;
  bool fixes_diagonal(int d, double tol = 1e-12) const;  // first d components equal
  static AutoTuple identity(int m);
};

AutoTuple tuple_compose(const AutoTuple& g, const AutoTuple& h);

// J_g(z) = prod_j j(g_j, z_j)^(-w_j) over the automorphy factors of the
// lifted maps; equals (1-|a|^2)^(w/2)(1-conj(a)z)^(-w) up to the constant
// phase e^(i w theta / 2), which cancels in the kernel identity.
struct ScalarCocycle {
  AutoTuple tuple;
  std::vector<double> weights;

  Cx eval(const Point& z) const;
  // derivative along ambient coordinate j of given order, at z
  Cx coord_derivative(int j, int order, const Point& z) const;
};

ScalarCocycle scalar_cocycle(const AutoTuple& t, const std::vector<double>& weights);

using ScalarKernelFn = std::function<Cx(const Point&, const Point&)>;
using ScalarCocycleFn = std::function<Cx(const Point&)>;

// max over sample pairs of |K(z,w) - J(z) K(gz, gw) conj(J(w))| / |K(z,w)|
double verify_quasi_invariance(const ScalarKernelFn& kernel, const AutoTuple& t,
                               const ScalarCocycleFn& cocycle,
                               const std::vector<std::pair<Point, Point>>& samples);

struct CocycleLawCheck {
  double unimodularity = 0.0;  // max | |r(z)| - 1 |
  double phase_spread = 0.0;   // max |arg(r(z)/r(z_0))|
  double max_dev_from_one = 0.0;
};

// r(z) = J_gh(z) / (J_h(z) J_g(hz)); constant unimodular for the product
// kernel family, exactly 1 for integer weights.
CocycleLawCheck verify_cocycle_identity(const std::vector<double>& weights, const AutoTuple& g,
                                        const AutoTuple& h, const std::vector<Point>& samples);

// Lower-triangular matrix cocycle for the restricted jet Gram on Delta_d:
// row alpha, column alpha' holds the coefficient of (D^alpha' K)(Phi z) in
// D^alpha [ j(z) K(Phi z) ], by Leibniz over the scalar cocycle jets and
// Faa di Bruno (partial Bell polynomials) over the per-coordinate map.
struct MatrixCocycle {
  JetIndexSet index_set;
  SubmanifoldSpec sub;
  std::function<Eigen::MatrixXcd(const Point&)> eval;
};

MatrixCocycle jet_cocycle(const AutoTuple& t, const std::vector<double>& weights,
                          const SubmanifoldSpec& sub, int order);

using MatrixKernelFn = std::function<Eigen::MatrixXcd(const Point&, const Point&)>;

// max over sample pairs of ||G(z,w) - J(z) G(gz,gw) J(w)^*|| / ||G(z,w)|| (max norm)
double verify_matrix_quasi_invariance(const MatrixKernelFn& gram, const AutoTuple& t,
                                      const std::function<Eigen::MatrixXcd(const Point&)>& cocycle,
                                      const std::vector<std::pair<Point, Point>>& samples);

struct RecoveredCocycle {
  Eigen::MatrixXcd anchor_unknown;  // upper-triangular D, |scale| fixed
  Point anchor;
  double null_gap = 0.0;      // smallest / second-smallest singular value ratio
  double smallest_sv = 0.0;
  bool well_conditioned = false;
  std::function<Eigen::MatrixXcd(const Point&)> eval;
};

// Least-squares recovery of the matrix cocycle from the kernel identity,
// anchored at one point. The unknown is restricted to the incidence pattern
// of the componentwise order on the jet indices (the support any jet cocycle
// and its inverse-adjoint can have); within that pattern the identity
// determines it up to one unimodular constant, even when the quotient kernel
// carries equivalent summands.
RecoveredCocycle recover_cocycle(const MatrixKernelFn& gram,
                                 const std::function<Point(const Point&)>& phi,
                                 const JetIndexSet& indices, const Point& anchor,
                                 const std::vector<Point>& samples);

struct TupleHomogeneityRecord {
  std::vector<Cx> group_element;  // a-parameters of the sampled tuple
  double kernel_residual = 0.0;
  double cocycle_unimodularity = 0.0;
  double cocycle_phase_spread = 0.0;
};

struct CorhomReport {
  std::vector<TupleHomogeneityRecord> tuples;
  double max_kernel_residual = 0.0;
  double max_unimodularity = 0.0;
  double max_phase_spread = 0.0;
  bool pass = false;
};

// Drives jet_cocycle + the kernel identity + the projective cocycle law over
// seeded group tuples with the first d components equal.
CorhomReport verify_corhom(int m, int d, int k, const std::vector<double>& weights, int n_tuples,
                           std::uint64_t seed, double tolerance = 1e-8);

}  // namespace jetlab
