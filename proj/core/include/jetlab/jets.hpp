#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "jetlab/kernel.hpp"
#include "jetlab/polynomial.hpp"

namespace jetlab {

// Jet frames, Grams and multiplier actions relative to a submanifold of the
// polydisc. The constructions are used here for the weighted Bergman product
// kernels, whose quotient modules along these submanifolds are the standard
// well-posed case (diagonal power series, jets of all orders available); no
// attempt is made to verify that hypothesis numerically.

using MultiIndex = std::vector<int>;  // over transverse directions

int multi_total(const MultiIndex& a);

enum class SubmanifoldKind { CoordinatePlane, Diagonal };

// CoordinatePlane d: {z_1 = ... = z_d = 0}, codim d, transverse e_1..e_d.
// Diagonal d: {z_1 = ... = z_d}, codim d-1, transverse e_2..e_d; the toy
// fixtures on D^3/D^4 differentiate exactly these directions against the
// diagonal, and Delta_d ~ D^(m-d+1) via z -> (z_1, z_{d+1}, ..., z_m).
struct SubmanifoldSpec {
  SubmanifoldKind kind;
  int m;  // ambient dimension
  int d;

  static SubmanifoldSpec coordinate_plane(int m, int d);
  static SubmanifoldSpec diagonal(int m, int d);
  // m = 1 degenerates to the whole disc (codimension 0), used by the scalar
  // quotient fixtures.
  static SubmanifoldSpec full_diagonal(int m) {
    return m == 1 ? SubmanifoldSpec{SubmanifoldKind::Diagonal, 1, 1} : diagonal(m, m);
  }

  int codim() const;
  std::vector<int> transverse_coords() const;  // ambient coordinate indices, 0-based
  bool contains(const Point& p, double tol = 1e-12) const;
};

// Ordered multi-index set A = {alpha : |alpha| < k}, graded colexicographic.
struct JetIndexSet {
  int codim = 0;
  int order = 0;  // k
  std::vector<MultiIndex> indices;

  int size() const { return static_cast<int>(indices.size()); }
  int position(const MultiIndex& a) const;  // -1 if absent
  bool same_shape(const JetIndexSet& o) const { return codim == o.codim && order == o.order; }
};

JetIndexSet jet_index_set(int codim, int k);

// Gram of the jet frame {D^alpha s} with entries
// G_{alpha beta}(z, w) = D_z^alpha Dbar_w^beta K(z, w) along the transverse directions.
struct JetGram {
  Point base_z, base_w;
  JetIndexSet index_set;
  Eigen::MatrixXcd entries;
};

JetGram jet_gram(const ProductKernel& k, const SubmanifoldSpec& sub, int order, const Point& z,
                 const Point& w, bool restricted = false);

struct FrameVector {
  JetIndexSet index_set;
  Eigen::VectorXcd coeffs;
};

FrameVector frame_delta(const JetIndexSet& a, const MultiIndex& at, Cx value = Cx(1.0, 0.0));

// sum_{alpha,beta} u_alpha conj(v_beta) G_{alpha beta}
Cx frame_inner(const FrameVector& u, const FrameVector& v, const JetGram& g);

// Module action of a multiplier on jets: lower triangular with
// J(f)_{alpha beta} = prod_i C(alpha_i, beta_i) * D^(alpha-beta) f.
struct ModuleActionMatrix {
  JetIndexSet index_set;
  std::map<MultiIndex, Cx> f_jets;  // transverse jets of the multiplier at the base point
  Eigen::MatrixXcd matrix;
};

ModuleActionMatrix module_action_matrix(const Polynomial& f, const SubmanifoldSpec& sub, int order,
                                        const Point& z);
ModuleActionMatrix module_action_matrix_from_jets(const std::map<MultiIndex, Cx>& f_jets,
                                                  int codim, int order);

// (D^alpha h(z))_{alpha in A} along the transverse directions.
FrameVector function_jet(const Polynomial& h, const SubmanifoldSpec& sub, int order,
                         const Point& z);

// Mixed partial along arbitrary direction vectors (expanded multilinearly into
// coordinate calls). z_dirs[i]/w_dirs[i] give the coefficient vectors of each
// applied derivative.
Cx directional_mixed_partial(const ProductKernel& k, const std::vector<Eigen::VectorXcd>& z_dirs,
                             const std::vector<Eigen::VectorXcd>& w_dirs, const Point& z,
                             const Point& w);

// Invertible holomorphic change of coordinates with inverse; affine maps carry
// exact linear data so pulled-back derivatives can use the chain rule.
struct HoloMap {
  std::function<Point(const Point&)> forward;
  std::function<Point(const Point&)> inverse;
  bool affine = false;
  Eigen::MatrixXcd fwd_linear;  // z -> A z + b
  Eigen::VectorXcd fwd_offset;
};

HoloMap affine_map(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b);

// K2(zt, wt) = K1(theta^-1(zt), theta^-1(wt)).
class PullbackKernel {
 public:
  PullbackKernel(ProductKernel base, HoloMap map) : base_(std::move(base)), map_(std::move(map)) {}

  Cx eval(const Point& z, const Point& w) const;
  // chain rule when the map is affine, finite differences otherwise
  Cx mixed(const DerivOrder& d, const Point& z, const Point& w) const;

  const ProductKernel& base() const { return base_; }
  const HoloMap& map() const { return map_; }

 private:
  ProductKernel base_;
  HoloMap map_;
};

// Validates theta(theta^-1(x)) = x at the given samples (1e-10) before wrapping.
PullbackKernel pullback_kernel(const ProductKernel& k1, const HoloMap& theta,
                               const std::vector<Point>& roundtrip_samples);

}  // namespace jetlab
