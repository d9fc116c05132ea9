#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace jetlab {

using Cx = std::complex<double>;

inline constexpr int kMaxDerivOrder = 8;  // total order cap, exact combinatorics below it

// Weighted Bergman product kernel on the polydisc,
//   K(z, w) = prod_j (1 - z_j conj(w_j))^(-weights_j),
// principal branch throughout (Re(1 - z conj(w)) > 0 on D x D).
struct ProductKernel {
  std::vector<double> weights;

  explicit ProductKernel(std::vector<double> w);
  int factors() const { return static_cast<int>(weights.size()); }
};

struct Point {
  std::vector<Cx> coords;

  Point() = default;
  explicit Point(std::vector<Cx> c) : coords(std::move(c)) {}
  int dim() const { return static_cast<int>(coords.size()); }
  bool in_polydisc() const;
};

// Constant point (t, t, ..., t) on the full diagonal.
Point diagonal_point(int m, Cx t);

struct DerivOrder {
  std::vector<int> z_orders;
  std::vector<int> w_orders;

  // cap is configurable for callers that legitimately need deeper jets (the
  // order-k Gram pairs derivatives up to 2(k-1)); combinatorics stay exact
  // far beyond the default
  DerivOrder(std::vector<int> z, std::vector<int> w, int cap = kMaxDerivOrder);
  static DerivOrder zero(int m);
  int total() const;
};

Cx eval_kernel(const ProductKernel& k, const Point& z, const Point& w);

// d^a/dz^a d^b/dwbar^b (1 - z*wbar)^(-lambda), closed form.
// Stated for a <= b; a > b goes through the Hermitian symmetry
// f_{a,b}(z, wbar) = conj(f_{b,a}(conj(wbar), conj(z))).
Cx factor_mixed_partial(double lambda, int a, int b, Cx z, Cx wbar);

// Mixed partial of the product kernel; factors separately since the j-th
// derivative pair touches only factor j.
Cx mixed_partial(const ProductKernel& k, const DerivOrder& d, const Point& z, const Point& w);

struct FdResult {
  Cx value;
  double err_estimate;  // truncation estimate from the Richardson cascade
};

struct FdOptions {
  double h = 0.0;        // 0 means order-adaptive default
  int richardson = 3;    // extrapolation levels
};

// Independent oracle: tensor-product central differences in the 2m holomorphic
// variables (z, wbar), each differenced along the real axis of its own copy,
// Richardson-extrapolated. Never routes through the closed form above.
FdResult fd_mixed_partial(const ProductKernel& k, const DerivOrder& d, const Point& z,
                          const Point& w, const FdOptions& opt = {});

// Step size balancing truncation against the eps/h^n roundoff floor.
double fd_default_step(int total_order, int richardson);

// Generic engine over any jointly holomorphic F given by point evaluation;
// orders[i] differentiates slot i along its real axis.
FdResult fd_mixed_partial_fn(const std::function<Cx(const std::vector<Cx>&)>& f,
                             const std::vector<int>& orders, const std::vector<Cx>& base,
                             const FdOptions& opt = {});

}  // namespace jetlab
