#include "jetlab/kernel.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "jetlab/special.hpp"

namespace jetlab {

namespace {

Cx cpow(Cx base, double expo) { return std::exp(expo * std::log(base)); }

void check_polydisc(const Point& p, const char* what) {
  for (const Cx& c : p.coords) {
    if (!(std::abs(c) < 1.0)) {
      throw std::domain_error(std::string(what) + ": coordinate on or outside the unit circle");
    }
  }
}

}  // namespace

ProductKernel::ProductKernel(std::vector<double> w) : weights(std::move(w)) {
  if (weights.empty()) throw std::invalid_argument("ProductKernel: need at least one factor");
  for (double a : weights) {
    if (!(a > 0.0)) throw std::invalid_argument("ProductKernel: weights must be positive");
  }
}

bool Point::in_polydisc() const {
  for (const Cx& c : coords) {
    if (!(std::abs(c) < 1.0)) return false;
  }
  return true;
}

Point diagonal_point(int m, Cx t) { return Point(std::vector<Cx>(m, t)); }

DerivOrder::DerivOrder(std::vector<int> z, std::vector<int> w, int cap)
    : z_orders(std::move(z)), w_orders(std::move(w)) {
  if (z_orders.size() != w_orders.size()) {
    throw std::invalid_argument("DerivOrder: mismatched z/w order lengths");
  }
  int tot = 0;
  for (int a : z_orders) {
    if (a < 0) throw std::invalid_argument("DerivOrder: negative order");
    tot += a;
  }
  for (int b : w_orders) {
    if (b < 0) throw std::invalid_argument("DerivOrder: negative order");
    tot += b;
  }
  if (tot > cap) throw std::invalid_argument("DerivOrder: total order above cap");
}

DerivOrder DerivOrder::zero(int m) {
  return DerivOrder(std::vector<int>(m, 0), std::vector<int>(m, 0));
}

int DerivOrder::total() const {
  return std::accumulate(z_orders.begin(), z_orders.end(), 0) +
         std::accumulate(w_orders.begin(), w_orders.end(), 0);
}

Cx eval_kernel(const ProductKernel& k, const Point& z, const Point& w) {
  if (z.dim() != k.factors() || w.dim() != k.factors()) {
    throw std::invalid_argument("eval_kernel: point dimension != number of factors");
  }
  check_polydisc(z, "eval_kernel");
  check_polydisc(w, "eval_kernel");
  Cx out(1.0, 0.0);
  for (int j = 0; j < k.factors(); ++j) {
    out *= cpow(1.0 - z.coords[j] * std::conj(w.coords[j]), -k.weights[j]);
  }
  return out;
}

Cx factor_mixed_partial(double lambda, int a, int b, Cx z, Cx wbar) {
  if (a < 0 || b < 0) throw std::invalid_argument("factor_mixed_partial: negative order");
  if (!(std::abs(z * wbar) < 1.0)) {
    throw std::domain_error("factor_mixed_partial: |z*wbar| >= 1");
  }
  if (a > b) {
    return std::conj(factor_mixed_partial(lambda, b, a, std::conj(wbar), std::conj(z)));
  }
  Cx x = z * wbar;
  Cx sum(0.0, 0.0);
  Cx xt(1.0, 0.0);
  for (int t = 0; t <= a; ++t) {
    // terms with b - a + t < 0 cannot occur since a <= b
    double c = binomial(a, t) * (factorial(b) / factorial(b - a + t)) *
               (pochhammer(lambda, a) / pochhammer(lambda, a - t));
    sum += c * xt;
    xt *= x;
  }
  Cx zpow(1.0, 0.0);
  for (int i = 0; i < b - a; ++i) zpow *= z;
  return sum * pochhammer(lambda, b) * zpow * cpow(1.0 - x, -lambda - a - b);
}

Cx mixed_partial(const ProductKernel& k, const DerivOrder& d, const Point& z, const Point& w) {
  int m = k.factors();
  if (static_cast<int>(d.z_orders.size()) != m || z.dim() != m || w.dim() != m) {
    throw std::invalid_argument("mixed_partial: dimension mismatch");
  }
  check_polydisc(z, "mixed_partial");
  check_polydisc(w, "mixed_partial");
  Cx out(1.0, 0.0);
  for (int j = 0; j < m; ++j) {
    out *= factor_mixed_partial(k.weights[j], d.z_orders[j], d.w_orders[j], z.coords[j],
                                std::conj(w.coords[j]));
  }
  return out;
}

namespace {

// n-th order central stencil as offset -> coefficient (units of h^-n),
// built by convolving first/second derivative stencils. Leading error O(h^2).
std::map<int, double> central_stencil(int n) {
  std::map<int, double> s{{0, 1.0}};
  auto convolve = [](const std::map<int, double>& f, const std::map<int, double>& g) {
    std::map<int, double> out;
    for (auto& [of, cf] : f)
      for (auto& [og, cg] : g) out[of + og] += cf * cg;
    return out;
  };
  std::map<int, double> d1{{-1, -0.5}, {1, 0.5}};
  std::map<int, double> d2{{-1, 1.0}, {0, -2.0}, {1, 1.0}};
  for (int i = 0; i < n / 2; ++i) s = convolve(s, d2);
  if (n % 2) s = convolve(s, d1);
  return s;
}

struct TensorStencil {
  std::vector<std::vector<Cx>> grids;       // per active slot, sample offsets * h
  std::vector<std::vector<double>> coeffs;  // matching coefficients
  int total_order = 0;
  int max_offset = 0;
};

}  // namespace

double fd_default_step(int total_order, int richardson) {
  // Empirically tuned crossover between the eps/h^n roundoff floor and the
  // Richardson-suppressed truncation terms; deeper cascades halve h and sit
  // on the roundoff floor, so h grows with the order instead.
  (void)richardson;
  if (total_order <= 2) return 0.05;
  if (total_order == 3) return 0.08;
  if (total_order == 4) return 0.12;
  return 0.16;
}

FdResult fd_mixed_partial_fn(const std::function<Cx(const std::vector<Cx>&)>& f,
                             const std::vector<int>& orders, const std::vector<Cx>& base,
                             const FdOptions& opt) {
  if (orders.size() != base.size()) {
    throw std::invalid_argument("fd_mixed_partial_fn: orders/base size mismatch");
  }
  int total = std::accumulate(orders.begin(), orders.end(), 0);
  int levels = std::max(0, opt.richardson);
  double h = opt.h > 0.0 ? opt.h : fd_default_step(total, levels);

  std::vector<int> active;
  std::vector<std::map<int, double>> stencils;
  int max_offset = 0;
  for (std::size_t s = 0; s < orders.size(); ++s) {
    if (orders[s] == 0) continue;
    active.push_back(static_cast<int>(s));
    stencils.push_back(central_stencil(orders[s]));
    for (auto& [off, c] : stencils.back()) max_offset = std::max(max_offset, std::abs(off));
  }
  if (active.empty()) return {f(base), 0.0};

  auto evaluate = [&](double step) {
    // tensor product over active slots
    std::vector<std::map<int, double>::const_iterator> it(active.size());
    Cx acc(0.0, 0.0);
    std::function<void(std::size_t, double, std::vector<Cx>&)> rec =
        [&](std::size_t idx, double coeff, std::vector<Cx>& pt) {
          if (idx == active.size()) {
            acc += coeff * f(pt);
            return;
          }
          for (auto& [off, c] : stencils[idx]) {
            Cx saved = pt[active[idx]];
            pt[active[idx]] = saved + step * static_cast<double>(off);
            rec(idx + 1, coeff * c, pt);
            pt[active[idx]] = saved;
          }
        };
    std::vector<Cx> pt = base;
    rec(0, 1.0, pt);
    return acc / std::pow(step, total);
  };

  // Richardson cascade on h, h/2, ..., h/2^L; error term orders h^2, h^4, ...
  std::vector<std::vector<Cx>> table(levels + 1);
  for (int i = 0; i <= levels; ++i) {
    table[i].resize(i + 1);
    table[i][0] = evaluate(h / std::pow(2.0, i));
    for (int j = 1; j <= i; ++j) {
      double w = std::pow(4.0, j);
      table[i][j] = (w * table[i][j - 1] - table[i - 1][j - 1]) / (w - 1.0);
    }
  }
  Cx best = table[levels][levels];
  double err = levels > 0 ? std::abs(best - table[levels][levels - 1]) : std::abs(best) * 1e-8;
  return {best, err};
}

FdResult fd_mixed_partial(const ProductKernel& k, const DerivOrder& d, const Point& z,
                          const Point& w, const FdOptions& opt) {
  int m = k.factors();
  if (static_cast<int>(d.z_orders.size()) != m || z.dim() != m || w.dim() != m) {
    throw std::invalid_argument("fd_mixed_partial: dimension mismatch");
  }
  check_polydisc(z, "fd_mixed_partial");
  check_polydisc(w, "fd_mixed_partial");

  // 2m holomorphic variables: (z_1..z_m, u_1..u_m) with u = conj(w).
  std::vector<Cx> base(2 * m);
  std::vector<int> orders(2 * m);
  for (int j = 0; j < m; ++j) {
    base[j] = z.coords[j];
    base[m + j] = std::conj(w.coords[j]);
    orders[j] = d.z_orders[j];
    orders[m + j] = d.w_orders[j];
  }
  int total = d.total();
  int levels = std::max(0, opt.richardson);
  double h = opt.h > 0.0 ? opt.h : fd_default_step(total, levels);

  // Stencil excursion must keep every sampled point inside the polydisc.
  int max_off = 1;
  for (int n : orders) max_off = std::max(max_off, n / 2 + n % 2);
  double worst = 0.0;
  for (const Cx& c : base) worst = std::max(worst, std::abs(c));
  double room = 1.0 - worst;
  if (max_off * h >= room) {
    double clamped = 0.5 * room / max_off;
    if (opt.h > 0.0 || clamped <= 0.0) {
      throw std::domain_error("fd_mixed_partial: stencil would leave the polydisc");
    }
    h = clamped;
  }

  auto f = [&](const std::vector<Cx>& v) {
    Cx out(1.0, 0.0);
    for (int j = 0; j < m; ++j) {
      out *= std::exp(-k.weights[j] * std::log(1.0 - v[j] * v[m + j]));
    }
    return out;
  };
  FdOptions local = opt;
  local.h = h;
  return fd_mixed_partial_fn(f, orders, base, local);
}

}  // namespace jetlab
