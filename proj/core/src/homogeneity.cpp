#include "jetlab/homogeneity.hpp"

#include <cmath>
#include <stdexcept>

#include "jetlab/rng.hpp"
#include "jetlab/special.hpp"

namespace jetlab {

MobiusMap::MobiusMap(Cx a_, double theta_) {
  if (!(std::abs(a_) < 1.0)) throw std::invalid_argument("MobiusMap: need |a| < 1");
  Cx half = std::polar(1.0, 0.5 * theta_);
  double s = std::sqrt(1.0 - std::norm(a_));
  alpha = half / s;
  beta = -a_ * half / s;
}

Cx MobiusMap::apply(Cx z) const { return (alpha * z + beta) / j_factor(z); }

MobiusMap MobiusMap::inverse() const {
  MobiusMap inv;
  inv.alpha = std::conj(alpha);
  inv.beta = -beta;
  return inv;
}

Cx MobiusMap::derivative(int p, Cx z) const {
  if (p < 0) throw std::invalid_argument("MobiusMap::derivative: order >= 0");
  if (p == 0) return apply(z);
  Cx den = j_factor(z);
  Cx pw(1.0, 0.0);
  for (int i = 0; i <= p; ++i) pw *= den;
  Cx num(1.0, 0.0);
  for (int i = 0; i < p - 1; ++i) num *= -std::conj(beta);
  return factorial(p) * num / pw;
}

MobiusMap mobius_compose(const MobiusMap& g, const MobiusMap& h) {
  MobiusMap out;
  out.alpha = g.alpha * h.alpha + g.beta * std::conj(h.beta);
  out.beta = g.alpha * h.beta + g.beta * std::conj(h.alpha);
  // determinant drift stays at rounding level; renormalize anyway
  double det = std::norm(out.alpha) - std::norm(out.beta);
  double s = std::sqrt(det);
  out.alpha /= s;
  out.beta /= s;
  return out;
}

Point AutoTuple::apply(const Point& p) const {
  if (p.dim() != dim()) throw std::invalid_argument("AutoTuple::apply: dimension mismatch");
  std::vector<Cx> out(maps.size());
  for (std::size_t j = 0; j < maps.size(); ++j) out[j] = maps[j].apply(p.coords[j]);
  return Point(std::move(out));
}

AutoTuple AutoTuple::inverse() const {
  AutoTuple t;
  for (const MobiusMap& m : maps) t.maps.push_back(m.inverse());
  return t;
}

bool AutoTuple::fixes_diagonal(int d, double tol) const {
  if (d < 1 || d > dim()) return false;
  for (int j = 1; j < d; ++j) {
    // same map; either SU(1,1) lift is fine
    double direct = std::max(std::abs(maps[j].alpha - maps[0].alpha),
                             std::abs(maps[j].beta - maps[0].beta));
    double flipped = std::max(std::abs(maps[j].alpha + maps[0].alpha),
                              std::abs(maps[j].beta + maps[0].beta));
    if (std::min(direct, flipped) > tol) return false;
  }
  return true;
}

AutoTuple AutoTuple::identity(int m) {
  AutoTuple t;
  t.maps.assign(m, MobiusMap::identity());
  return t;
}

AutoTuple tuple_compose(const AutoTuple& g, const AutoTuple& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("tuple_compose: dimension mismatch");
  AutoTuple t;
  for (int j = 0; j < g.dim(); ++j) t.maps.push_back(mobius_compose(g.maps[j], h.maps[j]));
  return t;
}

ScalarCocycle scalar_cocycle(const AutoTuple& t, const std::vector<double>& weights) {
  if (t.dim() != static_cast<int>(weights.size())) {
    throw std::invalid_argument("scalar_cocycle: arity mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("scalar_cocycle: weights must be positive");
  }
  return ScalarCocycle{t, weights};
}

Cx ScalarCocycle::eval(const Point& z) const {
  // j_factor = conj(alpha) (1 - conj(a) z); raising the two factors
  // separately keeps each argument away from the cut for any rotation, and
  // the conj(alpha) phase cancels against the conjugate side of the kernel
  // identity as a modulus
  Cx out(1.0, 0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const MobiusMap& g = tuple.maps[j];
    Cx abar = std::conj(g.a());
    out *= std::exp(-weights[j] * std::log(std::conj(g.alpha))) *
           std::exp(-weights[j] * std::log(1.0 - abar * z.coords[j]));
  }
  return out;
}

Cx ScalarCocycle::coord_derivative(int j, int order, const Point& z) const {
  // only the factor j(g_j, z_j)^(-w_j) depends on z_j
  Cx den = tuple.maps[j].j_factor(z.coords[j]);
  Cx ratio(1.0, 0.0);
  for (int i = 0; i < order; ++i) ratio *= -std::conj(tuple.maps[j].beta) / den;
  return eval(z) * pochhammer(weights[j], order) * ratio;
}

double verify_quasi_invariance(const ScalarKernelFn& kernel, const AutoTuple& t,
                               const ScalarCocycleFn& cocycle,
                               const std::vector<std::pair<Point, Point>>& samples) {
  double worst = 0.0;
  for (const auto& [z, w] : samples) {
    Cx lhs = kernel(z, w);
    Cx rhs = cocycle(z) * kernel(t.apply(z), t.apply(w)) * std::conj(cocycle(w));
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
  }
  return worst;
}

CocycleLawCheck verify_cocycle_identity(const std::vector<double>& weights, const AutoTuple& g,
                                        const AutoTuple& h, const std::vector<Point>& samples) {
  ScalarCocycle jg = scalar_cocycle(g, weights);
  ScalarCocycle jh = scalar_cocycle(h, weights);
  ScalarCocycle jgh = scalar_cocycle(tuple_compose(g, h), weights);
  CocycleLawCheck chk;
  bool first = true;
  Cx r0;
  for (const Point& z : samples) {
    Cx r = jgh.eval(z) / (jh.eval(z) * jg.eval(h.apply(z)));
    chk.unimodularity = std::max(chk.unimodularity, std::abs(std::abs(r) - 1.0));
    chk.max_dev_from_one = std::max(chk.max_dev_from_one, std::abs(r - 1.0));
    if (first) {
      r0 = r;
      first = false;
    } else {
      chk.phase_spread = std::max(chk.phase_spread, std::abs(std::arg(r / r0)));
    }
  }
  return chk;
}

namespace {

// Partial Bell polynomial B_{n,q}(g_1, ..., g_{n-q+1}).
Cx bell_partial(int n, int q, const std::vector<Cx>& g) {
  if (n == 0 && q == 0) return Cx(1.0, 0.0);
  if (n <= 0 || q <= 0) return Cx(0.0, 0.0);
  Cx out(0.0, 0.0);
  for (int j = 1; j <= n - q + 1; ++j) {
    out += binomial(n - 1, j - 1) * g[j] * bell_partial(n - j, q - 1, g);
  }
  return out;
}

}  // namespace

MatrixCocycle jet_cocycle(const AutoTuple& t, const std::vector<double>& weights,
                          const SubmanifoldSpec& sub, int order) {
  if (sub.kind != SubmanifoldKind::Diagonal) {
    throw std::invalid_argument("jet_cocycle: submanifold must be a diagonal");
  }
  if (!t.fixes_diagonal(sub.d)) {
    throw std::invalid_argument("jet_cocycle: tuple does not fix the diagonal");
  }
  if (order < 1 || order > 4) throw std::invalid_argument("jet_cocycle: 1 <= k <= 4");
  if (t.dim() != sub.m || static_cast<int>(weights.size()) != sub.m) {
    throw std::invalid_argument("jet_cocycle: arity mismatch");
  }

  MatrixCocycle mc;
  mc.index_set = jet_index_set(sub.codim(), order);
  mc.sub = sub;
  ScalarCocycle j = scalar_cocycle(t, weights);
  std::vector<int> tv = sub.transverse_coords();
  JetIndexSet idx = mc.index_set;

  mc.eval = [t, j, tv, idx, sub](const Point& z) {
    if (!sub.contains(z, 1e-10)) {
      throw std::domain_error("jet_cocycle: evaluation point off the diagonal");
    }
    int n = idx.size();
    int maxo = idx.order;
    // per transverse coordinate: scalar-cocycle log-jets and map derivatives
    std::vector<std::vector<Cx>> jjet(tv.size());   // D^mu j / j pieces per coordinate
    std::vector<std::vector<Cx>> phid(tv.size());   // phi^(p) at z_c
    for (std::size_t s = 0; s < tv.size(); ++s) {
      int c = tv[s];
      jjet[s].resize(maxo);
      phid[s].resize(maxo + 1);
      for (int p = 0; p < maxo; ++p) jjet[s][p] = j.coord_derivative(c, p, z) / j.eval(z);
      for (int p = 0; p <= maxo; ++p) phid[s][p] = t.maps[c].derivative(p, z.coords[c]);
    }
    Cx jz = j.eval(z);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
      const MultiIndex& al = idx.indices[r];
      for (int c = 0; c < n; ++c) {
        const MultiIndex& ap = idx.indices[c];
        // J_{alpha alpha'} = sum_{alpha' <= nu <= alpha}
        //   C(alpha, alpha-nu) D^(alpha-nu) j * prod_i B_{nu_i, alpha'_i}(phi jets)
        bool leq = true;
        for (std::size_t i = 0; i < al.size(); ++i) {
          if (ap[i] > al[i]) {
            leq = false;
            break;
          }
        }
        if (!leq) continue;
        // iterate nu componentwise between alpha' and alpha
        MultiIndex nu = ap;
        Cx total(0.0, 0.0);
        while (true) {
          Cx term(1.0, 0.0);
          for (std::size_t i = 0; i < al.size(); ++i) {
            term *= binomial(al[i], al[i] - nu[i]) * jjet[i][al[i] - nu[i]] *
                    bell_partial(nu[i], ap[i], phid[i]);
          }
          total += term;
          std::size_t s = 0;
          for (; s < nu.size(); ++s) {
            if (++nu[s] <= al[s]) break;
            nu[s] = ap[s];
          }
          if (s == nu.size()) break;
        }
        m(r, c) = jz * total;
      }
    }
    return m;
  };
  return mc;
}

double verify_matrix_quasi_invariance(const MatrixKernelFn& gram, const AutoTuple& t,
                                      const std::function<Eigen::MatrixXcd(const Point&)>& cocycle,
                                      const std::vector<std::pair<Point, Point>>& samples) {
  double worst = 0.0;
  for (const auto& [z, w] : samples) {
    Eigen::MatrixXcd lhs = gram(z, w);
    Eigen::MatrixXcd rhs =
        cocycle(z) * gram(t.apply(z), t.apply(w)) * cocycle(w).adjoint();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff() / lhs.cwiseAbs().maxCoeff());
  }
  return worst;
}

RecoveredCocycle recover_cocycle(const MatrixKernelFn& gram,
                                 const std::function<Point(const Point&)>& phi,
                                 const JetIndexSet& indices, const Point& anchor,
                                 const std::vector<Point>& samples) {
  if (samples.size() < 3) throw std::invalid_argument("recover_cocycle: need >= 3 samples");
  const int n = static_cast<int>(gram(anchor, anchor).rows());
  if (indices.size() != n) throw std::invalid_argument("recover_cocycle: index set size mismatch");
  auto gphi = [gram, phi](const Point& z, const Point& w) { return gram(phi(z), phi(w)); };

  // Y(z,w) = D X(z,w) D^*   with
  // X = Gphi(z,a)^-1 Gphi(z,w) Gphi(w,a)^-*,  Y the same in G.
  auto xmat = [&](const Point& z, const Point& w) {
    Eigen::MatrixXcd za = gphi(z, anchor), zw = gphi(z, w), wa = gphi(w, anchor);
    return (za.partialPivLu().solve(zw) * wa.adjoint().partialPivLu().inverse()).eval();
  };
  auto ymat = [&](const Point& z, const Point& w) {
    Eigen::MatrixXcd za = gram(z, anchor), zw = gram(z, w), wa = gram(w, anchor);
    return (za.partialPivLu().solve(zw) * wa.adjoint().partialPivLu().inverse()).eval();
  };

  // similarity constraints D M = N D (and the adjoint-side family) kill the
  // bilinearity; D is restricted to upper triangular, which pins the gauge
  // down to one scalar
  std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> sims;
  for (std::size_t i = 0; i + 2 < samples.size(); i += 1) {
    const Point &z = samples[i], &wa = samples[i + 1], &wb = samples[i + 2];
    Eigen::MatrixXcd xa = xmat(z, wa), xb = xmat(z, wb);
    Eigen::MatrixXcd ya = ymat(z, wa), yb = ymat(z, wb);
    sims.emplace_back(xa * xb.partialPivLu().inverse(), ya * yb.partialPivLu().inverse());
    sims.emplace_back((xa.partialPivLu().inverse() * xb).adjoint(),
                      (ya.partialPivLu().inverse() * yb).adjoint());
  }

  // unknowns: D = J(anchor)^-* entries on componentwise-comparable index
  // pairs only; incomparable pairs are zero for every jet cocycle, and
  // excluding them removes the gauge that mixes equivalent summands
  std::vector<std::pair<int, int>> slots;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r <= c; ++r) {
      const MultiIndex& low = indices.indices[r];
      const MultiIndex& high = indices.indices[c];
      bool comparable = true;
      for (std::size_t i = 0; i < low.size(); ++i) {
        if (low[i] > high[i]) {
          comparable = false;
          break;
        }
      }
      if (comparable) slots.emplace_back(r, c);
    }
  }
  int un = static_cast<int>(slots.size());
  Eigen::MatrixXcd sys(static_cast<int>(sims.size()) * n * n, un);
  int row = 0;
  for (const auto& [msim, nsim] : sims) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int u = 0; u < un; ++u) {
          auto [r, c] = slots[u];
          Cx coeff(0.0, 0.0);
          if (i == r) coeff += msim(c, j);   // (D M)_{ij} depends on D_{i,c}
          if (j == c) coeff -= nsim(i, r);   // (N D)_{ij} depends on D_{r,j}
          sys(row, u) = coeff;
        }
        ++row;
      }
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  RecoveredCocycle rc;
  rc.anchor = anchor;
  rc.smallest_sv = sv(un - 1);
  rc.null_gap = sv(un - 2) > 0.0 ? sv(un - 1) / sv(un - 2) : 1.0;
  rc.well_conditioned = rc.null_gap < 1e-6 && sv(un - 2) > 1e-8 * sv(0);

  Eigen::VectorXcd v = svd.matrixV().col(un - 1);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int u = 0; u < un; ++u) d(slots[u].first, slots[u].second) = v(u);

  // |scale| from one congruence trace (both sides PD at z = w); the leftover
  // phase is fixed by making the largest diagonal entry real positive
  const Point& z0 = samples[0];
  Eigen::MatrixXcd x0 = xmat(z0, z0), y0 = ymat(z0, z0);
  double s = std::sqrt(std::abs(y0.trace() / (d * x0 * d.adjoint()).trace()));
  d *= s;
  int lead = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(d(i, i)) > std::abs(d(lead, lead))) lead = i;
  }
  d *= std::polar(1.0, -std::arg(d(lead, lead)));
  rc.anchor_unknown = d;

  rc.eval = [gram, gphi, anchor, d](const Point& z) {
    Eigen::MatrixXcd ga = gram(z, anchor);
    Eigen::MatrixXcd gpa = gphi(z, anchor);
    return (ga * d * gpa.partialPivLu().inverse()).eval();
  };
  return rc;
}

CorhomReport verify_corhom(int m, int d, int k, const std::vector<double>& weights, int n_tuples,
                           std::uint64_t seed, double tolerance) {
  if (d < 2 || d > m) throw std::invalid_argument("verify_corhom: need 2 <= d <= m");
  ProductKernel kern(weights);
  SubmanifoldSpec sub = SubmanifoldSpec::diagonal(m, d);
  Rng rng(seed);

  auto draw_tuple = [&]() {
    AutoTuple t;
    MobiusMap common(rng.disc(0.6), 0.0);
    for (int j = 0; j < m; ++j) {
      t.maps.push_back(j < d ? common : MobiusMap(rng.disc(0.6), 0.0));
    }
    return t;
  };
  auto draw_point = [&]() {
    Cx diag = rng.disc(0.55);
    std::vector<Cx> c(m);
    for (int j = 0; j < m; ++j) c[j] = j < d ? diag : rng.disc(0.55);
    return Point(c);
  };

  MatrixKernelFn gram = [&](const Point& z, const Point& w) {
    return jet_gram(kern, sub, k, z, w).entries;
  };

  CorhomReport rep;
  for (int i = 0; i < n_tuples; ++i) {
    AutoTuple t = draw_tuple();
    MatrixCocycle mc = jet_cocycle(t, weights, sub, k);

    std::vector<std::pair<Point, Point>> pairs;
    for (int s = 0; s < 12; ++s) pairs.emplace_back(draw_point(), draw_point());
    TupleHomogeneityRecord rec;
    for (const MobiusMap& g : t.maps) rec.group_element.push_back(g.a());
    rec.kernel_residual = verify_matrix_quasi_invariance(gram, t, mc.eval, pairs);

    // projective cocycle law for the matrix family: J_gh(z) vs J_h(z) J_g(hz)
    AutoTuple h = draw_tuple();
    MatrixCocycle mch = jet_cocycle(h, weights, sub, k);
    MatrixCocycle mcgh = jet_cocycle(tuple_compose(t, h), weights, sub, k);
    bool first = true;
    Cx mu0;
    for (int s = 0; s < 8; ++s) {
      Point z = draw_point();
      Eigen::MatrixXcd lhs = mcgh.eval(z);
      Eigen::MatrixXcd rhs = mch.eval(z) * mc.eval(h.apply(z));
      Eigen::MatrixXcd ratio = rhs.partialPivLu().solve(lhs);
      Cx mu = ratio.trace() / static_cast<double>(ratio.rows());
      double off = (ratio - mu * Eigen::MatrixXcd::Identity(ratio.rows(), ratio.cols()))
                       .cwiseAbs()
                       .maxCoeff();
      rec.cocycle_unimodularity =
          std::max({rec.cocycle_unimodularity, std::abs(std::abs(mu) - 1.0), off});
      if (first) {
        mu0 = mu;
        first = false;
      } else {
        rec.cocycle_phase_spread = std::max(rec.cocycle_phase_spread, std::abs(std::arg(mu / mu0)));
      }
    }
    rep.tuples.push_back(rec);
    rep.max_kernel_residual = std::max(rep.max_kernel_residual, rec.kernel_residual);
    rep.max_unimodularity = std::max(rep.max_unimodularity, rec.cocycle_unimodularity);
    rep.max_phase_spread = std::max(rep.max_phase_spread, rec.cocycle_phase_spread);
  }
  rep.pass = rep.max_kernel_residual < tolerance && rep.max_unimodularity < tolerance &&
             rep.max_phase_spread < tolerance;
  return rep;
}

}  // namespace jetlab
