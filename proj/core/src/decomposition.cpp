#include "jetlab/decomposition.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "jetlab/special.hpp"

namespace jetlab {

namespace {

// Polynomials in the transverse derivative symbols (one slot per transverse
// direction); products of differential operators multiply exponentwise.
using Symbol = std::map<MultiIndex, double>;

Symbol symbol_one(int codim) { return {{MultiIndex(codim, 0), 1.0}}; }

Symbol symbol_mul(const Symbol& a, const Symbol& b) {
  Symbol out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      MultiIndex e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

Symbol symbol_axpy(double c, const Symbol& a, Symbol out) {
  for (const auto& [e, v] : a) out[e] += c * v;
  return out;
}

Symbol symbol_pow(const Symbol& a, int p) {
  Symbol out = symbol_one(a.begin()->first.size());
  for (int i = 0; i < p; ++i) out = symbol_mul(out, a);
  return out;
}

Symbol direction_symbol(int codim, const std::vector<int>& slots) {
  Symbol s;
  for (int i : slots) {
    MultiIndex e(codim, 0);
    e[i] = 1;
    s[e] = 1.0;
  }
  return s;
}

// sigma combination over a direction pair given as symbols.
Symbol sigma_symbol(int k, double beta, double gamma, const Symbol& a, const Symbol& b) {
  Symbol out;
  for (int j = 0; j <= k; ++j) {
    double c = (j % 2 ? -1.0 : 1.0) * binomial(k, j) * pochhammer(beta, k) *
               pochhammer(gamma, k) / (pochhammer(beta, k - j) * pochhammer(gamma, j));
    out = symbol_axpy(c, symbol_mul(symbol_pow(a, k - j), symbol_pow(b, j)), std::move(out));
  }
  return out;
}

FrameVector symbol_to_frame(const Symbol& s, const JetIndexSet& a) {
  FrameVector v{a, Eigen::VectorXcd::Zero(a.size())};
  for (const auto& [e, c] : s) {
    int pos = a.position(e);
    if (pos < 0) throw std::logic_error("symbol_to_frame: exponent outside index set");
    v.coeffs(pos) += c;
  }
  return v;
}

void check_weights(const std::vector<double>& w, int m, const char* who) {
  if (static_cast<int>(w.size()) != m) {
    throw std::invalid_argument(std::string(who) + ": weight count != m");
  }
  for (double x : w) {
    if (!(x > 0.0)) throw std::invalid_argument(std::string(who) + ": weights must be positive");
  }
}

}  // namespace

SigmaFrame sigma_frame(int k, double beta, double gamma) {
  if (k < 0) throw std::invalid_argument("sigma_frame: k >= 0");
  if (!(beta > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("sigma_frame: weights > 0");
  SigmaFrame s;
  s.k = k;
  s.beta = beta;
  s.gamma = gamma;
  for (int j = 0; j <= k; ++j) {
    s.coeffs.push_back((j % 2 ? -1.0 : 1.0) * binomial(k, j) * pochhammer(beta, k) *
                       pochhammer(gamma, k) / (pochhammer(beta, k - j) * pochhammer(gamma, j)));
  }
  return s;
}

double sigma_norm_constant(int k, double beta, double gamma) {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    s += binomial(k, i) * pochhammer(beta, k) * pochhammer(beta, k) * pochhammer(gamma, k) *
         pochhammer(gamma, k) / (pochhammer(beta, k - i) * pochhammer(gamma, i));
  }
  return factorial(k) * s;
}

double sigma_norm_constant_alternating(int k, double beta, double gamma) {
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    s += (i % 2 ? -1.0 : 1.0) * binomial(k, i) * pochhammer(beta, k) * pochhammer(beta, k) *
         pochhammer(gamma, k) * pochhammer(gamma, k) /
         (pochhammer(beta, k - i) * pochhammer(gamma, i));
  }
  return factorial(k) * s;
}

double sigma_norm_sq(int k, const std::vector<double>& weights, const Point& w) {
  check_weights(weights, 3, "sigma_norm_sq");
  if (w.dim() != 3 || std::abs(w.coords[1] - w.coords[2]) > 1e-12) {
    throw std::domain_error("sigma_norm_sq: need w with w_2 = w_3");
  }
  ProductKernel kern(weights);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  JetGram g = jet_gram(kern, sub, k + 1, w, w);
  SigmaFrame s = sigma_frame(k, weights[1], weights[2]);
  FrameVector v{g.index_set, Eigen::VectorXcd::Zero(g.index_set.size())};
  for (int j = 0; j <= k; ++j) {
    MultiIndex e{k - j, j};
    v.coeffs(g.index_set.position(e)) = s.coeffs[j];
  }
  Cx nrm = frame_inner(v, v, g);
  return nrm.real();
}

double verify_sigma_orthogonality(int n, const std::vector<double>& weights,
                                  const std::vector<Point>& samples) {
  check_weights(weights, 3, "verify_sigma_orthogonality");
  if (n < 1 || n > 6) throw std::invalid_argument("verify_sigma_orthogonality: need 1 <= n <= 6");
  ProductKernel kern(weights);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  double worst = 0.0;
  for (const Point& w : samples) {
    JetGram g = jet_gram(kern, sub, n, w, w);
    std::vector<FrameVector> sigmas;
    for (int k = 0; k < n; ++k) {
      SigmaFrame s = sigma_frame(k, weights[1], weights[2]);
      FrameVector v{g.index_set, Eigen::VectorXcd::Zero(g.index_set.size())};
      for (int j = 0; j <= k; ++j) v.coeffs(g.index_set.position({k - j, j})) = s.coeffs[j];
      sigmas.push_back(std::move(v));
    }
    for (int k = 0; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        double num = std::abs(frame_inner(sigmas[k], sigmas[l], g));
        double den = std::sqrt(frame_inner(sigmas[k], sigmas[k], g).real() *
                               frame_inner(sigmas[l], sigmas[l], g).real());
        worst = std::max(worst, num / den);
      }
    }
  }
  return worst;
}

ProductKernel WilkinsKernel::as_product_kernel() const {
  return ProductKernel({exp_first, exp_rest});
}

std::vector<DecompositionNode> decomposition_tree(int m, int n, const std::vector<double>& weights) {
  check_weights(weights, m, "decomposition_tree");
  if (m < 2 || n < 1) throw std::invalid_argument("decomposition_tree: need m >= 2, n >= 1");
  int codim = m - 1;
  JetIndexSet ambient = jet_index_set(codim, n);
  ProductKernel kern(weights);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
  Point origin = diagonal_point(m, Cx(0.0, 0.0));
  JetGram gram0 = jet_gram(kern, sub, n, origin, origin);
  Symbol normal = direction_symbol(codim, [&] {
    std::vector<int> all(codim);
    for (int i = 0; i < codim; ++i) all[i] = i;
    return all;
  }());

  double rest_weight = 0.0;
  for (int j = 1; j < m; ++j) rest_weight += weights[j];

  std::vector<DecompositionNode> out;

  // stage s collapses pair (slot m-2-s, previously collapsed block); recursion
  // over the stage indices, outermost stage first (the nested order of the
  // direct sum). ell is reported as (l_1, ..., l_{m-2}) = innermost..outermost.
  struct Stage {
    Symbol sigma;
    double gamma_acc;   // accumulated weight on the collapsed block
    int sum_l;
    double c_nonalt;
    double c_alternating;
    std::vector<int> ls;  // chosen indices, outermost first
  };

  std::function<void(int, const Stage&, const Symbol&)> recurse = [&](int stage, const Stage& st,
                                                                      const Symbol& block) {
    if (stage > m - 2) {
      DecompositionNode node;
      node.ell.assign(st.ls.rbegin(), st.ls.rend());  // (l_1, ..., l_{m-2})
      node.jet_order = n - st.sum_l;
      node.kernel.exp_first = weights[0];
      node.kernel.exp_rest = rest_weight + 2.0 * st.sum_l;
      node.constant_stagewise = st.c_nonalt;
      node.constant_alternating = st.c_alternating;
      for (int r = 0; r < node.jet_order; ++r) {
        Symbol f = symbol_mul(symbol_pow(normal, r), st.sigma);
        node.frame.push_back(symbol_to_frame(f, ambient));
      }
      // C_ell from the Gram pairing at 0 (the oracle; stagewise closed forms
      // are recorded for diagnostics only)
      Cx c = frame_inner(node.frame[0], node.frame[0], gram0);
      node.kernel.constant = c.real();
      out.push_back(std::move(node));
      return;
    }
    int a_slot = m - 2 - stage;  // transverse slot of the incoming coordinate
    double beta = weights[a_slot + 1];
    double gamma = st.gamma_acc;
    Symbol a_sym = direction_symbol(codim, {a_slot});
    for (int l = 0; l + st.sum_l <= n - 1; ++l) {
      Stage next = st;
      next.sum_l += l;
      next.gamma_acc = beta + gamma + 2.0 * l;
      next.ls.push_back(l);
      next.c_nonalt *= sigma_norm_constant(l, beta, gamma);
      next.c_alternating *= sigma_norm_constant_alternating(l, beta, gamma);
      next.sigma = symbol_mul(st.sigma, sigma_symbol(l, beta, gamma, a_sym, block));
      Symbol next_block = symbol_axpy(1.0, a_sym, block);
      recurse(stage + 1, next, next_block);
    }
  };

  if (m == 2) {
    Stage st{symbol_one(codim), weights[1], 0, 1.0, 1.0, {}};
    recurse(m - 1, st, direction_symbol(codim, {0}));
  } else {
    Stage st{symbol_one(codim), weights[m - 1], 0, 1.0, 1.0, {}};
    recurse(1, st, direction_symbol(codim, {codim - 1}));
  }
  return out;
}

WilkinsKernel wilkins_kernel(int m, int n, const std::vector<int>& ell,
                             const std::vector<double>& weights) {
  if (static_cast<int>(ell.size()) != std::max(0, m - 2)) {
    throw std::invalid_argument("wilkins_kernel: ell must have m-2 entries");
  }
  int sum = 0;
  for (int l : ell) {
    if (l < 0) throw std::invalid_argument("wilkins_kernel: negative index");
    sum += l;
  }
  if (sum > n - 1) throw std::invalid_argument("wilkins_kernel: inadmissible ell (partial sums)");
  for (const DecompositionNode& node : decomposition_tree(m, n, weights)) {
    if (node.ell == ell) return node.kernel;
  }
  throw std::logic_error("wilkins_kernel: node not found");
}

CongruenceTransform block_diagonalize(int m, int n, const std::vector<double>& weights,
                                      const Point& w) {
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
  if (!sub.contains(w)) throw std::domain_error("block_diagonalize: base point must be diagonal");
  CongruenceTransform t;
  t.nodes = decomposition_tree(m, n, weights);
  int nrows = 0;
  for (const auto& node : t.nodes) nrows += node.jet_order;
  JetIndexSet ambient = jet_index_set(m - 1, n);
  if (nrows != ambient.size()) throw std::logic_error("block_diagonalize: dimension bookkeeping");
  t.x.resize(nrows, nrows);
  int row = 0;
  for (const auto& node : t.nodes) {
    std::vector<int> group;
    for (const FrameVector& f : node.frame) {
      t.x.row(row) = f.coeffs.transpose();
      group.push_back(row);
      ++row;
    }
    t.grouping.push_back(group);
  }

  ProductKernel kern(weights);
  JetGram g = jet_gram(kern, sub, n, w, w);
  Eigen::MatrixXcd xgx = t.x * g.entries * t.x.adjoint();
  double scale = xgx.cwiseAbs().maxCoeff();
  for (std::size_t gi = 0; gi < t.grouping.size(); ++gi) {
    for (std::size_t gj = 0; gj < t.grouping.size(); ++gj) {
      if (gi == gj) continue;
      for (int r : t.grouping[gi]) {
        for (int c : t.grouping[gj]) {
          double v = std::abs(xgx(r, c)) / scale;
          if (v > t.off_block_residual) {
            t.off_block_residual = v;
            t.worst_row = r;
            t.worst_col = c;
          }
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t.x);
  t.condition_number = svd.singularValues()(0) / svd.singularValues()(nrows - 1);
  return t;
}

DecompositionCheck verify_orthogonal_decomposition(int m, int n, const std::vector<double>& weights,
                                                   const std::vector<Point>& samples) {
  DecompositionCheck chk;
  chk.nodes = decomposition_tree(m, n, weights);
  JetIndexSet ambient = jet_index_set(m - 1, n);
  int total = 0;
  for (const auto& node : chk.nodes) total += node.jet_order;
  chk.dims_ok = (total == ambient.size());

  ProductKernel kern(weights);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
  for (const Point& w : samples) {
    if (!sub.contains(w)) throw std::domain_error("verify_orthogonal_decomposition: off-diagonal sample");
    JetGram g = jet_gram(kern, sub, n, w, w);
    // cross-component pairings, normalized
    for (std::size_t i = 0; i < chk.nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < chk.nodes.size(); ++j) {
        for (const FrameVector& u : chk.nodes[i].frame) {
          for (const FrameVector& v : chk.nodes[j].frame) {
            double num = std::abs(frame_inner(u, v, g));
            double den = std::sqrt(frame_inner(u, u, g).real() * frame_inner(v, v, g).real());
            chk.max_cross_residual = std::max(chk.max_cross_residual, num / den);
          }
        }
      }
    }
    // per-component Gram vs the component kernel's own jet Gram on D^2
    Cx t = w.coords[0];
    Point w2(std::vector<Cx>{t, t});
    SubmanifoldSpec sub2 = SubmanifoldSpec::full_diagonal(2);
    if (chk.node_residuals.empty()) chk.node_residuals.assign(chk.nodes.size(), 0.0);
    for (std::size_t ni = 0; ni < chk.nodes.size(); ++ni) {
      const auto& node = chk.nodes[ni];
      ProductKernel comp = node.kernel.as_product_kernel();
      JetGram cg = jet_gram(comp, sub2, node.jet_order, w2, w2);
      double scale = 0.0;
      for (int r = 0; r < node.jet_order; ++r) {
        for (int c = 0; c < node.jet_order; ++c) {
          scale = std::max(scale, std::abs(node.kernel.constant * cg.entries(r, c)));
        }
      }
      for (int r = 0; r < node.jet_order; ++r) {
        for (int c = 0; c < node.jet_order; ++c) {
          Cx lhs = frame_inner(node.frame[r], node.frame[c], g);
          Cx rhs = node.kernel.constant * cg.entries(r, c);
          chk.node_residuals[ni] = std::max(chk.node_residuals[ni], std::abs(lhs - rhs) / scale);
        }
      }
      chk.max_wilkins_residual = std::max(chk.max_wilkins_residual, chk.node_residuals[ni]);
    }
  }
  return chk;
}

}  // namespace jetlab
