#include "jetlab/jets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "jetlab/special.hpp"

namespace jetlab {

int multi_total(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

SubmanifoldSpec SubmanifoldSpec::coordinate_plane(int m, int d) {
  if (d < 1 || d > m) throw std::invalid_argument("coordinate_plane: need 1 <= d <= m");
  return {SubmanifoldKind::CoordinatePlane, m, d};
}

SubmanifoldSpec SubmanifoldSpec::diagonal(int m, int d) {
  if (d < 2 || d > m) throw std::invalid_argument("diagonal: need 2 <= d <= m");
  return {SubmanifoldKind::Diagonal, m, d};
}

int SubmanifoldSpec::codim() const {
  return kind == SubmanifoldKind::CoordinatePlane ? d : d - 1;
}

std::vector<int> SubmanifoldSpec::transverse_coords() const {
  std::vector<int> t;
  if (kind == SubmanifoldKind::CoordinatePlane) {
    for (int i = 0; i < d; ++i) t.push_back(i);
  } else {
    for (int i = 1; i < d; ++i) t.push_back(i);
  }
  return t;
}

bool SubmanifoldSpec::contains(const Point& p, double tol) const {
  if (p.dim() != m) return false;
  if (kind == SubmanifoldKind::CoordinatePlane) {
    for (int i = 0; i < d; ++i) {
      if (std::abs(p.coords[i]) > tol) return false;
    }
  } else {
    for (int i = 1; i < d; ++i) {
      if (std::abs(p.coords[i] - p.coords[0]) > tol) return false;
    }
  }
  return true;
}

namespace {

// Colex ascending within a grade: last coordinate slowest, recursively colex
// on the prefix. Grade 2 in codim 3: (2,0,0),(1,1,0),(0,2,0),(1,0,1),(0,1,1),(0,0,2).
std::vector<MultiIndex> colex_grade(int codim, int grade) {
  std::vector<MultiIndex> out;
  if (codim == 1) {
    out.push_back({grade});
    return out;
  }
  for (int last = 0; last <= grade; ++last) {
    for (MultiIndex prefix : colex_grade(codim - 1, grade - last)) {
      prefix.push_back(last);
      out.push_back(std::move(prefix));
    }
  }
  return out;
}

}  // namespace

JetIndexSet jet_index_set(int codim, int k) {
  if (codim < 0 || k < 1) throw std::invalid_argument("jet_index_set: need codim >= 0, k >= 1");
  JetIndexSet a;
  a.codim = codim;
  a.order = k;
  if (codim == 0) {
    a.indices.push_back(MultiIndex{});
    return a;
  }
  for (int grade = 0; grade < k; ++grade) {
    auto level = colex_grade(codim, grade);
    a.indices.insert(a.indices.end(), level.begin(), level.end());
  }
  return a;
}

int JetIndexSet::position(const MultiIndex& a) const {
  for (int i = 0; i < size(); ++i) {
    if (indices[i] == a) return i;
  }
  return -1;
}

namespace {

DerivOrder embed_orders(const SubmanifoldSpec& sub, const MultiIndex& za, const MultiIndex& wb,
                        int cap) {
  std::vector<int> zo(sub.m, 0), wo(sub.m, 0);
  auto tv = sub.transverse_coords();
  for (std::size_t i = 0; i < tv.size(); ++i) {
    zo[tv[i]] = za[i];
    wo[tv[i]] = wb[i];
  }
  return DerivOrder(zo, wo, cap);
}

}  // namespace

JetGram jet_gram(const ProductKernel& k, const SubmanifoldSpec& sub, int order, const Point& z,
                 const Point& w, bool restricted) {
  if (k.factors() != sub.m) throw std::invalid_argument("jet_gram: kernel/submanifold mismatch");
  if (restricted && (!sub.contains(z) || !sub.contains(w))) {
    throw std::domain_error("jet_gram: restricted Gram needs points on the submanifold");
  }
  JetGram g;
  g.base_z = z;
  g.base_w = w;
  g.index_set = jet_index_set(sub.codim(), order);
  int n = g.index_set.size();
  g.entries.resize(n, n);
  int cap = std::max(kMaxDerivOrder, 2 * (order - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g.entries(i, j) = mixed_partial(
          k, embed_orders(sub, g.index_set.indices[i], g.index_set.indices[j], cap), z, w);
    }
  }
  return g;
}

FrameVector frame_delta(const JetIndexSet& a, const MultiIndex& at, Cx value) {
  int pos = a.position(at);
  if (pos < 0) throw std::invalid_argument("frame_delta: index not in set");
  FrameVector v{a, Eigen::VectorXcd::Zero(a.size())};
  v.coeffs(pos) = value;
  return v;
}

Cx frame_inner(const FrameVector& u, const FrameVector& v, const JetGram& g) {
  if (!u.index_set.same_shape(g.index_set) || !v.index_set.same_shape(g.index_set)) {
    throw std::invalid_argument("frame_inner: index-set mismatch");
  }
  return (u.coeffs.transpose() * g.entries * v.coeffs.conjugate())(0, 0);
}

namespace {

Eigen::MatrixXcd action_matrix_from(const JetIndexSet& a,
                                    const std::function<Cx(const MultiIndex&)>& jet_of_f) {
  int n = a.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const MultiIndex& al = a.indices[r];
      const MultiIndex& be = a.indices[c];
      bool leq = true;
      double binom = 1.0;
      MultiIndex diff(al.size());
      for (std::size_t i = 0; i < al.size(); ++i) {
        if (be[i] > al[i]) {
          leq = false;
          break;
        }
        diff[i] = al[i] - be[i];
        binom *= binomial(al[i], be[i]);
      }
      if (!leq) continue;
      m(r, c) = binom * jet_of_f(diff);
    }
  }
  return m;
}

}  // namespace

ModuleActionMatrix module_action_matrix(const Polynomial& f, const SubmanifoldSpec& sub, int order,
                                        const Point& z) {
  if (f.vars() != sub.m) throw std::invalid_argument("module_action_matrix: arity mismatch");
  ModuleActionMatrix out;
  out.index_set = jet_index_set(sub.codim(), order);
  auto tv = sub.transverse_coords();
  // cache transverse derivatives of f at z
  std::map<MultiIndex, Cx> jets;
  for (const MultiIndex& a : out.index_set.indices) {
    Polynomial g = f;
    for (std::size_t i = 0; i < tv.size(); ++i) {
      for (int rep = 0; rep < a[i]; ++rep) g = g.derivative(tv[i]);
    }
    jets[a] = g.eval(z);
  }
  out.f_jets = jets;
  out.matrix = action_matrix_from(out.index_set, [&](const MultiIndex& d) { return jets.at(d); });
  return out;
}

ModuleActionMatrix module_action_matrix_from_jets(const std::map<MultiIndex, Cx>& f_jets, int codim,
                                                  int order) {
  ModuleActionMatrix out;
  out.index_set = jet_index_set(codim, order);
  out.f_jets = f_jets;
  out.matrix = action_matrix_from(out.index_set, [&](const MultiIndex& d) {
    auto it = f_jets.find(d);
    if (it == f_jets.end()) throw std::invalid_argument("module_action: missing derivative data");
    return it->second;
  });
  return out;
}

FrameVector function_jet(const Polynomial& h, const SubmanifoldSpec& sub, int order,
                         const Point& z) {
  if (h.vars() != sub.m) throw std::invalid_argument("function_jet: arity mismatch");
  JetIndexSet a = jet_index_set(sub.codim(), order);
  auto tv = sub.transverse_coords();
  FrameVector v{a, Eigen::VectorXcd::Zero(a.size())};
  for (int i = 0; i < a.size(); ++i) {
    Polynomial g = h;
    for (std::size_t s = 0; s < tv.size(); ++s) {
      for (int rep = 0; rep < a.indices[i][s]; ++rep) g = g.derivative(tv[s]);
    }
    v.coeffs(i) = g.eval(z);
  }
  return v;
}

Cx directional_mixed_partial(const ProductKernel& k, const std::vector<Eigen::VectorXcd>& z_dirs,
                             const std::vector<Eigen::VectorXcd>& w_dirs, const Point& z,
                             const Point& w) {
  int m = k.factors();
  std::size_t nz = z_dirs.size(), nw = w_dirs.size();
  std::vector<int> pick(nz + nw, 0);
  Cx out(0.0, 0.0);
  while (true) {
    Cx coeff(1.0, 0.0);
    std::vector<int> zo(m, 0), wo(m, 0);
    for (std::size_t s = 0; s < nz; ++s) {
      coeff *= z_dirs[s](pick[s]);
      zo[pick[s]] += 1;
    }
    for (std::size_t s = 0; s < nw; ++s) {
      coeff *= w_dirs[s](pick[nz + s]);
      wo[pick[nz + s]] += 1;
    }
    if (coeff != Cx(0.0, 0.0)) out += coeff * mixed_partial(k, DerivOrder(zo, wo), z, w);
    // next assignment in mixed radix base m
    std::size_t s = 0;
    for (; s < pick.size(); ++s) {
      if (++pick[s] < m) break;
      pick[s] = 0;
    }
    if (s == pick.size()) break;
  }
  return out;
}

HoloMap affine_map(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("affine_map: shape mismatch");
  }
  Eigen::MatrixXcd inv = a.partialPivLu().inverse();
  HoloMap h;
  h.affine = true;
  h.fwd_linear = a;
  h.fwd_offset = b;
  h.forward = [a, b](const Point& p) {
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(p.coords.data(), p.dim());
    Eigen::VectorXcd r = a * v + b;
    return Point(std::vector<Cx>(r.data(), r.data() + r.size()));
  };
  h.inverse = [inv, b](const Point& p) {
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(p.coords.data(), p.dim());
    Eigen::VectorXcd r = inv * (v - b);
    return Point(std::vector<Cx>(r.data(), r.data() + r.size()));
  };
  return h;
}

Cx PullbackKernel::eval(const Point& z, const Point& w) const {
  return eval_kernel(base_, map_.inverse(z), map_.inverse(w));
}

Cx PullbackKernel::mixed(const DerivOrder& d, const Point& z, const Point& w) const {
  Point pz = map_.inverse(z), pw = map_.inverse(w);
  if (map_.affine) {
    Eigen::MatrixXcd binv = map_.fwd_linear.partialPivLu().inverse();
    std::vector<Eigen::VectorXcd> zd, wd;
    for (int j = 0; j < base_.factors(); ++j) {
      for (int rep = 0; rep < d.z_orders[j]; ++rep) zd.push_back(binv.col(j));
      for (int rep = 0; rep < d.w_orders[j]; ++rep) wd.push_back(binv.col(j).conjugate());
    }
    return directional_mixed_partial(base_, zd, wd, pz, pw);
  }
  // non-affine: finite differences in the new coordinates
  int m = base_.factors();
  std::vector<Cx> vars(2 * m);
  std::vector<int> orders(2 * m);
  for (int j = 0; j < m; ++j) {
    vars[j] = z.coords[j];
    vars[m + j] = std::conj(w.coords[j]);
    orders[j] = d.z_orders[j];
    orders[m + j] = d.w_orders[j];
  }
  auto f = [&](const std::vector<Cx>& v) {
    Point az(std::vector<Cx>(v.begin(), v.begin() + m));
    std::vector<Cx> wc(m);
    for (int j = 0; j < m; ++j) wc[j] = std::conj(v[m + j]);
    return eval(az, Point(wc));
  };
  return fd_mixed_partial_fn(f, orders, vars).value;
}

PullbackKernel pullback_kernel(const ProductKernel& k1, const HoloMap& theta,
                               const std::vector<Point>& roundtrip_samples) {
  for (const Point& p : roundtrip_samples) {
    Point back = theta.forward(theta.inverse(p));
    for (int j = 0; j < p.dim(); ++j) {
      if (std::abs(back.coords[j] - p.coords[j]) > 1e-10) {
        throw std::invalid_argument("pullback_kernel: round-trip failure beyond 1e-10");
      }
    }
  }
  return PullbackKernel(k1, theta);
}

}  // namespace jetlab
