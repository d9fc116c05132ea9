// Acceptance runner: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jetlab/config.hpp"
#include "jetlab/decomposition.hpp"
#include "jetlab/homogeneity.hpp"
#include "jetlab/jets.hpp"
#include "jetlab/kernel.hpp"
#include "jetlab/quotient.hpp"
#include "jetlab/report.hpp"
#include "jetlab/rng.hpp"
#include "jetlab/verify.hpp"
#include "support/fixtures.hpp"

using namespace jetlab;

namespace {

int g_failures = 0;

void record(int number, const std::string& what, bool pass, double value, double bound) {
  std::printf("[%s] criterion %2d: %-58s value %.3e  bound %.3e\n", pass ? "PASS" : "FAIL",
              number, what.c_str(), value, bound);
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> random_weights(int m, Rng& rng) {
  std::vector<double> w(m);
  for (double& x : w) x = rng.uniform(0.3, 3.0);
  return w;
}

// 1. closed-form mixed partials vs the finite-difference oracle
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    int m = 1 + (s % 4);
    ProductKernel k(random_weights(m, rng));
    std::vector<int> zo(m, 0), wo(m, 0);
    int total = 0;
    for (int j = 0; j < m; ++j) {
      zo[j] = rng.uniform_int(0, 3);
      wo[j] = rng.uniform_int(0, 3);
      total += zo[j] + wo[j];
    }
    while (total > 4) {
      int j = rng.uniform_int(0, m - 1);
      if (zo[j] > 0) {
        --zo[j];
        --total;
      } else if (wo[j] > 0) {
        --wo[j];
        --total;
      }
    }
    std::vector<Cx> zc(m), wc(m);
    for (int j = 0; j < m; ++j) {
      zc[j] = rng.annulus(0.25, 0.68);
      wc[j] = rng.annulus(0.25, 0.68);
    }
    Point z(zc), w(wc);
    DerivOrder d(zo, wo);
    Cx exact = mixed_partial(k, d, z, w);
    Cx fd = fd_mixed_partial(k, d, z, w).value;
    worst = std::max(worst, std::abs(exact - fd) / std::abs(exact));
  }
  // the order-(3,3) single-variable corner, deterministically
  {
    ProductKernel k({1.5});
    Point z({Cx(0.45, 0.2)}), w({Cx(0.3, -0.35)});
    Cx exact = mixed_partial(k, DerivOrder({3}, {3}), z, w);
    FdOptions opt;
    opt.h = 0.12;
    Cx fd = fd_mixed_partial(k, DerivOrder({3}, {3}), z, w, opt).value;
    worst = std::max(worst, std::abs(exact - fd) / std::abs(exact));
  }
  double secs = elapsed_s(t0);
  record(1, "derivative engine vs difference oracle", worst <= 1e-6 && secs <= 5.0, worst, 1e-6);
}

// 2. three-variable order-two fixtures: explicit JK, X, and blocks
void criterion_2() {
  Rng rng(1002);
  double a = rng.uniform(0.3, 3.0), b = rng.uniform(0.3, 3.0), c = rng.uniform(0.3, 3.0);
  ProductKernel k({a, b, c});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  Eigen::MatrixXcd x = fixtures::x3(b, c);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    Cx z = rng.disc(0.7), w = rng.disc(0.7);
    JetGram g = jet_gram(k, sub, 2, diagonal_point(3, z), diagonal_point(3, w));
    Eigen::MatrixXcd fixture = fixtures::jk3(a, b, c, z, w);
    double scale = fixture.cwiseAbs().maxCoeff();
    worst = std::max(worst, (g.entries - fixture).cwiseAbs().maxCoeff() / scale);

    Eigen::MatrixXcd conj = x * g.entries * x.adjoint();
    for (int r = 0; r < 2; ++r) {
      worst = std::max({worst, std::abs(conj(r, 2)) / scale, std::abs(conj(2, r)) / scale});
    }
    worst = std::max(worst, (conj.topLeftCorner(2, 2) - fixtures::jk3_block2(a, b, c, z, w))
                                .cwiseAbs()
                                .maxCoeff() /
                                scale);
    worst = std::max(worst, std::abs(conj(2, 2) - fixtures::jk3_block1(a, b, c, z, w)) / scale);
  }
  record(2, "explicit three-variable fixtures (JK, X, blocks)", worst < 1e-12, worst, 1e-12);
}

// 3. four-variable order-two fixture: fixture X gives the 3+1 split
void criterion_3() {
  Rng rng(1003);
  double a = rng.uniform(0.3, 3.0), b = rng.uniform(0.3, 3.0), c = rng.uniform(0.3, 3.0),
         d = rng.uniform(0.3, 3.0);
  ProductKernel k({a, b, c, d});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(4);
  Eigen::MatrixXcd x = fixtures::x4(b, c, d);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    Cx z = rng.disc(0.7), w = rng.disc(0.7);
    JetGram g = jet_gram(k, sub, 2, diagonal_point(4, z), diagonal_point(4, w));
    Eigen::MatrixXcd conj = x * g.entries * x.adjoint();
    double scale = conj.cwiseAbs().maxCoeff();
    for (int r = 0; r < 3; ++r) {
      worst = std::max({worst, std::abs(conj(r, 3)) / scale, std::abs(conj(3, r)) / scale});
    }
  }
  record(3, "explicit four-variable congruence (3+1 split)", worst < 1e-12, worst, 1e-12);
}

// 4. sigma orthogonality at n = 5
void criterion_4() {
  Rng rng(1004);
  std::vector<double> w = random_weights(3, rng);
  std::vector<Point> pts;
  for (int s = 0; s < 20; ++s) pts.push_back(diagonal_point(3, rng.disc(0.75)));
  double worst = verify_sigma_orthogonality(5, w, pts);
  record(4, "sigma frames mutually orthogonal (n = 5)", worst < 1e-10, worst, 1e-10);
}

// 5. sigma norm cross-check at the closed-form value
void criterion_5() {
  double gram = sigma_norm_sq(1, {1.0, 2.0, 3.0}, diagonal_point(3, Cx(0, 0)));
  double closed = sigma_norm_constant(1, 2.0, 3.0);
  double alternating = sigma_norm_constant_alternating(1, 2.0, 3.0);
  double worst = std::abs(gram - 30.0) / 30.0;
  std::printf("      diagnostics: gram %.12f  plain sum %.12f  alternating sum %.12f\n", gram,
              closed, alternating);
  record(5, "sigma_1 norm equals 30 = bc(b+c) at (2,3)",
         worst < 1e-12 && std::abs(closed - 30.0) < 1e-9 && std::abs(alternating - 30.0) > 1.0,
         worst, 1e-12);
}

// 6. decomposition bookkeeping across the desk-scale range
void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1006);
  double worst = 0.0;
  bool dims = true, constants = true;
  for (int m = 2; m <= 5; ++m) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<double> w = random_weights(m, rng);
      std::vector<Point> pts;
      for (int s = 0; s < 5; ++s) pts.push_back(diagonal_point(m, rng.disc(0.6)));
      DecompositionCheck chk = verify_orthogonal_decomposition(m, n, w, pts);
      dims = dims && chk.dims_ok;
      for (const auto& node : chk.nodes) constants = constants && node.kernel.constant > 0.0;
      worst = std::max({worst, chk.max_cross_residual, chk.max_wilkins_residual});
    }
  }
  double secs = elapsed_s(t0);
  record(6, "orthogonal decomposition (m <= 5, n <= 4)",
         dims && constants && worst < 1e-9 && secs <= 30.0, worst, 1e-9);
}

// 7. scalar homogeneity and the projective cocycle law
void criterion_7() {
  Rng rng(1007);
  std::vector<double> w = random_weights(3, rng);
  ProductKernel k(w);
  ScalarKernelFn kernel = [&](const Point& z, const Point& ww) { return eval_kernel(k, z, ww); };
  double worst_qi = 0.0;
  for (int s = 0; s < 100; ++s) {
    AutoTuple t;
    for (int j = 0; j < 3; ++j) t.maps.push_back(MobiusMap(rng.disc(0.6), rng.uniform(0, 0.6)));
    ScalarCocycle j = scalar_cocycle(t, w);
    std::vector<std::pair<Point, Point>> pairs = {
        {Point({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)}),
         Point({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)})}};
    worst_qi = std::max(
        worst_qi,
        verify_quasi_invariance(kernel, t, [&](const Point& z) { return j.eval(z); }, pairs));
  }

  double worst_law = 0.0;
  std::vector<Point> pts;
  for (int s = 0; s < 6; ++s) pts.push_back(Point({rng.disc(0.7), rng.disc(0.7), rng.disc(0.7)}));
  for (int s = 0; s < 16; ++s) {
    AutoTuple g, h;
    for (int j = 0; j < 3; ++j) {
      g.maps.push_back(MobiusMap(rng.disc(0.6), rng.uniform(0, 0.6)));
      h.maps.push_back(MobiusMap(rng.disc(0.6), rng.uniform(0, 0.6)));
    }
    CocycleLawCheck chk = verify_cocycle_identity(w, g, h, pts);
    worst_law = std::max({worst_law, chk.unimodularity, chk.phase_spread});
  }

  double worst_int = 0.0;
  std::vector<double> wi = {2.0, 1.0, 3.0};
  for (int s = 0; s < 16; ++s) {
    AutoTuple g, h;
    for (int j = 0; j < 3; ++j) {
      g.maps.push_back(MobiusMap(rng.disc(0.6), rng.uniform(0, 6.28)));
      h.maps.push_back(MobiusMap(rng.disc(0.6), rng.uniform(0, 6.28)));
    }
    worst_int = std::max(worst_int, verify_cocycle_identity(wi, g, h, pts).max_dev_from_one);
  }

  bool pass = worst_qi < 1e-10 && worst_law < 1e-10 && worst_int < 1e-12;
  record(7, "scalar quasi-invariance + projective cocycle law", pass,
         std::max(worst_qi, worst_law), 1e-10);
}

// 8. jet homogeneity at order two on the full diagonals of D^3 and D^4
void criterion_8() {
  double worst_kernel = 0.0, worst_rec = 0.0;
  for (int m : {3, 4}) {
    Rng rng(1008 + m);
    std::vector<double> w = random_weights(m, rng);
    ProductKernel kern(w);
    SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(m);
    MatrixKernelFn gram = [&](const Point& z, const Point& ww) {
      return jet_gram(kern, sub, 2, z, ww).entries;
    };
    for (int s = 0; s < 16; ++s) {
      MobiusMap phi(rng.disc(0.6), rng.uniform(0, 0.6));
      AutoTuple t;
      for (int j = 0; j < m; ++j) t.maps.push_back(phi);
      MatrixCocycle mc = jet_cocycle(t, w, sub, 2);
      std::vector<std::pair<Point, Point>> pairs;
      for (int p = 0; p < 8; ++p) {
        pairs.emplace_back(diagonal_point(m, rng.disc(0.55)), diagonal_point(m, rng.disc(0.55)));
      }
      worst_kernel =
          std::max(worst_kernel, verify_matrix_quasi_invariance(gram, t, mc.eval, pairs));
    }

    // cross-oracle: least-squares recovery vs the constructed cocycle
    MobiusMap phi(rng.disc(0.5), 0.4);
    AutoTuple t;
    for (int j = 0; j < m; ++j) t.maps.push_back(phi);
    MatrixCocycle mc = jet_cocycle(t, w, sub, 2);
    Point anchor = diagonal_point(m, Cx(0.17, 0.08));
    std::vector<Point> samples;
    for (int s = 0; s < 10; ++s) samples.push_back(diagonal_point(m, rng.disc(0.45)));
    RecoveredCocycle rc = recover_cocycle(gram, [&](const Point& p) { return t.apply(p); },
                                          jet_index_set(sub.codim(), 2), anchor, samples);
    Cx mu(0, 0);
    for (int s = 0; s < 5; ++s) {
      Point z = diagonal_point(m, rng.disc(0.45));
      Eigen::MatrixXcd aa = rc.eval(z), bb = mc.eval(z);
      if (s == 0) {
        Cx acc(0, 0);
        for (int i = 0; i < aa.rows(); ++i) {
          for (int jj = 0; jj < aa.cols(); ++jj) acc += aa(i, jj) * std::conj(bb(i, jj));
        }
        mu = acc / std::abs(acc);
      }
      worst_rec =
          std::max(worst_rec, (aa - mu * bb).cwiseAbs().maxCoeff() / bb.cwiseAbs().maxCoeff());
    }
  }
  record(8, "jet cocycle kernel identity (D^3, D^4, k = 2)", worst_kernel < 1e-8, worst_kernel,
         1e-8);
  record(8, "cocycle recovery cross-oracle", worst_rec < 1e-7, worst_rec, 1e-7);
}

// 9. quotient-kernel series reconstruction at P = 256
void criterion_9() {
  Rng rng(1009);
  std::vector<double> w = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
  ProductKernel k(w);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  SeriesGram g = series_gram(k, 2, 256);
  QuotientBasis basis = orthonormal_basis(g);
  double worst = 0.0;
  bool dominated = true;
  for (int s = 0; s < 30; ++s) {
    Cx z = rng.disc(0.5), ww = rng.disc(0.5);
    Reconstruction rec = quotient_kernel_from_basis(basis, g, z, ww, 256);
    JetGram jg = jet_gram(k, sub, 2, diagonal_point(3, z), diagonal_point(3, ww));
    double resid = (rec.matrix - jg.entries).cwiseAbs().maxCoeff();
    worst = std::max(worst, resid / jg.entries.cwiseAbs().maxCoeff());
    dominated = dominated && resid < rec.tail_bound + rec.rounding_bound;
  }
  record(9, "series reconstruction vs jet Gram (P = 256)", worst < 1e-6 && dominated, worst, 1e-6);
}

// 10. reducibility of the compressed operator at P = 40
void criterion_10() {
  std::vector<double> w = {1.0, 2.0, 3.0};
  ProductKernel k(w);
  SeriesGram g = series_gram(k, 2, 40);
  TruncatedOperator op = compressed_operator_matrix(g);
  CongruenceTransform ct = block_diagonalize(3, 2, w, diagonal_point(3, Cx(0, 0)));
  double comm = check_reducing_projection(op, g, ct.x, ct.grouping);

  Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(3, 3);
  double bad = check_reducing_projection(op, g, identity, {{0, 1}, {2}});
  record(10, "decomposition projections commute (P = 40)", comm < 1e-8 && bad > 1e3 * comm, comm,
         1e-8);
}

// 11. byte-identical verify-all reruns
void criterion_11() {
  RunConfig cfg = config_from_file(std::string(JETLAB_SOURCE_DIR) + "/configs/default.json");
  CommandOutput a = run_verify_all(cfg);
  CommandOutput b = run_verify_all(cfg);
  bool same = a.files == b.files && report_to_json_text(a.report) == report_to_json_text(b.report);
  record(11, "verify-all reruns byte-identical", same && a.report.all_pass(), same ? 0.0 : 1.0,
         0.5);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
