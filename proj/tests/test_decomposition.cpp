#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "jetlab/decomposition.hpp"
#include "jetlab/rng.hpp"
#include "jetlab/special.hpp"
#include "support/fixtures.hpp"

using namespace jetlab;

TEST_CASE("sigma frame coefficients") {
  SigmaFrame s0 = sigma_frame(0, 2.0, 3.0);
  REQUIRE(s0.coeffs.size() == 1);
  CHECK(s0.coeffs[0] == 1.0);

  // k = 1: gamma d2 - beta d3
  SigmaFrame s1 = sigma_frame(1, 2.0, 3.0);
  REQUIRE(s1.coeffs.size() == 2);
  CHECK(s1.coeffs[0] == doctest::Approx(3.0));
  CHECK(s1.coeffs[1] == doctest::Approx(-2.0));

  // k = 2: (c)_2 d2^2 - 2(b+1)(c+1) d2 d3 + (b)_2 d3^2
  double b = 1.7, c = 0.9;
  SigmaFrame s2 = sigma_frame(2, b, c);
  REQUIRE(s2.coeffs.size() == 3);
  CHECK(s2.coeffs[0] == doctest::Approx(pochhammer(c, 2)));
  CHECK(s2.coeffs[1] == doctest::Approx(-2.0 * (b + 1) * (c + 1)));
  CHECK(s2.coeffs[2] == doctest::Approx(pochhammer(b, 2)));
}

TEST_CASE("sigma norms from the Gram") {
  // k = 0 at the origin: the kernel value 1
  CHECK(sigma_norm_sq(0, {1.0, 2.0, 3.0}, diagonal_point(3, Cx(0, 0))) == doctest::Approx(1.0));

  // k = 1, (beta, gamma) = (2, 3) at 0: bc(b+c) = 30
  CHECK(sigma_norm_sq(1, {1.0, 2.0, 3.0}, diagonal_point(3, Cx(0, 0))) ==
        doctest::Approx(30.0).epsilon(1e-12));

  // the alternating-sign closed form disagrees already here
  CHECK(sigma_norm_constant(1, 2.0, 3.0) == doctest::Approx(30.0));
  CHECK(sigma_norm_constant_alternating(1, 2.0, 3.0) == doctest::Approx(6.0));

  // general k: Gram value = constant * (1-|w1|^2)^(-a) (1-|w2|^2)^(-b-c-2k),
  // w on {w2 = w3} with w1 free
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> w = {rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)};
    Cx w1 = rng.disc(0.7), t = rng.disc(0.7);
    Point p({w1, t, t});
    for (int k = 0; k <= 3; ++k) {
      double gram = sigma_norm_sq(k, w, p);
      double closed = sigma_norm_constant(k, w[1], w[2]) *
                      std::pow(1.0 - std::norm(w1), -w[0]) *
                      std::pow(1.0 - std::norm(t), -w[1] - w[2] - 2.0 * k);
      CHECK(std::abs(gram - closed) / closed < 1e-11);
    }
  }
}

TEST_CASE("sigma norm w-dependence is exactly the stated power factor") {
  std::vector<double> w = {0.9, 2.2, 1.4};
  Rng rng(32);
  double reference = -1.0;
  for (int s = 0; s < 10; ++s) {
    Cx w1 = rng.disc(0.75), t = rng.disc(0.75);
    Point p({w1, t, t});
    int k = 2;
    double v = sigma_norm_sq(k, w, p) * std::pow(1.0 - std::norm(w1), w[0]) *
               std::pow(1.0 - std::norm(t), w[1] + w[2] + 2.0 * k);
    if (reference < 0) reference = v;
    CHECK(std::abs(v - reference) / reference < 1e-11);
  }
}

TEST_CASE("sigma orthogonality on the diagonal") {
  Rng rng(33);
  std::vector<double> w = {rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)};
  std::vector<Point> pts;
  for (int s = 0; s < 20; ++s) {
    Cx t = rng.disc(0.75);
    pts.push_back(Point({rng.disc(0.75), t, t}));
  }
  CHECK(verify_sigma_orthogonality(5, w, pts) < 1e-10);
  CHECK(verify_sigma_orthogonality(6, w, pts) < 1e-10);
  CHECK_THROWS_AS(verify_sigma_orthogonality(7, w, pts), std::invalid_argument);

  // anti-test: off the {w2 = w3} set the pairings are far from zero
  ProductKernel k(w);
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  Point bad({Cx(0.1, 0.0), Cx(0.4, 0.0), Cx(-0.2, 0.3)});
  JetGram g = jet_gram(k, sub, 2, bad, bad);
  SigmaFrame s1 = sigma_frame(1, w[1], w[2]);
  FrameVector v0 = frame_delta(g.index_set, {0, 0});
  FrameVector v1{g.index_set, Eigen::VectorXcd::Zero(3)};
  v1.coeffs(1) = s1.coeffs[0];
  v1.coeffs(2) = s1.coeffs[1];
  double cross = std::abs(frame_inner(v0, v1, g)) /
                 std::sqrt(frame_inner(v0, v0, g).real() * frame_inner(v1, v1, g).real());
  CHECK(cross > 1e-3);
}

TEST_CASE("decomposition tree bookkeeping") {
  std::vector<double> w3 = {1.0, 2.0, 3.0};
  auto nodes = decomposition_tree(3, 2, w3);
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0].ell == std::vector<int>{0});
  CHECK(nodes[0].jet_order == 2);
  CHECK(nodes[0].kernel.exp_first == doctest::Approx(1.0));
  CHECK(nodes[0].kernel.exp_rest == doctest::Approx(5.0));
  CHECK(nodes[0].kernel.constant == doctest::Approx(1.0));
  CHECK(nodes[1].ell == std::vector<int>{1});
  CHECK(nodes[1].jet_order == 1);
  CHECK(nodes[1].kernel.exp_rest == doctest::Approx(7.0));
  CHECK(nodes[1].kernel.constant == doctest::Approx(30.0));

  auto nodes3 = decomposition_tree(3, 3, w3);
  REQUIRE(nodes3.size() == 3);
  CHECK(nodes3[0].jet_order == 3);
  CHECK(nodes3[1].jet_order == 2);
  CHECK(nodes3[2].jet_order == 1);

  // m = 4, n = 2: nested order (l2, l1) = (0,0), (0,1), (1,0)
  std::vector<double> w4 = {1.0, 2.0, 3.0, 1.5};
  auto nodes4 = decomposition_tree(4, 2, w4);
  REQUIRE(nodes4.size() == 3);
  CHECK(nodes4[0].ell == std::vector<int>{0, 0});
  CHECK(nodes4[0].jet_order == 2);
  CHECK(nodes4[1].ell == std::vector<int>{1, 0});
  CHECK(nodes4[1].jet_order == 1);
  CHECK(nodes4[2].ell == std::vector<int>{0, 1});
  CHECK(nodes4[2].jet_order == 1);
  CHECK(nodes4[0].kernel.exp_rest == doctest::Approx(2.0 + 3.0 + 1.5));

  // m = 2 has the single trivial node
  auto nodes2 = decomposition_tree(2, 3, {1.0, 2.0});
  REQUIRE(nodes2.size() == 1);
  CHECK(nodes2[0].jet_order == 3);
  CHECK(nodes2[0].kernel.constant == doctest::Approx(1.0));
}

TEST_CASE("dimension bookkeeping and positivity across the desk-scale range") {
  Rng rng(34);
  for (int m = 2; m <= 5; ++m) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<double> w;
      for (int j = 0; j < m; ++j) w.push_back(rng.uniform(0.3, 3.0));
      auto nodes = decomposition_tree(m, n, w);
      int total = 0;
      for (const auto& node : nodes) {
        total += node.jet_order;
        CHECK(node.jet_order >= 1);
        CHECK(node.kernel.constant > 0.0);
        // Gram-derived constant vs the stagewise non-alternating closed form
        CHECK(std::abs(node.kernel.constant - node.constant_stagewise) /
                  node.constant_stagewise <
              1e-10);
      }
      CHECK(total == jet_index_set(m - 1, n).size());
    }
  }
}

TEST_CASE("stagewise closed forms for the four-variable split") {
  // (l1, l2) = (0, 1): sigma = delta d3 - gamma d4, constant cd(c+d)
  // (l1, l2) = (1, 0): sigma on (d2, d3+d4), constant b(c+d)(b+c+d)
  double b = 2.0, c = 3.0, d = 1.5;
  std::vector<double> w4 = {1.0, b, c, d};
  auto nodes4 = decomposition_tree(4, 2, w4);
  CHECK(nodes4[1].kernel.constant == doctest::Approx(b * (c + d) * (b + c + d)));
  CHECK(nodes4[2].kernel.constant == doctest::Approx(c * d * (c + d)));
}

TEST_CASE("wilkins kernels") {
  std::vector<double> w = {1.1, 2.0, 3.0};
  WilkinsKernel k0 = wilkins_kernel(3, 2, {0}, w);
  CHECK(k0.exp_first == doctest::Approx(1.1));
  CHECK(k0.exp_rest == doctest::Approx(5.0));
  CHECK(k0.constant == doctest::Approx(1.0));

  WilkinsKernel k1 = wilkins_kernel(3, 2, {1}, w);
  CHECK(k1.exp_rest == doctest::Approx(7.0));
  CHECK(k1.constant == doctest::Approx(30.0));

  std::vector<double> w4 = {1.0, 0.5, 0.75, 1.25};
  WilkinsKernel k00 = wilkins_kernel(4, 2, {0, 0}, w4);
  CHECK(k00.exp_rest == doctest::Approx(0.5 + 0.75 + 1.25));

  CHECK_THROWS_AS(wilkins_kernel(3, 2, {2}, w), std::invalid_argument);
  CHECK_THROWS_AS(wilkins_kernel(3, 2, {0, 0}, w), std::invalid_argument);
}

TEST_CASE("congruence against the explicit order-two fixtures") {
  double a = 1.3, b = 2.0, c = 3.0;
  CongruenceTransform t = block_diagonalize(3, 2, {a, b, c}, diagonal_point(3, Cx(0.31, -0.12)));
  CHECK(t.off_block_residual < 1e-12);
  REQUIRE(t.grouping.size() == 2);

  // row-equivalence to the fixture X after first-nonzero scaling
  Eigen::MatrixXcd fixture = fixtures::x3(b, c);
  auto scale_rows = [](Eigen::MatrixXcd x) {
    for (int r = 0; r < x.rows(); ++r) {
      for (int cc = 0; cc < x.cols(); ++cc) {
        if (std::abs(x(r, cc)) > 1e-12) {
          x.row(r) /= x(r, cc);
          break;
        }
      }
    }
    return x;
  };
  Eigen::MatrixXcd ours = scale_rows(t.x);
  Eigen::MatrixXcd theirs = scale_rows(fixture);
  // same rows, possibly in another order within blocks; compare as sets
  for (int r = 0; r < 3; ++r) {
    double best = 1e9;
    for (int s = 0; s < 3; ++s) best = std::min(best, (ours.row(r) - theirs.row(s)).cwiseAbs().maxCoeff());
    CHECK(best < 1e-12);
  }

  // the fixture X itself block-diagonalizes the engine Gram, and the surviving
  // blocks take the expected closed forms
  Rng rng(35);
  ProductKernel kern({a, b, c});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  for (int s = 0; s < 10; ++s) {
    Cx z = rng.disc(0.7), w = rng.disc(0.7);
    JetGram g = jet_gram(kern, sub, 2, diagonal_point(3, z), diagonal_point(3, w));
    Eigen::MatrixXcd conjd = fixture * g.entries * fixture.adjoint();
    double scale = conjd.cwiseAbs().maxCoeff();
    CHECK(std::abs(conjd(0, 2)) / scale < 1e-12);
    CHECK(std::abs(conjd(1, 2)) / scale < 1e-12);
    CHECK(std::abs(conjd(2, 0)) / scale < 1e-12);
    CHECK(std::abs(conjd(2, 1)) / scale < 1e-12);
    Eigen::MatrixXcd b2 = fixtures::jk3_block2(a, b, c, z, w);
    CHECK((conjd.topLeftCorner(2, 2) - b2).cwiseAbs().maxCoeff() / scale < 1e-12);
    CHECK(std::abs(conjd(2, 2) - fixtures::jk3_block1(a, b, c, z, w)) / scale < 1e-12);
  }
}

TEST_CASE("order-three congruence fixture on three variables") {
  double a = 0.9, b = 1.6, c = 2.3;
  ProductKernel kern({a, b, c});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  Eigen::MatrixXcd x = fixtures::x3_order3(b, c);
  Rng rng(36);
  // grouping: rows {0,1,2} (order-3 jet), {3,4} (order-2 jet), {5}
  std::vector<std::vector<int>> groups = {{0, 1, 2}, {3, 4}, {5}};
  for (int s = 0; s < 8; ++s) {
    Cx z = rng.disc(0.65), w = rng.disc(0.65);
    JetGram g = jet_gram(kern, sub, 3, diagonal_point(3, z), diagonal_point(3, w));
    Eigen::MatrixXcd conjd = x * g.entries * x.adjoint();
    double scale = conjd.cwiseAbs().maxCoeff();
    for (auto& gi : groups) {
      for (auto& gj : groups) {
        if (&gi == &gj) continue;
        for (int r : gi) {
          for (int cc : gj) CHECK(std::abs(conjd(r, cc)) / scale < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("congruence fixture on four variables") {
  double a = 1.2, b = 2.0, c = 3.0, d = 1.5;
  CongruenceTransform t =
      block_diagonalize(4, 2, {a, b, c, d}, diagonal_point(4, Cx(0.2, 0.22)));
  CHECK(t.off_block_residual < 1e-12);

  Eigen::MatrixXcd fixture = fixtures::x4(b, c, d);
  ProductKernel kern({a, b, c, d});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(4);
  Rng rng(37);
  for (int s = 0; s < 10; ++s) {
    Cx z = rng.disc(0.7), w = rng.disc(0.7);
    JetGram g = jet_gram(kern, sub, 2, diagonal_point(4, z), diagonal_point(4, w));
    Eigen::MatrixXcd conjd = fixture * g.entries * fixture.adjoint();
    double scale = conjd.cwiseAbs().maxCoeff();
    // 3 + 1 split: the last fixture row is orthogonal to the rest
    for (int r = 0; r < 3; ++r) {
      CHECK(std::abs(conjd(r, 3)) / scale < 1e-12);
      CHECK(std::abs(conjd(3, r)) / scale < 1e-12);
    }
    // and rows {0,1} split from row 2 as well (the second collapse)
    CHECK(std::abs(conjd(0, 2)) / scale < 1e-12);
    CHECK(std::abs(conjd(2, 0)) / scale < 1e-12);
    CHECK(std::abs(conjd(1, 2)) / scale < 1e-12);
    CHECK(std::abs(conjd(2, 1)) / scale < 1e-12);
  }

  // our rows match the fixture rows after scaling, as sets
  auto scale_rows = [](Eigen::MatrixXcd x) {
    for (int r = 0; r < x.rows(); ++r) {
      for (int cc = 0; cc < x.cols(); ++cc) {
        if (std::abs(x(r, cc)) > 1e-12) {
          x.row(r) /= x(r, cc);
          break;
        }
      }
    }
    return x;
  };
  Eigen::MatrixXcd ours = scale_rows(t.x), theirs = scale_rows(fixture);
  for (int r = 0; r < 4; ++r) {
    double best = 1e9;
    for (int s = 0; s < 4; ++s) best = std::min(best, (ours.row(r) - theirs.row(s)).cwiseAbs().maxCoeff());
    CHECK(best < 1e-12);
  }
}

TEST_CASE("trivial congruence for first order jets") {
  CongruenceTransform t = block_diagonalize(2, 1, {1.0, 2.0}, diagonal_point(2, Cx(0.4, 0.0)));
  REQUIRE(t.x.rows() == 1);
  CHECK(t.x(0, 0) == Cx(1.0, 0.0));
  CHECK(t.off_block_residual == 0.0);
}

TEST_CASE("congruence is base-point independent") {
  Rng rng(38);
  auto first = block_diagonalize(4, 3, {0.8, 1.7, 2.6, 1.1}, diagonal_point(4, rng.disc(0.6)));
  auto second = block_diagonalize(4, 3, {0.8, 1.7, 2.6, 1.1}, diagonal_point(4, rng.disc(0.6)));
  CHECK((first.x - second.x).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(first.condition_number < 1e6);
}

TEST_CASE("orthogonal decomposition verification") {
  Rng rng(39);
  std::vector<Point> pts;
  for (int s = 0; s < 20; ++s) pts.push_back(diagonal_point(3, rng.disc(0.7)));
  double a = 1.0, b = 2.0, c = 3.0;
  DecompositionCheck chk = verify_orthogonal_decomposition(3, 2, {a, b, c}, pts);
  CHECK(chk.dims_ok);
  CHECK(chk.max_cross_residual < 1e-9);
  CHECK(chk.max_wilkins_residual < 1e-9);

  // the rank-one component Gram equals bc(b+c)(1-|t|^2)^(-a-b-c-2) on the diagonal
  ProductKernel kern({a, b, c});
  SubmanifoldSpec sub = SubmanifoldSpec::full_diagonal(3);
  Cx t = rng.disc(0.7);
  JetGram g = jet_gram(kern, sub, 2, diagonal_point(3, t), diagonal_point(3, t));
  auto nodes = decomposition_tree(3, 2, {a, b, c});
  Cx val = frame_inner(nodes[1].frame[0], nodes[1].frame[0], g);
  double expect = b * c * (b + c) * std::pow(1.0 - std::norm(t), -a - b - c - 2.0);
  CHECK(std::abs(val.real() - expect) / expect < 1e-11);

  CHECK_THROWS_AS(
      verify_orthogonal_decomposition(3, 2, {a, b, c},
                                      {Point({Cx(0.1, 0), Cx(0.2, 0), Cx(0.1, 0)})}),
      std::domain_error);
}
