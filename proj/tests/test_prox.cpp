#include <catch2/catch.hpp>

#include "corrcs/prox.hpp"
#include "support/oracles.hpp"

using namespace corrcs;
using corrcs::testing::prox_oracle_1d;

namespace {

Vec scalar(double v) {
  Vec out(1);
  out << v;
  return out;
}

}  // namespace

TEST_CASE("soft thresholding basics") {
  Vec q(2);
  q << 0.0, 0.0;
  REQUIRE(prox_l1(q, 1.0).isZero(0.0));

  q << 2.0, -2.0;
  const Vec r = prox_l1(q, 0.5);
  REQUIRE(r[0] == 1.5);
  REQUIRE(r[1] == -1.5);

  REQUIRE(prox_l1(scalar(0.3), 0.5)[0] == 0.0);
  REQUIRE_THROWS_AS(prox_l1(q, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(prox_l1(q, -1.0), std::invalid_argument);
}

TEST_CASE("max_corr prox equals shifted soft thresholding exactly") {
  Substream rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    const Index n = 1 + rng.next_index(8);
    const Vec q = testing::gaussian_vec(rng, n);
    const Vec p = testing::uniform_vec(rng, n, -2.0, 2.0);
    const double t = 0.1 + rng.next_unit();
    REQUIRE(prox_max_corr(q, t, p) == prox_l1(q + t * p, t));
  }
  Vec q(2), p(3);
  REQUIRE_THROWS_AS(prox_max_corr(q, 1.0, p), std::invalid_argument);
}

TEST_CASE("max_corr prox frozen 1d values") {
  // argmin |w| - 0.5 w + (w-1)^2/2 = 0.5, verified by the grid oracle
  REQUIRE(prox_max_corr(scalar(1.0), 1.0, scalar(0.5))[0] == Approx(0.5).margin(1e-12));
  REQUIRE(prox_max_corr(scalar(-1.0), 1.0, scalar(-0.5))[0] == Approx(-0.5).margin(1e-12));
  const double w = prox_oracle_1d([](double v) { return std::abs(v) - 0.5 * v; }, 1.0, 1.0);
  REQUIRE(w == Approx(0.5).margin(2e-5));
}

TEST_CASE("l1_l2 prox reductions and limits") {
  Substream rng(22);
  const Vec q = testing::gaussian_vec(rng, 6);
  REQUIRE(prox_l1_l2(q, 0.7, Vec::Zero(6), 0.0) == prox_l1(q, 0.7));

  // strong prior pulls the answer onto phi
  REQUIRE(prox_l1_l2(scalar(2.0), 1.0, scalar(2.0), 100.0)[0] == Approx(2.0).margin(0.02));
  REQUIRE(prox_l1_l2(scalar(0.0), 1.0, scalar(0.0), 3.0)[0] == 0.0);
}

TEST_CASE("l1_l1 prox frozen values and reduction") {
  Substream rng(23);
  const Vec q = testing::gaussian_vec(rng, 6);
  REQUIRE(prox_l1_l1(q, 0.7, Vec::Zero(6), 0.0) == prox_l1(q, 0.7));

  // kink at phi wins
  REQUIRE(prox_l1_l1(scalar(1.0), 0.3, scalar(1.0), 1.0)[0] == Approx(1.0).margin(1e-12));
  // smooth-piece solution q - t(1 + lambda)
  REQUIRE(prox_l1_l1(scalar(5.0), 1.0, scalar(1.0), 1.0)[0] == Approx(3.0).margin(1e-12));
  const double w =
      prox_oracle_1d([](double v) { return std::abs(v) + std::abs(v - 1.0); }, 5.0, 1.0);
  REQUIRE(w == Approx(3.0).margin(2e-5));
}

TEST_CASE("l1_l1 prox is pulled onto the prior for large lambda") {
  REQUIRE(prox_l1_l1(scalar(0.3), 1.0, scalar(2.0), 50.0)[0] == 2.0);  // kink at phi wins outright
}

TEST_CASE("objective and subgradient agree by finite differences") {
  Substream rng(27);
  const Index n = 6;
  const Vec phi = testing::uniform_vec(rng, n, -2.0, 2.0);
  const Vec p = testing::uniform_vec(rng, n, -1.5, 1.5);
  const Regularizer regs[] = {Regularizer::lasso(), Regularizer::max_corr(PriorShift{p}),
                              Regularizer::l1_l1(phi, 0.7), Regularizer::l1_l2(phi, 1.4)};
  for (const Regularizer& reg : regs) {
    for (int rep = 0; rep < 50; ++rep) {
      const Vec x = testing::gaussian_vec(rng, n);  // off the kinks a.s.
      const Vec d = testing::gaussian_vec(rng, n);
      const double fd = (reg.objective(x + 1e-7 * d) - reg.objective(x)) / 1e-7;
      REQUIRE(reg.subgradient(x).dot(d) == Approx(fd).margin(1e-4));
    }
  }
}

TEST_CASE("grid oracle sanity") {
  REQUIRE(prox_oracle_1d([](double w) { return std::abs(w); }, 0.0, 1.0) == 0.0);
  REQUIRE(prox_oracle_1d([](double w) { return std::abs(w); }, 2.0, 0.5) ==
          Approx(1.5).margin(2e-5));
}

TEST_CASE("closed-form proxes match the 1d grid oracle") {
  Substream rng(24);
  const int kDraws = 200;  // the acceptance suite runs the full 1000 per kind
  for (int rep = 0; rep < kDraws; ++rep) {
    const double q = -5.0 + 10.0 * rng.next_unit();
    const double t = 0.05 + 4.95 * rng.next_unit();
    const double phi = -5.0 + 10.0 * rng.next_unit();
    const double lam = 5.0 * rng.next_unit();
    const double p = -5.0 + 10.0 * rng.next_unit();

    REQUIRE(prox_l1(scalar(q), t)[0] ==
            Approx(prox_oracle_1d([](double w) { return std::abs(w); }, q, t)).margin(1e-4));
    REQUIRE(prox_max_corr(scalar(q), t, scalar(p))[0] ==
            Approx(prox_oracle_1d([p](double w) { return std::abs(w) - p * w; }, q, t))
                .margin(1e-4));
    REQUIRE(prox_l1_l2(scalar(q), t, scalar(phi), lam)[0] ==
            Approx(prox_oracle_1d(
                       [phi, lam](double w) {
                         return std::abs(w) + 0.5 * lam * (w - phi) * (w - phi);
                       },
                       q, t))
                .margin(1e-4));
    REQUIRE(prox_l1_l1(scalar(q), t, scalar(phi), lam)[0] ==
            Approx(prox_oracle_1d(
                       [phi, lam](double w) {
                         return std::abs(w) + lam * std::abs(w - phi);
                       },
                       q, t))
                .margin(1e-4));
  }
}

TEST_CASE("all proxes are nonexpansive") {
  Substream rng(25);
  const Index n = 5;
  const Vec phi = testing::uniform_vec(rng, n, -3.0, 3.0);
  const Vec p = testing::uniform_vec(rng, n, -2.0, 2.0);
  const Regularizer regs[] = {Regularizer::lasso(), Regularizer::max_corr(PriorShift{p}),
                              Regularizer::l1_l1(phi, 1.3), Regularizer::l1_l2(phi, 0.8)};
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec q1 = testing::gaussian_vec(rng, n) * 3.0;
    const Vec q2 = testing::gaussian_vec(rng, n) * 3.0;
    const double t = 0.05 + 2.0 * rng.next_unit();
    for (const Regularizer& reg : regs) {
      const double lhs = (reg.prox(q1, t) - reg.prox(q2, t)).norm();
      REQUIRE(lhs <= (q1 - q2).norm() + 1e-12);
    }
  }
}

TEST_CASE("ball projection") {
  Vec y(3);
  y << 1.0, 2.0, 3.0;
  Vec inside = y;
  inside[0] += 0.5;
  REQUIRE(project_l2_ball(inside, y, 1.0) == inside);

  Vec e = Vec::Zero(3);
  e[2] = 1.0;
  const double delta = 0.25;
  const Vec projected = project_l2_ball(y + 2.0 * delta * e, y, delta);
  REQUIRE((projected - (y + delta * e)).norm() == Approx(0.0).margin(1e-14));

  REQUIRE(project_l2_ball(inside, y, 0.0) == y);

  Substream rng(26);
  for (int rep = 0; rep < 200; ++rep) {
    const Vec z = testing::gaussian_vec(rng, 4) * 5.0;
    const Vec c = testing::gaussian_vec(rng, 4);
    const double r = 2.0 * rng.next_unit();
    REQUIRE((project_l2_ball(z, c, r) - c).norm() <= r + 1e-12);
  }
}
