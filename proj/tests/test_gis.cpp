#include <doctest.h>

#include <cmath>
#include <random>

#include "entlp/builders.hpp"
#include "entlp/gis.hpp"
#include "entlp/kernels.hpp"
#include "entlp/sinkhorn.hpp"
#include "fixtures.hpp"

using namespace entlp;
using exact::Rational;

namespace {

StandardFormLP ex11(bool zero_cost = false) { return build_transport(fixtures::transport_2x3(zero_cost)); }

}  // namespace

TEST_CASE("augmentation of the 2x3 transport") {
  const auto aug = gis_augment(ex11(), 1.0);
  CHECK(aug.a == 2);
  REQUIRE(aug.calA.rows() == 5);
  REQUIRE(aug.calA.cols() == 7);
  const IntVector extra{{0, 0, 1, 0, 0, 1}};
  CHECK(IntVector(aug.calA.row(4).tail(6).transpose()) == extra);
  const IntVector first{{0, 0, 0, 0, 2}};
  CHECK(IntVector(aug.calA.col(0)) == first);
  CHECK(aug.s_exact == 15);
  CHECK(aug.s == 15.0);
  const Vector beta = Vector{{7.0, 8.0, 4.0, 5.0, 8.0}} / 16.0;
  CHECK((aug.beta - beta).cwiseAbs().maxCoeff() < 1e-15);
  const double s_c = 1.0 + (-ex11().c.array()).exp().sum();
  CHECK(aug.s_c == doctest::Approx(s_c).epsilon(1e-15));
  CHECK(aug.gamma(0) == doctest::Approx(std::log(s_c)).epsilon(1e-15));
  CHECK(aug.gamma(6) == doctest::Approx(5.0 + std::log(s_c)).epsilon(1e-15));
}

TEST_CASE("equal column sums give a zero slack row") {
  StandardFormLP lp;
  lp.A = IntMatrix(2, 3);
  lp.A << 1, 2, 0,
          1, 0, 2;
  lp.b = Vector{{3.0, 3.0}};
  lp.c = Vector::Zero(3);
  const auto aug = gis_augment(lp, 1.0);
  CHECK(aug.a == 2);
  CHECK(aug.calA.row(2).tail(3).isZero());
}

TEST_CASE("augmentation invariants on random transports") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lp = build_transport(fixtures::random_transport(rng));
    const auto aug = gis_augment(lp, 0.8);
    for (Eigen::Index j = 0; j < aug.calA.cols(); ++j) CHECK(aug.calA.col(j).sum() == aug.a);
    CHECK(aug.calA(aug.calA.rows() - 1, 0) == aug.a);
    CHECK(aug.calA.col(0).head(aug.calA.rows() - 1).isZero());
    CHECK((aug.beta.array() >= 0.0).all());
    CHECK(std::abs(aug.beta.sum() - static_cast<double>(aug.a)) < 1e-12);
  }
}

TEST_CASE("ones outside the row space is refused") {
  const ConicProblem cp(2, 2, 2, 2, {1, 1}, {1, 1}, {}, false);
  CHECK_THROWS_AS(gis_augment(build_conic(cp), 1.0), OnesNotInRowSpace);
}

TEST_CASE("zero cost converges to the Birch point") {
  const auto sol = gis_solve(gis_augment(ex11(true), 1.0));
  CHECK(sol.converged);
  const Vector birch = Vector{{28.0, 35.0, 42.0, 32.0, 40.0, 48.0}} / 15.0;
  CHECK((sol.x - birch).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("agrees with Sinkhorn on the 2x3 transport") {
  const auto g = gis_solve(gis_augment(ex11(), 1.0));
  const auto s = sinkhorn_solve(fixtures::transport_2x3(), 1.0);
  CHECK((g.x - s.x).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("exact solution is a fixed point of the raw update") {
  const auto aug = gis_augment(ex11(), 1.0);
  const auto sol = gis_solve(aug);
  Vector log_y = gis_embed(sol.x).array().log();
  const Vector before = log_y;
  gis_raw_step(aug, {log_y.data(), static_cast<std::size_t>(log_y.size())});
  CHECK((log_y - before).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("iterates sum to one, stay on the augmented variety and commute with the embedding") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const auto lp = build_transport(fixtures::random_transport(rng, 4));
    const auto aug = gis_augment(lp, 1.0);
    StandardFormLP alp;
    alp.A = aug.calA;
    alp.b = aug.beta;
    alp.c = aug.gamma;
    const auto basis = integer_kernel(aug.calA);
    double worst_sum = 0.0, worst_toric = 0.0;
    GisOptions o;
    o.on_iterate = [&](std::size_t, std::span<const double> log_y) {
      double s = 0.0;
      for (double v : log_y) s += std::exp(v);
      worst_sum = std::max(worst_sum, std::abs(s - 1.0));
      std::vector<double> shift(log_y.size());
      for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = aug.gamma(static_cast<Eigen::Index>(i)) / aug.epsilon;
      worst_toric = std::max(worst_toric, log_binomial_residual(basis, log_y, shift));
    };
    const auto sol = gis_solve(aug, o);
    CHECK(sol.converged);
    CHECK(worst_sum < 1e-10);
    CHECK(worst_toric < 1e-8);

    Vector log_y = gis_embed(sol.x).array().log();
    CHECK(gis_constraint_gap(aug, {log_y.data(), static_cast<std::size_t>(log_y.size())}) < 1e-8);
  }
}

TEST_CASE("embedding") {
  const Vector y = gis_embed(Vector{{1.0, 2.0}});
  CHECK((y - Vector{{0.25, 0.25, 0.5}}).cwiseAbs().maxCoeff() < 1e-16);
}

TEST_CASE("zero right-hand side entries freeze their columns") {
  StandardFormLP lp;
  lp.A = IntMatrix(2, 3);
  lp.A << 1, 1, 0,
          0, 1, 1;
  lp.b = Vector{{0.0, 2.0}};
  lp.c = Vector::Zero(3);
  // Ones are in the row space only through a normalization; use x1 + x2 + x3 = 2 instead.
  lp.A.row(1) << 1, 1, 1;
  const auto aug = gis_augment(lp, 1.0);
  const auto sol = gis_solve(aug);
  CHECK(sol.converged);
  CHECK(sol.x(0) == 0.0);
  CHECK(sol.x(1) == 0.0);
  CHECK(sol.x(2) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("serial and parallel runs are identical") {
  const auto aug = gis_augment(ex11(), 0.5);
  GisOptions s, p;
  s.exec = kernels::Exec::serial;
  p.exec = kernels::Exec::parallel;
  const auto a = gis_solve(aug, s);
  const auto b = gis_solve(aug, p);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x == b.x);
}
