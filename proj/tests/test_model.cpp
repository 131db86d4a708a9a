#include <doctest.h>

#include <cmath>
#include <random>

#include "entlp/model.hpp"
#include "fixtures.hpp"

using namespace entlp;
using exact::Rational;

namespace {

StandardFormLP ex11(bool zero_cost = false) {
  StandardFormLP lp;
  lp.A = fixtures::transport_2x3_matrix();
  lp.b = Vector{{7.0, 8.0, 4.0, 5.0}};
  lp.c = zero_cost ? Vector(Vector::Zero(6)) : Vector{{1.0, 0.0, 1.0, 0.0, 2.0, 5.0}};
  return lp;
}

Vector birch() { return Vector{{28.0, 35.0, 42.0, 32.0, 40.0, 48.0}} / 15.0; }

}  // namespace

TEST_CASE("validate accepts the 2x3 transport matrix") {
  const auto rep = validate(ex11());
  CHECK(rep.ok);
  CHECK(rep.rank == 4);
}

TEST_CASE("validate flags zero columns and rank deficiency") {
  auto lp = ex11();
  lp.A.col(2).setZero();
  auto rep = validate(lp);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.zero_columns.size() == 1);
  CHECK(rep.zero_columns[0] == 2);

  lp = ex11();
  lp.A.row(1) = lp.A.row(0);
  rep = validate(lp);
  CHECK_FALSE(rep.ok);
  CHECK(rep.rank_deficient);
  CHECK(rep.rank == 3);
  CHECK_THROWS_AS(require_valid(lp), InvalidInput);

  lp = ex11();
  lp.A(0, 0) = -1;
  CHECK_FALSE(validate(lp).ok);
  lp = ex11();
  lp.b = Vector::Ones(3);
  CHECK(validate(lp).dimension_mismatch);
}

TEST_CASE("kernel of (A; c) is the single binomial exponent") {
  const auto basis = integer_kernel(stack_cost_row(ex11()));
  REQUIRE(basis.vectors.size() == 1);
  const IntVector expected{{2, -5, 3, -2, 5, -3}};
  CHECK(basis.vectors[0] == expected);
}

TEST_CASE("kernel of the identity is empty") {
  CHECK(integer_kernel(IntMatrix::Identity(3, 3)).vectors.empty());
}

TEST_CASE("random integer kernels annihilate exactly") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(0, 6);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix M(3, 5);
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 5; ++c) M(r, c) = entry(rng);
    const auto basis = integer_kernel(M);
    CHECK(basis.vectors.size() == 5 - exact::rank(M));
    for (const auto& u : basis.vectors) CHECK((M * u).isZero());
  }
}

TEST_CASE("stack_cost_row rejects fractional costs") {
  auto lp = ex11();
  lp.c(0) = 0.5;
  CHECK_THROWS_AS(stack_cost_row(lp), InvalidInput);
  CHECK_THROWS_AS(toric_residual(lp, std::vector<double>(6, 1.0), 1.0), InvalidInput);
}

TEST_CASE("Birch point lies on the toric variety") {
  const Vector x = birch();
  const auto rep = toric_residual(ex11(true), {x.data(), 6}, 1.0);
  CHECK(rep.toric_inf < 1e-12);
  CHECK(rep.primal_inf < 1e-12);
}

TEST_CASE("doubling one coordinate moves x off the variety") {
  for (int j = 0; j < 6; ++j) {
    Vector x = birch();
    x(j) *= 2.0;
    const auto rep = toric_residual(ex11(true), {x.data(), 6}, 1.0);
    CHECK(rep.toric_inf >= std::log(2.0) - 1e-12);
  }
}

TEST_CASE("toric residual rejects nonpositive points") {
  Vector x = birch();
  x(3) = 0.0;
  CHECK_THROWS_AS(toric_residual(ex11(), {x.data(), 6}, 1.0), InvalidInput);
}

TEST_CASE("toric residual is invariant under torus shifts") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto lp = ex11();
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(6), q(4);
    for (auto& v : x) v = std::exp(g(rng));
    for (auto& v : q) v = g(rng);
    const Vector shifted = x.array() * (lp.A.cast<double>().transpose() * q).array().exp();
    const double r0 = toric_residual(lp, {x.data(), 6}, 0.7).toric_inf;
    const double r1 = toric_residual(lp, {shifted.data(), 6}, 0.7).toric_inf;
    CHECK(std::abs(r0 - r1) < 1e-10);
  }
}

TEST_CASE("points of the form exp((A^T p - c)/eps) have zero toric residual") {
  const auto lp = ex11();
  const Vector p{{0.3, -1.2, 0.8, 2.0}};
  for (double eps : {0.5, 1.0, 2.0}) {
    const Vector x = ((lp.A.cast<double>().transpose() * p - lp.c) / eps).array().exp();
    CHECK(toric_residual(lp, {x.data(), 6}, eps).toric_inf < 1e-12);
    const Vector log_x = x.array().log();
    CHECK(toric_residual_log(lp, {log_x.data(), 6}, eps) < 1e-12);
  }
}

TEST_CASE("ones coefficients") {
  const auto l6 = ones_coefficients(fixtures::transport_2x3_matrix());
  REQUIRE(l6.has_value());
  CHECK(*l6 == std::vector<Rational>{1, 1, 0, 0});

  CHECK_FALSE(ones_coefficients(fixtures::conic_2222_matrix()).has_value());

  const auto l1 = ones_coefficients(IntMatrix::Ones(1, 4));
  REQUIRE(l1.has_value());
  CHECK(*l1 == std::vector<Rational>{1});
}

TEST_CASE("residual report recomputes primal infeasibility") {
  const auto lp = ex11();
  const Vector x = Vector::Ones(6);
  const auto rep = residual_report(lp, x, Vector::Zero(4), 1.0);
  CHECK(rep.primal_inf == doctest::Approx((apply(lp.A, x) - lp.b).cwiseAbs().maxCoeff()));
  REQUIRE(rep.dual_gap.has_value());
  CHECK(*rep.dual_gap == 0.0);
}
