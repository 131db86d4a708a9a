#include <doctest.h>

#include <random>

#include "entlp/builders.hpp"
#include "fixtures.hpp"

using namespace entlp;
using exact::Rational;

TEST_CASE("2x3 transport builds the four-row matrix") {
  const auto lp = build_transport(fixtures::transport_2x3());
  CHECK(lp.A == fixtures::transport_2x3_matrix());
  CHECK(lp.b == Vector{{7.0, 8.0, 4.0, 5.0}});
  CHECK(lp.c == Vector{{1.0, 0.0, 1.0, 0.0, 2.0, 5.0}});
  CHECK(lp.labels.front() == "x[1,1]");
  CHECK(lp.labels.back() == "x[2,3]");
}

TEST_CASE("2x2 transport drops the last column-sum row") {
  TransportProblem tp{Vector::Ones(2), Vector::Ones(2), Matrix::Zero(2, 2)};
  const auto lp = build_transport(tp);
  IntMatrix expected(3, 4);
  expected << 1, 1, 0, 0,
              0, 0, 1, 1,
              1, 0, 1, 0;
  CHECK(lp.A == expected);
  CHECK(lp.b == Vector::Ones(3));
}

TEST_CASE("transport builds are valid and have ones in the row space") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tp = fixtures::random_transport(rng, 6);
    const auto lp = build_transport(tp);
    CHECK(validate(lp).ok);
    const auto lambda = ones_coefficients(lp.A);
    REQUIRE(lambda.has_value());
    for (std::size_t r = 0; r < lp.rows(); ++r) CHECK((*lambda)[r] == (r < tp.d1() ? 1 : 0));
  }
}

TEST_CASE("transport rejects unbalanced or nonpositive margins") {
  auto tp = fixtures::transport_2x3();
  tp.nu(0) = 5.0;
  CHECK_THROWS_AS(build_transport(tp), InvalidInput);
  tp = fixtures::transport_2x3();
  tp.mu(0) = 0.0;
  CHECK_THROWS_AS(build_transport(tp), InvalidInput);
  tp = fixtures::transport_2x3();
  tp.cost = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(build_transport(tp), InvalidInput);
}

TEST_CASE("conic (2,2,2,2) builds the 4x16 matrix") {
  const ConicProblem cp(2, 2, 2, 2, {1, 1}, {1, 1}, {}, false);
  const auto lp = build_conic(cp);
  CHECK(lp.A == fixtures::conic_2222_matrix());
  CHECK(lp.b == Vector{{1.0, 1.0, 1.0, 1.0}});
  CHECK(lp.labels.front() == "x[1,1,1,1]");
  CHECK(lp.labels.back() == "x[2,2,2,2]");
}

TEST_CASE("normalized conic appends a row of ones") {
  const ConicProblem cp(2, 2, 2, 2, {1, 2}, {2, 1}, {}, true);
  const auto lp = build_conic(cp);
  REQUIRE(lp.A.rows() == 5);
  REQUIRE(lp.A.cols() == 16);
  CHECK(lp.A.topRows(4) == fixtures::conic_2222_matrix());
  CHECK(lp.A.row(4) == IntMatrix::Ones(1, 16));
  CHECK(lp.b == Vector{{1.0, 2.0, 2.0, 1.0, 1.0}});
  const auto lambda = ones_coefficients(lp.A);
  REQUIRE(lambda.has_value());
  CHECK(*lambda == std::vector<Rational>{0, 0, 0, 0, 1});
}

TEST_CASE("unnormalized conic never has ones in the row space") {
  for (int d1 = 2; d1 <= 3; ++d1)
    for (int e1 = 2; e1 <= 3; ++e1)
      for (int e2 = 2; e2 <= 3; ++e2) {
        const ConicProblem cp(d1, e1, 2, e2, std::vector<int>(static_cast<std::size_t>(d1), 1), {1, 1}, {}, false);
        CHECK_FALSE(ones_coefficients(build_conic(cp).A).has_value());
      }
}

TEST_CASE("conic (2,2,2,3) columns are i e_k + j e_l") {
  const ConicProblem cp(2, 2, 2, 3, {1, 1}, {1, 1}, {}, false);
  const auto lp = build_conic(cp);
  REQUIRE(lp.A.cols() == 24);
  for (int k = 0; k < 2; ++k)
    for (int i = 1; i <= 2; ++i)
      for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= 3; ++j) {
          const auto col = lp.A.col(static_cast<Eigen::Index>(cp.index(k, i, l, j)));
          CHECK(col.sum() == i + j);
          CHECK(col(k) == i);
          CHECK(col(2 + l) == j);
        }
}

TEST_CASE("conic construction validates parameters") {
  CHECK_THROWS_AS(ConicProblem(1, 2, 2, 2, {1}, {1, 1}, {}, false), InvalidInput);
  CHECK_THROWS_AS(ConicProblem(2, 2, 2, 2, {3, 1}, {1, 1}, {}, false), InvalidInput);
  CHECK_THROWS_AS(ConicProblem(2, 2, 2, 2, {0, 1}, {1, 1}, {}, false), InvalidInput);
  CHECK_THROWS_AS(ConicProblem(2, 2, 2, 2, {1, 1}, {1, 1}, std::vector<double>(5, 0.0), false), InvalidInput);
}

TEST_CASE("product witness for (2,2,2,2) with unit margins") {
  const ConicProblem cp(2, 2, 2, 2, {1, 1}, {1, 1}, {}, true);
  const Vector x = conic_feasible_point(cp);
  for (int k = 0; k < 2; ++k)
    for (int i = 1; i <= 2; ++i)
      for (int l = 0; l < 2; ++l)
        for (int j = 1; j <= 2; ++j)
          CHECK(x(static_cast<Eigen::Index>(cp.index(k, i, l, j))) == (i == 2 && j == 2 ? 0.25 : 0.0));
}

TEST_CASE("product witness satisfies the normalized constraints") {
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> margins{
      {{1, 1}, {1, 2}}, {{1, 2}, {1, 1}}, {{1, 1, 1}, {2, 1}}};
  for (const auto& [mu, nu] : margins) {
    const ConicProblem cp(static_cast<int>(mu.size()), 3, static_cast<int>(nu.size()), 3, mu, nu, {}, true);
    const auto lp = build_conic(cp);
    const Vector x = conic_feasible_point(cp);
    CHECK((lp.A.cast<double>() * x - lp.b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(x.sum() - 1.0) < 1e-12);
    CHECK((x.array() >= 0.0).all());
  }
}

TEST_CASE("product witness needs |mu| <= e1 and |nu| <= e2") {
  const ConicProblem cp(2, 2, 2, 2, {2, 1}, {1, 1}, {}, true);
  CHECK_THROWS_AS(conic_feasible_point(cp), WitnessUnavailable);
}

TEST_CASE("Birch point of the 2x3 transport") {
  const Matrix x = birch_point_transport(fixtures::transport_2x3());
  const Matrix expected = Matrix{{28.0, 35.0, 42.0}, {32.0, 40.0, 48.0}} / 15.0;
  CHECK((x - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Birch point of uniform margins is constant") {
  TransportProblem tp{Vector::Constant(3, 2.0), Vector::Constant(4, 1.5), Matrix::Zero(3, 4)};
  const Matrix x = birch_point_transport(tp);
  CHECK((x.array() - 0.5).abs().maxCoeff() < 1e-15);
}

TEST_CASE("Birch points are rank one with the right margins and lie on the variety") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto tp = fixtures::random_transport(rng);
    tp.cost.setZero();
    const Matrix x = birch_point_transport(tp);
    for (Eigen::Index a = 0; a < x.rows(); ++a)
      for (Eigen::Index b = a + 1; b < x.rows(); ++b)
        for (Eigen::Index c = 0; c < x.cols(); ++c)
          for (Eigen::Index d = c + 1; d < x.cols(); ++d)
            CHECK(std::abs(x(a, c) * x(b, d) - x(a, d) * x(b, c)) < 1e-12);
    CHECK((x.rowwise().sum() - tp.mu).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((x.colwise().sum().transpose() - tp.nu).cwiseAbs().maxCoeff() < 1e-12);
    const auto lp = build_transport(tp);
    const Vector flat = flatten_plan(x);
    CHECK(toric_residual(lp, {flat.data(), static_cast<std::size_t>(flat.size())}, 1.0).toric_inf < 1e-10);
  }
}

TEST_CASE("plan flattening round-trips") {
  const Matrix m{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  const Vector f = flatten_plan(m);
  CHECK(f == Vector{{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}});
  CHECK(unflatten_plan(f, 2, 3) == m);
}
