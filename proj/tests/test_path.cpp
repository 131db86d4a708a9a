#include <doctest.h>

#include <cmath>
#include <random>

#include "entlp/builders.hpp"
#include "entlp/dual_ascent.hpp"
#include "entlp/oracle.hpp"
#include "entlp/path.hpp"
#include "fixtures.hpp"

using namespace entlp;
using exact::Rational;

namespace {

// LP whose right-hand side is A x(u) for a chosen u, so u solves R = 0 exactly.
StandardFormLP with_b_from(StandardFormLP lp, const Vector& u, double mu) {
  lp.b = lp.A.cast<double>() * path_point(lp, u, mu);
  return lp;
}

}  // namespace

TEST_CASE("initial t recovers the toric coordinates of a regularized optimum") {
  const auto lp = build_transport(fixtures::transport_2x3());
  const auto sol = ascent_solve(lp, 1.0);
  REQUIRE(sol.converged);
  const auto init = initial_t(lp, sol.x, 1.0);
  CHECK(init.residual < 1e-9);
  CHECK((path_point(lp, init.log_t, 1.0) - sol.x).cwiseAbs().maxCoeff() < 1e-8);
  // The dual potentials give log t = p / eps on the same variety.
  CHECK((init.log_t - sol.p).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("initial t rejects points off the variety") {
  const auto lp = build_transport(fixtures::transport_2x3());
  Vector x = Vector::Ones(6);
  x(0) = 3.0;
  CHECK_THROWS_AS(initial_t(lp, x, 1.0), InvalidInput);
  x(0) = -1.0;
  CHECK_THROWS_AS(initial_t(lp, x, 1.0), InvalidInput);
}

TEST_CASE("corrector stays put at a solution and repairs a 1% perturbation quickly") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g(0.0, 0.3);
  for (int trial = 0; trial < 10; ++trial) {
    auto lp = build_transport(fixtures::random_transport(rng, 4));
    Vector u(lp.A.rows());
    for (auto& v : u) v = g(rng);
    const double mu = 0.5;
    lp = with_b_from(lp, u, mu);

    const auto fixed = corrector(lp, u, mu);
    CHECK(fixed.converged);
    CHECK(fixed.newton_steps <= 1);

    // log(1.01) shift on every coordinate of t scales x by at most ~1% per unit degree.
    const Vector perturbed = u.array() + std::log(1.01);
    const auto fixed2 = corrector(lp, perturbed, mu);
    CHECK(fixed2.converged);
    CHECK(fixed2.newton_steps <= 5);
    CHECK((path_point(lp, fixed2.log_t, mu) - path_point(lp, u, mu)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("corrector Jacobian matches finite differences") {
  const auto lp = build_transport(fixtures::transport_2x3());
  const Vector u = Vector{{0.3, -0.2, 0.1, 0.4}};
  const double mu = 0.7;
  const Matrix J = corrector_jacobian(lp, u, mu);
  const double h = 1e-6;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    Vector up = u, dn = u;
    up(k) += h;
    dn(k) -= h;
    const Vector col = (corrector_residual(lp, up, mu) - corrector_residual(lp, dn, mu)) / (2 * h);
    CHECK((col - J.col(k)).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, J.col(k).cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("segment path stays on the segment and ends at (2, 0)") {
  const auto lp = fixtures::segment();
  const auto trace = track(lp, 1.0);
  REQUIRE(trace.status == PathStatus::converged);
  for (const auto& s : trace.samples) {
    CHECK(std::abs(s.x.sum() - 2.0) < 1e-9);
    CHECK(std::abs(std::log(s.x(1) / s.x(0)) + 1.0 / s.mu) < 1e-9 / s.mu + 1e-9);
  }
  REQUIRE(trace.final_vertex);
  CHECK(trace.final_vertex_exact == std::vector<Rational>{2, 0});
}

TEST_CASE("2x3 transport path ends at the LP optimum") {
  const auto lp = build_transport(fixtures::transport_2x3());
  const auto trace = track(lp, 1.0);
  REQUIRE(trace.status == PathStatus::converged);
  CHECK(trace.final_vertex_exact == std::vector<Rational>{0, 1, 6, 4, 4, 0});
}

TEST_CASE("trace invariants on random transports") {
  std::mt19937_64 rng(103);
  int checked = 0;
  for (int trial = 0; checked < 20 && trial < 200; ++trial) {
    const auto tp = fixtures::random_transport(rng, 4);
    const auto lp = build_transport(tp);
    const auto opt = oracle::lp_optimum(lp);
    // Degenerate bases or tied optima make the limit vertex ill-defined.
    if (!opt.unique) continue;
    bool degenerate = false;
    for (const auto& v : opt.vertices.vertices) degenerate |= v.support.size() < lp.rows();
    if (degenerate) continue;
    ++checked;

    PathOptions o;
    const auto trace = track(lp, 1.0, o);
    REQUIRE(trace.status == PathStatus::converged);
    CHECK(trace.final_vertex_exact == opt.x_exact);
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
      const auto& s = trace.samples[k];
      const Vector lx = path_log_point(lp, s.log_t, s.mu);
      CHECK(toric_residual_log(lp, {lx.data(), static_cast<std::size_t>(lx.size())}, s.mu) < 10 * o.corrector_tol);
      CHECK(primal_infeasibility(lp, s.x) <= o.corrector_tol);
      if (k > 0) {
        CHECK(s.mu < trace.samples[k - 1].mu);
        CHECK(s.cost <= trace.samples[k - 1].cost + 1e-9);
      }
    }
  }
  CHECK(checked == 20);
}

TEST_CASE("vertex rounding") {
  const auto lp = fixtures::segment();
  const auto v = round_to_vertex(lp, Vector{{2.0, 1e-9}});
  REQUIRE_FALSE(v.ambiguous);
  CHECK(v.x_exact == std::vector<Rational>{2, 0});
  CHECK(v.support == std::vector<std::size_t>{0});

  const auto tie = round_to_vertex(lp, Vector{{1.0, 1.0}});
  CHECK(tie.ambiguous);
  CHECK_FALSE(tie.reason.empty());
}

TEST_CASE("trace round-trips through its toric coordinates") {
  const auto lp = build_transport(fixtures::transport_2x3());
  const auto trace = track(lp, 1.0);
  for (const auto& s : trace.samples) {
    CHECK((s.t.array().log().matrix() - s.log_t).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, s.log_t.cwiseAbs().maxCoeff()));
    if (!(s.x.minCoeff() > 1e-290)) continue;  // underflowed entries have no logarithm
    const auto back = initial_t(lp, s.x, s.mu);
    CHECK((path_point(lp, back.log_t, s.mu) - s.x).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, s.x.maxCoeff()));
  }
}

TEST_CASE("invalid path options are rejected") {
  PathOptions o;
  o.theta = 1.0;
  CHECK_THROWS_AS(track(fixtures::segment(), 1.0, o), InvalidInput);
}
