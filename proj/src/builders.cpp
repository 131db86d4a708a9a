#include "entlp/builders.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace entlp {

void check_transport(const TransportProblem& tp) {
  if (tp.mu.size() < 1 || tp.nu.size() < 1) throw InvalidInput("transport margins must be nonempty");
  if (tp.cost.rows() != tp.mu.size() || tp.cost.cols() != tp.nu.size())
    throw InvalidInput("transport cost must be d1 x d2");
  if ((tp.mu.array() <= 0.0).any() || (tp.nu.array() <= 0.0).any())
    throw InvalidInput("transport margins must be positive");
  if (!tp.cost.allFinite()) throw InvalidInput("transport cost must be finite");
  const double s1 = tp.mu.sum();
  const double s2 = tp.nu.sum();
  if (std::abs(s1 - s2) > 1e-12 * std::max(s1, s2))
    throw InvalidInput("unbalanced margins: |mu| = " + std::to_string(s1) + ", |nu| = " + std::to_string(s2));
}

ConicProblem::ConicProblem(int d1, int e1, int d2, int e2, std::vector<int> mu, std::vector<int> nu,
                           std::vector<double> cost, bool normalized)
    : d1_(d1), e1_(e1), d2_(d2), e2_(e2), mu_(std::move(mu)), nu_(std::move(nu)), cost_(std::move(cost)),
      normalized_(normalized) {
  if (d1 < 2 || e1 < 2 || d2 < 2 || e2 < 2) throw InvalidInput("conic parameters d1, e1, d2, e2 must be >= 2");
  if (mu_.size() != static_cast<std::size_t>(d1)) throw InvalidInput("mu must have d1 entries");
  if (nu_.size() != static_cast<std::size_t>(d2)) throw InvalidInput("nu must have d2 entries");
  for (int m : mu_)
    if (m < 1 || m > e1) throw InvalidInput("mu entries must lie in [1, e1]");
  for (int v : nu_)
    if (v < 1 || v > e2) throw InvalidInput("nu entries must lie in [1, e2]");
  if (cost_.empty()) cost_.assign(size(), 0.0);
  if (cost_.size() != size()) throw InvalidInput("conic cost must have d1*e1*d2*e2 entries");
  for (double c : cost_)
    if (!std::isfinite(c)) throw InvalidInput("conic cost must be finite");
}

StandardFormLP build_transport(const TransportProblem& tp) {
  check_transport(tp);
  const auto d1 = static_cast<Eigen::Index>(tp.d1());
  const auto d2 = static_cast<Eigen::Index>(tp.d2());
  const Eigen::Index d = d1 + d2 - 1;
  const Eigen::Index n = d1 * d2;

  StandardFormLP lp;
  lp.A = IntMatrix::Zero(d, n);
  lp.b.resize(d);
  lp.c.resize(n);
  lp.labels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < d1; ++k) {
    for (Eigen::Index l = 0; l < d2; ++l) {
      const Eigen::Index col = k * d2 + l;
      lp.A(k, col) = 1;
      if (l < d2 - 1) lp.A(d1 + l, col) = 1;
      lp.c(col) = tp.cost(k, l);
      lp.labels.push_back("x[" + std::to_string(k + 1) + "," + std::to_string(l + 1) + "]");
    }
  }
  lp.b.head(d1) = tp.mu;
  lp.b.tail(d2 - 1) = tp.nu.head(d2 - 1);
  return lp;
}

StandardFormLP build_conic(const ConicProblem& cp) {
  const int d1 = cp.d1(), e1 = cp.e1(), d2 = cp.d2(), e2 = cp.e2();
  const Eigen::Index d = d1 + d2 + (cp.normalized() ? 1 : 0);
  const auto n = static_cast<Eigen::Index>(cp.size());

  StandardFormLP lp;
  lp.A = IntMatrix::Zero(d, n);
  lp.b.resize(d);
  lp.c.resize(n);
  lp.labels.reserve(cp.size());
  for (int k = 0; k < d1; ++k)
    for (int i = 1; i <= e1; ++i)
      for (int l = 0; l < d2; ++l)
        for (int j = 1; j <= e2; ++j) {
          const auto col = static_cast<Eigen::Index>(cp.index(k, i, l, j));
          lp.A(k, col) = i;
          lp.A(d1 + l, col) = j;
          if (cp.normalized()) lp.A(d1 + d2, col) = 1;
          lp.c(col) = cp.cost(k, i, l, j);
          lp.labels.push_back("x[" + std::to_string(k + 1) + "," + std::to_string(i) + "," +
                              std::to_string(l + 1) + "," + std::to_string(j) + "]");
        }
  for (int k = 0; k < d1; ++k) lp.b(k) = cp.mu()[static_cast<std::size_t>(k)];
  for (int l = 0; l < d2; ++l) lp.b(d1 + l) = cp.nu()[static_cast<std::size_t>(l)];
  if (cp.normalized()) lp.b(d1 + d2) = 1.0;
  return lp;
}

Vector conic_feasible_point(const ConicProblem& cp) {
  const int mass_mu = std::accumulate(cp.mu().begin(), cp.mu().end(), 0);
  const int mass_nu = std::accumulate(cp.nu().begin(), cp.nu().end(), 0);
  if (mass_mu > cp.e1() || mass_nu > cp.e2())
    throw WitnessUnavailable("product witness needs |mu|_1 <= e1 and |nu|_1 <= e2 (got " +
                             std::to_string(mass_mu) + ", " + std::to_string(mass_nu) +
                             "); check feasibility with cone_membership instead");
  Vector x = Vector::Zero(static_cast<Eigen::Index>(cp.size()));
  for (int k = 0; k < cp.d1(); ++k)
    for (int l = 0; l < cp.d2(); ++l) {
      const double mk = static_cast<double>(cp.mu()[static_cast<std::size_t>(k)]) / mass_mu;
      const double nl = static_cast<double>(cp.nu()[static_cast<std::size_t>(l)]) / mass_nu;
      x(static_cast<Eigen::Index>(cp.index(k, mass_mu, l, mass_nu))) = mk * nl;
    }
  return x;
}

Matrix birch_point_transport(const TransportProblem& tp) {
  check_transport(tp);
  return tp.mu * tp.nu.transpose() / tp.total_mass();
}

Vector flatten_plan(const Matrix& plan) {
  Vector x(plan.size());
  for (Eigen::Index k = 0; k < plan.rows(); ++k)
    for (Eigen::Index l = 0; l < plan.cols(); ++l) x(k * plan.cols() + l) = plan(k, l);
  return x;
}

Matrix unflatten_plan(const Vector& x, std::size_t d1, std::size_t d2) {
  if (static_cast<std::size_t>(x.size()) != d1 * d2) throw InvalidInput("plan length mismatch");
  Matrix plan(static_cast<Eigen::Index>(d1), static_cast<Eigen::Index>(d2));
  for (Eigen::Index k = 0; k < plan.rows(); ++k)
    for (Eigen::Index l = 0; l < plan.cols(); ++l) plan(k, l) = x(k * plan.cols() + l);
  return plan;
}

}  // namespace entlp
