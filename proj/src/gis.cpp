#include "entlp/gis.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace entlp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

AugmentedLP gis_augment(const StandardFormLP& lp, double epsilon) {
  require_valid(lp);
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const auto lambda = ones_coefficients(lp.A);
  if (!lambda)
    throw OnesNotInRowSpace(
        "generalized iterative scaling needs (1,...,1) in the row space of A; "
        "add the normalization constraint sum_j x_j = 1");

  const Eigen::Index d = lp.A.rows();
  const Eigen::Index n = lp.A.cols();

  AugmentedLP aug;
  aug.epsilon = epsilon;
  aug.source = lp;

  aug.s_exact = 0;
  for (Eigen::Index i = 0; i < d; ++i) aug.s_exact += (*lambda)[static_cast<std::size_t>(i)] * exact::to_rational(lp.b(i));
  aug.s = exact::to_double(aug.s_exact);
  if (!(aug.s > 0.0)) throw InvalidInput("gis: total mass lambda.b must be positive");

  const IntVector col_sums = lp.A.colwise().sum().transpose();
  aug.a = col_sums.maxCoeff();

  aug.calA = IntMatrix::Zero(d + 1, n + 1);
  aug.calA(d, 0) = aug.a;
  aug.calA.block(0, 1, d, n) = lp.A;
  for (Eigen::Index j = 0; j < n; ++j) aug.calA(d, j + 1) = aug.a - col_sums(j);

  const double b_total = lp.b.sum();
  aug.beta.resize(d + 1);
  aug.beta.head(d) = lp.b / (aug.s + 1.0);
  aug.beta(d) = static_cast<double>(aug.a) - b_total / (aug.s + 1.0);
  if ((aug.beta.array() < 0.0).any()) throw InvalidInput("gis: right-hand side is not in pos(A)");

  std::vector<double> exps(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) exps[static_cast<std::size_t>(j) + 1] = -lp.c(j) / epsilon;
  aug.log_s_c = kernels::log_sum_exp(exps);
  aug.s_c = std::exp(aug.log_s_c);

  aug.gamma.resize(n + 1);
  aug.gamma(0) = epsilon * aug.log_s_c;
  aug.gamma.tail(n) = lp.c.array() + epsilon * aug.log_s_c;
  return aug;
}

Vector gis_embed(const Vector& x) {
  Vector y(x.size() + 1);
  y(0) = 1.0;
  y.tail(x.size()) = x;
  return y / (x.sum() + 1.0);
}

double gis_constraint_gap(const AugmentedLP& aug, std::span<const double> log_y) {
  std::vector<double> y(log_y.size()), ay(static_cast<std::size_t>(aug.calA.rows()));
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::exp(log_y[i]);
  kernels::serial::int_matvec(kernels::view(aug.calA), y, ay);
  double gap = 0.0;
  for (std::size_t r = 0; r < ay.size(); ++r) gap = std::max(gap, std::abs(ay[r] - aug.beta(static_cast<Eigen::Index>(r))));
  return gap;
}

namespace {

// Shared body of one iteration; fills delta_r = log beta_r - log (calA y)_r
// for active rows and applies the transpose step.
void gis_step(const AugmentedLP& aug, const std::vector<bool>& active, std::span<double> log_y,
              std::vector<double>& log_ay, std::vector<double>& delta, kernels::Exec exec) {
  const auto A = kernels::view(aug.calA);
  kernels::log_row_sums(exec, A, log_y, log_ay);
  for (std::size_t r = 0; r < delta.size(); ++r) {
    if (!active[r]) {
      delta[r] = 0.0;
      continue;
    }
    if (log_ay[r] == kNegInf) throw Error("gis: (calA y)_r vanished on a row with positive beta_r");
    delta[r] = std::log(aug.beta(static_cast<Eigen::Index>(r))) - log_ay[r];
  }
  kernels::scaled_transpose_step(exec, A, delta, 1.0 / static_cast<double>(aug.a), log_y);
}

std::vector<bool> active_rows(const AugmentedLP& aug) {
  std::vector<bool> active(static_cast<std::size_t>(aug.calA.rows()));
  for (Eigen::Index r = 0; r < aug.calA.rows(); ++r) active[static_cast<std::size_t>(r)] = aug.beta(r) > 0.0;
  return active;
}

}  // namespace

void gis_raw_step(const AugmentedLP& aug, std::span<double> log_y, kernels::Exec exec) {
  const auto rows = static_cast<std::size_t>(aug.calA.rows());
  std::vector<double> log_ay(rows), delta(rows);
  gis_step(aug, active_rows(aug), log_y, log_ay, delta, exec);
}

EntropicSolution gis_solve(const AugmentedLP& aug, const GisOptions& opts) {
  const auto rows = static_cast<std::size_t>(aug.calA.rows());
  const auto cols = static_cast<std::size_t>(aug.calA.cols());
  const double eps = aug.epsilon;
  const double inv_a = 1.0 / static_cast<double>(aug.a);
  const auto active = active_rows(aug);

  // y^(0) = exp(-gamma/eps); columns meeting a row with beta_r = 0 must
  // vanish in the limit and are frozen at zero.
  std::vector<double> log_y(cols);
  for (std::size_t i = 0; i < cols; ++i) log_y[i] = -aug.gamma(static_cast<Eigen::Index>(i)) / eps;
  for (std::size_t r = 0; r < rows; ++r) {
    if (active[r]) continue;
    for (std::size_t i = 0; i < cols; ++i)
      if (aug.calA(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) > 0) log_y[i] = kNegInf;
  }
  if (log_y[0] == kNegInf) throw InvalidInput("gis: the augmented coordinate y_0 cannot be frozen");

  // Dual variables q with log y = (calA^T q - gamma) / eps.
  Vector q = Vector::Zero(static_cast<Eigen::Index>(rows));
  std::vector<double> log_ay(rows), delta(rows);

  const auto n = static_cast<Eigen::Index>(cols - 1);
  const auto d = static_cast<Eigen::Index>(rows - 1);
  auto original_x = [&] {
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = log_y[static_cast<std::size_t>(j) + 1];
      x(j) = v == kNegInf ? 0.0 : std::exp(v - log_y[0]);
    }
    return x;
  };
  // The augmented gap is scaled down by roughly 1/s relative to ||Ax - b||,
  // so both are required to meet tol.
  auto done = [&] {
    return gis_constraint_gap(aug, log_y) <= opts.tol && primal_infeasibility(aug.source, original_x()) <= opts.tol;
  };

  std::size_t k = 0;
  bool converged = done();
  while (!converged && k < opts.max_iter) {
    gis_step(aug, active, log_y, log_ay, delta, opts.exec);
    for (std::size_t r = 0; r < rows; ++r) q(static_cast<Eigen::Index>(r)) += eps * inv_a * delta[r];

    // The plain update only guarantees sum y <= 1. Rescaling by a constant
    // is a torus action for constant column sums, so it keeps y on the same
    // scaled toric variety and does not move the fixed point.
    const double total = kernels::log_sum_exp(log_y);
    for (auto& v : log_y)
      if (v != kNegInf) v -= total;
    q.array() -= eps * inv_a * total;

    ++k;
    if (opts.on_iterate) opts.on_iterate(k, log_y);
    converged = done();
  }

  EntropicSolution sol;
  sol.x = original_x();
  sol.p = q.head(d).array() - q(d);
  sol.epsilon = eps;
  sol.iterations = k;
  sol.converged = converged;
  sol.residuals = residual_report(aug.source, sol.x, sol.p, eps);
  return sol;
}

}  // namespace entlp
