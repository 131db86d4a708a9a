#include "entlp/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace entlp {

namespace {

// Keep the cost in row-major storage so both kernels see a contiguous row.
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

struct LogMargins {
  Vector log_mu;
  Vector log_nu;
};

LogMargins log_margins(const TransportProblem& tp) {
  return {tp.mu.array().log().matrix(), tp.nu.array().log().matrix()};
}

void check_potentials(const SinkhornState& st) {
  if (!st.f.allFinite() || !st.g.allFinite()) throw Error("sinkhorn: potentials became non-finite");
}

// Exponents of magnitude below this bound are safe to evaluate in linear
// scale without underflow or overflow.
double safe_exponent() { return 0.5 * -std::log(std::numeric_limits<double>::min()); }

}  // namespace

SinkhornState sinkhorn_init(const TransportProblem& tp, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  SinkhornState st;
  st.f = Vector::Zero(tp.mu.size());
  st.g = Vector::Zero(tp.nu.size());
  st.epsilon = epsilon;
  return st;
}

void sinkhorn_update_rows(const TransportProblem& tp, SinkhornState& st, kernels::Exec exec) {
  const RowMajorMatrix cost = tp.cost;
  const Vector log_mu = tp.mu.array().log().matrix();
  kernels::sinkhorn_rows(exec, kernels::view(cost), as_span(st.g), as_span(log_mu), st.epsilon, as_span(st.f));
}

void sinkhorn_update_cols(const TransportProblem& tp, SinkhornState& st, kernels::Exec exec) {
  const RowMajorMatrix cost = tp.cost;
  const Vector log_nu = tp.nu.array().log().matrix();
  kernels::sinkhorn_cols(exec, kernels::view(cost), as_span(st.f), as_span(log_nu), st.epsilon, as_span(st.g));
}

void sinkhorn_sweep(const TransportProblem& tp, SinkhornState& st, kernels::Exec exec) {
  sinkhorn_update_rows(tp, st, exec);
  sinkhorn_update_cols(tp, st, exec);
  ++st.iteration;
}

Matrix sinkhorn_plan(const TransportProblem& tp, const SinkhornState& st) {
  Matrix x(tp.cost.rows(), tp.cost.cols());
  for (Eigen::Index k = 0; k < x.rows(); ++k)
    for (Eigen::Index l = 0; l < x.cols(); ++l)
      x(k, l) = std::exp((st.f(k) + st.g(l) - tp.cost(k, l)) / st.epsilon);
  return x;
}

double marginal_gap(const TransportProblem& tp, const Matrix& plan) {
  const double rows = (plan.rowwise().sum() - tp.mu).cwiseAbs().maxCoeff();
  const double cols = (plan.colwise().sum().transpose() - tp.nu).cwiseAbs().maxCoeff();
  return std::max(rows, cols);
}

Vector transport_lp_potentials(const SinkhornState& st) {
  const Eigen::Index d1 = st.f.size();
  const Eigen::Index d2 = st.g.size();
  Vector p(d1 + d2 - 1);
  const double g_last = st.g(d2 - 1);
  p.head(d1) = st.f.array() + g_last;
  p.tail(d2 - 1) = st.g.head(d2 - 1).array() - g_last;
  return p;
}

EntropicSolution sinkhorn_solve(const TransportProblem& tp, double epsilon, const SinkhornOptions& opts) {
  check_transport(tp);
  SinkhornState st = sinkhorn_init(tp, epsilon);
  const RowMajorMatrix cost = tp.cost;
  const auto margins = log_margins(tp);
  const auto cv = kernels::view(cost);

  std::mt19937_64 rng(opts.seed.value_or(0));
  std::vector<std::size_t> order(tp.d1() + tp.d2());
  std::iota(order.begin(), order.end(), std::size_t{0});

  bool converged = false;
  while (st.iteration < opts.max_iter) {
    if (opts.seed) {
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t idx : order) {
        // One coordinate at a time; the single-row kernels reuse the same
        // log-sum-exp path as the blocked sweep.
        if (idx < tp.d1()) {
          const kernels::CostView row{cost.data() + idx * cost.cols(), 1, cv.cols, cv.row_stride, cv.col_stride};
          std::span<double> out(st.f.data() + idx, 1);
          kernels::serial::sinkhorn_rows(row, as_span(st.g), {margins.log_mu.data() + idx, 1}, epsilon, out);
        } else {
          const std::size_t l = idx - tp.d1();
          const kernels::CostView col{cost.data() + l, cv.rows, 1, cv.row_stride, cv.col_stride};
          std::span<double> out(st.g.data() + l, 1);
          kernels::serial::sinkhorn_cols(col, as_span(st.f), {margins.log_nu.data() + l, 1}, epsilon, out);
        }
      }
    } else {
      kernels::sinkhorn_rows(opts.exec, cv, as_span(st.g), as_span(margins.log_mu), epsilon, as_span(st.f));
      kernels::sinkhorn_cols(opts.exec, cv, as_span(st.f), as_span(margins.log_nu), epsilon, as_span(st.g));
    }
    ++st.iteration;
    check_potentials(st);
    if (opts.on_sweep) opts.on_sweep(st);
    if (marginal_gap(tp, sinkhorn_plan(tp, st)) <= opts.tol) {
      converged = true;
      break;
    }
  }

  const StandardFormLP lp = build_transport(tp);
  EntropicSolution sol;
  sol.x = flatten_plan(sinkhorn_plan(tp, st));
  sol.p = transport_lp_potentials(st);
  sol.epsilon = epsilon;
  sol.iterations = st.iteration;
  sol.converged = converged;
  sol.residuals = residual_report(lp, sol.x, sol.p, epsilon);
  return sol;
}

std::optional<Matrix> sinkhorn_plan_scaling_form(const TransportProblem& tp, const SinkhornState& st) {
  const double bound = safe_exponent();
  const double eps = st.epsilon;
  if ((tp.cost.array().abs() / eps > bound).any() || (st.f.array().abs() / eps > bound).any() ||
      (st.g.array().abs() / eps > bound).any())
    return std::nullopt;
  const Vector F = (st.f.array() / eps).exp().matrix();
  const Vector G = (st.g.array() / eps).exp().matrix();
  const Matrix K = (-tp.cost.array() / eps).exp().matrix();
  return Matrix(F.asDiagonal() * K * G.asDiagonal());
}

std::optional<Matrix> sinkhorn_scaling_iterations(const TransportProblem& tp, double epsilon, std::size_t sweeps) {
  check_transport(tp);
  if ((tp.cost.array().abs() / epsilon > safe_exponent()).any()) return std::nullopt;
  const Matrix K = (-tp.cost.array() / epsilon).exp().matrix();
  Vector F = Vector::Ones(tp.mu.size());
  Vector G = Vector::Ones(tp.nu.size());
  for (std::size_t s = 0; s < sweeps; ++s) {
    F = tp.mu.cwiseQuotient(K * G);
    G = tp.nu.cwiseQuotient(K.transpose() * F);
  }
  return Matrix(F.asDiagonal() * K * G.asDiagonal());
}

}  // namespace entlp
