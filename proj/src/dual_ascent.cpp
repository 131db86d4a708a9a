#include "entlp/dual_ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace entlp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// h(u) = log sum_e exp(lc_e + e u) - log_target, and h'(u).
std::pair<double, double> log_equation(const std::vector<std::pair<int, double>>& terms, double u,
                                       double log_target) {
  double m = kNegInf;
  for (const auto& [e, lc] : terms) m = std::max(m, lc + e * u);
  double s = 0.0, ds = 0.0;
  for (const auto& [e, lc] : terms) {
    const double w = std::exp(lc + e * u - m);
    s += w;
    ds += e * w;
  }
  return {m + std::log(s) - log_target, ds / s};
}

}  // namespace

double positive_log_root(const std::map<int, double>& log_terms, double log_target) {
  std::vector<std::pair<int, double>> terms;
  for (const auto& [e, lc] : log_terms) {
    if (e <= 0) throw InvalidInput("positive_root: exponents must be positive integers");
    if (std::isnan(lc)) throw InvalidInput("positive_root: coefficient is NaN");
    if (lc != kNegInf) terms.emplace_back(e, lc);
  }
  if (terms.empty()) throw InvalidInput("positive_root: all coefficients are zero");
  if (!std::isfinite(log_target)) throw InvalidInput("positive_root: target must be positive and finite");

  // Monomial bounds: at hi one term alone reaches the target, at lo every
  // term is at most target / k.
  const double log_k = std::log(static_cast<double>(terms.size()));
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& [e, lc] : terms) {
    hi = std::min(hi, (log_target - lc) / e);
    lo = std::min(lo, (log_target - log_k - lc) / e);
  }

  // Coarse bisection, then Newton. h is increasing and convex in u, so
  // Newton started where h >= 0 decreases monotonically onto the root.
  for (int it = 0; it < 60 && hi - lo > 1e-3 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (log_equation(terms, mid, log_target).first > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double u = hi;
  for (int it = 0; it < 100; ++it) {
    const auto [h, dh] = log_equation(terms, u, log_target);
    if (h == 0.0) break;
    if (h > 0.0) hi = u; else lo = u;
    double next = u - h / dh;
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

double positive_root(const std::map<int, double>& terms, double target) {
  if (!(target > 0.0)) throw InvalidInput("positive_root: target must be positive");
  std::map<int, double> log_terms;
  for (const auto& [e, c] : terms) {
    if (c < 0.0) throw InvalidInput("positive_root: coefficients must be nonnegative");
    log_terms[e] = c > 0.0 ? std::log(c) : kNegInf;
  }
  return std::exp(positive_log_root(log_terms, std::log(target)));
}

std::map<int, double> coordinate_log_terms(const StandardFormLP& lp, const Vector& p, double epsilon,
                                           std::size_t row) {
  const auto i = static_cast<Eigen::Index>(row);
  std::map<int, std::vector<double>> grouped;
  for (Eigen::Index j = 0; j < lp.A.cols(); ++j) {
    const auto e = lp.A(i, j);
    if (e <= 0) continue;
    double s = 0.0;
    for (Eigen::Index r = 0; r < lp.A.rows(); ++r)
      if (r != i) s += static_cast<double>(lp.A(r, j)) * p(r);
    grouped[static_cast<int>(e)].push_back((s - lp.c(j)) / epsilon);
  }
  std::map<int, double> out;
  for (const auto& [e, logs] : grouped) out[e] = std::log(static_cast<double>(e)) + kernels::log_sum_exp(logs);
  return out;
}

double dual_objective(const StandardFormLP& lp, const Vector& p, double epsilon) {
  return lp.b.dot(p) - epsilon * primal_from_dual(lp, p, epsilon, kernels::Exec::serial).sum();
}

Vector primal_from_dual(const StandardFormLP& lp, const Vector& p, double epsilon, kernels::Exec exec) {
  Vector log_x(lp.A.cols());
  kernels::log_monomials(exec, kernels::view(lp.A), as_span(p), as_span(lp.c), epsilon, as_span(log_x));
  return log_x.array().exp().matrix();
}

void ascent_update(const StandardFormLP& lp, DualState& st, std::size_t row) {
  const double bi = lp.b(static_cast<Eigen::Index>(row));
  if (!(bi > 0.0)) throw InvalidInput("ascent: b_i must be positive for every nonzero row");
  const auto terms = coordinate_log_terms(lp, st.p, st.epsilon, row);
  st.p(static_cast<Eigen::Index>(row)) = st.epsilon * positive_log_root(terms, std::log(bi));
}

EntropicSolution ascent_solve(const StandardFormLP& lp, double epsilon, const AscentOptions& opts) {
  require_valid(lp);
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const Eigen::Index d = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  for (Eigen::Index i = 0; i < d; ++i)
    if (!(lp.b(i) > 0.0)) throw InvalidInput("ascent: b_i must be positive for every nonzero row");

  // Column lists per row, so an update touches only its support.
  std::vector<std::vector<Eigen::Index>> support(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (lp.A(i, j) > 0) support[static_cast<std::size_t>(i)].push_back(j);

  DualState st{Vector::Zero(d), epsilon, 0};
  Vector z = Vector::Zero(n);  // z = A^T p
  std::vector<std::size_t> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(opts.seed.value_or(0));

  std::map<int, std::vector<double>> grouped;
  std::map<int, double> terms;
  Vector x(n), ax(d);

  bool converged = false;
  while (st.iteration < opts.max_iter) {
    if (opts.seed) std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t row : order) {
      const auto i = static_cast<Eigen::Index>(row);
      const double old = st.p(i);
      for (auto& [e, v] : grouped) v.clear();
      for (Eigen::Index j : support[row]) {
        const auto e = lp.A(i, j);
        grouped[static_cast<int>(e)].push_back((z(j) - static_cast<double>(e) * old - lp.c(j)) / epsilon);
      }
      terms.clear();
      for (const auto& [e, logs] : grouped)
        if (!logs.empty()) terms[e] = std::log(static_cast<double>(e)) + kernels::log_sum_exp(logs);
      const double updated = epsilon * positive_log_root(terms, std::log(lp.b(i)));
      st.p(i) = updated;
      for (Eigen::Index j : support[row]) z(j) += static_cast<double>(lp.A(i, j)) * (updated - old);
      if (opts.on_update) opts.on_update(st, row);
    }
    ++st.iteration;

    // Recompute from p rather than trusting the running z.
    x = primal_from_dual(lp, st.p, epsilon, opts.exec);
    kernels::int_matvec(opts.exec, kernels::view(lp.A), as_span(x), as_span(ax));
    z = lp.A.cast<double>().transpose() * st.p;
    if (!x.allFinite()) throw Error("ascent: iterate became non-finite");
    if ((ax - lp.b).cwiseAbs().maxCoeff() <= opts.tol) {
      converged = true;
      break;
    }
  }

  EntropicSolution sol;
  sol.x = primal_from_dual(lp, st.p, epsilon, opts.exec);
  sol.p = st.p;
  sol.epsilon = epsilon;
  sol.iterations = st.iteration;
  sol.converged = converged;
  sol.residuals = residual_report(lp, sol.x, sol.p, epsilon);
  return sol;
}

}  // namespace entlp
