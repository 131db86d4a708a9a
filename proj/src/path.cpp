#include "entlp/path.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "entlp/dual_ascent.hpp"

namespace entlp {

namespace {

Matrix dense(const IntMatrix& A) { return A.cast<double>(); }

std::vector<std::size_t> support_of(const Vector& x, double threshold) {
  std::vector<std::size_t> s;
  const double m = x.maxCoeff();
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x(j) >= threshold * m) s.push_back(static_cast<std::size_t>(j));
  return s;
}

// Phi(u) = b.u - sum x(u), concave with gradient -R and Hessian -J.
double merit(const StandardFormLP& lp, const Vector& u, double mu) {
  return lp.b.dot(u) - path_point(lp, u, mu).sum();
}

}  // namespace

InitialT initial_t(const StandardFormLP& lp, const Vector& x_eps, double epsilon, double max_residual) {
  require_valid(lp);
  if (!(epsilon > 0.0)) throw InvalidInput("initial_t: epsilon must be positive");
  if (x_eps.size() != lp.A.cols()) throw InvalidInput("initial_t: x has wrong length");
  if (!(x_eps.array() > 0.0).all()) throw InvalidInput("initial_t: x must be strictly positive");
  const Vector rhs = x_eps.array().log().matrix() + lp.c / epsilon;
  const Matrix At = dense(lp.A).transpose();
  InitialT out;
  out.log_t = At.colPivHouseholderQr().solve(rhs);
  out.t = out.log_t.array().exp().matrix();
  out.residual = (At * out.log_t - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if (!(out.residual <= max_residual))
    throw InvalidInput("initial_t: point is not on the scaled toric variety (residual " +
                       std::to_string(out.residual) + ")");
  return out;
}

Vector path_log_point(const StandardFormLP& lp, const Vector& log_t, double mu) {
  return dense(lp.A).transpose() * log_t - lp.c / mu;
}

Vector path_point(const StandardFormLP& lp, const Vector& log_t, double mu) {
  return path_log_point(lp, log_t, mu).array().exp().matrix();
}

Vector corrector_residual(const StandardFormLP& lp, const Vector& log_t, double mu) {
  return dense(lp.A) * path_point(lp, log_t, mu) - lp.b;
}

Matrix corrector_jacobian(const StandardFormLP& lp, const Vector& log_t, double mu) {
  const Matrix A = dense(lp.A);
  const Vector x = path_point(lp, log_t, mu);
  return A * x.asDiagonal() * A.transpose();
}

CorrectorResult corrector(const StandardFormLP& lp, const Vector& log_t, double mu, double tol,
                          std::size_t max_newton) {
  if (!(mu > 0.0)) throw InvalidInput("corrector: mu must be positive");
  const Matrix A = dense(lp.A);
  CorrectorResult out;
  out.log_t = log_t;
  Vector x = path_point(lp, out.log_t, mu);
  Vector R = A * x - lp.b;
  out.residual = R.allFinite() ? R.cwiseAbs().maxCoeff() : INFINITY;

  while (out.residual > tol) {
    if (out.newton_steps >= max_newton || !std::isfinite(out.residual)) return out;
    const Matrix J = A * x.asDiagonal() * A.transpose();
    Eigen::LDLT<Matrix> ldlt(J);
    if (ldlt.info() != Eigen::Success) return out;
    const Vector delta = ldlt.solve(-R);
    if (!delta.allFinite()) return out;

    // Full step if it reduces the residual; otherwise Armijo backtracking on
    // the concave merit function, for which delta is an ascent direction.
    const double phi0 = merit(lp, out.log_t, mu);
    const double slope = -R.dot(delta);
    double alpha = 1.0;
    Vector u_next, x_next, R_next;
    double res_next = INFINITY;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      u_next = out.log_t + alpha * delta;
      x_next = path_point(lp, u_next, mu);
      R_next = A * x_next - lp.b;
      res_next = R_next.allFinite() ? R_next.cwiseAbs().maxCoeff() : INFINITY;
      if (std::isfinite(res_next) &&
          (res_next < out.residual || merit(lp, u_next, mu) >= phi0 + 1e-4 * alpha * slope)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return out;
    out.log_t = u_next;
    x = x_next;
    R = R_next;
    out.residual = res_next;
    ++out.newton_steps;
  }
  out.converged = true;
  return out;
}

VertexRounding round_to_vertex(const StandardFormLP& lp, const Vector& x, double support_threshold) {
  VertexRounding out;
  if (x.size() != lp.A.cols()) throw InvalidInput("round_to_vertex: x has wrong length");
  if (!(x.maxCoeff() > 0.0)) {
    out.reason = "x has no positive entry";
    return out;
  }
  out.support = support_of(x, support_threshold);
  const std::size_t d = lp.rows();
  if (out.support.size() > d) {
    out.reason = "support has " + std::to_string(out.support.size()) + " > d entries";
    return out;
  }
  exact::RationalMatrix AS(d, out.support.size());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < out.support.size(); ++k)
      AS(r, k) = exact::Rational(lp.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(out.support[k])));
  const auto b = exact::to_rational(std::span<const double>(lp.b.data(), d));
  const auto sol = exact::solve(AS, b);
  if (!sol.consistent) {
    out.reason = "support system is inconsistent";
    return out;
  }
  if (!sol.unique) {
    out.reason = "support columns are linearly dependent";
    return out;
  }
  for (const auto& v : sol.x)
    if (v < 0) {
      out.reason = "support solution has a negative entry";
      return out;
    }
  out.ambiguous = false;
  out.x_exact.assign(lp.cols(), exact::Rational(0));
  for (std::size_t k = 0; k < out.support.size(); ++k) out.x_exact[out.support[k]] = sol.x[k];
  out.x.resize(x.size());
  for (std::size_t j = 0; j < lp.cols(); ++j) out.x(static_cast<Eigen::Index>(j)) = exact::to_double(out.x_exact[j]);
  return out;
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::stalled: return "stalled";
    case PathStatus::ambiguous_tie: return "ambiguous-tie";
  }
  return "unknown";
}

PathTrace track(const StandardFormLP& lp, const Vector& x_eps0, double epsilon0, const PathOptions& opts) {
  require_valid(lp);
  if (!(opts.theta > 0.0 && opts.theta < 1.0)) throw InvalidInput("track: theta must lie in (0, 1)");
  const double mu_min = opts.mu_min.value_or(1e-4 * epsilon0);
  if (!(mu_min > 0.0)) throw InvalidInput("track: mu_min must be positive");
  const Matrix A = dense(lp.A);
  const std::size_t d = lp.rows();

  PathTrace trace;
  auto record = [&](double mu, const Vector& u) {
    PathSample s;
    s.mu = mu;
    s.log_t = u;
    s.t = u.array().exp().matrix();
    s.x = path_point(lp, u, mu);
    s.cost = lp.c.dot(s.x);
    trace.samples.push_back(std::move(s));
  };

  const auto start = corrector(lp, initial_t(lp, x_eps0, epsilon0).log_t, epsilon0, opts.corrector_tol,
                               opts.max_newton);
  if (!start.converged) {
    trace.status = PathStatus::stalled;
    return trace;
  }
  double mu = epsilon0;
  Vector u = start.log_t;
  record(mu, u);

  double theta_local = opts.theta;
  std::vector<std::size_t> last_support = support_of(trace.samples.back().x, opts.support_threshold);
  std::size_t stable = 0;
  bool done = mu <= mu_min;
  trace.status = PathStatus::converged;
  for (std::size_t step = 0; !done && step < opts.max_steps; ++step) {
    const double mu_next = std::max(theta_local * mu, mu_min);

    // Euler predictor in p = mu u, which stays bounded as mu -> 0:
    // du/dmu = -J^{-1} A diag(x) c / mu^2 and dp/dmu = u + mu du/dmu.
    const Vector x = path_point(lp, u, mu);
    const Matrix J = A * x.asDiagonal() * A.transpose();
    const Vector dudmu = J.ldlt().solve(-(A * x.cwiseProduct(lp.c)) / (mu * mu));
    Vector guess = u;
    if (dudmu.allFinite()) {
      const Vector p_next = mu * u + (mu_next - mu) * (u + mu * dudmu);
      guess = p_next / mu_next;
    }
    auto corr = corrector(lp, guess, mu_next, opts.corrector_tol, opts.max_newton);
    if (!corr.converged) {
      theta_local = std::sqrt(theta_local);
      if (theta_local > 1.0 - 1e-6) {
        trace.status = PathStatus::stalled;
        break;
      }
      continue;
    }
    mu = mu_next;
    u = corr.log_t;
    record(mu, u);
    theta_local = std::max(opts.theta, theta_local * theta_local);

    auto s = support_of(trace.samples.back().x, opts.support_threshold);
    stable = (s == last_support) ? stable + 1 : 0;
    last_support = std::move(s);
    if (mu <= mu_min || (stable >= opts.stable_steps && last_support.size() <= d)) done = true;
  }

  if (!done) trace.status = PathStatus::stalled;
  const auto& last = trace.samples.back();
  trace.final_support = support_of(last.x, opts.support_threshold);
  if (trace.status == PathStatus::stalled) return trace;
  auto vr = round_to_vertex(lp, last.x, opts.support_threshold);
  if (vr.ambiguous) {
    trace.status = PathStatus::ambiguous_tie;
    return trace;
  }
  trace.final_vertex = vr.x;
  trace.final_vertex_exact = std::move(vr.x_exact);
  return trace;
}

PathTrace track(const StandardFormLP& lp, double epsilon0, const PathOptions& opts) {
  const auto sol = ascent_solve(lp, epsilon0);
  if (!sol.converged) throw Error("track: regularized solve at epsilon0 did not converge");
  return track(lp, sol.x, epsilon0, opts);
}

}  // namespace entlp
