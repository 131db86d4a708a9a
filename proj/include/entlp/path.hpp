#pragma once

// Continuation of the entropic path x*(mu) toward mu = 0 in toric
// coordinates: x_j = exp(-c_j/mu) t^{a_j}, tracked through u = log t.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "entlp/exact.hpp"
#include "entlp/model.hpp"

namespace entlp {

struct InitialT {
  Vector t;
  Vector log_t;
  double residual = 0.0;  // ||A^T log t - (log x + c/eps)||_inf, relative to max(1, ||rhs||_inf)
};

// Least-squares solve of A^T log t = log x_eps + c/eps. Throws InvalidInput
// when x_eps is not positive or the residual exceeds max_residual.
InitialT initial_t(const StandardFormLP& lp, const Vector& x_eps, double epsilon, double max_residual = 1e-6);

// log x_j = a_j . u - c_j / mu
Vector path_log_point(const StandardFormLP& lp, const Vector& log_t, double mu);
Vector path_point(const StandardFormLP& lp, const Vector& log_t, double mu);

// R(u) = A x(u) - b and its Jacobian A diag(x) A^T in u = log t.
Vector corrector_residual(const StandardFormLP& lp, const Vector& log_t, double mu);
Matrix corrector_jacobian(const StandardFormLP& lp, const Vector& log_t, double mu);

struct CorrectorResult {
  Vector log_t;
  bool converged = false;
  std::size_t newton_steps = 0;
  double residual = 0.0;  // ||R||_inf at the returned point
  Vector t() const { return log_t.array().exp().matrix(); }
};

// Damped Newton on R(u) = 0. Returns converged = false on divergence or
// when max_newton steps do not reach tol.
CorrectorResult corrector(const StandardFormLP& lp, const Vector& log_t, double mu, double tol = 1e-10,
                          std::size_t max_newton = 50);

struct VertexRounding {
  bool ambiguous = true;
  std::string reason;
  std::vector<std::size_t> support;
  Vector x;                              // set when not ambiguous
  std::vector<exact::Rational> x_exact;  // set when not ambiguous
};

// Detects S = {j : x_j >= threshold * max x} and solves A_S x_S = b exactly.
VertexRounding round_to_vertex(const StandardFormLP& lp, const Vector& x, double support_threshold = 1e-6);

enum class PathStatus { converged, stalled, ambiguous_tie };

const char* to_string(PathStatus s);

struct PathSample {
  double mu = 0.0;
  Vector log_t;
  Vector t;
  Vector x;
  double cost = 0.0;
};

struct PathTrace {
  std::vector<PathSample> samples;  // mu strictly decreasing
  std::vector<std::size_t> final_support;
  std::optional<Vector> final_vertex;
  std::vector<exact::Rational> final_vertex_exact;
  PathStatus status = PathStatus::stalled;
};

struct PathOptions {
  double theta = 0.8;
  std::optional<double> mu_min;  // default 1e-4 * epsilon0
  double support_threshold = 1e-6;
  double corrector_tol = 1e-10;
  std::size_t max_newton = 50;
  // Stop early once the support has been unchanged, with at most d entries,
  // for this many consecutive samples.
  std::size_t stable_steps = 8;
  std::size_t max_steps = 100000;
};

// Tracks from a solved point x*(epsilon0).
PathTrace track(const StandardFormLP& lp, const Vector& x_eps0, double epsilon0, const PathOptions& opts = {});

// Solves the regularized problem at epsilon0 by coordinate ascent first.
PathTrace track(const StandardFormLP& lp, double epsilon0, const PathOptions& opts = {});

}  // namespace entlp
