#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "entlp/builders.hpp"
#include "entlp/kernels.hpp"
#include "entlp/model.hpp"

namespace entlp {

// Row potentials f (d1) and column potentials g (d2). The plan is
// x_kl = exp((f_k + g_l - c_kl) / eps).
struct SinkhornState {
  Vector f;
  Vector g;
  double epsilon = 1.0;
  std::size_t iteration = 0;
};

struct SinkhornOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  // When set, each sweep visits the d1 + d2 coordinates in a seeded random
  // order instead of all rows then all columns.
  std::optional<std::uint64_t> seed;
  kernels::Exec exec = kernels::Exec::automatic;
  std::function<void(const SinkhornState&)> on_sweep;
};

SinkhornState sinkhorn_init(const TransportProblem& tp, double epsilon);

// Closed-form update of every f_k (row marginals become exact).
void sinkhorn_update_rows(const TransportProblem& tp, SinkhornState& st,
                          kernels::Exec exec = kernels::Exec::automatic);
// Closed-form update of every g_l (column marginals become exact).
void sinkhorn_update_cols(const TransportProblem& tp, SinkhornState& st,
                          kernels::Exec exec = kernels::Exec::automatic);
// One sweep: all f ascending, then all g ascending.
void sinkhorn_sweep(const TransportProblem& tp, SinkhornState& st, kernels::Exec exec = kernels::Exec::automatic);

Matrix sinkhorn_plan(const TransportProblem& tp, const SinkhornState& st);

// max(||x 1 - mu||_inf, ||x^T 1 - nu||_inf)
double marginal_gap(const TransportProblem& tp, const Matrix& plan);

// Dual potentials of the reduced transport LP (last column constraint
// removed) that reproduce the same plan.
Vector transport_lp_potentials(const SinkhornState& st);

EntropicSolution sinkhorn_solve(const TransportProblem& tp, double epsilon, const SinkhornOptions& opts = {});

// Scaling form diag(F) K diag(G) with F = exp(f/eps), G = exp(g/eps),
// K = exp(-c/eps). Empty when K would leave the safe exponent range.
std::optional<Matrix> sinkhorn_plan_scaling_form(const TransportProblem& tp, const SinkhornState& st);

// Scaling iterations F = mu / (K G), G = nu / (K^T F) run directly in linear
// scale. Only usable when K does not underflow.
std::optional<Matrix> sinkhorn_scaling_iterations(const TransportProblem& tp, double epsilon, std::size_t sweeps);

}  // namespace entlp
