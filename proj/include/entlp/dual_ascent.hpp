#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "entlp/kernels.hpp"
#include "entlp/model.hpp"

namespace entlp {

struct DualState {
  Vector p;
  double epsilon = 1.0;
  std::size_t iteration = 0;
};

// Unique E > 0 with sum_e coeff_e E^e = target. Exponents are positive
// integers, coefficients nonnegative with at least one positive.
double positive_root(const std::map<int, double>& terms, double target);

// Same equation with every quantity in logs: returns log E for
// sum_e exp(log_coeff_e + e * log E) = exp(log_target). Used when the
// coefficients span more than the double range.
double positive_log_root(const std::map<int, double>& log_terms, double log_target);

// Grouped coefficients of the one-variable equation for coordinate `row`:
// log_coeff_e = log sum_{j : A_row,j = e} e * exp((sum_{r != row} A_rj p_r - c_j)/eps).
std::map<int, double> coordinate_log_terms(const StandardFormLP& lp, const Vector& p, double epsilon,
                                           std::size_t row);

// b.p - eps * sum_j exp((A^T p - c)_j / eps)
double dual_objective(const StandardFormLP& lp, const Vector& p, double epsilon);

// x_j = exp((a_j.p - c_j)/eps)
Vector primal_from_dual(const StandardFormLP& lp, const Vector& p, double epsilon,
                        kernels::Exec exec = kernels::Exec::automatic);

// Exact maximization of the dual in coordinate `row`.
void ascent_update(const StandardFormLP& lp, DualState& st, std::size_t row);

struct AscentOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;  // sweeps
  std::optional<std::uint64_t> seed;
  kernels::Exec exec = kernels::Exec::automatic;
  // Called after each coordinate update with the updated row index.
  std::function<void(const DualState&, std::size_t)> on_update;
};

EntropicSolution ascent_solve(const StandardFormLP& lp, double epsilon, const AscentOptions& opts = {});

}  // namespace entlp
