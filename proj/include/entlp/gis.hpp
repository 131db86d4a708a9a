#pragma once

#include <functional>
#include <span>

#include "entlp/kernels.hpp"
#include "entlp/model.hpp"

namespace entlp {

// Constant-column-sum reformulation of an LP whose row space contains the
// all-ones vector. Column 0 is the extra coordinate y_0; columns 1..n are
// the original ones with a slack entry a - |a_j| appended.
struct AugmentedLP {
  IntMatrix calA;          // (d+1) x (n+1)
  Vector beta;             // d+1
  Vector gamma;            // n+1
  std::int64_t a = 0;      // common column sum
  double s = 0.0;          // fixed total sum_j x_j = lambda.b
  exact::Rational s_exact;
  double s_c = 0.0;        // 1 + sum_j exp(-c_j/eps)
  double log_s_c = 0.0;
  double epsilon = 1.0;
  StandardFormLP source;
};

// Thrown when (1,...,1) is not in the row space; add a normalization row
// (sum of all variables fixed) to make the LP eligible.
class OnesNotInRowSpace : public NotApplicable {
 public:
  using NotApplicable::NotApplicable;
};

AugmentedLP gis_augment(const StandardFormLP& lp, double epsilon);

struct GisOptions {
  double tol = 1e-10;  // on both ||calA y - beta||_inf and ||Ax - b||_inf
  std::size_t max_iter = 1000000;
  kernels::Exec exec = kernels::Exec::automatic;
  // Called after every iteration with k >= 1 and log y^(k).
  std::function<void(std::size_t, std::span<const double>)> on_iterate;
};

// One multiplicative update y_i <- y_i (prod_r (beta_r / (calA y)_r)^calA_ri)^(1/a)
// in log space, without the renormalization that gis_solve applies.
void gis_raw_step(const AugmentedLP& aug, std::span<double> log_y, kernels::Exec exec = kernels::Exec::automatic);

// ||calA y - beta||_inf
double gis_constraint_gap(const AugmentedLP& aug, std::span<const double> log_y);

// iota(x) = (1, x) / (|x| + 1)
Vector gis_embed(const Vector& x);

EntropicSolution gis_solve(const AugmentedLP& aug, const GisOptions& opts = {});

}  // namespace entlp
