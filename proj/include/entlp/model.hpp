#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entlp/exact.hpp"
#include "entlp/types.hpp"

namespace entlp {

// Minimize c.x subject to A x = b, x >= 0, with A a nonnegative integer
// d x n matrix of rank d.
struct StandardFormLP {
  IntMatrix A;
  Vector b;
  Vector c;
  std::vector<std::string> labels;  // optional, one per column

  std::size_t rows() const { return static_cast<std::size_t>(A.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(A.cols()); }
};

struct ValidationReport {
  bool ok = false;
  std::size_t rank = 0;
  bool rank_deficient = false;
  bool dimension_mismatch = false;
  std::vector<std::size_t> zero_columns;
  std::vector<std::pair<std::size_t, std::size_t>> negative_entries;
  std::vector<std::string> messages;
};

ValidationReport validate(const StandardFormLP& lp);

// Throws InvalidInput carrying the report's messages when validation fails.
void require_valid(const StandardFormLP& lp);

struct ResidualReport {
  double primal_inf = 0.0;             // ||Ax - b||_inf
  double toric_inf = 0.0;              // max log-binomial violation
  std::optional<double> dual_gap;      // |p.(Ax - b)| when potentials are known
};

struct EntropicSolution {
  Vector x;
  Vector p;
  double epsilon = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  ResidualReport residuals;
};

struct IntegerKernelBasis {
  std::vector<IntVector> vectors;
};

// Exact integer basis of ker(M). Throws InstanceTooLarge if an entry does
// not fit in 64 bits.
IntegerKernelBasis integer_kernel(const IntMatrix& M);

// Stacks A on top of c, requiring c to be integer valued.
IntMatrix stack_cost_row(const StandardFormLP& lp);

// max_u |u.(log_x + shift)| over the basis; vectors touching a coordinate
// with log_x = -inf are skipped.
double log_binomial_residual(const IntegerKernelBasis& basis, std::span<const double> log_x,
                             std::span<const double> shift);

// Distance of x from the scaled toric variety T_{A,c,eps}: the maximum of
// |u.(log x + c/eps)| over an integer basis u of ker(A). Requires x > 0 and
// integer c. primal_inf is ||Ax - b||_inf.
ResidualReport toric_residual(const StandardFormLP& lp, std::span<const double> x, double epsilon);

// Same certificate evaluated from log x directly, so coordinates that
// underflow in linear scale stay usable.
double toric_residual_log(const StandardFormLP& lp, std::span<const double> log_x, double epsilon);

// lambda with lambda^T A = (1,...,1), if the all-ones vector is in the row
// space of A.
std::optional<std::vector<exact::Rational>> ones_coefficients(const IntMatrix& A);

Vector apply(const IntMatrix& A, const Vector& x);
double primal_infeasibility(const StandardFormLP& lp, const Vector& x);

// Above this many columns residual_report switches from the exact kernel
// certificate to the potential certificate max_j |log x_j - (a_j.p - c_j)/eps|.
inline constexpr std::size_t kKernelCertificateColumns = 256;

// Residual report attached to solver output. Uses the kernel of A so it does
// not require integer c.
ResidualReport residual_report(const StandardFormLP& lp, const Vector& x, const Vector& p,
                               double epsilon);

bool is_integer_valued(std::span<const double> v);

}  // namespace entlp
