#pragma once

#include <cstddef>
#include <vector>

#include "entlp/model.hpp"

namespace entlp {

// Balanced discrete transport between margins mu (d1) and nu (d2).
struct TransportProblem {
  Vector mu;
  Vector nu;
  Matrix cost;  // d1 x d2

  std::size_t d1() const { return static_cast<std::size_t>(mu.size()); }
  std::size_t d2() const { return static_cast<std::size_t>(nu.size()); }
  double total_mass() const { return mu.sum(); }
};

// Throws InvalidInput on non-positive margins, shape mismatch or unbalanced
// totals (relative tolerance 1e-12).
void check_transport(const TransportProblem& tp);

// Conic coupling of integer margins mu in [e1]^d1 and nu in [e2]^d2. Costs
// are stored flat in lexicographic (kappa, i, lambda, j) order, zero based.
class ConicProblem {
 public:
  ConicProblem(int d1, int e1, int d2, int e2, std::vector<int> mu, std::vector<int> nu,
               std::vector<double> cost, bool normalized);

  int d1() const { return d1_; }
  int e1() const { return e1_; }
  int d2() const { return d2_; }
  int e2() const { return e2_; }
  const std::vector<int>& mu() const { return mu_; }
  const std::vector<int>& nu() const { return nu_; }
  const std::vector<double>& cost() const { return cost_; }
  bool normalized() const { return normalized_; }

  std::size_t size() const { return static_cast<std::size_t>(d1_ * e1_ * d2_ * e2_); }
  // kappa, lambda zero based; i, j are masses in 1..e1 / 1..e2.
  std::size_t index(int kappa, int i, int lambda, int j) const {
    return static_cast<std::size_t>(((kappa * e1_ + (i - 1)) * d2_ + lambda) * e2_ + (j - 1));
  }
  double cost(int kappa, int i, int lambda, int j) const { return cost_[index(kappa, i, lambda, j)]; }

 private:
  int d1_, e1_, d2_, e2_;
  std::vector<int> mu_, nu_;
  std::vector<double> cost_;
  bool normalized_;
};

// 0/1 row-sum / column-sum matrix with the last column-sum row removed;
// columns in (kappa, lambda) lexicographic order.
StandardFormLP build_transport(const TransportProblem& tp);

// Column (kappa,i,lambda,j) equals i e_kappa (+) j e_lambda. When normalized
// a row of ones is appended with right-hand side 1.
StandardFormLP build_conic(const ConicProblem& cp);

// Thrown when the product witness for conic feasibility does not apply.
class WitnessUnavailable : public Error {
 public:
  using Error::Error;
};

// Product-form conic coupling supported on i = |mu|_1, j = |nu|_1. Needs
// |mu|_1 <= e1 and |nu|_1 <= e2.
Vector conic_feasible_point(const ConicProblem& cp);

// Rank-one coupling mu nu^T / s.
Matrix birch_point_transport(const TransportProblem& tp);

// Flatten a d1 x d2 matrix row-major, matching build_transport's columns.
Vector flatten_plan(const Matrix& plan);
Matrix unflatten_plan(const Vector& x, std::size_t d1, std::size_t d2);

}  // namespace entlp
