#pragma once

// Brute-force reference solvers. Deliberately independent of the scaling
// solvers and the path tracker: exact basis enumeration for the LP and plain
// gradient ascent for the regularized dual.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "entlp/exact.hpp"
#include "entlp/kernels.hpp"
#include "entlp/model.hpp"

namespace entlp::oracle {

struct Vertex {
  std::vector<std::size_t> support;        // columns with x_j > 0
  std::vector<exact::Rational> x;          // exact, length n
  exact::Rational cost;
};

struct VertexList {
  std::vector<Vertex> vertices;  // distinct basic feasible solutions
  std::size_t optimal_index = 0;
};

struct LpOptimum {
  bool feasible = false;
  Vector x;
  std::vector<exact::Rational> x_exact;
  double cost = 0.0;
  exact::Rational cost_exact;
  bool unique = false;  // no other vertex attains the optimal cost
  VertexList vertices;
};

struct EnumerationOptions {
  std::size_t max_columns = 20;
  kernels::Exec exec = kernels::Exec::automatic;
};

// Enumerates every d-subset of columns, solves the basis system in exact
// rational arithmetic and keeps the basic feasible solutions. Throws
// InstanceTooLarge when n exceeds max_columns.
LpOptimum lp_optimum(const StandardFormLP& lp, const EnumerationOptions& opts = {});

struct MirrorOptions {
  double tol = 1e-10;
  std::size_t max_iter = 2000000;
  kernels::Exec exec = kernels::Exec::automatic;
  // Called after each accepted step with the dual objective value.
  std::function<void(std::size_t, double)> on_step;
};

// Full-gradient ascent on the entropic dual with backtracking:
// p <- p + eta (b - A exp((A^T p - c)/eps)).
EntropicSolution mirror_solve(const StandardFormLP& lp, double epsilon, const MirrorOptions& opts = {});

// Exact membership of integer points in pos(A), decided by Caratheodory:
// y is in the cone iff some nonsingular d x d column basis B has
// B^{-1} y >= 0. All bases are enumerated once with integer adjugates.
class ConeFeasibility {
 public:
  explicit ConeFeasibility(const IntMatrix& A);
  bool contains(std::span<const std::int64_t> y) const;
  std::size_t basis_count() const { return bases_.size(); }

 private:
  struct Basis {
    std::int64_t det_sign;
    std::vector<std::int64_t> adjugate;  // d x d row-major
  };
  std::size_t d_;
  std::vector<Basis> bases_;
};

}  // namespace entlp::oracle
