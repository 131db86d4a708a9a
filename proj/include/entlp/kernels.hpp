#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel exists twice:
// a plain serial reference in `serial` and an OpenMP version in `omp`. Both
// parallelize only over independent outputs and keep each reduction in a
// fixed sequential order, so the two produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <span>

#include "entlp/types.hpp"

namespace entlp::kernels {

enum class Exec { serial, parallel, automatic };

// Work (number of matrix entries touched) above which `automatic` picks the
// OpenMP path.
inline constexpr std::size_t kParallelThreshold = 1 << 14;

inline bool use_parallel(Exec e, std::size_t work) {
  return e == Exec::parallel || (e == Exec::automatic && work >= kParallelThreshold);
}

// Strided matrix view; works for both Eigen storage orders.
template <typename T>
struct MatrixView {
  const T* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t row_stride = 0;
  std::size_t col_stride = 1;

  T operator()(std::size_t r, std::size_t c) const { return data[r * row_stride + c * col_stride]; }
};

using CostView = MatrixView<double>;
using IntView = MatrixView<std::int64_t>;

template <typename Derived>
MatrixView<typename Derived::Scalar> view(const Eigen::DenseBase<Derived>& m) {
  const auto& d = m.derived();
  return {d.data(), static_cast<std::size_t>(d.rows()), static_cast<std::size_t>(d.cols()),
          static_cast<std::size_t>(d.rowStride()), static_cast<std::size_t>(d.colStride())};
}

// log(sum_k exp(v_k)) with the max shifted out; -inf for an empty or all
// -inf input.
double log_sum_exp(std::span<const double> v);

namespace serial {

// f_r = eps * (log_mu_r - LSE_c((g_c - C_rc) / eps))
void sinkhorn_rows(CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f);
// g_c = eps * (log_nu_c - LSE_r((f_r - C_rc) / eps))
void sinkhorn_cols(CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g);
// out_r = log sum_{j : A_rj > 0} A_rj exp(log_y_j)
void log_row_sums(IntView A, std::span<const double> log_y, std::span<double> out);
// log_y_j += scale * sum_r A_rj delta_r; entries at -inf stay frozen
void scaled_transpose_step(IntView A, std::span<const double> delta, double scale, std::span<double> log_y);
// log_x_j = (sum_r A_rj p_r - c_j) / eps
void log_monomials(IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x);
// out_r = sum_j A_rj x_j
void int_matvec(IntView A, std::span<const double> x, std::span<double> out);

}  // namespace serial

namespace omp {

void sinkhorn_rows(CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f);
void sinkhorn_cols(CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g);
void log_row_sums(IntView A, std::span<const double> log_y, std::span<double> out);
void scaled_transpose_step(IntView A, std::span<const double> delta, double scale, std::span<double> log_y);
void log_monomials(IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x);
void int_matvec(IntView A, std::span<const double> x, std::span<double> out);

}  // namespace omp

void sinkhorn_rows(Exec e, CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f);
void sinkhorn_cols(Exec e, CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g);
void log_row_sums(Exec e, IntView A, std::span<const double> log_y, std::span<double> out);
void scaled_transpose_step(Exec e, IntView A, std::span<const double> delta, double scale,
                           std::span<double> log_y);
void log_monomials(Exec e, IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x);
void int_matvec(Exec e, IntView A, std::span<const double> x, std::span<double> out);

}  // namespace entlp::kernels
