#include "entlp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entlp::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Single output entries; the serial and OpenMP loops below only differ in
// how they distribute these calls.

double softmin_row(CostView cost, std::size_t r, std::span<const double> g, double eps) {
  double m = kNegInf;
  for (std::size_t c = 0; c < cost.cols; ++c) m = std::max(m, (g[c] - cost(r, c)) / eps);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t c = 0; c < cost.cols; ++c) s += std::exp((g[c] - cost(r, c)) / eps - m);
  return m + std::log(s);
}

double softmin_col(CostView cost, std::size_t c, std::span<const double> f, double eps) {
  double m = kNegInf;
  for (std::size_t r = 0; r < cost.rows; ++r) m = std::max(m, (f[r] - cost(r, c)) / eps);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t r = 0; r < cost.rows; ++r) s += std::exp((f[r] - cost(r, c)) / eps - m);
  return m + std::log(s);
}

double log_row_sum(IntView A, std::size_t r, std::span<const double> log_y) {
  double m = kNegInf;
  for (std::size_t j = 0; j < A.cols; ++j) {
    const auto a = A(r, j);
    if (a > 0) m = std::max(m, std::log(static_cast<double>(a)) + log_y[j]);
  }
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t j = 0; j < A.cols; ++j) {
    const auto a = A(r, j);
    if (a > 0) s += static_cast<double>(a) * std::exp(log_y[j] - m);
  }
  return m + std::log(s);
}

void transpose_entry(IntView A, std::size_t j, std::span<const double> delta, double scale,
                     std::span<double> log_y) {
  if (log_y[j] == kNegInf) return;
  double s = 0.0;
  for (std::size_t r = 0; r < A.rows; ++r) {
    const auto a = A(r, j);
    if (a != 0) s += static_cast<double>(a) * delta[r];
  }
  log_y[j] += scale * s;
}

double log_monomial(IntView A, std::size_t j, std::span<const double> p, std::span<const double> c,
                    double eps) {
  double s = 0.0;
  for (std::size_t r = 0; r < A.rows; ++r) {
    const auto a = A(r, j);
    if (a != 0) s += static_cast<double>(a) * p[r];
  }
  return (s - c[j]) / eps;
}

double row_dot(IntView A, std::size_t r, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t j = 0; j < A.cols; ++j) {
    const auto a = A(r, j);
    if (a != 0) s += static_cast<double>(a) * x[j];
  }
  return s;
}

}  // namespace

double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  if (m == std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

namespace serial {

void sinkhorn_rows(CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f) {
  for (std::size_t r = 0; r < cost.rows; ++r) f[r] = eps * (log_mu[r] - softmin_row(cost, r, g, eps));
}

void sinkhorn_cols(CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g) {
  for (std::size_t c = 0; c < cost.cols; ++c) g[c] = eps * (log_nu[c] - softmin_col(cost, c, f, eps));
}

void log_row_sums(IntView A, std::span<const double> log_y, std::span<double> out) {
  for (std::size_t r = 0; r < A.rows; ++r) out[r] = log_row_sum(A, r, log_y);
}

void scaled_transpose_step(IntView A, std::span<const double> delta, double scale, std::span<double> log_y) {
  for (std::size_t j = 0; j < A.cols; ++j) transpose_entry(A, j, delta, scale, log_y);
}

void log_monomials(IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x) {
  for (std::size_t j = 0; j < A.cols; ++j) log_x[j] = log_monomial(A, j, p, c, eps);
}

void int_matvec(IntView A, std::span<const double> x, std::span<double> out) {
  for (std::size_t r = 0; r < A.rows; ++r) out[r] = row_dot(A, r, x);
}

}  // namespace serial

namespace omp {

void sinkhorn_rows(CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f) {
  const auto rows = static_cast<std::ptrdiff_t>(cost.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    f[rr] = eps * (log_mu[rr] - softmin_row(cost, rr, g, eps));
  }
}

void sinkhorn_cols(CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g) {
  const auto cols = static_cast<std::ptrdiff_t>(cost.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < cols; ++c) {
    const auto cc = static_cast<std::size_t>(c);
    g[cc] = eps * (log_nu[cc] - softmin_col(cost, cc, f, eps));
  }
}

void log_row_sums(IntView A, std::span<const double> log_y, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(A.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) out[static_cast<std::size_t>(r)] = log_row_sum(A, static_cast<std::size_t>(r), log_y);
}

void scaled_transpose_step(IntView A, std::span<const double> delta, double scale, std::span<double> log_y) {
  const auto cols = static_cast<std::ptrdiff_t>(A.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j) transpose_entry(A, static_cast<std::size_t>(j), delta, scale, log_y);
}

void log_monomials(IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x) {
  const auto cols = static_cast<std::ptrdiff_t>(A.cols);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < cols; ++j)
    log_x[static_cast<std::size_t>(j)] = log_monomial(A, static_cast<std::size_t>(j), p, c, eps);
}

void int_matvec(IntView A, std::span<const double> x, std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(A.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) out[static_cast<std::size_t>(r)] = row_dot(A, static_cast<std::size_t>(r), x);
}

}  // namespace omp

void sinkhorn_rows(Exec e, CostView cost, std::span<const double> g, std::span<const double> log_mu, double eps,
                   std::span<double> f) {
  if (use_parallel(e, cost.rows * cost.cols))
    omp::sinkhorn_rows(cost, g, log_mu, eps, f);
  else
    serial::sinkhorn_rows(cost, g, log_mu, eps, f);
}

void sinkhorn_cols(Exec e, CostView cost, std::span<const double> f, std::span<const double> log_nu, double eps,
                   std::span<double> g) {
  if (use_parallel(e, cost.rows * cost.cols))
    omp::sinkhorn_cols(cost, f, log_nu, eps, g);
  else
    serial::sinkhorn_cols(cost, f, log_nu, eps, g);
}

void log_row_sums(Exec e, IntView A, std::span<const double> log_y, std::span<double> out) {
  if (use_parallel(e, A.rows * A.cols))
    omp::log_row_sums(A, log_y, out);
  else
    serial::log_row_sums(A, log_y, out);
}

void scaled_transpose_step(Exec e, IntView A, std::span<const double> delta, double scale,
                           std::span<double> log_y) {
  if (use_parallel(e, A.rows * A.cols))
    omp::scaled_transpose_step(A, delta, scale, log_y);
  else
    serial::scaled_transpose_step(A, delta, scale, log_y);
}

void log_monomials(Exec e, IntView A, std::span<const double> p, std::span<const double> c, double eps,
                   std::span<double> log_x) {
  if (use_parallel(e, A.rows * A.cols))
    omp::log_monomials(A, p, c, eps, log_x);
  else
    serial::log_monomials(A, p, c, eps, log_x);
}

void int_matvec(Exec e, IntView A, std::span<const double> x, std::span<double> out) {
  if (use_parallel(e, A.rows * A.cols))
    omp::int_matvec(A, x, out);
  else
    serial::int_matvec(A, x, out);
}

}  // namespace entlp::kernels
