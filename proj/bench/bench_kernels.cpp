// Serial reference kernels against their OpenMP counterparts, plus the two
// end-to-end solvers that use them most.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "entlp/builders.hpp"
#include "entlp/kernels.hpp"
#include "entlp/oracle.hpp"
#include "entlp/sinkhorn.hpp"

namespace {

using namespace entlp;

Matrix random_cost(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Matrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = u(rng);
  return c;
}

template <bool Parallel>
void BM_sinkhorn_rows(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const Matrix cost = random_cost(n, 1);
  std::vector<double> g(static_cast<std::size_t>(n), 0.0), log_mu(static_cast<std::size_t>(n), 0.0),
      f(static_cast<std::size_t>(n));
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::sinkhorn_rows(kernels::view(cost), g, log_mu, 0.1, f);
    else
      kernels::serial::sinkhorn_rows(kernels::view(cost), g, log_mu, 0.1, f);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void BM_log_monomials(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  TransportProblem tp{Vector::Ones(n), Vector::Ones(n), random_cost(n, 2)};
  const auto lp = build_transport(tp);
  std::vector<double> p(lp.rows(), 0.5), log_x(lp.cols());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::log_monomials(kernels::view(lp.A), p, {lp.c.data(), lp.cols()}, 0.1, log_x);
    else
      kernels::serial::log_monomials(kernels::view(lp.A), p, {lp.c.data(), lp.cols()}, 0.1, log_x);
    benchmark::DoNotOptimize(log_x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lp.rows() * lp.cols()));
}

template <kernels::Exec E>
void BM_sinkhorn_solve(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  TransportProblem tp{Vector::Ones(n), Vector::Ones(n), random_cost(n, 3)};
  SinkhornOptions o;
  o.exec = E;
  o.tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_solve(tp, 1.0, o).x.data());
}

template <kernels::Exec E>
void BM_lp_enumeration(benchmark::State& state) {
  TransportProblem tp{Vector::Constant(3, 4.0), Vector::Constant(4, 3.0), random_cost(4, 4).topRows(3)};
  const auto lp = build_transport(tp);
  oracle::EnumerationOptions o;
  o.exec = E;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::lp_optimum(lp, o).cost);
}

}  // namespace

BENCHMARK(BM_sinkhorn_rows<false>)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK(BM_sinkhorn_rows<true>)->RangeMultiplier(4)->Range(64, 2048);
BENCHMARK(BM_log_monomials<false>)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(BM_log_monomials<true>)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(BM_sinkhorn_solve<kernels::Exec::serial>)->Arg(256);
BENCHMARK(BM_sinkhorn_solve<kernels::Exec::parallel>)->Arg(256);
BENCHMARK(BM_lp_enumeration<kernels::Exec::serial>);
BENCHMARK(BM_lp_enumeration<kernels::Exec::parallel>);

BENCHMARK_MAIN();
