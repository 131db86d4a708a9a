#include "entlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <optional>

namespace entlp::oracle {

namespace {

using exact::Rational;

// All k-subsets of {0..n-1} in lexicographic order, flattened.
std::vector<std::size_t> all_subsets(std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.insert(out.end(), idx.begin(), idx.end());
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::optional<Vertex> basic_solution(const exact::RationalMatrix& A, const std::vector<Rational>& b,
                                     const std::vector<Rational>& c, const std::size_t* basis, std::size_t d) {
  exact::RationalMatrix B(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) B(r, k) = A(r, basis[k]);
  const auto sol = exact::solve(B, b);
  if (!sol.consistent || !sol.unique) return std::nullopt;
  for (const auto& v : sol.x)
    if (v < 0) return std::nullopt;

  Vertex vtx;
  vtx.x.assign(A.cols, Rational(0));
  vtx.cost = 0;
  for (std::size_t k = 0; k < d; ++k) {
    if (sol.x[k] == 0) continue;
    vtx.x[basis[k]] = sol.x[k];
    vtx.cost += c[basis[k]] * sol.x[k];
  }
  for (std::size_t j = 0; j < A.cols; ++j)
    if (vtx.x[j] != 0) vtx.support.push_back(j);
  return vtx;
}

}  // namespace

LpOptimum lp_optimum(const StandardFormLP& lp, const EnumerationOptions& opts) {
  require_valid(lp);
  const std::size_t d = lp.rows();
  const std::size_t n = lp.cols();
  if (n > opts.max_columns)
    throw InstanceTooLarge("lp_optimum enumerates C(n, d) bases; n = " + std::to_string(n) + " exceeds " +
                           std::to_string(opts.max_columns));

  const auto A = exact::to_rational(lp.A);
  const auto b = exact::to_rational(std::span<const double>(lp.b.data(), d));
  const auto c = exact::to_rational(std::span<const double>(lp.c.data(), n));
  const auto subsets = all_subsets(n, d);
  const std::size_t count = subsets.size() / d;

  // Each slot is written by exactly one iteration; the merge below walks the
  // slots in order, so the result does not depend on the thread count.
  std::vector<std::optional<Vertex>> found(count);
  const auto total = static_cast<std::ptrdiff_t>(count);
  if (kernels::use_parallel(opts.exec, count * d * d)) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < total; ++s)
      found[static_cast<std::size_t>(s)] = basic_solution(A, b, c, &subsets[static_cast<std::size_t>(s) * d], d);
  } else {
    for (std::size_t s = 0; s < count; ++s) found[s] = basic_solution(A, b, c, &subsets[s * d], d);
  }

  LpOptimum out;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (auto& v : found) {
    if (!v) continue;
    if (seen.contains(v->support)) continue;
    seen.emplace(v->support, out.vertices.vertices.size());
    out.vertices.vertices.push_back(std::move(*v));
  }
  if (out.vertices.vertices.empty()) return out;

  out.feasible = true;
  const auto& vs = out.vertices.vertices;
  std::size_t best = 0;
  for (std::size_t k = 1; k < vs.size(); ++k)
    if (vs[k].cost < vs[best].cost) best = k;
  std::size_t ties = 0;
  for (const auto& v : vs)
    if (v.cost == vs[best].cost) ++ties;

  out.vertices.optimal_index = best;
  out.unique = ties == 1;
  out.x_exact = vs[best].x;
  out.cost_exact = vs[best].cost;
  out.cost = exact::to_double(out.cost_exact);
  out.x.resize(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) out.x(static_cast<Eigen::Index>(j)) = exact::to_double(out.x_exact[j]);
  return out;
}

EntropicSolution mirror_solve(const StandardFormLP& lp, double epsilon, const MirrorOptions& opts) {
  require_valid(lp);
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const Eigen::Index d = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  const auto Aview = kernels::view(lp.A);

  auto evaluate = [&](const Vector& p, Vector& x, Vector& grad) {
    Vector log_x(n);
    kernels::log_monomials(opts.exec, Aview, {p.data(), static_cast<std::size_t>(d)},
                           {lp.c.data(), static_cast<std::size_t>(n)}, epsilon,
                           {log_x.data(), static_cast<std::size_t>(n)});
    x = log_x.array().exp().matrix();
    Vector ax(d);
    kernels::int_matvec(opts.exec, Aview, {x.data(), static_cast<std::size_t>(n)},
                        {ax.data(), static_cast<std::size_t>(d)});
    grad = lp.b - ax;
    return lp.b.dot(p) - epsilon * x.sum();
  };

  const double a1 = static_cast<double>(lp.A.cwiseAbs().colwise().sum().maxCoeff());
  double eta = epsilon / (a1 * a1);

  Vector p = Vector::Zero(d), x, grad;
  double phi = evaluate(p, x, grad);
  Vector p_next, x_next, grad_next;
  std::size_t k = 0;
  bool converged = grad.cwiseAbs().maxCoeff() <= opts.tol;

  // Acceptance uses the slope at the trial point: for a concave objective,
  // grad(p).grad(p + eta grad) >= sigma |grad|^2 implies an increase of at
  // least sigma eta |grad|^2, and the test does not suffer from cancellation
  // in objective differences.
  constexpr double sigma = 0.1;
  while (!converged && k < opts.max_iter) {
    const double g2 = grad.squaredNorm();
    double phi_next = phi;
    bool accepted = false;
    for (int halvings = 0; halvings < 200; ++halvings) {
      p_next = p + eta * grad;
      phi_next = evaluate(p_next, x_next, grad_next);
      if (std::isfinite(phi_next) && grad.dot(grad_next) >= sigma * g2) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    p.swap(p_next);
    x.swap(x_next);
    grad.swap(grad_next);
    phi = phi_next;
    ++k;
    if (opts.on_step) opts.on_step(k, phi);
    converged = grad.cwiseAbs().maxCoeff() <= opts.tol;
    eta *= 2.0;
  }

  EntropicSolution sol;
  sol.x = x;
  sol.p = p;
  sol.epsilon = epsilon;
  sol.iterations = k;
  sol.converged = converged;
  sol.residuals = residual_report(lp, sol.x, sol.p, epsilon);
  return sol;
}

namespace {

using exact::Wide;
using exact::bareiss_det;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InstanceTooLarge("cone oracle: adjugate entry exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

ConeFeasibility::ConeFeasibility(const IntMatrix& A) : d_(static_cast<std::size_t>(A.rows())) {
  // Only ray directions matter for the cone: keep one primitive column per
  // direction.
  std::map<std::vector<std::int64_t>, int> dirs;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    std::vector<std::int64_t> v(d_);
    std::int64_t g = 0;
    for (std::size_t r = 0; r < d_; ++r) {
      v[r] = A(static_cast<Eigen::Index>(r), j);
      g = std::gcd(g, v[r] < 0 ? -v[r] : v[r]);
    }
    if (g == 0) continue;
    for (auto& x : v) x /= g;
    dirs.emplace(std::move(v), 0);
  }
  std::vector<std::vector<std::int64_t>> cols;
  for (const auto& [v, _] : dirs) cols.push_back(v);

  const std::size_t d = d_;
  const auto subsets = all_subsets(cols.size(), d);
  const std::size_t count = subsets.size() / d;
  std::vector<std::optional<Basis>> slots(count);

  auto make_basis = [&](std::size_t s) -> std::optional<Basis> {
    const std::size_t* idx = &subsets[s * d];
    std::vector<Wide> B(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) B[r * d + k] = cols[idx[k]][r];
    const Wide det = bareiss_det(B, d);
    if (det == 0) return std::nullopt;
    Basis basis;
    basis.det_sign = det > 0 ? 1 : -1;
    basis.adjugate.resize(d * d);
    if (d == 1) {
      basis.adjugate[0] = 1;
      return basis;
    }
    // adj(B)_{k r} = (-1)^{r+k} det(B without row r and column k)
    std::vector<Wide> minor((d - 1) * (d - 1));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t t = 0;
        for (std::size_t rr = 0; rr < d; ++rr) {
          if (rr == r) continue;
          for (std::size_t kk = 0; kk < d; ++kk)
            if (kk != k) minor[t++] = B[rr * d + kk];
        }
        const Wide cof = bareiss_det(minor, d - 1) * (((r + k) % 2) ? -1 : 1);
        basis.adjugate[k * d + r] = narrow(cof);
      }
    return basis;
  };

  const auto total = static_cast<std::ptrdiff_t>(count);
  // Exceptions must not leave the parallel region; keep the first and rethrow.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t s = 0; s < total; ++s) {
    try {
      slots[static_cast<std::size_t>(s)] = make_basis(static_cast<std::size_t>(s));
    } catch (...) {
#pragma omp critical(entlp_cone_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& b : slots)
    if (b) bases_.push_back(std::move(*b));
}

bool ConeFeasibility::contains(std::span<const std::int64_t> y) const {
  if (y.size() != d_) throw InvalidInput("cone oracle: point has wrong dimension");
  for (const auto& b : bases_) {
    bool ok = true;
    for (std::size_t k = 0; k < d_ && ok; ++k) {
      Wide s = 0;
      for (std::size_t r = 0; r < d_; ++r) s += static_cast<Wide>(b.adjugate[k * d_ + r]) * y[r];
      ok = s * b.det_sign >= 0;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace entlp::oracle
