#include "entlp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace entlp {

ValidationReport validate(const StandardFormLP& lp) {
  ValidationReport rep;
  const auto d = lp.rows();
  const auto n = lp.cols();

  if (d < 1) rep.messages.push_back("A must have at least one row");
  if (n < d) rep.messages.push_back("A must have at least as many columns as rows");
  if (static_cast<std::size_t>(lp.b.size()) != d) {
    rep.dimension_mismatch = true;
    rep.messages.push_back("b has length " + std::to_string(lp.b.size()) + ", expected " + std::to_string(d));
  }
  if (static_cast<std::size_t>(lp.c.size()) != n) {
    rep.dimension_mismatch = true;
    rep.messages.push_back("c has length " + std::to_string(lp.c.size()) + ", expected " + std::to_string(n));
  }
  if (!lp.labels.empty() && lp.labels.size() != n) {
    rep.dimension_mismatch = true;
    rep.messages.push_back("labels must be empty or one per column");
  }

  for (std::size_t j = 0; j < n; ++j) {
    bool positive = false;
    for (std::size_t i = 0; i < d; ++i) {
      const auto v = lp.A(i, j);
      if (v < 0) rep.negative_entries.emplace_back(i, j);
      if (v > 0) positive = true;
    }
    if (!positive) rep.zero_columns.push_back(j);
  }
  if (!rep.zero_columns.empty()) {
    std::ostringstream os;
    os << "columns without a positive entry:";
    for (auto j : rep.zero_columns) os << ' ' << j;
    rep.messages.push_back(os.str());
  }
  if (!rep.negative_entries.empty()) rep.messages.push_back("A has negative entries");

  if (d > 0 && n > 0) {
    rep.rank = exact::rank(lp.A);
    rep.rank_deficient = rep.rank < d;
    if (rep.rank_deficient)
      rep.messages.push_back("rank(A) = " + std::to_string(rep.rank) + " < d = " + std::to_string(d));
  }
  rep.ok = rep.messages.empty();
  return rep;
}

void require_valid(const StandardFormLP& lp) {
  const auto rep = validate(lp);
  if (rep.ok) return;
  std::string msg = "invalid LP:";
  for (const auto& m : rep.messages) msg += " " + m + ";";
  throw InvalidInput(msg);
}

IntegerKernelBasis integer_kernel(const IntMatrix& M) {
  IntegerKernelBasis out;
  for (const auto& u : exact::integer_kernel(exact::to_big(M))) {
    IntVector v(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] > std::numeric_limits<std::int64_t>::max() || u[i] < std::numeric_limits<std::int64_t>::min())
        throw InstanceTooLarge("kernel vector entry exceeds 64-bit range");
      v(static_cast<Eigen::Index>(i)) = u[i].convert_to<std::int64_t>();
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

bool is_integer_valued(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && std::floor(x) == x; });
}

IntMatrix stack_cost_row(const StandardFormLP& lp) {
  if (!is_integer_valued({lp.c.data(), static_cast<std::size_t>(lp.c.size())}))
    throw InvalidInput("cost vector must be integer valued");
  IntMatrix M(lp.A.rows() + 1, lp.A.cols());
  M.topRows(lp.A.rows()) = lp.A;
  for (Eigen::Index j = 0; j < lp.A.cols(); ++j) M(lp.A.rows(), j) = static_cast<std::int64_t>(lp.c(j));
  return M;
}

double log_binomial_residual(const IntegerKernelBasis& basis, std::span<const double> log_x,
                             std::span<const double> shift) {
  double worst = 0.0;
  for (const auto& u : basis.vectors) {
    double s = 0.0;
    bool skip = false;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      if (u(j) == 0) continue;
      const double lx = log_x[static_cast<std::size_t>(j)];
      if (std::isinf(lx) && lx < 0) {
        skip = true;
        break;
      }
      s += static_cast<double>(u(j)) * (lx + shift[static_cast<std::size_t>(j)]);
    }
    if (!skip) worst = std::max(worst, std::abs(s));
  }
  return worst;
}

Vector apply(const IntMatrix& A, const Vector& x) { return A.cast<double>() * x; }

double primal_infeasibility(const StandardFormLP& lp, const Vector& x) {
  if (lp.b.size() == 0) return 0.0;
  return (apply(lp.A, x) - lp.b).cwiseAbs().maxCoeff();
}

namespace {

double toric_from_log(const StandardFormLP& lp, std::span<const double> log_x, double epsilon) {
  const auto basis = integer_kernel(lp.A);
  std::vector<double> shift(lp.cols());
  for (std::size_t j = 0; j < lp.cols(); ++j) shift[j] = lp.c(static_cast<Eigen::Index>(j)) / epsilon;
  return log_binomial_residual(basis, log_x, shift);
}

void check_toric_args(const StandardFormLP& lp, std::size_t len, double epsilon) {
  if (len != lp.cols()) throw InvalidInput("x has wrong length");
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (!is_integer_valued({lp.c.data(), static_cast<std::size_t>(lp.c.size())}))
    throw InvalidInput("toric residual needs an integer cost vector");
}

}  // namespace

ResidualReport toric_residual(const StandardFormLP& lp, std::span<const double> x, double epsilon) {
  check_toric_args(lp, x.size(), epsilon);
  std::vector<double> log_x(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0)) throw InvalidInput("toric residual needs a strictly positive point");
    log_x[j] = std::log(x[j]);
  }
  ResidualReport rep;
  const Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  rep.primal_inf = primal_infeasibility(lp, xv);
  rep.toric_inf = toric_from_log(lp, log_x, epsilon);
  return rep;
}

double toric_residual_log(const StandardFormLP& lp, std::span<const double> log_x, double epsilon) {
  check_toric_args(lp, log_x.size(), epsilon);
  return toric_from_log(lp, log_x, epsilon);
}

std::optional<std::vector<exact::Rational>> ones_coefficients(const IntMatrix& A) {
  // lambda^T A = 1  <=>  A^T lambda = 1
  const auto d = static_cast<std::size_t>(A.rows());
  const auto n = static_cast<std::size_t>(A.cols());
  exact::RationalMatrix At(n, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) At(j, i) = exact::Rational(A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  const std::vector<exact::Rational> ones(n, exact::Rational(1));
  auto sol = exact::solve(At, ones);
  if (!sol.consistent) return std::nullopt;
  return std::move(sol.x);
}

ResidualReport residual_report(const StandardFormLP& lp, const Vector& x, const Vector& p, double epsilon) {
  ResidualReport rep;
  const Vector r = apply(lp.A, x) - lp.b;
  rep.primal_inf = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  std::vector<double> log_x(lp.cols()), shift(lp.cols());
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    log_x[j] = x(jj) > 0.0 ? std::log(x(jj)) : -std::numeric_limits<double>::infinity();
    shift[j] = lp.c(jj) / epsilon;
  }
  if (lp.cols() <= kKernelCertificateColumns || p.size() != r.size()) {
    rep.toric_inf = log_binomial_residual(integer_kernel(lp.A), log_x, shift);
  } else {
    // log x + c/eps = A^T (p/eps) puts x on the variety without a kernel basis.
    const Vector z = lp.A.cast<double>().transpose() * p;
    double worst = 0.0;
    for (std::size_t j = 0; j < lp.cols(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      worst = std::max(worst, std::abs(log_x[j] - (z(jj) - lp.c(jj)) / epsilon));
    }
    rep.toric_inf = worst;
  }
  if (p.size() == r.size()) rep.dual_gap = std::abs(p.dot(r));
  return rep;
}

}  // namespace entlp
