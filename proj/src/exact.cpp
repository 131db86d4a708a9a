#include "entlp/exact.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace entlp::exact {

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = BigInt(m(r, c));
  return out;
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw InvalidInput("cannot convert non-finite value to a rational");
  if (v == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  // mantissa * 2^53 is an integer for IEEE doubles.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational q(scaled);
  exponent -= 53;
  if (exponent > 0) {
    q *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    q /= Rational(BigInt(1) << (-exponent));
  }
  return q;
}

std::vector<Rational> to_rational(std::span<const double> v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(to_rational(x));
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

BigInt content(std::span<const BigInt> v) {
  BigInt g = 0;
  for (const auto& x : v) {
    if (x != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
  }
  return g;
}

namespace {

void normalize_row(BigMatrix& m, std::size_t r) {
  std::span<const BigInt> row(&m.data[r * m.cols], m.cols);
  const BigInt g = content(row);
  if (g > 1)
    for (std::size_t c = 0; c < m.cols; ++c) m(r, c) /= g;
}

}  // namespace

IntegerEchelon integer_echelon(const BigMatrix& input) {
  IntegerEchelon out{input, {}};
  BigMatrix& m = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m(pivot, c), m(row, c));
    if (m(row, col) < 0)
      for (std::size_t c = 0; c < m.cols; ++c) m(row, c) = -m(row, c);
    normalize_row(m, row);

    const BigInt p = m(row, col);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m(r, col) == 0) continue;
      const BigInt f = m(r, col);
      for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = p * m(r, c) - f * m(row, c);
      normalize_row(m, r);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const IntMatrix& m) { return integer_echelon(to_big(m)).rank(); }

std::vector<std::vector<BigInt>> integer_kernel(const BigMatrix& m) {
  const IntegerEchelon ech = integer_echelon(m);
  const std::size_t n = m.cols;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

  BigInt l = 1;
  for (std::size_t k = 0; k < ech.rank(); ++k) l = boost::multiprecision::lcm(l, ech.reduced(k, ech.pivot_cols[k]));

  std::vector<std::vector<BigInt>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<BigInt> u(n, BigInt(0));
    u[f] = l;
    for (std::size_t k = 0; k < ech.rank(); ++k) {
      const std::size_t pc = ech.pivot_cols[k];
      u[pc] = -ech.reduced(k, f) * (l / ech.reduced(k, pc));
    }
    const BigInt g = content(u);
    for (auto& x : u) x /= g;
    for (const auto& x : u) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : u) y = -y;
      break;
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

LinearSolve solve(const RationalMatrix& input, std::span<const Rational> rhs) {
  if (rhs.size() != input.rows) throw InvalidInput("solve: right-hand side has wrong length");
  const std::size_t rows = input.rows;
  const std::size_t cols = input.cols;
  RationalMatrix m(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = input(r, c);
    m(r, cols) = rhs[r];
  }

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row)
      for (std::size_t c = 0; c <= cols; ++c) std::swap(m(pivot, c), m(row, c));
    const Rational p = m(row, col);
    for (std::size_t c = col; c <= cols; ++c) m(row, c) /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c <= cols; ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }

  LinearSolve out;
  out.consistent = true;
  for (std::size_t r = pivots.size(); r < rows; ++r) {
    if (m(r, cols) != 0) {
      out.consistent = false;
      return out;
    }
  }
  out.unique = pivots.size() == cols;
  out.x.assign(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) out.x[pivots[k]] = m(k, cols);
  return out;
}

Wide bareiss_det(std::vector<Wide> m, std::size_t n) {
  if (n == 0) return 1;
  Wide sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv * n + k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[k * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
    prev = m[k * n + k];
  }
  return sign * m[n * n - 1];
}

}  // namespace entlp::exact
