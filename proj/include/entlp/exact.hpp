#pragma once

// Exact integer / rational linear algebra used for certificates: ranks,
// integer kernels, and basis solves. Nothing in here touches floating point
// except the explicit conversions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entlp/types.hpp"

namespace entlp::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense row-major matrix over an exact ring.
template <typename T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

using BigMatrix = DenseMatrix<BigInt>;
using RationalMatrix = DenseMatrix<Rational>;

BigMatrix to_big(const IntMatrix& m);
RationalMatrix to_rational(const IntMatrix& m);

// Exact value of a finite double (every double is a dyadic rational).
Rational to_rational(double v);
std::vector<Rational> to_rational(std::span<const double> v);
double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Integer row echelon form produced by fraction-free Gauss-Jordan
// elimination. Pivot rows come first; every pivot column is zero outside its
// pivot row. Rows are content-normalized after each update.
struct IntegerEchelon {
  BigMatrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot_cols[k] is the pivot of row k
  std::size_t rank() const { return pivot_cols.size(); }
};

IntegerEchelon integer_echelon(const BigMatrix& m);
std::size_t rank(const IntMatrix& m);

// Integer basis of ker(m): one content-1 vector per free column, sign fixed
// so the first nonzero entry is positive.
std::vector<std::vector<BigInt>> integer_kernel(const BigMatrix& m);

BigInt content(std::span<const BigInt> v);

// Solve M x = rhs over the rationals.
struct LinearSolve {
  bool consistent = false;
  bool unique = false;          // consistent and M has full column rank
  std::vector<Rational> x;      // a particular solution (free vars = 0)
};

LinearSolve solve(const RationalMatrix& m, std::span<const Rational> rhs);

using Wide = __int128;

// Fraction-free (Bareiss) determinant of a small n x n row-major integer
// matrix. Intermediate values are minors of the input, so the caller only
// needs Hadamard's bound to fit in 127 bits.
Wide bareiss_det(std::vector<Wide> m, std::size_t n);

}  // namespace entlp::exact
