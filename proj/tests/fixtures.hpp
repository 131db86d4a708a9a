#pragma once

// Shared instances for the test suites.

#include <random>

#include "entlp/builders.hpp"
#include "entlp/model.hpp"

namespace entlp::fixtures {

// 2 x 3 transport with margins (7,8) / (4,5,6).
inline TransportProblem transport_2x3(bool zero_cost = false) {
  TransportProblem tp;
  tp.mu = Vector{{7.0, 8.0}};
  tp.nu = Vector{{4.0, 5.0, 6.0}};
  tp.cost = Matrix{{1.0, 0.0, 1.0}, {0.0, 2.0, 5.0}};
  if (zero_cost) tp.cost.setZero();
  return tp;
}

inline IntMatrix transport_2x3_matrix() {
  IntMatrix A(4, 6);
  A << 1, 1, 1, 0, 0, 0,
       0, 0, 0, 1, 1, 1,
       1, 0, 0, 1, 0, 0,
       0, 1, 0, 0, 1, 0;
  return A;
}

inline IntMatrix conic_2222_matrix() {
  IntMatrix A(4, 16);
  A << 1, 1, 1, 1, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2,
       1, 2, 0, 0, 1, 2, 0, 0, 1, 2, 0, 0, 1, 2, 0, 0,
       0, 0, 1, 2, 0, 0, 1, 2, 0, 0, 1, 2, 0, 0, 1, 2;
  return A;
}

inline StandardFormLP segment() {
  StandardFormLP lp;
  lp.A = IntMatrix::Ones(1, 2);
  lp.b = Vector::Constant(1, 2.0);
  lp.c = Vector{{0.0, 1.0}};
  return lp;
}

// Balanced transport with integer margins and integer costs in [0, 9].
inline TransportProblem random_transport(std::mt19937_64& rng, int max_side = 5) {
  std::uniform_int_distribution<int> side(2, max_side), cost(0, 9), mass(1, 6);
  const int d1 = side(rng), d2 = side(rng);
  TransportProblem tp;
  tp.mu.resize(d1);
  tp.nu.resize(d2);
  for (int k = 0; k < d1; ++k) tp.mu(k) = mass(rng);
  for (int l = 0; l < d2; ++l) tp.nu(l) = mass(rng);
  tp.nu *= tp.mu.sum() / tp.nu.sum();
  tp.cost.resize(d1, d2);
  for (int k = 0; k < d1; ++k)
    for (int l = 0; l < d2; ++l) tp.cost(k, l) = cost(rng);
  return tp;
}

}  // namespace entlp::fixtures
