#pragma once

// Closed-form complexity invariants of the conic coupling LP, together with
// an exact convex-hull / triangulation oracle used to check them.

#include <cstdint>
#include <span>
#include <vector>

#include "entlp/exact.hpp"
#include "entlp/types.hpp"

namespace entlp {

struct ConicShape {
  int d1, e1, d2, e2;

  ConicShape(int d1_, int e1_, int d2_, int e2_);
  int d() const { return d1 + d2; }
  std::int64_t n() const { return std::int64_t{d1} * e1 * d2 * e2; }
};

// Closed halfspace {y : normal . y <= offset}.
struct Halfspace {
  std::vector<exact::Rational> normal;
  exact::Rational offset;
};

struct FacetSystem {
  std::vector<Halfspace> facets;
};

// Algebraic degree of the conic coupling constraints (normalized volume of
// conv(A u 0)), evaluated in exact rational arithmetic.
exact::BigInt conic_degree(const ConicShape& shape);

// Normalized volume of conv(A) = P_{d1,e1} x P_{d2,e2}.
exact::BigInt conv_A_volume(const ConicShape& shape);

// Normalized volumes of the two facets of conv(A) visible from the origin.
exact::BigInt visible_facet_volume_mu(const ConicShape& shape);  // Delta_{d1-1} x P_{d2,e2}
exact::BigInt visible_facet_volume_nu(const ConicShape& shape);  // P_{d1,e1} x Delta_{d2-1}

struct ConeMembership {
  bool member = false;
  // y_1..y_d, then e1*|y_nu| - |y_mu|, then e2*|y_mu| - |y_nu|. All must be
  // nonnegative for membership.
  std::vector<double> slacks;
};

ConeMembership cone_membership(const ConicShape& shape, std::span<const double> y);

// Facets of conv(A u 0): the d+2 cone inequalities followed by
// |y_mu| <= e1 and |y_nu| <= e2.
FacetSystem convA0_facets(const ConicShape& shape);

// Columns of the conic matrix as integer points (unnormalized build).
std::vector<IntVector> conic_columns(const ConicShape& shape);

// Exact convex hull of a full-dimensional integer point set, built as a
// placing (beneath-beyond) triangulation.
class PolytopeHull {
 public:
  struct Facet {
    IntVector normal;  // primitive, outward
    std::int64_t offset;
  };

  explicit PolytopeHull(std::vector<IntVector> points);

  std::size_t dimension() const { return dim_; }
  const std::vector<std::vector<std::size_t>>& simplices() const { return simplices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // Indices of input points that are vertices of the hull; the first index
  // of each repeated point.
  std::vector<std::size_t> vertices() const;
  // d! times the Euclidean volume.
  exact::BigInt normalized_volume() const;

 private:
  std::vector<IntVector> points_;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::size_t>> simplices_;
  std::vector<Facet> facets_;
};

// Normalized lattice volume of conv(points). Throws InvalidInput when the
// points do not affinely span their ambient space.
exact::BigInt volume_oracle(const std::vector<IntVector>& points);

// Number of extreme rays of pos(A) for a nonnegative A with no zero column,
// computed as the vertex count of the cross-section sum(y) = const.
std::size_t count_extreme_rays(const IntMatrix& A);

// Converts a halfspace to the primitive integer form used by PolytopeHull.
PolytopeHull::Facet primitive_facet(const Halfspace& h);

}  // namespace entlp
