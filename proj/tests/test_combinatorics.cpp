#include <doctest.h>

#include <algorithm>
#include <set>

#include "entlp/builders.hpp"
#include "entlp/combinatorics.hpp"
#include "fixtures.hpp"

using namespace entlp;

namespace {

std::vector<IntVector> with_origin(const ConicShape& s) {
  auto pts = conic_columns(s);
  pts.push_back(IntVector::Zero(s.d()));
  return pts;
}

std::vector<ConicShape> small_shapes() {
  std::vector<ConicShape> out;
  for (int d1 = 2; d1 <= 3; ++d1)
    for (int d2 = 2; d1 + d2 <= 5; ++d2)
      for (int e1 = 2; e1 <= 3; ++e1)
        for (int e2 = 2; e2 <= 3; ++e2) out.emplace_back(d1, e1, d2, e2);
  return out;
}

using FacetKey = std::pair<std::vector<std::int64_t>, std::int64_t>;

FacetKey key(const PolytopeHull::Facet& f) {
  return {std::vector<std::int64_t>(f.normal.data(), f.normal.data() + f.normal.size()), f.offset};
}

}  // namespace

TEST_CASE("conic degree closed form") {
  CHECK(conic_degree(ConicShape(2, 2, 2, 2)) == 72);
  CHECK(conic_degree(ConicShape(3, 3, 3, 3)) == 14040);
  CHECK(conic_degree(ConicShape(2, 2, 2, 3)) == 177);
}

TEST_CASE("shape arguments below 2 are rejected") {
  CHECK_THROWS_AS(ConicShape(1, 2, 2, 2), InvalidInput);
  CHECK_THROWS_AS(ConicShape(2, 2, 2, 1), InvalidInput);
}

TEST_CASE("hull oracle on known polytopes") {
  // Unit simplex.
  std::vector<IntVector> simplex{IntVector::Zero(3)};
  for (int k = 0; k < 3; ++k) simplex.push_back(IntVector::Unit(3, k));
  CHECK(volume_oracle(simplex) == 1);

  // Unit cube: 6 facets, 8 vertices, normalized volume 3! = 6.
  std::vector<IntVector> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(IntVector{{m & 1, (m >> 1) & 1, (m >> 2) & 1}});
  cube.push_back(IntVector{{0, 0, 0}});  // duplicate point
  const PolytopeHull hull(cube);
  CHECK(hull.dimension() == 3);
  CHECK(hull.facets().size() == 6);
  CHECK(hull.vertices().size() == 8);
  CHECK(hull.normalized_volume() == 6);

  // P_{d,e} = conv{i e_k : 1 <= i <= e} has normalized volume e^d - 1.
  for (int e = 2; e <= 3; ++e) {
    std::vector<IntVector> P;
    for (int k = 0; k < 2; ++k)
      for (int i = 1; i <= e; ++i) P.push_back(i * IntVector::Unit(2, k));
    CHECK(volume_oracle(P) == e * e - 1);
  }
}

TEST_CASE("volume oracle rejects lower-dimensional input") {
  std::vector<IntVector> flat{IntVector{{0, 0}}, IntVector{{1, 1}}, IntVector{{2, 2}}};
  CHECK_THROWS_AS(volume_oracle(flat), InvalidInput);
}

TEST_CASE("closed-form degree matches the hull volume for small shapes") {
  for (const auto& s : small_shapes()) {
    CAPTURE(s.d1);
    CAPTURE(s.e1);
    CAPTURE(s.d2);
    CAPTURE(s.e2);
    CHECK(conic_degree(s) == volume_oracle(with_origin(s)));
    CHECK(conv_A_volume(s) == volume_oracle(conic_columns(s)));
  }
}

TEST_CASE("degree splits into conv(A) and the two visible pyramids") {
  CHECK(conv_A_volume(ConicShape(2, 2, 2, 2)) == 54);
  for (const auto& s : small_shapes())
    CHECK(conic_degree(s) == conv_A_volume(s) + visible_facet_volume_mu(s) + visible_facet_volume_nu(s));
}

TEST_CASE("cone membership examples") {
  const ConicShape s(2, 2, 2, 2);
  const std::vector<double> in{1, 1, 1, 1}, out{4, 1, 1, 1};
  const auto m = cone_membership(s, in);
  CHECK(m.member);
  CHECK(m.slacks == std::vector<double>{1, 1, 1, 1, 2, 2});
  const auto n = cone_membership(s, out);
  CHECK_FALSE(n.member);
  CHECK(n.slacks[4] < 0);
  for (const auto& col : conic_columns(s)) {
    std::vector<double> y(col.data(), col.data() + col.size());
    CHECK(cone_membership(s, y).member);
  }
}

TEST_CASE("facet description is exactly the hull of A and the origin") {
  for (const auto& s : small_shapes()) {
    const auto sys = convA0_facets(s);
    CHECK(sys.facets.size() == static_cast<std::size_t>(s.d() + 4));
    std::set<FacetKey> claimed, hull;
    for (const auto& h : sys.facets) claimed.insert(key(primitive_facet(h)));
    const PolytopeHull h(with_origin(s));
    for (const auto& f : h.facets()) hull.insert(key(f));
    CHECK(claimed.size() == sys.facets.size());
    CHECK(claimed == hull);
  }
}

TEST_CASE("extreme rays of the conic cone") {
  CHECK(count_extreme_rays(fixtures::conic_2222_matrix()) == 8);
  for (const auto& s : small_shapes()) {
    IntMatrix A(s.d(), s.n());
    const auto cols = conic_columns(s);
    for (std::size_t j = 0; j < cols.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = cols[j];
    CHECK(count_extreme_rays(A) == static_cast<std::size_t>(2 * s.d1 * s.d2));
  }
}

TEST_CASE("conic columns match the builder") {
  const ConicProblem cp(2, 2, 2, 3, {1, 1}, {1, 1}, {}, false);
  const auto lp = build_conic(cp);
  const auto cols = conic_columns(ConicShape(2, 2, 2, 3));
  REQUIRE(cols.size() == lp.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) CHECK(lp.A.col(static_cast<Eigen::Index>(j)) == cols[j]);
}
