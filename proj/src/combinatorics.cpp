#include "entlp/combinatorics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace entlp {

namespace {

using exact::BigInt;
using exact::Rational;
using exact::Wide;

BigInt ipow(int base, int exp) {
  BigInt r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt as_integer(const Rational& q, const char* what) {
  if (denominator(q) != 1) throw Error(std::string(what) + " is not an integer");
  return numerator(q);
}

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InstanceTooLarge("hull: coordinate exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

int sign(Wide v) { return (v > 0) - (v < 0); }

Wide wabs(Wide v) { return v < 0 ? -v : v; }

std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) g = std::gcd(g, v(k) < 0 ? -v(k) : v(k));
  return g;
}

}  // namespace

ConicShape::ConicShape(int d1_, int e1_, int d2_, int e2_) : d1(d1_), e1(e1_), d2(d2_), e2(e2_) {
  if (d1 < 2 || e1 < 2 || d2 < 2 || e2 < 2) throw InvalidInput("conic shape: d1, e1, d2, e2 must all be >= 2");
}

BigInt conic_degree(const ConicShape& s) {
  const Rational E1 = Rational(ipow(s.e1, s.d1)) - 1;
  const Rational E2 = Rational(ipow(s.e2, s.d2)) - 1;
  const Rational d(s.d());
  const Rational bracket = E1 * E2 + Rational(s.d1) / d * E2 + Rational(s.d2) / d * E1;
  return as_integer(Rational(binomial(s.d(), s.d1)) * bracket, "conic degree");
}

BigInt conv_A_volume(const ConicShape& s) {
  return binomial(s.d(), s.d1) * (ipow(s.e1, s.d1) - 1) * (ipow(s.e2, s.d2) - 1);
}

BigInt visible_facet_volume_mu(const ConicShape& s) {
  return binomial(s.d() - 1, s.d2) * (ipow(s.e2, s.d2) - 1);
}

BigInt visible_facet_volume_nu(const ConicShape& s) {
  return binomial(s.d() - 1, s.d1) * (ipow(s.e1, s.d1) - 1);
}

ConeMembership cone_membership(const ConicShape& shape, std::span<const double> y) {
  const auto d = static_cast<std::size_t>(shape.d());
  if (y.size() != d)
    throw InvalidInput("cone_membership: point has dimension " + std::to_string(y.size()) + ", expected " +
                       std::to_string(d));
  ConeMembership out;
  out.slacks.assign(y.begin(), y.end());
  double mu = 0.0, nu = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(shape.d1); ++k) mu += y[k];
  for (std::size_t k = static_cast<std::size_t>(shape.d1); k < d; ++k) nu += y[k];
  out.slacks.push_back(shape.e1 * nu - mu);
  out.slacks.push_back(shape.e2 * mu - nu);
  out.member = std::all_of(out.slacks.begin(), out.slacks.end(), [](double s) { return s >= 0.0; });
  return out;
}

FacetSystem convA0_facets(const ConicShape& shape) {
  const auto d = static_cast<std::size_t>(shape.d());
  const auto d1 = static_cast<std::size_t>(shape.d1);
  FacetSystem fs;
  auto blank = [&] { return Halfspace{std::vector<Rational>(d, Rational(0)), Rational(0)}; };
  for (std::size_t k = 0; k < d; ++k) {
    auto h = blank();
    h.normal[k] = -1;
    fs.facets.push_back(std::move(h));
  }
  auto h = blank();
  for (std::size_t k = 0; k < d; ++k) h.normal[k] = k < d1 ? Rational(1) : Rational(-shape.e1);
  fs.facets.push_back(h);
  h = blank();
  for (std::size_t k = 0; k < d; ++k) h.normal[k] = k < d1 ? Rational(-shape.e2) : Rational(1);
  fs.facets.push_back(h);
  h = blank();
  for (std::size_t k = 0; k < d1; ++k) h.normal[k] = 1;
  h.offset = shape.e1;
  fs.facets.push_back(h);
  h = blank();
  for (std::size_t k = d1; k < d; ++k) h.normal[k] = 1;
  h.offset = shape.e2;
  fs.facets.push_back(h);
  return fs;
}

std::vector<IntVector> conic_columns(const ConicShape& s) {
  std::vector<IntVector> cols;
  cols.reserve(static_cast<std::size_t>(s.n()));
  for (int kappa = 0; kappa < s.d1; ++kappa)
    for (int i = 1; i <= s.e1; ++i)
      for (int lambda = 0; lambda < s.d2; ++lambda)
        for (int j = 1; j <= s.e2; ++j) {
          IntVector v = IntVector::Zero(s.d());
          v(kappa) = i;
          v(s.d1 + lambda) = j;
          cols.push_back(std::move(v));
        }
  return cols;
}

PolytopeHull::Facet primitive_facet(const Halfspace& h) {
  BigInt l = denominator(h.offset);
  for (const auto& a : h.normal) l = boost::multiprecision::lcm(l, denominator(a));
  std::vector<BigInt> num;
  BigInt g = 0;
  for (const auto& a : h.normal) {
    num.push_back(numerator(a) * (l / denominator(a)));
    g = boost::multiprecision::gcd(g, num.back());
  }
  if (g == 0) throw InvalidInput("primitive_facet: zero normal");
  const Rational off = h.offset * l / g;
  if (denominator(off) != 1) throw InvalidInput("primitive_facet: offset is not on the lattice");
  PolytopeHull::Facet f;
  f.normal.resize(static_cast<Eigen::Index>(num.size()));
  for (std::size_t k = 0; k < num.size(); ++k) f.normal(static_cast<Eigen::Index>(k)) = static_cast<std::int64_t>(num[k] / g);
  f.offset = static_cast<std::int64_t>(numerator(off));
  return f;
}

PolytopeHull::PolytopeHull(std::vector<IntVector> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidInput("hull: no points");
  const auto D = static_cast<std::size_t>(points_.front().size());
  if (D == 0) throw InvalidInput("hull: zero-dimensional points");
  for (const auto& p : points_)
    if (static_cast<std::size_t>(p.size()) != D) throw InvalidInput("hull: points have mixed dimensions");
  dim_ = D;
  const std::size_t m = points_.size();

  auto coord = [&](std::size_t i, std::size_t k) { return static_cast<Wide>(points_[i](static_cast<Eigen::Index>(k))); };

  // Initial simplex: greedily extend the affine span.
  std::vector<std::size_t> init{0};
  for (std::size_t i = 1; i < m && init.size() < D + 1; ++i) {
    IntMatrix M(static_cast<Eigen::Index>(init.size()), static_cast<Eigen::Index>(D));
    for (std::size_t r = 1; r < init.size(); ++r) M.row(static_cast<Eigen::Index>(r - 1)) = (points_[init[r]] - points_[0]).transpose();
    M.row(static_cast<Eigen::Index>(init.size() - 1)) = (points_[i] - points_[0]).transpose();
    if (exact::rank(M) == init.size()) init.push_back(i);
  }
  if (init.size() < D + 1) throw InvalidInput("hull: points do not affinely span dimension " + std::to_string(D));

  // det[p_f1 - p_f0; ...; p_f(D-1) - p_f0; q - scale * p_f0] where q is scaled by `scale`.
  auto orient = [&](const std::vector<std::size_t>& f, const std::vector<Wide>& q, Wide scale) {
    std::vector<Wide> M(D * D);
    for (std::size_t r = 1; r < D; ++r)
      for (std::size_t k = 0; k < D; ++k) M[(r - 1) * D + k] = coord(f[r], k) - coord(f[0], k);
    for (std::size_t k = 0; k < D; ++k) M[(D - 1) * D + k] = q[k] - scale * coord(f[0], k);
    return exact::bareiss_det(std::move(M), D);
  };
  auto point = [&](std::size_t i) {
    std::vector<Wide> q(D);
    for (std::size_t k = 0; k < D; ++k) q[k] = coord(i, k);
    return q;
  };

  // Interior reference: the centroid of the initial simplex, kept as the
  // integer vertex sum with scale D+1.
  std::vector<Wide> Q(D, 0);
  for (std::size_t i : init)
    for (std::size_t k = 0; k < D; ++k) Q[k] += coord(i, k);
  const Wide S = static_cast<Wide>(D + 1);

  struct Boundary {
    std::vector<std::size_t> v;
    int side;  // sign of orient(v, interior)
  };
  std::vector<Boundary> boundary;
  auto add_boundary = [&](std::vector<std::size_t> v) {
    const int s = sign(orient(v, Q, S));
    if (s == 0) throw Error("hull: interior reference lies on a boundary facet");
    boundary.push_back({std::move(v), s});
  };
  for (std::size_t skip = 0; skip <= D; ++skip) {
    std::vector<std::size_t> v;
    for (std::size_t k = 0; k <= D; ++k)
      if (k != skip) v.push_back(init[k]);
    add_boundary(std::move(v));
  }
  simplices_.push_back(init);

  std::vector<bool> used(m, false);
  for (std::size_t i : init) used[i] = true;
  for (std::size_t p = 0; p < m; ++p) {
    if (used[p]) continue;
    const auto q = point(p);
    std::vector<Boundary> keep, visible;
    for (auto& f : boundary) {
      if (sign(orient(f.v, q, 1)) == -f.side)
        visible.push_back(std::move(f));
      else
        keep.push_back(std::move(f));
    }
    if (visible.empty()) {
      boundary = std::move(keep);
      continue;
    }
    std::map<std::vector<std::size_t>, int> ridges;
    for (const auto& f : visible) {
      auto s = f.v;
      s.push_back(p);
      simplices_.push_back(std::move(s));
      for (std::size_t k = 0; k < D; ++k) {
        std::vector<std::size_t> r;
        for (std::size_t t = 0; t < D; ++t)
          if (t != k) r.push_back(f.v[t]);
        std::sort(r.begin(), r.end());
        ++ridges[r];
      }
    }
    boundary = std::move(keep);
    for (auto& [r, count] : ridges) {
      if (count != 1) continue;
      auto v = r;
      v.push_back(p);
      add_boundary(std::move(v));
    }
  }

  // Group boundary simplices into facets by supporting hyperplane.
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen;
  for (const auto& f : boundary) {
    // normal . x = det[diffs; x] with the last row expanded by cofactors
    IntVector normal(static_cast<Eigen::Index>(D));
    for (std::size_t k = 0; k < D; ++k) {
      Wide c;
      if (D == 1) {
        c = 1;
      } else {
        std::vector<Wide> minor((D - 1) * (D - 1));
        std::size_t t = 0;
        for (std::size_t r = 1; r < D; ++r)
          for (std::size_t kk = 0; kk < D; ++kk)
            if (kk != k) minor[t++] = coord(f.v[r], kk) - coord(f.v[0], kk);
        c = exact::bareiss_det(std::move(minor), D - 1) * (((D - 1 + k) % 2) ? -1 : 1);
      }
      normal(static_cast<Eigen::Index>(k)) = narrow(-f.side * c);  // outward
    }
    const std::int64_t g = gcd_of(normal);
    normal /= g;
    Wide off = 0;
    for (std::size_t k = 0; k < D; ++k) off += static_cast<Wide>(normal(static_cast<Eigen::Index>(k))) * coord(f.v[0], k);
    std::vector<std::int64_t> key(normal.data(), normal.data() + normal.size());
    if (seen.emplace(key, narrow(off)).second) facets_.push_back({normal, narrow(off)});
  }
}

std::vector<std::size_t> PolytopeHull::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bool repeated = false;
    for (std::size_t k = 0; k < i && !repeated; ++k) repeated = points_[k] == points_[i];
    if (repeated) continue;
    std::vector<const Facet*> tight;
    for (const auto& f : facets_)
      if (f.normal.dot(points_[i]) == f.offset) tight.push_back(&f);
    if (tight.size() < dim_) continue;
    IntMatrix N(static_cast<Eigen::Index>(tight.size()), static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < tight.size(); ++r) N.row(static_cast<Eigen::Index>(r)) = tight[r]->normal.transpose();
    if (exact::rank(N) == dim_) out.push_back(i);
  }
  return out;
}

BigInt PolytopeHull::normalized_volume() const {
  BigInt vol = 0;
  const std::size_t D = dim_;
  for (const auto& s : simplices_) {
    std::vector<Wide> M(D * D);
    for (std::size_t r = 1; r <= D; ++r)
      for (std::size_t k = 0; k < D; ++k)
        M[(r - 1) * D + k] = static_cast<Wide>(points_[s[r]](static_cast<Eigen::Index>(k))) -
                             static_cast<Wide>(points_[s[0]](static_cast<Eigen::Index>(k)));
    const Wide det = wabs(exact::bareiss_det(std::move(M), D));
    vol += BigInt(narrow(det));
  }
  return vol;
}

BigInt volume_oracle(const std::vector<IntVector>& points) { return PolytopeHull(points).normalized_volume(); }

std::size_t count_extreme_rays(const IntMatrix& A) {
  const Eigen::Index d = A.rows();
  if (d == 0 || A.cols() == 0) throw InvalidInput("count_extreme_rays: empty matrix");
  if ((A.array() < 0).any()) throw InvalidInput("count_extreme_rays: matrix must be nonnegative");
  std::int64_t L = 1;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const std::int64_t s = A.col(j).sum();
    if (s == 0) throw InvalidInput("count_extreme_rays: zero column");
    L = std::lcm(L, s);
  }
  if (d == 1) return 1;
  // Cross-section sum(y) = L, projected by dropping the last coordinate.
  std::set<std::vector<std::int64_t>> pts;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    const std::int64_t scale = L / A.col(j).sum();
    std::vector<std::int64_t> v(static_cast<std::size_t>(d - 1));
    for (Eigen::Index r = 0; r + 1 < d; ++r) v[static_cast<std::size_t>(r)] = A(r, j) * scale;
    pts.insert(std::move(v));
  }
  std::vector<IntVector> points;
  for (const auto& v : pts) points.push_back(Eigen::Map<const IntVector>(v.data(), static_cast<Eigen::Index>(v.size())));
  return PolytopeHull(points).vertices().size();
}

}  // namespace entlp
