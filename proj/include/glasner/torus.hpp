#pragma once

// Exact rational points on the d-torus, wrap-around Euclidean distance,
// covering radius and eps-density certification, dilation by integer
// matrices. Torus arithmetic is exact rational throughout; floating point
// appears only in final distance magnitudes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "glasner/errors.hpp"
#include "glasner/rational.hpp"

namespace glasner {

/// Probe-count guard for grid certification (centers times set points).
inline constexpr std::uint64_t kGridProbeBudget = 100'000'000;

struct TorusPoint {
  std::vector<Rat> coords;  // each in [0, 1)

  int dim() const { return static_cast<int>(coords.size()); }

  bool operator==(const TorusPoint& o) const { return coords == o.coords; }
  bool operator<(const TorusPoint& o) const {
    return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(),
                                        o.coords.end());
  }
};

/// Wraps every coordinate into [0, 1).
inline TorusPoint make_torus_point(std::vector<Rat> coords) {
  for (auto& c : coords) c = c.mod1();
  return TorusPoint{std::move(coords)};
}

struct PointSet {
  int dim = 1;
  std::vector<TorusPoint> points;   // pairwise distinct
  std::uint64_t lcm_den = 1;        // lcm of all coordinate denominators

  int size() const { return static_cast<int>(points.size()); }
};

/// Builds a point set, computing lcm_den. Duplicates are collapsed to the
/// first occurrence when collapse is set and rejected otherwise.
inline PointSet make_point_set(int dim, std::vector<TorusPoint> points,
                               bool collapse = false) {
  if (dim < 1) throw std::invalid_argument("point set: dimension must be >= 1");
  if (points.empty()) throw std::invalid_argument("point set: need at least one point");
  PointSet s;
  s.dim = dim;
  for (auto& p : points) {
    if (p.dim() != dim) throw std::invalid_argument("point set: dimension mismatch");
    const bool seen = std::find(s.points.begin(), s.points.end(), p) != s.points.end();
    if (seen) {
      if (collapse) continue;
      throw std::invalid_argument("point set: duplicate point");
    }
    s.points.push_back(std::move(p));
  }
  unsigned __int128 l = 1;
  for (const auto& p : s.points) {
    for (const auto& c : p.coords) {
      const unsigned __int128 d = static_cast<std::uint64_t>(c.den);
      const unsigned __int128 g = detail::gcd128(l, d);
      l = l / g * d;
      if (l > static_cast<unsigned __int128>(UINT64_MAX)) {
        throw std::overflow_error("point set: denominator lcm exceeds 64 bits");
      }
    }
  }
  s.lcm_den = static_cast<std::uint64_t>(l);
  return s;
}

/// min(|a-b|, 1-|a-b|) for torus coordinates, exact.
inline Rat coordinate_gap(const Rat& a, const Rat& b) {
  const Rat d = (a - b).mod1();
  const Rat other = Rat(1) - d;
  return d < other ? d : other;
}

/// Euclidean wrap-around distance. Per-coordinate gaps are exact rationals;
/// only the final square root is floating point.
inline double torus_distance(const TorusPoint& x, const TorusPoint& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("torus_distance: dimension mismatch");
  double sq = 0.0;
  for (int i = 0; i < x.dim(); ++i) {
    const double g = coordinate_gap(x.coords[i], y.coords[i]).to_double();
    sq += g * g;
  }
  return std::sqrt(sq);
}

inline double distance_to_set(const TorusPoint& x, const PointSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : s.points) best = std::min(best, torus_distance(x, p));
  return best;
}

namespace detail {

struct CircularGap {
  Rat length;    // largest gap between consecutive points on the circle
  Rat start;     // gap begins at this point
};

inline CircularGap largest_gap_1d(const PointSet& s) {
  std::vector<Rat> xs;
  xs.reserve(s.points.size());
  for (const auto& p : s.points) xs.push_back(p.coords[0]);
  std::sort(xs.begin(), xs.end());
  CircularGap best{Rat(1) - xs.back() + xs.front(), xs.back()};  // wrap-around gap
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat g = xs[i + 1] - xs[i];
    if (best.length < g) best = {g, xs[i]};
  }
  return best;
}

}  // namespace detail

/// Exact covering radius for d = 1: half the largest circular gap.
inline Rat covering_radius_1d(const PointSet& s) {
  if (s.dim != 1) throw std::invalid_argument("covering_radius_1d: need dimension 1");
  if (s.points.empty()) throw std::invalid_argument("covering_radius_1d: empty set");
  const auto gap = detail::largest_gap_1d(s);
  return Rat::make(gap.length.num, static_cast<__int128>(gap.length.den) * 2);
}

enum class Verdict { Dense, NotDense, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Dense: return "dense";
    case Verdict::NotDense: return "not-dense";
    default: return "unknown";
  }
}

struct DensityCertificate {
  Verdict verdict = Verdict::Unknown;
  std::optional<TorusPoint> witness;    // NotDense: a probe farther than eps from the set
  double mesh = 0.0;                    // grid spacing actually used (0 on the exact 1d path)
  std::optional<Rat> covering_radius;   // exact, d = 1 only
  double worst_distance = 0.0;          // largest probe-to-set distance seen
};

/// eps-density certification. d = 1 is decided exactly through the covering
/// radius. For d >= 2, probe centers sit on a cubic grid of spacing mesh:
/// every center within eps - mesh*sqrt(d)/2 certifies Dense, a center beyond
/// eps + mesh*sqrt(d)/2 certifies NotDense, anything between is Unknown and
/// the caller refines the mesh.
inline DensityCertificate is_eps_dense(const PointSet& s, double eps, double mesh) {
  if (!(eps > 0.0)) throw std::invalid_argument("is_eps_dense: eps must be positive");
  if (!(mesh > 0.0)) throw std::invalid_argument("is_eps_dense: mesh must be positive");
  if (mesh > eps) throw std::invalid_argument("is_eps_dense: mesh must not exceed eps");

  DensityCertificate cert;
  if (s.dim == 1) {
    const auto gap = detail::largest_gap_1d(s);
    const Rat radius = Rat::make(gap.length.num, static_cast<__int128>(gap.length.den) * 2);
    cert.covering_radius = radius;
    cert.worst_distance = radius.to_double();
    if (compare(radius, eps) <= 0) {
      cert.verdict = Verdict::Dense;
    } else {
      cert.verdict = Verdict::NotDense;
      // The midpoint of the largest gap realizes the covering radius.
      cert.witness = make_torus_point({(gap.start + radius).mod1()});
    }
    return cert;
  }

  const int grid = std::max(1, static_cast<int>(std::ceil(1.0 / mesh)));
  const double h = 1.0 / grid;
  const double margin = h * std::sqrt(static_cast<double>(s.dim)) / 2.0;
  double probes = 1.0;
  for (int i = 0; i < s.dim; ++i) probes *= grid;
  if (probes * s.points.size() > static_cast<double>(kGridProbeBudget)) {
    throw budget_error("is_eps_dense: probe grid exceeds the budget");
  }

  cert.mesh = h;
  double worst = -1.0;
  TorusPoint worst_center;
  std::vector<int> idx(s.dim, 0);
  while (true) {
    TorusPoint center;
    center.coords.reserve(s.dim);
    for (int i = 0; i < s.dim; ++i) {
      center.coords.push_back(Rat(2 * idx[i] + 1, 2LL * grid));
    }
    const double dist = distance_to_set(center, s);
    if (dist > worst) {
      worst = dist;
      worst_center = center;
    }
    int k = 0;
    while (k < s.dim) {
      if (++idx[k] < grid) break;
      idx[k] = 0;
      ++k;
    }
    if (k == s.dim) break;
  }

  cert.worst_distance = worst;
  if (worst > eps + margin) {
    cert.verdict = Verdict::NotDense;
    cert.witness = worst_center;
  } else if (worst <= eps - margin) {
    cert.verdict = Verdict::Dense;
  } else {
    cert.verdict = Verdict::Unknown;
  }
  return cert;
}

/// Image of one point under an integer matrix, mod 1.
inline TorusPoint dilate_point(const std::vector<std::vector<long long>>& m,
                               const TorusPoint& x) {
  const int d = x.dim();
  if (static_cast<int>(m.size()) != d) {
    throw std::invalid_argument("dilate: matrix dimension mismatch");
  }
  // Common denominator of the coordinates, then row sums mod L.
  unsigned __int128 l = 1;
  for (const auto& c : x.coords) {
    const unsigned __int128 den = static_cast<std::uint64_t>(c.den);
    l = l / detail::gcd128(l, den) * den;
    if (l > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw std::overflow_error("dilate: denominator lcm exceeds 64 bits");
    }
  }
  const std::uint64_t big_l = static_cast<std::uint64_t>(l);
  std::vector<std::uint64_t> scaled(d);  // x_s * L, an integer in [0, L)
  for (int s = 0; s < d; ++s) {
    scaled[s] = static_cast<std::uint64_t>(x.coords[s].num) *
                (big_l / static_cast<std::uint64_t>(x.coords[s].den));
  }
  TorusPoint out;
  out.coords.reserve(d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(m[r].size()) != d) {
      throw std::invalid_argument("dilate: matrix dimension mismatch");
    }
    unsigned __int128 acc = 0;
    for (int s = 0; s < d; ++s) {
      long long e = m[r][s] % static_cast<long long>(big_l);
      if (e < 0) e += static_cast<long long>(big_l);
      acc = (acc + static_cast<unsigned __int128>(static_cast<std::uint64_t>(e)) * scaled[s]) %
            big_l;
    }
    out.coords.push_back(Rat::make(static_cast<__int128>(acc), static_cast<__int128>(big_l)));
  }
  return out;
}

/// Dilation by an integer matrix; duplicate images are collapsed, so the
/// result may have fewer points.
inline PointSet dilate(const PointSet& s, const std::vector<std::vector<long long>>& m) {
  std::vector<TorusPoint> mapped;
  mapped.reserve(s.points.size());
  for (const auto& p : s.points) mapped.push_back(dilate_point(m, p));
  return make_point_set(s.dim, std::move(mapped), /*collapse=*/true);
}

/// Translation by a rational vector, mod 1.
inline PointSet translate(const PointSet& s, const std::vector<Rat>& t) {
  if (static_cast<int>(t.size()) != s.dim) {
    throw std::invalid_argument("translate: dimension mismatch");
  }
  std::vector<TorusPoint> moved;
  moved.reserve(s.points.size());
  for (const auto& p : s.points) {
    TorusPoint q;
    q.coords.reserve(s.dim);
    for (int i = 0; i < s.dim; ++i) q.coords.push_back((p.coords[i] + t[i]).mod1());
    moved.push_back(std::move(q));
  }
  return make_point_set(s.dim, std::move(moved));
}

}  // namespace glasner
