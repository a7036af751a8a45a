#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hopfsec/errors.hpp"
#include "hopfsec/polynomial.hpp"
#include "hopfsec/random.hpp"

namespace hopfsec {

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// A point [a:b] of CP^1, stored as its canonical representative on S^3:
/// |a|^2 + |b|^2 = 1 and the larger coordinate (a on ties) is real positive.
class ProjectivePoint {
 public:
  ProjectivePoint() : a_(1.0, 0.0), b_(0.0, 0.0) {}

  ProjectivePoint(Complex a, Complex b) {
    if (!is_finite(a) || !is_finite(b)) {
      throw Error(ErrorKind::InvalidInput, "projective point has non-finite coordinates");
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) throw Error(ErrorKind::InvalidInput, "[0:0] is not a point of CP^1");
    a /= scale;
    b /= scale;
    const double norm = std::hypot(std::abs(a), std::abs(b));
    // Near-ties count as ties so that roundoff cannot flip the chosen chart.
    const bool use_a = std::abs(a) >= std::abs(b) * (1.0 - 1e-12);
    const Complex lead = use_a ? a : b;
    const Complex phase = std::conj(lead) / std::abs(lead);
    a_ = a * phase / norm;
    b_ = b * phase / norm;
    // The rotation leaves round-off in the leading coordinate's imaginary part.
    if (use_a) {
      a_ = Complex(std::abs(a_), 0.0);
    } else {
      b_ = Complex(std::abs(b_), 0.0);
    }
  }

  static ProjectivePoint infinity() { return {Complex(1.0), Complex(0.0)}; }

  /// [w:1] for a root w of the dehomogenized form f(w, 1).
  static ProjectivePoint from_affine(Complex w) { return {w, Complex(1.0)}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

  /// Deterministic total order on representatives, used for canonical sorting.
  friend bool operator<(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double lp[4] = {p.a_.real(), p.a_.imag(), p.b_.real(), p.b_.imag()};
    const double lq[4] = {q.a_.real(), q.a_.imag(), q.b_.real(), q.b_.imag()};
    return std::lexicographical_compare(lp, lp + 4, lq, lq + 4);
  }

 private:
  Complex a_;
  Complex b_;
};

/// Chordal distance |a_p b_q - b_p a_q| on unit representatives, in [0, 1].
inline double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  return std::min(1.0, std::abs(p.a() * q.b() - p.b() * q.a()));
}

/// True iff every pair of points is more than `tol` apart in chordal distance.
inline bool all_distinct(std::span<const ProjectivePoint> points, double tol) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!(chordal_distance(points[i], points[j]) > tol)) return false;
    }
  }
  return true;
}

/// Uniform (Fubini-Study) random point of CP^1.
inline ProjectivePoint random_fibre(SeedStream& rng) {
  for (;;) {
    const Complex a = rng.complex_gaussian();
    const Complex b = rng.complex_gaussian();
    if (std::abs(a) + std::abs(b) > 0.0) return {a, b};
  }
}

/// Homogeneous polynomial of degree k in (z1, z2); coeffs[j] multiplies
/// z1^(k-j) z2^j.
class BinaryForm {
 public:
  explicit BinaryForm(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "binary form needs at least one coefficient");
    bool nonzero = false;
    for (const auto& c : coeffs_) {
      if (!is_finite(c)) throw Error(ErrorKind::InvalidInput, "binary form has a non-finite coefficient");
      nonzero = nonzero || std::abs(c) > 0.0;
    }
    if (!nonzero) throw Error(ErrorKind::InvalidInput, "binary form is identically zero");
  }

  BinaryForm(std::initializer_list<Complex> coeffs) : BinaryForm(std::vector<Complex>(coeffs)) {}

  static BinaryForm constant(Complex c = 1.0) { return BinaryForm(std::vector<Complex>{c}); }

  /// prod_j (b_j z1 - a_j z2), scaled by `scale`.
  static BinaryForm from_roots(std::span<const ProjectivePoint> roots, Complex scale = 1.0) {
    std::vector<Complex> c{scale};
    for (const auto& r : roots) {
      std::vector<Complex> next(c.size() + 1, Complex(0.0));
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j] += c[j] * r.b();
        next[j + 1] -= c[j] * r.a();
      }
      c = std::move(next);
    }
    return BinaryForm(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  /// f(z2, z1): coefficient order reversed.
  BinaryForm swapped() const { return BinaryForm(std::vector<Complex>(coeffs_.rbegin(), coeffs_.rend())); }

  /// Largest coefficient modulus.
  double coefficient_norm() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Sum of coeffs[j] z1^(k-j) z2^j at an arbitrary (not necessarily unit) pair.
inline Complex evaluate(const BinaryForm& f, Complex z1, Complex z2) {
  const auto& c = f.coeffs();
  const int k = f.degree();
  if (k == 0) return c[0];
  std::vector<Complex> pow1(k + 1), pow2(k + 1);
  pow1[0] = pow2[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    pow1[j] = pow1[j - 1] * z1;
    pow2[j] = pow2[j - 1] * z2;
  }
  Complex acc(0.0);
  for (int j = 0; j <= k; ++j) acc += c[j] * pow1[k - j] * pow2[j];
  return acc;
}

inline Complex evaluate(const BinaryForm& f, const ProjectivePoint& p) { return evaluate(f, p.a(), p.b()); }

struct Root {
  ProjectivePoint point;
  int multiplicity = 1;
};

/// Zeros of a binary form on CP^1 with multiplicities summing to its degree.
struct RootSet {
  int degree = 0;
  std::vector<Root> roots;

  std::vector<ProjectivePoint> points() const {
    std::vector<ProjectivePoint> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(r.point);
    return out;
  }

  int total_multiplicity() const {
    int m = 0;
    for (const auto& r : roots) m += r.multiplicity;
    return m;
  }

  bool all_simple() const {
    return std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity == 1; });
  }
};

struct RootOptions {
  /// Roots closer than this in chordal distance are merged.
  double merge_tol = 1e-6;
  UnivariateSolveOptions solver{};
};

namespace detail {

// Phase-aligned average of nearby representatives on S^3.
inline ProjectivePoint cluster_mean(std::span<const ProjectivePoint> members) {
  const auto& ref = members.front();
  Complex sa(0.0), sb(0.0);
  for (const auto& p : members) {
    const Complex overlap = std::conj(ref.a()) * p.a() + std::conj(ref.b()) * p.b();
    const Complex align = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
    sa += p.a() * align;
    sb += p.b() * align;
  }
  return {sa, sb};
}

}  // namespace detail

/// Roots of f on CP^1.
///
/// Leading coefficients that vanish exactly (coeffs[0], coeffs[1], ...) give
/// the multiplicity of [1:0]; the remaining roots come from f(w, 1) = 0 via
/// the univariate solver and are mapped to [w:1]. Points within
/// options.merge_tol are merged into one entry with summed multiplicity.
inline RootSet roots(const BinaryForm& f, const RootOptions& options = {}) {
  const int k = f.degree();
  RootSet out;
  out.degree = k;
  if (k == 0) return out;

  const auto& c = f.coeffs();
  int at_infinity = 0;
  while (at_infinity <= k && c[at_infinity] == Complex(0.0)) ++at_infinity;

  // f(w, 1) = sum_j c_j w^(k-j): ascending order is c reversed.
  Polynomial dehom;
  dehom.coeffs.assign(c.rbegin(), c.rend());
  dehom.coeffs.resize(k + 1 - at_infinity);
  std::vector<ProjectivePoint> pts(static_cast<std::size_t>(at_infinity), ProjectivePoint::infinity());
  for (const auto& w : solve(dehom, options.solver)) pts.push_back(ProjectivePoint::from_affine(w));

  // Greedy single-linkage clustering.
  std::vector<int> cluster(pts.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (cluster[i] < 0) cluster[i] = next++;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (chordal_distance(pts[i], pts[j]) < options.merge_tol) {
        if (cluster[j] < 0) {
          cluster[j] = cluster[i];
        } else if (cluster[j] != cluster[i]) {
          const int from = cluster[j], to = cluster[i];
          for (auto& cl : cluster) if (cl == from) cl = to;
        }
      }
    }
  }
  std::vector<int> ids(cluster.begin(), cluster.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids) {
    std::vector<ProjectivePoint> members;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (cluster[i] == id) members.push_back(pts[i]);
    }
    out.roots.push_back({detail::cluster_mean(members), static_cast<int>(members.size())});
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const Root& x, const Root& y) { return x.point < y.point; });
  return out;
}

}  // namespace hopfsec
