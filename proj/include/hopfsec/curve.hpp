#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "hopfsec/errors.hpp"
#include "hopfsec/polynomial.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/random.hpp"

namespace hopfsec {

inline constexpr double kDefaultDistinctTol = 1e-8;

/// Layers f_d, ..., f_1 of the curve f_d + z0 f_(d-1) + ... + z0^(d-1) f_1 + z0^d.
/// Only the degree structure is enforced here; genericity is checked by validate().
class TriangularFamily {
 public:
  /// `top_down` lists f_d first and f_1 last.
  explicit TriangularFamily(std::vector<BinaryForm> top_down) {
    const int d = static_cast<int>(top_down.size());
    if (d < 1) throw Error(ErrorKind::InvalidInput, "triangular family needs at least one layer");
    layers_.reserve(d + 1);
    layers_.push_back(BinaryForm::constant(1.0));
    for (int k = 1; k <= d; ++k) {
      const auto& f = top_down[d - k];
      if (f.degree() != k) {
        throw Error(ErrorKind::InvalidInput, "layer f_" + std::to_string(k) + " has degree " +
                                                 std::to_string(f.degree()));
      }
      layers_.push_back(f);
    }
  }

  int degree() const noexcept { return static_cast<int>(layers_.size()) - 1; }

  /// f_k for 0 <= k <= d, with f_0 the constant 1.
  const BinaryForm& layer(int k) const { return layers_.at(static_cast<std::size_t>(k)); }

  std::vector<BinaryForm> top_down() const { return {layers_.rbegin(), layers_.rend() - 1}; }

  /// f^lambda(z1, z2) = sum_l lambda^(l(l+1)/2) f_(d-l)(z1, z2).
  Complex evaluate_deformed(double lambda, Complex z1, Complex z2) const {
    const int d = degree();
    Complex acc(0.0);
    for (int l = 0; l <= d; ++l) {
      acc += std::pow(lambda, 0.5 * l * (l + 1)) * evaluate(layer(d - l), z1, z2);
    }
    return acc;
  }

 private:
  std::vector<BinaryForm> layers_;
};

struct PureD {
  BinaryForm form;  // curve f(z1, z2) - z0^d
};

struct TwoLayer {
  BinaryForm top;     // f_d
  BinaryForm bottom;  // f_(d-1)
};

struct Triangular {
  TriangularFamily family;  // evaluated at lambda = 1
};

using CurveSpec = std::variant<PureD, TwoLayer, Triangular>;

inline int curve_degree(const CurveSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PureD>) return s.form.degree();
        else if constexpr (std::is_same_v<T, TwoLayer>) return s.top.degree();
        else return s.family.degree();
      },
      spec);
}

enum class ViolationKind { RepeatedRoot, SharedRoot, DegreeMismatch };

struct Violation {
  ViolationKind kind;
  int layer = 0;        // the layer carrying the defect
  int other_layer = 0;  // for SharedRoot: the adjacent layer (layer - 1)
  ProjectivePoint first;
  ProjectivePoint second;
  double distance = 0.0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const noexcept { return violations.empty(); }
};

namespace detail {

inline void check_simple(int layer, const RootSet& rs, double tol,
                         std::vector<Violation>& out) {
  const std::string tag = "layer " + std::to_string(layer);
  for (const auto& r : rs.roots) {
    if (r.multiplicity > 1) {
      out.push_back({ViolationKind::RepeatedRoot, layer, layer, r.point, r.point, 0.0,
                     "repeated root in " + tag + " (multiplicity " + std::to_string(r.multiplicity) + ")"});
    }
  }
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
      const double dist = chordal_distance(rs.roots[i].point, rs.roots[j].point);
      if (!(dist > tol)) {
        out.push_back({ViolationKind::RepeatedRoot, layer, layer, rs.roots[i].point, rs.roots[j].point, dist,
                       "repeated root in " + tag});
      }
    }
  }
}

inline void check_disjoint(int upper, const RootSet& a, const RootSet& b, double tol,
                           std::vector<Violation>& out) {
  for (const auto& x : a.roots) {
    for (const auto& y : b.roots) {
      const double dist = chordal_distance(x.point, y.point);
      if (!(dist > tol)) {
        out.push_back({ViolationKind::SharedRoot, upper, upper - 1, x.point, y.point, dist,
                       "layers " + std::to_string(upper) + " and " + std::to_string(upper - 1) +
                           " share a root (chordal distance " + std::to_string(dist) + ")"});
      }
    }
  }
}

}  // namespace detail

/// Checks that every layer has simple roots and adjacent layers share none.
inline ValidationReport validate(const TriangularFamily& fam, double tol = kDefaultDistinctTol) {
  ValidationReport report;
  const int d = fam.degree();
  std::vector<RootSet> rs(d + 1);
  for (int k = 1; k <= d; ++k) {
    rs[k] = roots(fam.layer(k));
    detail::check_simple(k, rs[k], tol, report.violations);
  }
  for (int k = d; k >= 2; --k) detail::check_disjoint(k, rs[k], rs[k - 1], tol, report.violations);
  return report;
}

/// Same checks for a TwoLayer curve (both layers simple, no common root).
inline ValidationReport validate(const TwoLayer& spec, double tol = kDefaultDistinctTol) {
  ValidationReport report;
  const int d = spec.top.degree();
  if (spec.bottom.degree() != d - 1 || d < 1) {
    report.violations.push_back({ViolationKind::DegreeMismatch, d, spec.bottom.degree(), {}, {}, 0.0,
                                 "two-layer curve needs degrees (d, d-1) with d >= 1"});
    return report;
  }
  const auto top = roots(spec.top);
  const auto bottom = roots(spec.bottom);
  detail::check_simple(d, top, tol, report.violations);
  detail::check_simple(d - 1, bottom, tol, report.violations);
  detail::check_disjoint(d, top, bottom, tol, report.violations);
  return report;
}

/// f has d simple roots pairwise more than `tol` apart.
inline bool nonsingular_pure_d(const BinaryForm& f, double tol = kDefaultDistinctTol) {
  if (f.degree() < 1) return false;
  const auto rs = roots(f);
  if (!rs.all_simple() || static_cast<int>(rs.roots.size()) != f.degree()) return false;
  const auto pts = rs.points();
  return all_distinct(pts, tol);
}

inline ValidationReport validate(const CurveSpec& spec, double tol = kDefaultDistinctTol) {
  if (const auto* p = std::get_if<PureD>(&spec)) {
    ValidationReport report;
    if (p->form.degree() < 1) {
      report.violations.push_back({ViolationKind::DegreeMismatch, 0, 0, {}, {}, 0.0, "pure curve needs degree >= 1"});
    } else {
      detail::check_simple(p->form.degree(), roots(p->form), tol, report.violations);
    }
    return report;
  }
  if (const auto* t = std::get_if<TwoLayer>(&spec)) return validate(*t, tol);
  return validate(std::get<Triangular>(spec).family, tol);
}

inline BinaryForm random_form(int degree, SeedStream& rng) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = rng.complex_gaussian();
  return BinaryForm(std::move(c));
}

/// Generic triangular family with Gaussian coefficients, each layer redrawn
/// until it has simple roots disjoint from the layer above it.
inline TriangularFamily random_family(int d, SeedStream& rng, double tol = kDefaultDistinctTol,
                                      int max_attempts = 1000) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "random_family needs d >= 1");
  std::vector<BinaryForm> top_down;
  RootSet above;
  for (int k = d; k >= 1; --k) {
    bool accepted = false;
    for (int attempt = 0; attempt < max_attempts && !accepted; ++attempt) {
      auto f = random_form(k, rng);
      auto rs = roots(f);
      std::vector<Violation> v;
      detail::check_simple(k, rs, tol, v);
      if (k < d) detail::check_disjoint(k + 1, above, rs, tol, v);
      if (v.empty()) {
        top_down.push_back(std::move(f));
        above = std::move(rs);
        accepted = true;
      }
    }
    if (!accepted) {
      throw Error(ErrorKind::ExhaustedAttempts,
                  "layer " + std::to_string(k) + " rejected " + std::to_string(max_attempts) + " times");
    }
  }
  return TriangularFamily(std::move(top_down));
}

/// P(z) whose nonzero roots are the intersections of the affine curve with
/// the radial plane {(a z, b z)}; ascending coefficients in z.
/// Same polynomial for an arbitrary representative (a, b) of the fibre.
inline Polynomial affine_intersection_poly_at(const CurveSpec& spec, Complex a, Complex b) {
  Polynomial out;
  if (const auto* p = std::get_if<PureD>(&spec)) {
    const int d = p->form.degree();
    out.coeffs.assign(static_cast<std::size_t>(d) + 1, Complex(0.0));
    out.coeffs[0] = -1.0;
    out.coeffs[d] += evaluate(p->form, a, b);
  } else if (const auto* t = std::get_if<TwoLayer>(&spec)) {
    out.coeffs = {evaluate(t->bottom, a, b), evaluate(t->top, a, b)};
  } else {
    const auto& fam = std::get<Triangular>(spec).family;
    for (int k = 0; k <= fam.degree(); ++k) out.coeffs.push_back(evaluate(fam.layer(k), a, b));
  }
  return out;
}

inline Polynomial affine_intersection_poly(const CurveSpec& spec, const ProjectivePoint& p) {
  return affine_intersection_poly_at(spec, p.a(), p.b());
}

}  // namespace hopfsec
