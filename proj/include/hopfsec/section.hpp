#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hopfsec/curve.hpp"
#include "hopfsec/errors.hpp"
#include "hopfsec/polynomial.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/random.hpp"

namespace hopfsec {

enum class Handedness { Left, Right };

inline const char* to_string(Handedness h) { return h == Handedness::Left ? "left" : "right"; }

struct BoundaryFibre {
  ProjectivePoint point;
  int sign = 1;         // +1 positive boundary, -1 negative
  int winding = 1;      // argument-principle winding of the defining layer
  Handedness handedness = Handedness::Left;
  double rotation = 0;  // turns of the tracked intersection per loop
};

struct SectionReport {
  int d = 0;  // generic number of intersections per fibre
  int samples = 0;
  int collisions = 0;
  std::vector<BoundaryFibre> boundary;
  int genus = 0;
  int positive_count = 0;
  int negative_count = 0;
};

struct SectionOptions {
  /// Sampled fibres closer than this (chordal) to a boundary fibre are redrawn.
  double tol = 1e-8;
  double ray_tol = 1e-9;
  /// Two intersections are the same point if |z - z'| <= coincide_tol * max(|z|, |z'|).
  double coincide_tol = 1e-9;
  int monodromy_steps = 512;
  /// Monodromy circle radius; <= 0 selects 1/10 of the minimal boundary gap (at most 0.1).
  double eps = 0.0;
  int threads = 1;
};

struct FibreCount {
  int count = 0;
  bool ray_collision = false;
  bool coincident = false;
};

struct Monodromy {
  double rotation = 0.0;  // turns
  Handedness sense = Handedness::Left;
};

/// A boundary fibre candidate: a root of the top (sign +1) or bottom (sign -1) layer.
struct BoundaryRoot {
  ProjectivePoint point;
  int sign = 1;
  BinaryForm layer;
};

inline std::vector<BoundaryRoot> boundary_roots(const CurveSpec& spec) {
  std::vector<BoundaryRoot> out;
  auto add = [&out](const BinaryForm& f, int sign) {
    for (const auto& r : roots(f).roots) out.push_back({r.point, sign, f});
  };
  if (const auto* p = std::get_if<PureD>(&spec)) {
    add(p->form, +1);
  } else if (const auto* t = std::get_if<TwoLayer>(&spec)) {
    add(t->top, +1);
    add(t->bottom, -1);
  } else {
    const auto& fam = std::get<Triangular>(spec).family;
    add(fam.layer(fam.degree()), +1);
  }
  return out;
}

/// (d-1)(d-2)/2: genus of the unique positive d-section.
inline int genus_from_section(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidInput, "genus_from_section needs d >= 1");
  return (d - 1) * (d - 2) / 2;
}

/// 2 - 2g == 3d - d^2.
inline bool riemann_hurwitz_check(long long g, long long d) { return 2 - 2 * g == 3 * d - d * d; }

namespace detail {

inline double min_boundary_gap(const std::vector<BoundaryRoot>& b) {
  double gap = 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) gap = std::min(gap, chordal_distance(b[i].point, b[j].point));
  }
  return gap;
}

inline double default_eps(const std::vector<BoundaryRoot>& b) { return std::min(0.1, 0.1 * min_boundary_gap(b)); }

// Representative of the fibre at angle theta on the small circle around
// `center`, perturbing the smaller coordinate in the chart of the larger one.
struct CirclePoint {
  Complex a;
  Complex b;
};

inline CirclePoint circle_point(const ProjectivePoint& center, double eps, double theta) {
  const Complex e = std::polar(eps, theta);
  if (std::abs(center.a()) >= std::abs(center.b())) return {center.a(), center.b() + e * center.a()};
  return {center.a() + e * center.b(), center.b()};
}

inline double phase_step(Complex from, Complex to) { return std::arg(to / from); }

inline const BoundaryRoot& nearest_boundary(const std::vector<BoundaryRoot>& b, const ProjectivePoint& p,
                                            double max_dist) {
  const BoundaryRoot* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& r : b) {
    const double dist = chordal_distance(r.point, p);
    if (dist < best_d) {
      best_d = dist;
      best = &r;
    }
  }
  if (best == nullptr || best_d > max_dist) {
    throw Error(ErrorKind::InvalidInput, "point is not a boundary fibre of the curve");
  }
  return *best;
}

inline std::vector<Complex> intersections(const CurveSpec& spec, Complex a, Complex b) {
  return solve(affine_intersection_poly_at(spec, a, b));
}

inline double min_pair_gap(const std::vector<Complex>& z) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) gap = std::min(gap, std::abs(z[i] - z[j]));
  }
  return gap;
}

// Nearest-neighbour continuation of `current` (one value per sheet) to the
// roots in `next`. Throws TrackLost when the assignment is ambiguous.
inline std::vector<Complex> continue_sheets(const std::vector<Complex>& current, std::vector<Complex> next) {
  const double gap = min_pair_gap(next);
  std::vector<Complex> out;
  out.reserve(current.size());
  for (const auto& w : current) {
    auto it = std::min_element(next.begin(), next.end(),
                               [&w](Complex x, Complex y) { return std::abs(x - w) < std::abs(y - w); });
    if (it == next.end() || std::abs(*it - w) > 0.5 * gap) {
      throw Error(ErrorKind::TrackLost, "intersection moved further than half the root gap");
    }
    out.push_back(*it);
    next.erase(it);
  }
  return out;
}

}  // namespace detail

/// Number of intersections of the curve with the radial plane over `p`, and
/// whether two of them share a real ray.
inline FibreCount count_fibre_intersections(const CurveSpec& spec, const ProjectivePoint& p,
                                            const std::vector<BoundaryRoot>& boundary,
                                            const SectionOptions& options = {}) {
  for (const auto& r : boundary) {
    if (chordal_distance(r.point, p) < options.tol) {
      throw Error(ErrorKind::BoundaryFibreQuery, "fibre lies within tolerance of a boundary fibre");
    }
  }
  std::vector<Complex> z;
  for (const auto& w : solve(affine_intersection_poly(spec, p))) {
    if (w != Complex(0.0)) z.push_back(w);
  }
  FibreCount out;
  out.count = static_cast<int>(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double scale = std::max(std::abs(z[i]), std::abs(z[j]));
      if (std::abs(z[i] - z[j]) <= options.coincide_tol * scale) {
        out.coincident = true;
      } else if (std::abs(std::arg(z[j] / z[i])) < options.ray_tol) {
        out.ray_collision = true;
      }
    }
  }
  return out;
}

inline FibreCount count_fibre_intersections(const CurveSpec& spec, const ProjectivePoint& p,
                                            const SectionOptions& options = {}) {
  return count_fibre_intersections(spec, p, boundary_roots(spec), options);
}

/// Winding of arg f along the circle theta -> [a : b + eps a e^(i theta)]
/// (coordinates swapped when |b| > |a|). Equals the multiplicity of the root.
inline int winding_number(const BinaryForm& f, const ProjectivePoint& center, double eps, int steps) {
  constexpr int kRetries = 8;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    bool ok = true;
    double total = 0.0;
    auto start = detail::circle_point(center, eps, 0.0);
    Complex prev = evaluate(f, start.a, start.b);
    ok = prev != Complex(0.0);
    for (int i = 1; i <= steps && ok; ++i) {
      const auto c = detail::circle_point(center, eps, 2.0 * std::numbers::pi * i / steps);
      const Complex v = evaluate(f, c.a, c.b);
      if (v == Complex(0.0)) {
        ok = false;
        break;
      }
      const double step = detail::phase_step(prev, v);
      if (std::abs(step) >= 0.5 * std::numbers::pi) ok = false;
      total += step;
      prev = v;
    }
    if (ok) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    steps *= 2;
    if (attempt % 2 == 1) eps *= 0.5;
  }
  throw Error(ErrorKind::PhaseStepTooLarge, "phase increments stayed above pi/2 after refinement");
}

/// Follows one intersection w_theta once around the eps-circle about a
/// boundary fibre and reports its net rotation in turns.
///
/// At a positive boundary the escaping (largest) intersection is tracked, at a
/// negative one the intersection collapsing to the origin (smallest).
inline Monodromy boundary_monodromy(const CurveSpec& spec, const ProjectivePoint& center, double eps, int steps) {
  const auto boundary = boundary_roots(spec);
  const auto& root = detail::nearest_boundary(boundary, center, 1e-6);
  constexpr int kRetries = 6;
  Error last(ErrorKind::PhaseStepTooLarge, "no attempt made");
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    try {
      const auto start = detail::circle_point(root.point, eps, 0.0);
      auto z0 = detail::intersections(spec, start.a, start.b);
      if (z0.empty()) throw Error(ErrorKind::InvalidInput, "no intersections near the boundary fibre");
      auto by_modulus = [](Complex x, Complex y) { return std::abs(x) < std::abs(y); };
      Complex w = root.sign > 0 ? *std::max_element(z0.begin(), z0.end(), by_modulus)
                                : *std::min_element(z0.begin(), z0.end(), by_modulus);
      double total = 0.0;
      for (int i = 1; i <= steps; ++i) {
        const auto c = detail::circle_point(root.point, eps, 2.0 * std::numbers::pi * i / steps);
        const Complex next = detail::continue_sheets({w}, detail::intersections(spec, c.a, c.b)).front();
        const double step = detail::phase_step(w, next);
        if (std::abs(step) >= 0.5 * std::numbers::pi) {
          throw Error(ErrorKind::PhaseStepTooLarge, "tracked phase jumped by more than pi/2");
        }
        total += step;
        w = next;
      }
      const double turns = total / (2.0 * std::numbers::pi);
      return {turns, turns < 0.0 ? Handedness::Left : Handedness::Right};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PhaseStepTooLarge && e.kind() != ErrorKind::TrackLost) throw;
      last = e;
      steps *= 2;
      if (attempt % 2 == 1) eps *= 0.5;
    }
  }
  throw last;
}

/// Monte-Carlo certification that the radial projection of the curve is a
/// section: every sampled fibre meets it the same number of times on
/// distinct rays. Boundary data come from the layer roots.
inline SectionReport verify_section(const CurveSpec& spec, int n_samples, SeedStream& rng,
                                    const SectionOptions& options = {}) {
  const auto validation = validate(spec, kDefaultDistinctTol);
  if (!validation.valid()) {
    throw Error(ErrorKind::NotASection, "curve fails its genericity hypotheses: " +
                                            validation.violations.front().message);
  }
  const auto boundary = boundary_roots(spec);

  std::vector<ProjectivePoint> fibres;
  fibres.reserve(static_cast<std::size_t>(n_samples));
  while (static_cast<int>(fibres.size()) < n_samples) {
    const auto p = random_fibre(rng);
    const bool near = std::any_of(boundary.begin(), boundary.end(),
                                  [&](const BoundaryRoot& r) { return chordal_distance(r.point, p) < options.tol; });
    if (!near) fibres.push_back(p);
  }

  std::vector<FibreCount> counts(fibres.size());
  const int threads = std::max(1, std::min(options.threads, n_samples));
  auto work = [&](int worker) {
    for (std::size_t i = static_cast<std::size_t>(worker); i < fibres.size(); i += static_cast<std::size_t>(threads)) {
      counts[i] = count_fibre_intersections(spec, fibres[i], boundary, options);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (int t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t));
    for (auto& j : jobs) j.get();
  }

  SectionReport report;
  report.samples = n_samples;
  report.d = counts.empty() ? curve_degree(spec) : counts.front().count;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& c = counts[i];
    if (c.ray_collision || c.coincident) ++report.collisions;
    if (c.count != report.d || c.ray_collision || c.coincident) {
      const auto& p = fibres[i];
      throw Error(ErrorKind::NotASection,
                  "fibre [" + std::to_string(p.a().real()) + "+" + std::to_string(p.a().imag()) + "i : " +
                      std::to_string(p.b().real()) + "+" + std::to_string(p.b().imag()) + "i] has " +
                      std::to_string(c.count) + " intersections (expected " + std::to_string(report.d) + ")" +
                      (c.ray_collision ? ", two on one ray" : "") + (c.coincident ? ", coincident" : ""));
    }
  }
  if (report.d < 1) throw Error(ErrorKind::NotASection, "generic fibres do not meet the curve");

  const double eps = options.eps > 0.0 ? options.eps : detail::default_eps(boundary);
  for (const auto& r : boundary) {
    BoundaryFibre b;
    b.point = r.point;
    b.sign = r.sign;
    b.winding = winding_number(r.layer, r.point, eps, options.monodromy_steps);
    const auto m = boundary_monodromy(spec, r.point, eps, options.monodromy_steps);
    b.rotation = m.rotation;
    b.handedness = m.sense;
    if (b.winding != 1) {
      throw Error(ErrorKind::NotASection, "boundary fibre with winding " + std::to_string(b.winding) +
                                              " (multiply covered limit orbit)");
    }
    if ((b.sign > 0) != (b.handedness == Handedness::Left)) {
      throw Error(ErrorKind::NotASection, "boundary sign disagrees with helicoid handedness");
    }
    (b.sign > 0 ? report.positive_count : report.negative_count) += 1;
    report.boundary.push_back(b);
  }
  std::sort(report.boundary.begin(), report.boundary.end(),
            [](const BoundaryFibre& x, const BoundaryFibre& y) {
              return x.sign != y.sign ? x.sign > y.sign : x.point < y.point;
            });
  if (report.positive_count != report.d + report.negative_count) {
    throw Error(ErrorKind::NotASection, "boundary counts violate k+ = d + k-");
  }
  report.genus = genus_from_section(report.d);
  return report;
}

struct EpsRange {
  double min = 1e-3;
  double max = 1e-1;
  int count = 8;  // radii spaced geometrically
};

struct SurfaceSample {
  double theta;
  double log_r;
  double arg_w;
  double x1, y1, x2, y2;  // unit point of S^3 hit by the intersection
};

/// Plot data for the surface near a boundary fibre: every intersection sheet
/// on a (radius, angle) grid of small circles around it.
inline std::vector<SurfaceSample> sample_surface(const CurveSpec& spec, const ProjectivePoint& center,
                                                 const EpsRange& eps_range, int theta_steps) {
  if (eps_range.count < 1 || theta_steps < 1 || !(eps_range.min > 0.0) || eps_range.max < eps_range.min) {
    throw Error(ErrorKind::InvalidInput, "bad sampling grid");
  }
  const auto boundary = boundary_roots(spec);
  const auto& root = detail::nearest_boundary(boundary, center, 1e-6);
  std::vector<SurfaceSample> out;
  for (int e = 0; e < eps_range.count; ++e) {
    const double eps = eps_range.count == 1
                           ? eps_range.min
                           : eps_range.min * std::pow(eps_range.max / eps_range.min,
                                                      static_cast<double>(e) / (eps_range.count - 1));
    std::vector<Complex> sheets;
    for (int i = 0; i < theta_steps; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / theta_steps;
      const auto c = detail::circle_point(root.point, eps, theta);
      auto z = detail::intersections(spec, c.a, c.b);
      if (i == 0) {
        std::sort(z.begin(), z.end(), [](Complex x, Complex y) { return std::arg(x) < std::arg(y); });
        sheets = z;
      } else {
        sheets = detail::continue_sheets(sheets, z);
      }
      const double norm = std::hypot(std::abs(c.a), std::abs(c.b));
      const Complex a = c.a / norm, b = c.b / norm;
      for (const auto& w0 : sheets) {
        const Complex w = w0 * norm;
        const Complex phase = w / std::abs(w);
        const Complex p1 = a * phase, p2 = b * phase;
        out.push_back({theta, std::log(std::abs(w)), std::arg(w), p1.real(), p1.imag(), p2.real(), p2.imag()});
      }
    }
  }
  return out;
}

}  // namespace hopfsec
