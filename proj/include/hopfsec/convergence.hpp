#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfsec/curve.hpp"
#include "hopfsec/degeneration.hpp"
#include "hopfsec/errors.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/random.hpp"

namespace hopfsec {

/// A point q of the unit sphere S^3 in C^2 (not a projective class: the
/// phase matters for values of the non-homogeneous family).
struct SpherePoint {
  Complex z1;
  Complex z2;
};

inline SpherePoint random_sphere_point(SeedStream& rng) {
  for (;;) {
    const Complex a = rng.complex_gaussian();
    const Complex b = rng.complex_gaussian();
    const double n = std::hypot(std::abs(a), std::abs(b));
    if (n > 0.0) return {a / n, b / n};
  }
}

/// G^lambda(t, q) = f^lambda(e^t q) expanded as
/// sum_l e^((d-l)t) lambda^(l(l+1)/2) g_(d-l)(q).
inline Complex eval_G(const TriangularFamily& fam, double lambda, double t, const SpherePoint& q) {
  const int d = fam.degree();
  Complex acc(0.0);
  for (int l = 0; l <= d; ++l) {
    acc += std::exp((d - l) * t) * std::pow(lambda, 0.5 * l * (l + 1)) * evaluate(fam.layer(d - l), q.z1, q.z2);
  }
  return acc;
}

/// G^lambda at t + mu log(lambda), with the shift folded into the exponents:
/// sum_l e^((d-l)t) lambda^(mu(d-l) + l(l+1)/2) g_(d-l)(q).
inline Complex eval_G_shifted(const TriangularFamily& fam, double lambda, double mu, double t, const SpherePoint& q) {
  const int d = fam.degree();
  Complex acc(0.0);
  for (int l = 0; l <= d; ++l) {
    acc += std::exp((d - l) * t) * std::pow(lambda, mu * (d - l) + 0.5 * l * (l + 1)) *
           evaluate(fam.layer(d - l), q.z1, q.z2);
  }
  return acc;
}

/// The three limit profiles of level k.
class LimitProfiles {
 public:
  LimitProfiles(const TriangularFamily& fam, int k) : fam_(&fam), k_(k) {
    if (k < 1 || k > fam.degree()) throw Error(ErrorKind::InvalidInput, "level index must lie in [1, d]");
  }

  /// e^((d-k+1)t) g_(d-k+1)(q) + e^((d-k)t) g_(d-k)(q)
  Complex zero(double t, const SpherePoint& q) const {
    const int d = fam_->degree();
    return std::exp((d - k_ + 1) * t) * upper(q) + std::exp((d - k_) * t) * lower(q);
  }

  /// g_(d-k+1)(q) + e^(-t) g_(d-k)(q), the t -> +inf normalization.
  Complex plus(double t, const SpherePoint& q) const { return upper(q) + std::exp(-t) * lower(q); }

  /// e^t g_(d-k+1)(q) + g_(d-k)(q), the t -> -inf normalization.
  Complex minus(double t, const SpherePoint& q) const { return std::exp(t) * upper(q) + lower(q); }

  int k() const noexcept { return k_; }

 private:
  Complex upper(const SpherePoint& q) const { return evaluate(fam_->layer(fam_->degree() - k_ + 1), q.z1, q.z2); }
  Complex lower(const SpherePoint& q) const { return evaluate(fam_->layer(fam_->degree() - k_), q.z1, q.z2); }

  const TriangularFamily* fam_;
  int k_;
};

inline LimitProfiles limit_profiles(const TriangularFamily& fam, int k) { return {fam, k}; }

enum class Side { Plus, Minus };

inline const char* to_string(Side s) { return s == Side::Plus ? "+" : "-"; }

struct WindowReport {
  int k = 0;
  double lambda = 0.0;
  Side side = Side::Plus;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double sup_error = 0.0;
  int t_grid = 0;
  int q_samples = 0;
};

/// Sup over the window of |G^lambda_k / (lambda^E(k,k) e^(n t)) - G^(+/-)_k|,
/// n = d-k+1 on the + side (t in [0, -(3/4) ln lambda]) and n = d-k on the
/// - side (t in [(3/4) ln lambda, 0]).
inline WindowReport window_sup_error(const TriangularFamily& fam, int k, double lambda, Side side, int t_grid,
                                     int q_samples, SeedStream& rng) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorKind::InvalidInput, "lambda must lie in (0, 1)");
  if (t_grid < 2 || q_samples < 1) throw Error(ErrorKind::InvalidInput, "window grid too small");
  const int d = fam.degree();
  const auto profiles = limit_profiles(fam, k);
  const double reach = -0.75 * std::log(lambda);
  WindowReport r;
  r.k = k;
  r.lambda = lambda;
  r.side = side;
  r.t_lo = side == Side::Plus ? 0.0 : -reach;
  r.t_hi = side == Side::Plus ? reach : 0.0;
  r.t_grid = t_grid;
  r.q_samples = q_samples;

  const double divisor = std::pow(lambda, boost::rational_cast<double>(scale_exponent(d, Rational(k), k)));
  const int growth = side == Side::Plus ? d - k + 1 : d - k;
  std::vector<SpherePoint> qs;
  qs.reserve(static_cast<std::size_t>(q_samples));
  for (int i = 0; i < q_samples; ++i) qs.push_back(random_sphere_point(rng));

  for (int i = 0; i < t_grid; ++i) {
    const double t = r.t_lo + (r.t_hi - r.t_lo) * i / (t_grid - 1);
    const double norm = divisor * std::exp(growth * t);
    for (const auto& q : qs) {
      const Complex rescaled = eval_G_shifted(fam, lambda, k, t, q) / norm;
      const Complex target = side == Side::Plus ? profiles.plus(t, q) : profiles.minus(t, q);
      r.sup_error = std::max(r.sup_error, std::abs(rescaled - target));
    }
  }
  return r;
}

/// A summand that vanishes in the level-k limit, in the normal form
/// lambda^m e^(+/- n t) g_(d-k+1+n) (upper) or g_(d-k-n) (lower).
struct RemainderTerm {
  int l = 0;
  Rational m;
  int n = 0;
  bool upper = true;
};

struct ExponentCheck {
  bool survivors_ok = false;
  std::vector<RemainderTerm> terms;
  /// survivors_ok and every term has m >= n > 0, hence m - 3n/4 >= 1/4.
  bool ok = false;
};

inline ExponentCheck check_exponents(const ExponentSchedule& schedule, int k) {
  ExponentCheck out;
  const int d = schedule.d;
  out.survivors_ok = minimal_terms(schedule, Rational(k)) == std::vector<int>{k - 1, k};
  const Rational base = scale_exponent(schedule, Rational(k), k);
  bool terms_ok = true;
  for (int l = 0; l <= d; ++l) {
    if (l == k - 1 || l == k) continue;
    RemainderTerm term;
    term.l = l;
    term.upper = l < k - 1;
    term.n = term.upper ? k - 1 - l : l - k;
    term.m = scale_exponent(schedule, Rational(k), l) - base;
    const Rational n(term.n);
    terms_ok = terms_ok && term.n > 0 && term.m >= n && term.m - Rational(3, 4) * n >= Rational(1, 4);
    out.terms.push_back(term);
  }
  out.ok = out.survivors_ok && terms_ok;
  return out;
}

/// Upper bound B >= max_k sup_{S^3} |g_k| from seeded samples, times 1.1.
inline double sphere_sup_bound(const TriangularFamily& fam, SeedStream& rng, int samples = 10000) {
  double b = 1.0;  // g_0 = 1
  for (int i = 0; i < samples; ++i) {
    const auto q = random_sphere_point(rng);
    for (int k = 1; k <= fam.degree(); ++k) b = std::max(b, std::abs(evaluate(fam.layer(k), q.z1, q.z2)));
  }
  return 1.1 * b;
}

struct RateOptions {
  int t_grid = 128;
  int q_samples = 256;
  std::uint64_t seed = 0;
  double safety = 2.0;
  double min_slope = 0.25 - 0.05;
  /// Exponent data to verify; the family's own triangular schedule when unset.
  std::optional<ExponentSchedule> schedule;
};

struct RateCheck {
  ExponentCheck exponents;
  std::vector<WindowReport> windows;
  double constant = 0.0;  // C = (d+1) B safety
  bool bound_ok = false;  // sup_error <= C lambda^(1/4) for every lambda
  bool monotone = false;  // strictly decreasing in lambda
  double slope = 0.0;     // least-squares slope of log(sup_error) against log(lambda)
  bool slope_ok = false;
  bool passed = false;    // exponents.ok and bound_ok
};

/// Exact exponent verification plus the empirical lambda^(1/4) rate on the
/// windows of level k. `lambdas` must be decreasing in (0, 1).
inline RateCheck rate_bound_check(const TriangularFamily& fam, int k, const std::vector<double>& lambdas, Side side,
                                  const RateOptions& options = {}) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0 && lambdas[i] < 1.0) || (i > 0 && !(lambdas[i] < lambdas[i - 1]))) {
      throw Error(ErrorKind::InvalidInput, "lambda list must be strictly decreasing in (0, 1)");
    }
  }
  const int d = fam.degree();
  RateCheck out;
  out.exponents = check_exponents(options.schedule.value_or(ExponentSchedule::triangular(d)), k);

  SeedStream root(options.seed);
  SeedStream bound_rng = root.split(0);
  out.constant = (d + 1) * sphere_sup_bound(fam, bound_rng) * options.safety;

  out.bound_ok = true;
  for (const double lambda : lambdas) {
    SeedStream q_rng = root.split(1);  // same q-samples for every lambda
    out.windows.push_back(window_sup_error(fam, k, lambda, side, options.t_grid, options.q_samples, q_rng));
    out.bound_ok = out.bound_ok && out.windows.back().sup_error <= out.constant * std::pow(lambda, 0.25);
  }

  out.monotone = true;
  for (std::size_t i = 1; i < out.windows.size(); ++i) {
    out.monotone = out.monotone && out.windows[i].sup_error < out.windows[i - 1].sup_error;
  }
  if (out.windows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(out.windows.size());
    for (const auto& w : out.windows) {
      const double x = std::log(w.lambda), y = std::log(w.sup_error);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.slope_ok = out.slope >= options.min_slope;
  } else {
    out.slope_ok = true;
  }
  out.passed = out.exponents.ok && out.bound_ok;
  return out;
}

}  // namespace hopfsec
