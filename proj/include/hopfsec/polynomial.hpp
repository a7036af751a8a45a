#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hopfsec/errors.hpp"

namespace hopfsec {

using Complex = std::complex<double>;

/// Univariate polynomial with coefficients in ascending order:
/// coeffs[i] multiplies z^i.
struct Polynomial {
  std::vector<Complex> coeffs;

  /// Degree after discarding exactly-zero leading coefficients; -1 for zero.
  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
      if (coeffs[i] != Complex(0.0, 0.0)) return i;
    }
    return -1;
  }

  Complex operator()(Complex z) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
};

struct UnivariateSolveOptions {
  int max_iterations = 200;
  /// Required componentwise backward error |p(z)| / sum |c_i||z|^i per root.
  double backward_tol = 1e-10;
};

namespace detail {

// Horner value of p together with its componentwise magnitude bound, reversed
// for |z| > 1 so neither overflows. `scaled` is p(z) or p(z)/z^n.
struct ScaledEval {
  Complex value;
  Complex derivative_ratio;  // p(z)/p'(z)
  double backward_error;
};

inline ScaledEval scaled_eval(std::span<const Complex> c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  ScaledEval out{};
  if (std::abs(z) <= 1.0) {
    Complex p(0.0), dp(0.0);
    double mag = 0.0;
    const double az = std::abs(z);
    for (int i = n; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
      mag = mag * az + std::abs(c[i]);
    }
    out.value = p;
    out.derivative_ratio = p / dp;
    out.backward_error = mag > 0.0 ? std::abs(p) / mag : 0.0;
  } else {
    const Complex y = 1.0 / z;
    const double ay = std::abs(y);
    Complex r(0.0), dr(0.0);
    double mag = 0.0;
    for (int i = 0; i <= n; ++i) {
      dr = dr * y + r;
      r = r * y + c[i];
      mag = mag * ay + std::abs(c[i]);
    }
    out.value = r;
    out.derivative_ratio = z * r / (static_cast<double>(n) * r - y * dr);
    out.backward_error = mag > 0.0 ? std::abs(r) / mag : 0.0;
  }
  return out;
}

}  // namespace detail

/// Componentwise backward error of `z` as a root of `p`.
inline double backward_error(const Polynomial& p, Complex z) {
  const int n = p.degree();
  if (n < 0) return 0.0;
  return detail::scaled_eval(std::span<const Complex>(p.coeffs.data(), n + 1), z).backward_error;
}

/// All complex roots of `p`, repeated according to multiplicity.
///
/// Exact zero low-order coefficients give roots at the origin; the rest are
/// found by Aberth-Ehrlich simultaneous iteration started on a circle of
/// radius (|c0/cn|)^(1/n). Throws NoConvergence when some root misses the
/// backward-error target after the iteration budget.
inline std::vector<Complex> solve(const Polynomial& p, const UnivariateSolveOptions& options = {}) {
  const int top = p.degree();
  if (top < 0) throw Error(ErrorKind::InvalidInput, "cannot solve the zero polynomial");

  std::vector<Complex> result;
  int low = 0;
  while (p.coeffs[low] == Complex(0.0, 0.0)) {
    result.emplace_back(0.0, 0.0);
    ++low;
  }
  const std::span<const Complex> c(p.coeffs.data() + low, top - low + 1);
  const int n = top - low;
  if (n == 0) return result;
  if (n == 1) {
    result.push_back(-c[0] / c[1]);
    return result;
  }

  const double radius = std::pow(std::abs(c[0]) / std::abs(c[n]), 1.0 / n);
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) {
    z[i] = std::polar(radius, 2.0 * std::numbers::pi * i / n + 0.4);
  }

  std::vector<bool> done(n, false);
  int remaining = n;
  for (int iter = 0; iter < options.max_iterations && remaining > 0; ++iter) {
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto ev = detail::scaled_eval(c, z[i]);
      if (ev.backward_error == 0.0) {
        done[i] = true;
        --remaining;
        continue;
      }
      Complex repulsion(0.0);
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex ratio = ev.derivative_ratio;
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = std::isfinite(std::abs(ratio)) ? ratio : Complex(1e-3 * (1.0 + std::abs(z[i])));
      }
      z[i] -= step;
      const double be = detail::scaled_eval(c, z[i]).backward_error;
      if (be <= 1e-15 || std::abs(step) <= 4e-16 * std::abs(z[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    const double be = detail::scaled_eval(c, z[i]).backward_error;
    if (!(be <= options.backward_tol)) {
      throw Error(ErrorKind::NoConvergence,
                  "root " + std::to_string(i) + " has backward error " + std::to_string(be) +
                      " after " + std::to_string(options.max_iterations) + " iterations");
    }
    result.push_back(z[i]);
  }
  return result;
}

}  // namespace hopfsec
