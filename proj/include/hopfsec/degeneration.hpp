#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "hopfsec/curve.hpp"
#include "hopfsec/errors.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/section.hpp"

namespace hopfsec {

using Rational = boost::rational<std::int64_t>;

/// Exponent e_l of lambda multiplying f_(d-l) in the degenerating family.
struct ExponentSchedule {
  int d = 0;
  std::vector<Rational> entries;  // entries[l], l = 0..d

  /// e_l = l(l+1)/2.
  static ExponentSchedule triangular(int d) {
    ExponentSchedule s{d, {}};
    for (int l = 0; l <= d; ++l) s.entries.emplace_back(static_cast<std::int64_t>(l) * (l + 1) / 2);
    return s;
  }

  const Rational& operator[](int l) const { return entries.at(static_cast<std::size_t>(l)); }

  /// e_0 = 0 and consecutive gaps e_(l+1) - e_l = l + 1.
  bool is_triangular() const {
    if (static_cast<int>(entries.size()) != d + 1 || entries[0] != Rational(0)) return false;
    for (int l = 0; l < d; ++l) {
      if (entries[l + 1] - entries[l] != Rational(l + 1)) return false;
    }
    return true;
  }
};

/// Power of lambda in front of f_(d-l) after rescaling (z1, z2) by lambda^mu:
/// mu (d - l) + e_l.
inline Rational scale_exponent(const ExponentSchedule& s, const Rational& mu, int l) {
  if (l < 0 || l > s.d) throw Error(ErrorKind::InvalidInput, "term index out of range");
  return mu * Rational(s.d - l) + s[l];
}

inline Rational scale_exponent(int d, const Rational& mu, int l) {
  return scale_exponent(ExponentSchedule::triangular(d), mu, l);
}

/// Indices l attaining the minimal exponent at scale mu; these terms survive
/// the rescaled limit.
inline std::vector<int> minimal_terms(const ExponentSchedule& s, const Rational& mu) {
  if (mu < Rational(0)) throw Error(ErrorKind::InvalidInput, "scale must be nonnegative");
  std::vector<int> best;
  Rational best_e;
  for (int l = 0; l <= s.d; ++l) {
    const Rational e = scale_exponent(s, mu, l);
    if (best.empty() || e < best_e) {
      best = {l};
      best_e = e;
    } else if (e == best_e) {
      best.push_back(l);
    }
  }
  return best;
}

inline std::vector<int> minimal_terms(int d, const Rational& mu) {
  return minimal_terms(ExponentSchedule::triangular(d), mu);
}

/// One level of the building: the limit curve f_(d-k+1) + f_(d-k) = 0 seen at
/// scale lambda^k, with positive ends at the roots of the upper layer and
/// negative ends at the roots of the lower one.
struct Level {
  int k = 0;
  BinaryForm upper = BinaryForm::constant();  // f_(d-k+1)
  BinaryForm lower = BinaryForm::constant();  // f_(d-k); the constant 1 when k = d
  Rational division_exponent;                 // k(d-k) + k(k+1)/2
  RootSet positive_orbits;
  RootSet negative_orbits;
  int level_genus = 0;
};

/// Exact rescaled limit of the family at scale lambda^k.
inline Level extract_level(const TriangularFamily& fam, int k) {
  const int d = fam.degree();
  if (k < 1 || k > d) throw Error(ErrorKind::InvalidInput, "level index must lie in [1, d]");
  const auto survivors = minimal_terms(d, Rational(k));
  if (survivors != std::vector<int>{k - 1, k}) {
    throw Error(ErrorKind::InvalidInput, "scale " + std::to_string(k) + " does not isolate two adjacent layers");
  }
  Level level;
  level.k = k;
  level.upper = fam.layer(d - survivors[0]);
  level.lower = fam.layer(d - survivors[1]);
  level.division_exponent = scale_exponent(d, Rational(k), k);
  level.positive_orbits = roots(level.upper);
  level.negative_orbits = roots(level.lower);
  return level;
}

/// Deterministic grid on the unit sphere of C^2:
/// q = (cos(alpha) e^(i phi1), sin(alpha) e^(i phi2)).
struct SpherePlan {
  int polar = 16;
  int phase = 16;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < polar; ++i) {
      const double alpha = 0.5 * std::numbers::pi * i / std::max(1, polar - 1);
      for (int j = 0; j < phase; ++j) {
        for (int m = 0; m < phase; ++m) {
          fn(std::polar(std::cos(alpha), 2.0 * std::numbers::pi * j / phase),
             std::polar(std::sin(alpha), 2.0 * std::numbers::pi * m / phase));
        }
      }
    }
  }
};

/// sup over the grid of |f^lambda(lambda^k q) / lambda^(E(k,k)) - (f_(d-k+1) + f_(d-k))(q)|.
inline double numeric_limit_check(const TriangularFamily& fam, int k, double lambda, const SpherePlan& plan = {}) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorKind::InvalidInput, "lambda must lie in (0, 1)");
  const auto level = extract_level(fam, k);
  const double scale = std::pow(lambda, k);
  const double divisor = std::pow(lambda, boost::rational_cast<double>(level.division_exponent));
  double sup = 0.0;
  plan.for_each([&](Complex q1, Complex q2) {
    const Complex rescaled = fam.evaluate_deformed(lambda, scale * q1, scale * q2) / divisor;
    const Complex limit = evaluate(level.upper, q1, q2) + evaluate(level.lower, q1, q2);
    sup = std::max(sup, std::abs(rescaled - limit));
  });
  return sup;
}

struct Gluing {
  int upper = 0;                          // level k, glued to level k + 1
  std::vector<std::pair<int, int>> pairs; // (negative orbit of k, positive orbit of k+1)
  double max_distance = 0.0;
};

struct HolomorphicBuilding {
  int d = 0;
  std::vector<Level> levels;
  std::vector<Gluing> gluings;
  int genus_by_graph = 0;
  int genus_by_euler = 0;
};

struct BuildingOptions {
  double match_tol = 1e-8;
  /// Certify each level as a genus-0 section via verify_section.
  bool certify_levels = true;
  int certify_samples = 32;
  std::uint64_t seed = 0;
};

/// Sum of level genera plus the first Betti number E - V + C of the gluing
/// multigraph (levels as vertices, matched orbits as edges).
inline int genus_by_graph(const HolomorphicBuilding& b) {
  const int v = static_cast<int>(b.levels.size());
  std::vector<int> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int edges = 0;
  for (const auto& g : b.gluings) {
    for (std::size_t e = 0; e < g.pairs.size(); ++e) {
      ++edges;
      parent[find(g.upper - 1)] = find(g.upper);
    }
  }
  int components = 0;
  for (int i = 0; i < v; ++i) components += find(i) == i;
  if (components != 1) {
    throw Error(ErrorKind::DisconnectedBuilding, std::to_string(components) + " connected components");
  }
  int genus = edges - v + components;
  for (const auto& level : b.levels) genus += level.level_genus;
  return genus;
}

/// Genus from Euler characteristics: each level is a sphere with
/// (#positive + #negative) punctures, and the d top ends are capped by discs.
inline int genus_by_euler(const HolomorphicBuilding& b) {
  long long chi = 0;
  for (const auto& level : b.levels) {
    chi += 2 - 2 * level.level_genus -
           (level.positive_orbits.total_multiplicity() + level.negative_orbits.total_multiplicity());
  }
  if (!b.levels.empty()) chi += b.levels.front().positive_orbits.total_multiplicity();
  if ((2 - chi) % 2 != 0) throw Error(ErrorKind::NonIntegerGenus, "odd Euler characteristic " + std::to_string(chi));
  const long long d = b.d;
  if (chi != 3 * d - d * d) {
    throw Error(ErrorKind::NonIntegerGenus, "Euler characteristic " + std::to_string(chi) + " differs from 3d - d^2");
  }
  return static_cast<int>((2 - chi) / 2);
}

/// Genus added by each gluing, top to bottom: #(matched orbits) - 1.
inline std::vector<int> genus_contributions(const HolomorphicBuilding& b) {
  std::vector<int> out;
  for (const auto& g : b.gluings) out.push_back(static_cast<int>(g.pairs.size()) - 1);
  return out;
}

/// Stacks the d levels and glues the negative ends of level k to the positive
/// ends of level k + 1 (both are the roots of f_(d-k)).
inline HolomorphicBuilding assemble_building(const TriangularFamily& fam, const BuildingOptions& options = {}) {
  const int d = fam.degree();
  HolomorphicBuilding b;
  b.d = d;
  for (int k = 1; k <= d; ++k) b.levels.push_back(extract_level(fam, k));

  if (options.certify_levels) {
    SeedStream base(options.seed);
    for (auto& level : b.levels) {
      SeedStream rng = base.split(static_cast<std::uint64_t>(level.k));
      const CurveSpec spec = TwoLayer{level.upper, level.lower};
      SectionReport report;
      try {
        report = verify_section(spec, options.certify_samples, rng);
      } catch (const Error& e) {
        throw Error(ErrorKind::MatchingFailed, "level " + std::to_string(level.k) + " is not a section: " + e.what());
      }
      if (report.genus != 0 || report.d != 1) {
        throw Error(ErrorKind::MatchingFailed, "level " + std::to_string(level.k) + " is not a genus-0 1-section");
      }
      level.level_genus = report.genus;
    }
  }

  for (int k = 1; k < d; ++k) {
    const auto lower = b.levels[k - 1].negative_orbits.points();
    const auto upper = b.levels[k].positive_orbits.points();
    if (lower.size() != upper.size()) {
      throw Error(ErrorKind::MatchingFailed, "orbit counts differ across gluing " + std::to_string(k));
    }
    Gluing g;
    g.upper = k;
    std::vector<bool> used(upper.size(), false);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      int best = -1;
      double best_d = 0.0;
      for (std::size_t j = 0; j < upper.size(); ++j) {
        if (used[j]) continue;
        const double dist = chordal_distance(lower[i], upper[j]);
        if (best < 0 || dist < best_d) {
          best = static_cast<int>(j);
          best_d = dist;
        }
      }
      if (best < 0 || best_d > options.match_tol) {
        throw Error(ErrorKind::MatchingFailed, "orbit " + std::to_string(i) + " of level " + std::to_string(k) +
                                                   " has no partner within tolerance");
      }
      used[static_cast<std::size_t>(best)] = true;
      g.pairs.emplace_back(static_cast<int>(i), best);
      g.max_distance = std::max(g.max_distance, best_d);
    }
    b.gluings.push_back(std::move(g));
  }

  b.genus_by_graph = genus_by_graph(b);
  b.genus_by_euler = genus_by_euler(b);
  if (b.genus_by_graph != b.genus_by_euler) {
    throw Error(ErrorKind::NonIntegerGenus, "graph and Euler genus disagree");
  }
  return b;
}

}  // namespace hopfsec
