// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hopfsec/hopfsec.hpp"

using namespace hopfsec;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

BinaryForm power_sum(int k) {
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.front() = 1.0;
  c.back() = 1.0;
  return BinaryForm(c);
}

TriangularFamily fermat_family() { return TriangularFamily({power_sum(3), power_sum(2), power_sum(1)}); }

BinaryForm random_nonsingular(int d, SeedStream& rng) {
  for (;;) {
    auto f = random_form(d, rng);
    if (nonsingular_pure_d(f)) return f;
  }
}

TwoLayer random_two_layer(int d, SeedStream& rng) {
  for (;;) {
    TwoLayer spec{random_form(d, rng), random_form(d - 1, rng)};
    if (validate(spec).valid()) return spec;
  }
}

// (genus, d) from every report and building of criteria 1-4. A two-layer
// report is a 1-section, so it contributes (0, 1).
std::vector<std::pair<long long, long long>> g_rh_pairs;

Outcome criterion_degree_genus() {
  Outcome out;
  const auto t0 = Clock::now();
  for (int d = 1; d <= 8; ++d) {
    for (int s = 0; s < 5; ++s) {
      SeedStream rng = SeedStream(1000 + d).split(static_cast<std::uint64_t>(s));
      try {
        const auto b = assemble_building(random_family(d, rng));
        const int target = (d - 1) * (d - 2) / 2;
        out.require(b.genus_by_graph == target && b.genus_by_euler == target,
                    "d=" + std::to_string(d) + " genus " + std::to_string(b.genus_by_graph) + "/" +
                        std::to_string(b.genus_by_euler));
        g_rh_pairs.emplace_back(b.genus_by_graph, d);
      } catch (const Error& e) {
        out.require(false, e.what());
      }
    }
  }
  const double t = seconds_since(t0);
  out.require(t < 10.0, "runtime " + std::to_string(t) + " s");
  if (out.ok) out.detail = "40 buildings, d=1..8, " + std::to_string(t) + " s";
  return out;
}

Outcome criterion_fermat_levels() {
  Outcome out;
  const auto fam = fermat_family();
  const Rational exponents[] = {Rational(3), Rational(5), Rational(6)};
  const std::vector<std::vector<Complex>> upper = {{1, 0, 0, 1}, {1, 0, 1}, {1, 1}};
  const std::vector<std::vector<Complex>> lower = {{1, 0, 1}, {1, 1}, {1}};
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const auto level = extract_level(fam, k);
    const auto& u = level.upper.coeffs();
    const auto& l = level.lower.coeffs();
    out.require(u.size() == upper[k - 1].size() && l.size() == lower[k - 1].size(),
                "level " + std::to_string(k) + " degrees");
    if (!out.ok) break;
    for (std::size_t j = 0; j < u.size(); ++j) worst = std::max(worst, std::abs(u[j] - upper[k - 1][j]));
    for (std::size_t j = 0; j < l.size(); ++j) worst = std::max(worst, std::abs(l[j] - lower[k - 1][j]));
    out.require(level.division_exponent == exponents[k - 1], "division exponent at level " + std::to_string(k));
  }
  out.require(worst < 1e-12, "coefficient error " + std::to_string(worst));
  if (out.ok) out.detail = "limits z1^3+z2^3+z1^2+z2^2, z1^2+z2^2+z1+z2, z1+z2+1; exponents 3, 5, 6";
  return out;
}

Outcome criterion_d_section() {
  Outcome out;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int d = 1; d <= 5; ++d) {
    for (int s = 0; s < 5; ++s) {
      SeedStream rng = SeedStream(2000 + d).split(static_cast<std::uint64_t>(s));
      const CurveSpec spec = PureD{random_nonsingular(d, rng)};
      try {
        const auto r = verify_section(spec, 1000, rng);
        out.require(r.d == d && r.collisions == 0 && r.positive_count == d && r.negative_count == 0,
                    "d=" + std::to_string(d) + " report counts");
        for (const auto& b : r.boundary) worst = std::max(worst, std::abs(b.rotation + 1.0 / d));
        g_rh_pairs.emplace_back(r.genus, r.d);
      } catch (const Error& e) {
        out.require(false, e.what());
      }
    }
  }
  const double t = seconds_since(t0);
  out.require(worst <= 1e-6, "rotation error " + std::to_string(worst));
  out.require(t < 30.0, "runtime " + std::to_string(t) + " s");
  if (out.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "25 curves, 1000 samples each, max rotation error %.2e, %.2f s", worst, t);
    out.detail = buf;
  }
  return out;
}

Outcome criterion_one_section() {
  Outcome out;
  for (int d = 2; d <= 6; ++d) {
    for (int s = 0; s < 5; ++s) {
      SeedStream rng = SeedStream(3000 + d).split(static_cast<std::uint64_t>(s));
      const CurveSpec spec = random_two_layer(d, rng);
      try {
        const auto r = verify_section(spec, 500, rng);
        out.require(r.d == 1 && r.positive_count == d && r.negative_count == d - 1 && r.genus == 0 &&
                        r.positive_count == r.d + r.negative_count,
                    "d=" + std::to_string(d) + " counts " + std::to_string(r.positive_count) + "/" +
                        std::to_string(r.negative_count));
        for (const auto& b : r.boundary) {
          out.require((b.sign > 0) == (b.handedness == Handedness::Left), "handedness");
        }
        g_rh_pairs.emplace_back(r.genus, r.d);
      } catch (const Error& e) {
        out.require(false, e.what());
      }
    }
  }
  if (out.ok) out.detail = "25 two-layer curves, d=2..6: count 1, (d, d-1) boundaries, genus 0";
  return out;
}

Outcome criterion_convergence() {
  Outcome out;
  const auto t0 = Clock::now();
  const std::vector<double> lambdas{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<TriangularFamily> families{fermat_family()};
  for (int i = 0; i < 3; ++i) {
    SeedStream rng(4000 + static_cast<std::uint64_t>(i));
    families.push_back(random_family(3 + i % 2, rng));
  }
  double min_slope = 1e9;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    for (int k = 1; k <= fam.degree(); ++k) {
      for (const Side side : {Side::Plus, Side::Minus}) {
        RateOptions opts;
        opts.seed = f;
        const auto rc = rate_bound_check(fam, k, lambdas, side, opts);
        const std::string where = "family " + std::to_string(f) + " k=" + std::to_string(k) + " side " + to_string(side);
        out.require(rc.exponents.ok, where + ": exponents");
        out.require(rc.monotone, where + ": not strictly decreasing");
        out.require(rc.bound_ok, where + ": exceeds C lambda^(1/4)");
        out.require(rc.slope_ok, where + ": slope " + std::to_string(rc.slope));
        min_slope = std::min(min_slope, rc.slope);
      }
    }
  }
  const double t = seconds_since(t0);
  out.require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (out.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "4 families, all levels and sides, min slope %.3f, %.2f s", min_slope, t);
    out.detail = buf;
  }
  return out;
}

Outcome criterion_seifert() {
  Outcome out;
  using Q = boost::rational<std::int64_t>;
  out.require(euler_number(parse_invariant("M(0;(1,1))")) == Q(-1), "e(M(0;(1,1)))");
  for (int d = 1; d <= 32; ++d) {
    out.require(euler_number(SeifertInvariant{0, {{1, d}}}) == Q(-d), "e(M(0;(1,d)))");
  }
  const auto hopf3 = parse_invariant("M(0;(1,1),(1,1),(1,-1))");
  out.require(equivalent(parse_invariant("M(0;(1,1))"), hopf3) == Equivalence::True, "hopf3 equivalence");
  out.require(euler_number(hopf3) == Q(-1), "e(hopf3)");

  SeedStream rng(5000);
  for (int trial = 0; trial < 1000; ++trial) {
    SeifertInvariant s;
    const int n = 1 + static_cast<int>(rng.uniform(0.0, 5.0));
    for (int i = 0; i < n; ++i) {
      s.pairs.emplace_back(static_cast<std::int64_t>(1 + rng.uniform(0.0, 6.0)),
                           static_cast<std::int64_t>(rng.uniform(-10.0, 10.0)));
    }
    const auto e = euler_number(s);
    std::vector<SeifertMove> moves;
    auto cur = s;
    const int len = static_cast<int>(rng.uniform(1.0, 21.0));
    for (int i = 0; i < len; ++i) {
      const double u = rng.uniform(0.0, 1.0);
      const bool has_trivial =
          std::find(cur.pairs.begin(), cur.pairs.end(), std::pair<std::int64_t, std::int64_t>{1, 0}) != cur.pairs.end();
      SeifertMove m;
      if (u < 0.3) {
        m = AddTrivial{};
      } else if (u < 0.5 && has_trivial) {
        m = DeleteTrivial{};
      } else {
        Twist t;
        std::int64_t sum = 0;
        for (std::size_t j = 0; j + 1 < cur.pairs.size(); ++j) {
          t.n.push_back(static_cast<std::int64_t>(rng.uniform(-3.0, 3.0)));
          sum += t.n.back();
        }
        if (!cur.pairs.empty()) t.n.push_back(-sum);
        m = t;
      }
      moves.push_back(m);
      cur = apply_move(cur, m);
    }
    try {
      out.require(euler_number(apply_moves(s, moves)) == e, "move sequence changed e");
    } catch (const Error& err) {
      out.require(false, err.what());
    }
  }
  if (out.ok) out.detail = "e = -1, -d (d <= 32), hopf3 equivalent, 1000 move sequences";
  return out;
}

Outcome criterion_riemann_hurwitz() {
  Outcome out;
  for (const auto& [g, d] : g_rh_pairs) {
    out.require(riemann_hurwitz_check(g, d), "g=" + std::to_string(g) + " d=" + std::to_string(d));
  }
  out.require(!g_rh_pairs.empty(), "no reports collected");
  if (out.ok) out.detail = std::to_string(g_rh_pairs.size()) + " reports and buildings satisfy 2-2g = 3d-d^2";
  return out;
}

// Coefficients of prod (b z1 - a z2).
std::vector<Complex> expand(const std::vector<ProjectivePoint>& pts) {
  std::vector<Complex> c{1.0};
  for (const auto& p : pts) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j] * p.b();
      next[j + 1] -= c[j] * p.a();
    }
    c = next;
  }
  return c;
}

Outcome criterion_properties() {
  Outcome out;
  SeedStream rng(6000);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + trial % 12;
    std::vector<Complex> c(static_cast<std::size_t>(k) + 1);
    for (auto& x : c) x = rng.complex_gaussian();
    if (trial % 4 == 0) c[0] = 0.0;
    out.require(roots(BinaryForm(c)).total_multiplicity() == k, "root count at degree " + std::to_string(k));
  }

  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    const int k = 1 + checked % 10;
    std::vector<ProjectivePoint> pts;
    for (int j = 0; j < k; ++j) pts.push_back(random_fibre(rng));
    bool separated = true;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) separated = separated && chordal_distance(pts[i], pts[j]) > 1e-2;
    }
    if (!separated) continue;
    const auto c = expand(pts);
    auto rebuilt = expand(roots(BinaryForm(c)).points());
    if (rebuilt.size() != c.size()) {
      out.require(false, "reconstruction degree");
      break;
    }
    std::size_t big = 0;
    double scale = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (std::abs(c[j]) > scale) {
        scale = std::abs(c[j]);
        big = j;
      }
    }
    const Complex ratio = c[big] / rebuilt[big];
    for (std::size_t j = 0; j < c.size(); ++j) worst = std::max(worst, std::abs(c[j] - ratio * rebuilt[j]) / scale);
    ++checked;
  }
  out.require(worst < 1e-8, "reconstruction error " + std::to_string(worst));

  for (int d = 1; d <= 64; ++d) {
    for (int k = 1; k <= d; ++k) {
      out.require(minimal_terms(d, Rational(k)) == std::vector<int>{k - 1, k}, "tie at d=" + std::to_string(d));
    }
  }
  for (int d = 1; d <= 64; ++d) {
    for (int den = 2; den <= 8; ++den) {
      for (int num = 1; num < d * den; ++num) {
        if (num % den == 0) continue;
        const auto m = minimal_terms(d, Rational(num, den));
        out.require(m.size() == 1 && m.front() == num / den, "cylinder level at d=" + std::to_string(d));
      }
    }
  }
  if (out.ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "root counts, reconstruction error %.2e, ties d<=64, singleton minimizers", worst);
    out.detail = buf;
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"degree-genus identity", criterion_degree_genus},
      {"Fermat cubic levels", criterion_fermat_levels},
      {"d-section certification", criterion_d_section},
      {"1-section structure", criterion_one_section},
      {"convergence rate", criterion_convergence},
      {"Seifert suite", criterion_seifert},
      {"Riemann-Hurwitz cross-check", criterion_riemann_hurwitz},
      {"property suite", criterion_properties},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
