#pragma once

#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfsec/convergence.hpp"
#include "hopfsec/curve.hpp"
#include "hopfsec/degeneration.hpp"
#include "hopfsec/errors.hpp"
#include "hopfsec/projective.hpp"
#include "hopfsec/section.hpp"
#include "hopfsec/seifert.hpp"

// JSON and CSV interchange formats. Every emitted JSON object carries
// "schema": "v1"; readers accept objects with or without it.
namespace hopfsec::io {

using nlohmann::json;

inline constexpr const char* kSchema = "v1";

namespace detail {

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

inline void check_schema(const json& j, const char* what) {
  if (!j.is_object()) bad(std::string(what) + ": expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema) bad(std::string(what) + ": unsupported schema version");
}

inline const json& field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) bad(std::string(what) + ": missing field '" + key + "'");
  return j[key];
}

inline double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + ": expected a number");
  return j.get<double>();
}

inline std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
  return j.get<std::int64_t>();
}

}  // namespace detail

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const ProjectivePoint& p) {
  return json::array({p.a().real(), p.a().imag(), p.b().real(), p.b().imag()});
}

inline json to_json(const BinaryForm& f) {
  json coeffs = json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_json(c));
  return {{"schema", kSchema}, {"degree", f.degree()}, {"coeffs", coeffs}};
}

/// {"degree": k, "coeffs": [[re, im], ...]} with coeffs[j] on z1^(k-j) z2^j.
inline BinaryForm form_from_json(const json& j) {
  detail::check_schema(j, "binary form");
  const auto degree = detail::integer(detail::field(j, "degree", "binary form"), "binary form degree");
  const auto& coeffs = detail::field(j, "coeffs", "binary form");
  if (degree < 0) detail::bad("binary form: negative degree");
  if (!coeffs.is_array() || static_cast<std::int64_t>(coeffs.size()) != degree + 1) {
    detail::bad("binary form: 'coeffs' must hold degree+1 entries");
  }
  std::vector<Complex> c;
  for (const auto& entry : coeffs) {
    if (entry.is_number()) {
      c.emplace_back(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2) {
      c.emplace_back(detail::number(entry[0], "coefficient"), detail::number(entry[1], "coefficient"));
    } else {
      detail::bad("binary form: each coefficient is [re, im]");
    }
  }
  return BinaryForm(std::move(c));
}

inline json to_json(const TriangularFamily& fam) {
  json layers = json::array();
  for (const auto& f : fam.top_down()) layers.push_back(to_json(f));
  return {{"schema", kSchema}, {"degree", fam.degree()}, {"layers", layers}};
}

/// {"degree": d, "layers": [f_d, ..., f_1]}
inline TriangularFamily family_from_json(const json& j) {
  detail::check_schema(j, "triangular family");
  const auto d = detail::integer(detail::field(j, "degree", "triangular family"), "family degree");
  const auto& layers = detail::field(j, "layers", "triangular family");
  if (!layers.is_array() || static_cast<std::int64_t>(layers.size()) != d) {
    detail::bad("triangular family: 'layers' must hold d forms");
  }
  std::vector<BinaryForm> forms;
  for (const auto& l : layers) forms.push_back(form_from_json(l));
  return TriangularFamily(std::move(forms));
}

inline json to_json(const CurveSpec& spec) {
  if (const auto* p = std::get_if<PureD>(&spec)) {
    return {{"schema", kSchema}, {"kind", "pure_d"}, {"form", to_json(p->form)}};
  }
  if (const auto* t = std::get_if<TwoLayer>(&spec)) {
    return {{"schema", kSchema}, {"kind", "two_layer"}, {"top", to_json(t->top)}, {"bottom", to_json(t->bottom)}};
  }
  return {{"schema", kSchema}, {"kind", "triangular"}, {"family", to_json(std::get<Triangular>(spec).family)}};
}

/// {"kind": "pure_d", "form": F} | {"kind": "two_layer", "top": F, "bottom": F}
/// | {"kind": "triangular", "family": T}
inline CurveSpec curve_from_json(const json& j) {
  detail::check_schema(j, "curve");
  const auto& kind = detail::field(j, "kind", "curve");
  if (kind == "pure_d") return PureD{form_from_json(detail::field(j, "form", "curve"))};
  if (kind == "two_layer") {
    return TwoLayer{form_from_json(detail::field(j, "top", "curve")), form_from_json(detail::field(j, "bottom", "curve"))};
  }
  if (kind == "triangular") return Triangular{family_from_json(detail::field(j, "family", "curve"))};
  detail::bad("curve: 'kind' must be pure_d, two_layer or triangular");
}

inline ProjectivePoint point_from_json(const json& j) {
  if (!j.is_array() || (j.size() != 4 && j.size() != 2)) detail::bad("fibre: expected [re_a, im_a, re_b, im_b]");
  if (j.size() == 2) return {Complex(detail::number(j[0], "fibre")), Complex(detail::number(j[1], "fibre"))};
  return {Complex(detail::number(j[0], "fibre"), detail::number(j[1], "fibre")),
          Complex(detail::number(j[2], "fibre"), detail::number(j[3], "fibre"))};
}

inline json to_json(const RootSet& rs) {
  json roots = json::array();
  for (const auto& r : rs.roots) roots.push_back({{"point", to_json(r.point)}, {"multiplicity", r.multiplicity}});
  return {{"schema", kSchema}, {"degree", rs.degree}, {"roots", roots}};
}

inline json to_json(const ValidationReport& report) {
  json v = json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"layer", x.layer},
                 {"other_layer", x.other_layer},
                 {"first", to_json(x.first)},
                 {"second", to_json(x.second)},
                 {"distance", x.distance},
                 {"message", x.message}});
  }
  return {{"schema", kSchema}, {"valid", report.valid()}, {"violations", v}};
}

inline json to_json(const SectionReport& r) {
  json boundary = json::array();
  for (const auto& b : r.boundary) {
    boundary.push_back({{"point", to_json(b.point)},
                        {"sign", b.sign},
                        {"winding", b.winding},
                        {"handedness", to_string(b.handedness)},
                        {"rotation", b.rotation}});
  }
  return {{"schema", kSchema},   {"d", r.d},         {"samples", r.samples},
          {"collisions", r.collisions}, {"boundary", boundary}, {"genus", r.genus},
          {"positive_count", r.positive_count}, {"negative_count", r.negative_count}};
}

inline json to_json(const HolomorphicBuilding& b) {
  json levels = json::array();
  for (const auto& level : b.levels) {
    json pos = json::array(), neg = json::array();
    for (const auto& p : level.positive_orbits.points()) pos.push_back(to_json(p));
    for (const auto& p : level.negative_orbits.points()) neg.push_back(to_json(p));
    levels.push_back({{"k", level.k},
                      {"pos_orbits", pos},
                      {"neg_orbits", neg},
                      {"division_exponent", boost::rational_cast<double>(level.division_exponent)},
                      {"level_genus", level.level_genus}});
  }
  json gluings = json::array();
  for (const auto& g : b.gluings) {
    json pairs = json::array();
    for (const auto& [i, j] : g.pairs) pairs.push_back({i, j});
    gluings.push_back({{"upper", g.upper}, {"pairs", pairs}});
  }
  return {{"schema", kSchema},
          {"degree", b.d},
          {"levels", levels},
          {"gluings", gluings},
          {"genus_by_graph", b.genus_by_graph},
          {"genus_by_euler", b.genus_by_euler}};
}

inline json to_json(const WindowReport& w) {
  return {{"schema", kSchema},    {"k", w.k},           {"lambda", w.lambda},
          {"side", to_string(w.side)}, {"window", {w.t_lo, w.t_hi}}, {"sup_error", w.sup_error},
          {"t_grid", w.t_grid},   {"q_samples", w.q_samples}};
}

inline json to_json(const SeifertInvariant& s) {
  json pairs = json::array();
  for (const auto& [a, b] : s.pairs) pairs.push_back({a, b});
  return {{"schema", kSchema}, {"genus", s.genus}, {"pairs", pairs}};
}

inline SeifertInvariant seifert_from_json(const json& j) {
  detail::check_schema(j, "seifert invariant");
  SeifertInvariant s;
  s.genus = static_cast<int>(detail::integer(detail::field(j, "genus", "seifert invariant"), "genus"));
  const auto& pairs = detail::field(j, "pairs", "seifert invariant");
  if (!pairs.is_array()) detail::bad("seifert invariant: 'pairs' must be an array");
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) detail::bad("seifert invariant: each pair is [alpha, beta]");
    s.pairs.emplace_back(detail::integer(p[0], "alpha"), detail::integer(p[1], "beta"));
  }
  check_invariant(s);
  return s;
}

inline std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return os.str();
}

/// CSV "theta,log_r,arg_w,x1,y1,x2,y2".
inline std::string point_cloud_csv(const std::vector<SurfaceSample>& samples) {
  std::string out = "theta,log_r,arg_w,x1,y1,x2,y2\n";
  for (const auto& s : samples) {
    for (double v : {s.theta, s.log_r, s.arg_w, s.x1, s.y1, s.x2}) out += format_number(v) + ",";
    out += format_number(s.y2) + "\n";
  }
  return out;
}

/// CSV "lambda,k,side,sup_error".
inline std::string rate_table_csv(const std::vector<WindowReport>& windows) {
  std::string out = "lambda,k,side,sup_error\n";
  for (const auto& w : windows) {
    out += format_number(w.lambda) + "," + std::to_string(w.k) + "," + to_string(w.side) + "," +
           format_number(w.sup_error) + "\n";
  }
  return out;
}

}  // namespace hopfsec::io
