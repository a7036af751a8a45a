#pragma once

// Command-line front end. run_cli() is the whole program minus process
// plumbing so tests can drive it in-process.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopfsec/hopfsec.hpp"

namespace hopfsec::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kInput = 1,
  kNumeric = 2,
  kNotASection = 3,
  kInvalidFamily = 4,
  kRateFailure = 5,
  kIllegalMove = 6,
};

struct RunConfig {
  std::uint64_t seed = 0;
  double distinct_tol = 1e-8;
  double ray_tol = 1e-9;
  double match_tol = 1e-8;
  int n_samples = 500;
  int monodromy_steps = 512;
  int t_grid = 128;
  int q_samples = 256;
  int threads = 1;
  std::string output;  // empty: stdout
  std::string format = "json";
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::BoundaryFibreQuery: return kInput;
    case ErrorKind::NoConvergence:
    case ErrorKind::ExhaustedAttempts:
    case ErrorKind::PhaseStepTooLarge:
    case ErrorKind::TrackLost: return kNumeric;
    case ErrorKind::NotASection: return kNotASection;
    case ErrorKind::MatchingFailed:
    case ErrorKind::DisconnectedBuilding:
    case ErrorKind::NonIntegerGenus: return kInvalidFamily;
    case ErrorKind::IllegalMove: return kIllegalMove;
  }
  return kInput;
}

inline json error_object(const std::string& kind, const std::string& message) {
  return {{"schema", io::kSchema}, {"error", kind}, {"message", message}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Writes to --out when given, else to `out`.
inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write '" + cfg.output + "'");
  file << text;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline SectionOptions section_options(const RunConfig& cfg) {
  SectionOptions o;
  o.tol = cfg.distinct_tol;
  o.ray_tol = cfg.ray_tol;
  o.monodromy_steps = cfg.monodromy_steps;
  o.threads = cfg.threads;
  return o;
}

inline int cmd_roots(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto form = io::form_from_json(read_json_file(path));
  if (form.degree() == 0) throw Error(ErrorKind::InvalidInput, "degree-0 form has no roots to solve for");
  emit(cfg, out, dump(io::to_json(roots(form))));
  return kOk;
}

inline int cmd_verify_section(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto spec = io::curve_from_json(read_json_file(path));
  SeedStream rng(cfg.seed);
  const auto report = verify_section(spec, cfg.n_samples, rng, section_options(cfg));
  emit(cfg, out, dump(io::to_json(report)));
  return kOk;
}

inline int cmd_building(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const auto fam = io::family_from_json(read_json_file(path));
  const auto validation = validate(fam, cfg.distinct_tol);
  if (!validation.valid()) {
    emit(cfg, out, dump(io::to_json(validation)));
    return kInvalidFamily;
  }
  BuildingOptions opts;
  opts.match_tol = cfg.match_tol;
  opts.seed = cfg.seed;
  const auto b = assemble_building(fam, opts);
  const int target = genus_from_section(fam.degree());
  auto j = io::to_json(b);
  j["target_genus"] = target;
  j["genus_contributions"] = genus_contributions(b);
  const bool agree = b.genus_by_graph == target && b.genus_by_euler == target;
  j["consistent"] = agree;
  emit(cfg, out, dump(j));
  return agree ? kOk : kInvalidFamily;
}

inline int cmd_convergence(const std::string& path, std::vector<double> lambdas, bool corrupt_schedule,
                           const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto fam = io::family_from_json(read_json_file(path));
  if (lambdas.empty()) lambdas = {1e-1, 1e-2, 1e-3, 1e-4};
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  const bool check = lambdas.size() >= 2;
  if (!check) err << "warning: a single lambda gives no rate; rate check skipped\n";

  RateOptions opts;
  opts.t_grid = cfg.t_grid;
  opts.q_samples = cfg.q_samples;
  opts.seed = cfg.seed;
  if (corrupt_schedule) {
    ExponentSchedule s{fam.degree(), {}};
    for (int l = 0; l <= fam.degree(); ++l) s.entries.emplace_back(l);
    opts.schedule = s;
  }

  std::vector<WindowReport> windows;
  json checks = json::array();
  bool all_ok = true;
  for (int k = 1; k <= fam.degree(); ++k) {
    for (const Side side : {Side::Plus, Side::Minus}) {
      const auto rc = rate_bound_check(fam, k, lambdas, side, opts);
      windows.insert(windows.end(), rc.windows.begin(), rc.windows.end());
      checks.push_back({{"k", k},
                        {"side", to_string(side)},
                        {"exponents_ok", rc.exponents.ok},
                        {"bound_ok", rc.bound_ok},
                        {"monotone", rc.monotone},
                        {"slope", rc.slope},
                        {"constant", rc.constant},
                        {"passed", rc.passed}});
      all_ok = all_ok && rc.passed;
    }
  }
  if (cfg.format == "csv") {
    emit(cfg, out, io::rate_table_csv(windows));
  } else {
    json ws = json::array();
    for (const auto& w : windows) ws.push_back(io::to_json(w));
    emit(cfg, out, dump({{"schema", io::kSchema}, {"windows", ws}, {"checks", checks}, {"passed", all_ok}}));
  }
  if (!check) return kOk;
  return all_ok ? kOk : kRateFailure;
}

inline SeifertMove parse_move(const std::string& text) {
  if (text == "add") return AddTrivial{};
  if (text == "delete") return DeleteTrivial{};
  if (text.rfind("twist:", 0) == 0) {
    Twist t;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        t.n.push_back(std::stoll(item));
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad twist integer '" + item + "'");
      }
    }
    return t;
  }
  throw Error(ErrorKind::InvalidInput, "unknown move '" + text + "' (add | delete | twist:n1,n2,...)");
}

inline std::string rational_string(const boost::rational<std::int64_t>& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline SeifertInvariant parse_seifert_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return io::seifert_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::InvalidInput, e.what());
    }
  }
  return parse_invariant(text);
}

inline int cmd_seifert_euler(const std::string& inv, const RunConfig& cfg, std::ostream& out) {
  const auto s = parse_seifert_arg(inv);
  const auto e = euler_number(s);
  emit(cfg, out,
       dump({{"schema", io::kSchema},
             {"invariant", format_invariant(s)},
             {"euler_number", rational_string(e)},
             {"euler_number_value", boost::rational_cast<double>(e)}}));
  return kOk;
}

inline int cmd_seifert_normalize(const std::string& inv, const std::vector<std::string>& moves, const RunConfig& cfg,
                                 std::ostream& out) {
  const auto s = parse_seifert_arg(inv);
  std::vector<SeifertMove> parsed;
  for (const auto& m : moves) parsed.push_back(parse_move(m));
  const auto moved = apply_moves(s, parsed);
  emit(cfg, out,
       dump({{"schema", io::kSchema},
             {"input", format_invariant(s)},
             {"result", format_invariant(moved)},
             {"canonical", format_invariant(canonical_form(moved))},
             {"euler_number", rational_string(euler_number(moved))}}));
  return kOk;
}

inline int cmd_seifert_equiv(const std::string& a, const std::string& b, const RunConfig& cfg, std::ostream& out) {
  const auto s1 = parse_seifert_arg(a), s2 = parse_seifert_arg(b);
  emit(cfg, out,
       dump({{"schema", io::kSchema},
             {"first", format_invariant(s1)},
             {"second", format_invariant(s2)},
             {"equivalent", to_string(equivalent(s1, s2))}}));
  return kOk;
}

inline int cmd_sample_surface(const std::string& path, const std::vector<double>& fibre, double eps_min,
                              double eps_max, int eps_count, int theta_steps, const RunConfig& cfg, std::ostream& out) {
  const auto spec = io::curve_from_json(read_json_file(path));
  if (fibre.size() != 4 && fibre.size() != 2) {
    throw Error(ErrorKind::InvalidInput, "--fibre takes re_a,im_a,re_b,im_b");
  }
  const ProjectivePoint center = fibre.size() == 2 ? ProjectivePoint(fibre[0], fibre[1])
                                                   : ProjectivePoint({fibre[0], fibre[1]}, {fibre[2], fibre[3]});
  const auto samples = sample_surface(spec, center, {eps_min, eps_max, eps_count}, theta_steps);
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& s : samples) rows.push_back({s.theta, s.log_r, s.arg_w, s.x1, s.y1, s.x2, s.y2});
    emit(cfg, out,
         dump({{"schema", io::kSchema},
               {"columns", {"theta", "log_r", "arg_w", "x1", "y1", "x2", "y2"}},
               {"rows", rows}}));
  } else {
    emit(cfg, out, io::point_cloud_csv(samples));
  }
  return kOk;
}

inline int cmd_random_family(int degree, const RunConfig& cfg, std::ostream& out) {
  SeedStream rng(cfg.seed);
  emit(cfg, out, dump(io::to_json(random_family(degree, rng, cfg.distinct_tol))));
  return kOk;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hopf-flow surfaces of section from plane curves"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("HOPF_SECTIONS_THREADS")) {
    try {
      cfg.threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      err << "warning: ignoring HOPF_SECTIONS_THREADS='" << env << "'\n";
    }
  }

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--samples", cfg.n_samples, "Sampled fibres per certification")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol", cfg.distinct_tol, "Distinctness / boundary-exclusion tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--ray-tol", cfg.ray_tol, "Angular tolerance for ray collisions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--match-tol", cfg.match_tol, "Orbit matching tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--steps", cfg.monodromy_steps, "Steps per monodromy loop")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--t-grid", cfg.t_grid, "t-grid points per window")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--q-samples", cfg.q_samples, "Sphere samples per window")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.output, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string input;
  auto* roots_cmd = app.add_subcommand("roots", "Roots of a binary form on CP^1");
  roots_cmd->add_option("form", input, "BinaryForm JSON file")->required();
  common(roots_cmd);

  auto* verify_cmd = app.add_subcommand("verify-section", "Certify the radial projection of a curve as a section");
  verify_cmd->add_option("curve", input, "Curve JSON file")->required();
  common(verify_cmd);

  auto* building_cmd = app.add_subcommand("building", "Degenerate a triangular family into a holomorphic building");
  building_cmd->add_option("family", input, "TriangularFamily JSON file")->required();
  common(building_cmd);

  std::vector<double> lambdas;
  bool corrupt = false;
  auto* conv_cmd = app.add_subcommand("convergence", "Windowed convergence rates of every level");
  conv_cmd->add_option("family", input, "TriangularFamily JSON file")->required();
  conv_cmd->add_option("--lambda", lambdas, "Deformation parameter (repeatable)");
  conv_cmd->add_flag("--corrupt-schedule", corrupt, "Test hook: verify against a wrong exponent schedule")
      ->group("");
  common(conv_cmd);

  std::vector<std::string> seifert_args;
  std::vector<std::string> moves;
  auto* seifert_cmd = app.add_subcommand("seifert", "Seifert invariants: euler | normalize | equiv");
  seifert_cmd->add_option("args", seifert_args, "Subcommand and invariants, e.g. euler \"M(0;(1,1))\"")->required();
  seifert_cmd->add_option("--move", moves, "normalize: add | delete | twist:n1,n2,... (repeatable, in order)");
  common(seifert_cmd);

  std::vector<double> fibre;
  double eps_min = 1e-3, eps_max = 1e-1;
  int eps_count = 8, theta_steps = 256;
  auto* sample_cmd = app.add_subcommand("sample-surface", "Point cloud of the surface near a boundary fibre");
  sample_cmd->add_option("curve", input, "Curve JSON file")->required();
  sample_cmd->add_option("--fibre", fibre, "Boundary fibre re_a,im_a,re_b,im_b")->delimiter(',')->required();
  sample_cmd->add_option("--eps-min", eps_min)->capture_default_str();
  sample_cmd->add_option("--eps-max", eps_max)->capture_default_str();
  sample_cmd->add_option("--eps-count", eps_count)->capture_default_str();
  sample_cmd->add_option("--theta-steps", theta_steps)->capture_default_str();
  common(sample_cmd);

  int degree = 3;
  auto* family_cmd = app.add_subcommand("random-family", "Draw a generic triangular family");
  family_cmd->add_option("--degree", degree)->check(CLI::Range(1, 64))->capture_default_str();
  common(family_cmd);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << dump(error_object("InvalidInput", e.what()));
    return kInput;
  }

  try {
    if (*roots_cmd) return cmd_roots(input, cfg, out);
    if (*verify_cmd) return cmd_verify_section(input, cfg, out);
    if (*building_cmd) return cmd_building(input, cfg, out);
    if (*conv_cmd) {
      if (!conv_cmd->count("--format")) cfg.format = "csv";
      return cmd_convergence(input, lambdas, corrupt, cfg, out, err);
    }
    if (*seifert_cmd) {
      const auto& verb = seifert_args.front();
      if (verb == "euler" && seifert_args.size() == 2) return cmd_seifert_euler(seifert_args[1], cfg, out);
      if (verb == "normalize" && seifert_args.size() == 2) {
        return cmd_seifert_normalize(seifert_args[1], moves, cfg, out);
      }
      if (verb == "equiv" && seifert_args.size() == 3) {
        return cmd_seifert_equiv(seifert_args[1], seifert_args[2], cfg, out);
      }
      throw Error(ErrorKind::InvalidInput, "usage: seifert euler INV | normalize INV [--move M]... | equiv INV INV");
    }
    if (*sample_cmd) {
      if (!sample_cmd->count("--format")) cfg.format = "csv";
      return cmd_sample_surface(input, fibre, eps_min, eps_max, eps_count, theta_steps, cfg, out);
    }
    if (*family_cmd) return cmd_random_family(degree, cfg, out);
  } catch (const Error& e) {
    out << dump(error_object(to_string(e.kind()), e.what()));
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    out << dump(error_object("InvalidInput", e.what()));
    return kInput;
  }
  return kInput;
}

}  // namespace hopfsec::cli
