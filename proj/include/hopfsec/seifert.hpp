#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "hopfsec/errors.hpp"

namespace hopfsec {

/// M(g; (alpha_1, beta_1), ..., (alpha_k, beta_k)).
struct SeifertInvariant {
  int genus = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;

  friend bool operator==(const SeifertInvariant&, const SeifertInvariant&) = default;
};

inline void check_invariant(const SeifertInvariant& s) {
  if (s.genus < 0) throw Error(ErrorKind::InvalidInput, "negative base genus");
  for (const auto& [alpha, beta] : s.pairs) {
    if (alpha < 1) throw Error(ErrorKind::InvalidInput, "alpha must be >= 1");
  }
}

/// e = -sum beta_i / alpha_i.
///
/// The alternative -sum alpha_i/beta_i disagrees with e(M(0;(1,d))) = -d for
/// the S^1-bundle L(d,1) -> S^2; beta/alpha reproduces both that and e = -1 for
/// the Hopf fibration M(0;(1,1)).
inline boost::rational<std::int64_t> euler_number(const SeifertInvariant& s) {
  check_invariant(s);
  boost::rational<std::int64_t> e(0);
  for (const auto& [alpha, beta] : s.pairs) e -= boost::rational<std::int64_t>(beta, alpha);
  return e;
}

struct AddTrivial {};
struct DeleteTrivial {};
/// Replace each (alpha_i, beta_i) by (alpha_i, beta_i + n_i alpha_i), sum n_i = 0.
struct Twist {
  std::vector<std::int64_t> n;
};

using SeifertMove = std::variant<AddTrivial, DeleteTrivial, Twist>;

inline SeifertInvariant apply_move(SeifertInvariant s, const SeifertMove& move) {
  if (std::holds_alternative<AddTrivial>(move)) {
    s.pairs.emplace_back(1, 0);
  } else if (std::holds_alternative<DeleteTrivial>(move)) {
    const auto it = std::find(s.pairs.begin(), s.pairs.end(), std::pair<std::int64_t, std::int64_t>{1, 0});
    if (it == s.pairs.end()) throw Error(ErrorKind::IllegalMove, "no (1,0) pair to delete");
    s.pairs.erase(it);
  } else {
    const auto& n = std::get<Twist>(move).n;
    if (n.size() != s.pairs.size()) throw Error(ErrorKind::IllegalMove, "twist needs one integer per pair");
    std::int64_t total = 0;
    for (auto x : n) total += x;
    if (total != 0) throw Error(ErrorKind::IllegalMove, "twist integers must sum to zero");
    for (std::size_t i = 0; i < n.size(); ++i) s.pairs[i].second += n[i] * s.pairs[i].first;
  }
  return s;
}

/// Applies the moves in order; the Euler number is checked to be unchanged.
inline SeifertInvariant apply_moves(const SeifertInvariant& s, const std::vector<SeifertMove>& moves) {
  const auto e0 = euler_number(s);
  SeifertInvariant out = s;
  for (const auto& m : moves) {
    out = apply_move(std::move(out), m);
    if (euler_number(out) != e0) throw Error(ErrorKind::IllegalMove, "move changed the Euler number");
  }
  return out;
}

/// Normal form: (1,0) pairs dropped, each beta reduced into [0, alpha), the
/// surplus collected in a single trailing (1, b) pair (omitted when b = 0).
inline SeifertInvariant canonical_form(const SeifertInvariant& s) {
  check_invariant(s);
  SeifertInvariant out;
  out.genus = s.genus;
  std::int64_t surplus = 0;
  for (const auto& [alpha, beta] : s.pairs) {
    std::int64_t r = beta % alpha;
    if (r < 0) r += alpha;
    surplus += (beta - r) / alpha;
    if (alpha > 1) out.pairs.emplace_back(alpha, r);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  if (surplus != 0) out.pairs.emplace_back(1, surplus);
  return out;
}

enum class Equivalence { False, True, Unknown };

inline const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::True: return "true";
    case Equivalence::False: return "false";
    case Equivalence::Unknown: return "unknown";
  }
  return "unknown";
}

/// Compares canonical forms. Unknown only when pairs with alpha > 1 are
/// present and the forms differ without a separating invariant.
inline Equivalence equivalent(const SeifertInvariant& s1, const SeifertInvariant& s2) {
  const auto c1 = canonical_form(s1), c2 = canonical_form(s2);
  if (c1 == c2) return Equivalence::True;
  if (c1.genus != c2.genus || euler_number(c1) != euler_number(c2)) return Equivalence::False;
  auto exceptional = [](const SeifertInvariant& c) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& p : c.pairs) {
      if (p.first > 1) out.push_back(p);
    }
    return out;
  };
  if (exceptional(c1).empty() && exceptional(c2).empty()) return Equivalence::False;
  return Equivalence::Unknown;
}

struct OneSectionCounts {
  int k_plus = 0;
  SeifertInvariant description;
};

/// A 1-section of L(d,1) with k_minus negative boundaries has d + k_minus
/// positive ones; the matching description has d + k_minus pairs (1,1) and
/// k_minus pairs (1,-1).
inline OneSectionCounts one_section_boundary_counts(int d, int k_minus) {
  if (d < 1 || k_minus < 0) throw Error(ErrorKind::InvalidInput, "need d >= 1 and k_minus >= 0");
  OneSectionCounts out;
  out.k_plus = d + k_minus;
  out.description.pairs.assign(static_cast<std::size_t>(out.k_plus), {1, 1});
  out.description.pairs.insert(out.description.pairs.end(), static_cast<std::size_t>(k_minus), {1, -1});
  if (euler_number(out.description) != boost::rational<std::int64_t>(-d)) {
    throw Error(ErrorKind::InvalidInput, "description does not have Euler number -d");
  }
  return out;
}

inline std::string format_invariant(const SeifertInvariant& s) {
  std::string out = "M(" + std::to_string(s.genus) + ";";
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(s.pairs[i].first) + "," + std::to_string(s.pairs[i].second) + ")";
  }
  return out + ")";
}

/// Parses "M(g;(a,b),...)". Accepts the Unicode minus sign and whitespace.
inline SeifertInvariant parse_invariant(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212
      s += '-';
      i += 2;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
    }
  }
  auto fail = [&text]() -> SeifertInvariant {
    throw Error(ErrorKind::InvalidInput, "cannot parse Seifert invariant '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
  };
  auto integer = [&](std::int64_t& v) {
    const std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) return false;
    try {
      v = std::stoll(s.substr(start, pos - start));
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  SeifertInvariant out;
  std::int64_t g = 0;
  if (!expect('M') || !expect('(') || !integer(g)) return fail();
  out.genus = static_cast<int>(g);
  while (expect(';') || expect(',')) {
    std::int64_t a = 0, b = 0;
    if (!expect('(') || !integer(a) || !expect(',') || !integer(b) || !expect(')')) return fail();
    out.pairs.emplace_back(a, b);
  }
  if (!expect(')') || pos != s.size()) return fail();
  check_invariant(out);
  return out;
}

}  // namespace hopfsec
