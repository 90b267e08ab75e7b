#pragma once

// Stratification bookkeeping for a non-vanishing field on a compact surface
// with boundary: the index formula, the concavity lower bound on tangency
// counts, the double-volume reformulation, and the small tangency poset.

#include <flatland/assembly.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace flatland {

struct StrataCensus {
  int chi_X = 0;
  int chi_entry = 0;  // Euler number of the entry set: arcs count 1, circles 0
  int n2_plus = 0;    // concave boundary tangencies
  int n2_minus = 0;   // convex boundary tangencies
  // optional split of n2_plus by polarity
  std::optional<int> n_oplus;
  std::optional<int> n_ominus;
};

inline std::vector<std::string> validate(const StrataCensus& s) {
  std::vector<std::string> out;
  if (s.n2_plus < 0 || s.n2_minus < 0)
    out.push_back("negative tangency count");
  if (s.n_oplus.has_value() != s.n_ominus.has_value())
    out.push_back("polarity split must set both counts");
  if (s.n_oplus && (*s.n_oplus < 0 || *s.n_ominus < 0))
    out.push_back("negative polarity count");
  if (s.n_oplus && *s.n_oplus + *s.n_ominus != s.n2_plus)
    out.push_back("polarity split does not sum to n2_plus");
  return out;
}

// Read the census off an assembled complex.
inline StrataCensus strata_census(const SurfaceComplex& cx) {
  auto tc = tangency_census(cx);
  StrataCensus s;
  s.chi_X = classify(cx).euler;
  s.chi_entry = tc.entry_arcs;  // circles contribute 0
  s.n2_plus = (int)tc.concave_points.size();
  s.n2_minus = (int)tc.convex_points.size();
  return s;
}

// Sum of zero indices of the field.
inline int index(const StrataCensus& s) {
  return s.chi_X - s.chi_entry + s.n2_plus;
}

struct ComplexityReport {
  int lower_bound = 0;     // max(0, -2 chi)
  bool satisfied = false;  // n2_plus >= lower_bound
  bool equality = false;   // bound attained by a boundary-concave field
};

inline ComplexityReport complexity_report(const SurfaceClass& cls,
                                          const StrataCensus& s) {
  if (index(s) != 0)
    throw std::invalid_argument(
        "complexity bound applies to non-vanishing fields only (index != 0)");
  ComplexityReport r;
  r.lower_bound = cls.euler <= 0 ? -2 * cls.euler : 0;
  r.satisfied = s.n2_plus >= r.lower_bound;
  r.equality = r.satisfied && s.n2_minus == 0;
  return r;
}

// vol(DX)/vol(triangle) for the hyperbolic double, which is just -chi(DX).
inline int volume_ratio(const SurfaceClass& cls) {
  if (cls.euler >= 0)
    throw std::invalid_argument("no hyperbolic structure: chi >= 0");
  return -2 * cls.euler;
}

inline bool morse_identity_check(const StrataCensus& s) {
  int diff = s.n2_plus - s.n2_minus;
  if (diff % 2 != 0)
    throw std::invalid_argument("census inconsistent: odd tangency difference");
  return diff / 2 == -s.chi_X;
}

// ---- tangency pattern poset --------------------------------------------

// Local boundary tangency patterns in 2D: (11) is generic, and degenerates
// to either (2) or (121).
struct TangencyPattern {
  std::string word;  // "11", "2" or "121"
};

inline std::vector<TangencyPattern> tangency_patterns() {
  return {{"11"}, {"2"}, {"121"}};
}

// strict order: a succeeds b when b lies in the closure of the a-stratum
inline bool pattern_succeeds(const TangencyPattern& a,
                             const TangencyPattern& b) {
  return a.word == "11" && (b.word == "2" || b.word == "121");
}

// ---- json ---------------------------------------------------------------

inline nlohmann::json strata_census_to_json(const StrataCensus& s) {
  nlohmann::json j;
  j["format"] = 1;
  j["chi_X"] = s.chi_X;
  j["chi_entry"] = s.chi_entry;
  j["n2_plus"] = s.n2_plus;
  j["n2_minus"] = s.n2_minus;
  if (s.n_oplus) {
    j["n_oplus"] = *s.n_oplus;
    j["n_ominus"] = *s.n_ominus;
  }
  return j;
}

inline StrataCensus strata_census_from_json(const nlohmann::json& j) {
  StrataCensus s;
  s.chi_X = j.at("chi_X").get<int>();
  s.chi_entry = j.at("chi_entry").get<int>();
  s.n2_plus = j.at("n2_plus").get<int>();
  s.n2_minus = j.at("n2_minus").get<int>();
  if (j.contains("n_oplus")) {
    s.n_oplus = j.at("n_oplus").get<int>();
    s.n_ominus = j.at("n_ominus").get<int>();
  }
  auto bad = validate(s);
  if (!bad.empty()) throw std::invalid_argument(bad.front());
  return s;
}

inline nlohmann::json complexity_report_to_json(const ComplexityReport& r) {
  nlohmann::json j;
  j["format"] = 1;
  j["lower_bound"] = r.lower_bound;
  j["satisfied"] = r.satisfied;
  j["equality"] = r.equality;
  return j;
}

}  // namespace flatland
