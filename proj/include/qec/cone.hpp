// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEC_CONE_HPP
#define QEC_CONE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qec/entropy.hpp"

namespace qec {

inline constexpr double kMembershipTolerance = 1e-8;
inline constexpr double kSaturationTolerance = 1e-6;
// Entries at or below this count as zero when counting N'.
inline constexpr double kNonzeroThreshold = 1e-9;
inline constexpr std::size_t kMaxConeParties = 6;

enum class Family { SSA, WM, Named };

/// Homogeneous linear inequality sum_S coeff_S H(S) >= 0.
struct Halfspace {
  std::vector<std::pair<SubsystemMask, int>> terms;  // sorted by mask, no zero coefficients
  Family family = Family::SSA;
  SubsystemMask x, y;  // generating pair
  std::string tag;

  double evaluate(const EntropyVector& v) const {
    double s = 0.0;
    for (const auto& [m, c] : terms) s += c * v.at(m);
    return s;
  }
};

namespace detail {

using Terms = std::vector<std::pair<SubsystemMask, int>>;

inline Terms normalize_terms(std::initializer_list<std::pair<SubsystemMask, int>> raw) {
  std::map<SubsystemMask, int> acc;
  for (const auto& [m, c] : raw)
    if (!m.empty()) acc[m] += c;
  Terms out;
  for (const auto& [m, c] : acc)
    if (c != 0) out.emplace_back(m, c);
  return out;
}

inline Halfspace named_row(const std::string& name, Terms terms) {
  Halfspace h;
  h.terms = std::move(terms);
  h.family = Family::Named;
  h.tag = name;
  return h;
}

}  // namespace detail

/// The twelve N=3 inequalities I, II, III, IV for the pairs AB, AC, BC.
inline std::vector<Halfspace> n3_named_inequalities() {
  std::vector<Halfspace> rows;
  for (const char* kind : {"I", "II", "III", "IV"})
    for (auto p : kPairs) {
      const auto [x, y, z] = pair_parties(p);
      const std::string k = kind;
      detail::Terms t;
      if (k == "I") t = detail::normalize_terms({{x, 1}, {y, 1}, {x | y, -1}});
      if (k == "II") t = detail::normalize_terms({{x | z, 1}, {y | z, 1}, {z, -1}, {x | y | z, -1}});
      if (k == "III") t = detail::normalize_terms({{z, 1}, {x | y | z, 1}, {x | y, -1}});
      if (k == "IV") t = detail::normalize_terms({{x | z, 1}, {y | z, 1}, {x, -1}, {y, -1}});
      rows.push_back(detail::named_row(k + "_" + pair_label(p), std::move(t)));
    }
  return rows;
}

/// All strong-subadditivity and weak-monotonicity instances over unordered
/// pairs of distinct subsets (H(empty) = 0), with identically zero rows and
/// syntactic duplicates removed. SSA rows precede WM rows; within a family,
/// pairs are visited in increasing mask order. For N=3, rows that coincide
/// with one of the twelve named inequalities carry its name as tag.
inline std::vector<Halfspace> generate_inequalities(std::size_t n) {
  if (n < 1 || n > kMaxConeParties)
    throw InputError("inequality generation supports 1 to " + std::to_string(kMaxConeParties) + " parties");
  std::map<detail::Terms, std::string> named;
  if (n == 3)
    for (auto& h : n3_named_inequalities()) named.emplace(h.terms, h.tag);

  std::vector<Halfspace> rows;
  std::set<detail::Terms> seen;
  const std::uint32_t count = 1u << n;
  for (Family fam : {Family::SSA, Family::WM})
    for (std::uint32_t a = 0; a < count; ++a)
      for (std::uint32_t b = a + 1; b < count; ++b) {
        const SubsystemMask x(a), y(b);
        const auto terms = fam == Family::SSA
                               ? detail::normalize_terms({{x, 1}, {y, 1}, {x & y, -1}, {x | y, -1}})
                               : detail::normalize_terms({{x, 1}, {y, 1}, {x - y, -1}, {y - x, -1}});
        if (terms.empty() || !seen.insert(terms).second) continue;
        Halfspace h;
        h.terms = terms;
        h.family = fam;
        h.x = x;
        h.y = y;
        if (auto it = named.find(terms); it != named.end()) {
          h.tag = it->second;
        } else {
          h.tag = std::string(fam == Family::SSA ? "SSA(" : "WM(") + subset_label(x) + ";" + subset_label(y) + ")";
        }
        rows.push_back(std::move(h));
      }
  return rows;
}

enum class Sigma3Branch { Plus, Minus, Both, NotApplicable };

inline std::string to_string(Sigma3Branch b) {
  switch (b) {
    case Sigma3Branch::Plus: return "plus";
    case Sigma3Branch::Minus: return "minus";
    case Sigma3Branch::Both: return "both";
    case Sigma3Branch::NotApplicable: return "n/a";
  }
  return "n/a";
}

struct Margin {
  std::string tag;
  double value = 0.0;
};

struct ConeReport {
  std::vector<Margin> margins;
  bool inside = true;
  std::vector<std::string> violated;
  std::vector<std::string> saturated;
  Sigma3Branch sigma3_branch = Sigma3Branch::NotApplicable;
};

namespace detail {

inline Sigma3Branch branch_from_m(double m, double tol) {
  if (std::abs(m) <= tol) return Sigma3Branch::Both;
  return m > 0 ? Sigma3Branch::Plus : Sigma3Branch::Minus;
}

}  // namespace detail

/// Margins of `v` against every row of Sigma_N. `tol` decides violation,
/// `saturation_tol` the face (|margin| <= saturation_tol).
inline ConeReport membership(const EntropyVector& v, double tol = kMembershipTolerance,
                             double saturation_tol = kMembershipTolerance) {
  if (!(tol > 0)) throw InputError("membership tolerance must be positive");
  ConeReport r;
  for (const auto& h : generate_inequalities(v.parties())) {
    const double m = h.evaluate(v);
    r.margins.push_back({h.tag, m});
    if (m < -tol) {
      r.inside = false;
      r.violated.push_back(h.tag);
    }
    if (std::abs(m) <= saturation_tol) r.saturated.push_back(h.tag);
  }
  if (v.parties() == 3 && r.inside) r.sigma3_branch = detail::branch_from_m(n3_quantities(v).M, tol);
  return r;
}

/// Which of the two N=3 cones contains `v`: plus for M > tol, minus for
/// M < -tol, both when |M| <= tol.
inline Sigma3Branch sigma3_branch(const EntropyVector& v, double tol = kMembershipTolerance) {
  if (v.parties() != 3) throw InputError("Sigma_3 branch needs a 3-party vector");
  if (!membership(v, tol).inside) throw InputError("vector lies outside Sigma_3");
  return detail::branch_from_m(n3_quantities(v).M, tol);
}

/// Membership in Sigma_3+ or Sigma_3- from their seven defining inequalities
/// each, independent of generate_inequalities.
inline bool sigma3_branchwise_inside(const EntropyVector& v, double tol = kMembershipTolerance) {
  const auto q = n3_quantities(v);
  auto all_ge = [tol](const std::array<double, 3>& a) {
    return std::all_of(a.begin(), a.end(), [tol](double x) { return x >= -tol; });
  };
  const bool plus = all_ge(q.II) && all_ge(q.IV) && q.M >= -tol;
  const bool minus = all_ge(q.I) && all_ge(q.III) && q.M <= tol;
  return plus || minus;
}

struct LineCheck {
  bool on_line = false;
  std::array<double, 6> residuals{};  // |I_AB|, |I_AC|, |I_BC|, |III_AB|, |III_AC|, |III_BC|
};

/// Whether `v` lies on the ray where every I_XY and III_XY vanishes.
inline LineCheck line_ell_check(const EntropyVector& v, double tol = kSaturationTolerance) {
  const auto q = n3_quantities(v);
  LineCheck c;
  for (std::size_t k = 0; k < 3; ++k) {
    c.residuals[k] = std::abs(q.I[k]);
    c.residuals[k + 3] = std::abs(q.III[k]);
  }
  c.on_line = std::all_of(c.residuals.begin(), c.residuals.end(), [tol](double r) { return r <= tol; });
  return c;
}

/// Unit direction of the ray, (1,1,1,2,2,2,1) in either order (symmetric).
inline EntropyVector ell_direction() { return EntropyVector(3, {1, 1, 1, 2, 2, 2, 1}); }

struct CorollaryCheck {
  bool holds = false;
  double total_entropy = 0.0;     // H(N)
  std::vector<double> residuals;  // |H(X_i) + H(N) - H(N \ X_i)|
};

/// H(N) > tol and H(X_i) + H(N) = H(N \ X_i) for every party, within tol.
inline CorollaryCheck corollary_conditions(const EntropyVector& v, double tol = kSaturationTolerance) {
  const auto n = v.parties();
  if (n < 3) throw InputError("corollary conditions need at least 3 parties");
  const auto all = SubsystemMask::all(n);
  CorollaryCheck c;
  c.total_entropy = v.at(all);
  bool ok = c.total_entropy > tol;
  for (std::size_t i = 0; i < n; ++i) {
    const auto xi = SubsystemMask::single(i);
    const double r = std::abs(v.at(xi) + c.total_entropy - v.at(all - xi));
    c.residuals.push_back(r);
    ok = ok && r <= tol;
  }
  c.holds = ok;
  return c;
}

/// Evaluation of the non-homogeneous bounds near the apex. The report never
/// claims realizability; `exclusion_advisory` only says that a realizable
/// vector satisfying the saturation conditions could not have these values.
struct TipReport {
  double theorem_sum = 0.0;    // sum_i H(X_i)
  double corollary_sum = 0.0;  // H(N) + sum_i H(X_i)
  double max_entry = 0.0;      // max of H(X_1..X_N), H(N)
  double refined_threshold = 0.0;  // h(1/(2 N')), 0 when N' = 0
  std::size_t n_prime = 0;
  bool conditions_met = false;
  bool theorem_pass = false;
  bool corollary_pass = false;
  bool refined_pass = false;
  bool exclusion_advisory = false;
  std::vector<std::string> triggered_by;
  std::string status;  // "conditions unmet", "excluded" or "consistent"
};

inline TipReport tip_bounds(const EntropyVector& v, double tol = kSaturationTolerance) {
  const auto n = v.parties();
  const auto all = SubsystemMask::all(n);
  TipReport t;
  std::vector<double> entries;
  for (std::size_t i = 0; i < n; ++i) entries.push_back(v.at(SubsystemMask::single(i)));
  entries.push_back(v.at(all));
  for (std::size_t i = 0; i < n; ++i) t.theorem_sum += entries[i];
  t.corollary_sum = t.theorem_sum + entries.back();
  t.max_entry = *std::max_element(entries.begin(), entries.end());
  t.n_prime = static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](double e) { return e > kNonzeroThreshold; }));
  t.refined_threshold = t.n_prime > 0 ? binary_entropy(1.0 / (2.0 * static_cast<double>(t.n_prime))) : 0.0;

  t.theorem_pass = t.theorem_sum > 1.0;
  t.corollary_pass = t.corollary_sum > 1.0;
  t.refined_pass = t.n_prime > 0 && t.max_entry > t.refined_threshold;
  t.conditions_met = n >= 3 && corollary_conditions(v, tol).holds;
  if (!t.conditions_met) {
    t.status = "conditions unmet";
    return t;
  }
  if (!t.corollary_pass) t.triggered_by.push_back("corollary");
  if (!t.refined_pass) t.triggered_by.push_back("refined");
  t.exclusion_advisory = !t.triggered_by.empty();
  t.status = t.exclusion_advisory ? "excluded" : "consistent";
  return t;
}

/// Ordering constraints on the single-party entropies of a 4-party pure state
/// whose first party has vanishing mutual information with all others.
struct OrderingReport {
  std::array<double, 4> singles{};
  std::array<std::size_t, 3> sorted_parties{};  // parties 1..3 by ascending entropy
  double min_gap = 0.0;        // min_i H(X_i) - H(X_1)
  double sum_gap = 0.0;        // H(X_2) + H(X_3) - H(X_1) - H(X_4), sorted labels
  double largest_margin = 0.0; // H(X_4) - h(1/8)
  double second_margin = 0.0;  // H(X_3) - h(1/8)/2
  bool passes = false;
};

inline OrderingReport n4_ordering_bounds(const EntropyVector& v, double tol = kSaturationTolerance) {
  if (v.parties() != 4) throw InputError("ordering bounds need a 4-party vector");
  OrderingReport r;
  for (std::size_t i = 0; i < 4; ++i) r.singles[i] = v.at(SubsystemMask::single(i));
  r.sorted_parties = {1, 2, 3};
  std::stable_sort(r.sorted_parties.begin(), r.sorted_parties.end(),
                   [&](std::size_t a, std::size_t b) { return r.singles[a] < r.singles[b]; });
  const double h1 = r.singles[0];
  const double h2 = r.singles[r.sorted_parties[0]];
  const double h3 = r.singles[r.sorted_parties[1]];
  const double h4 = r.singles[r.sorted_parties[2]];
  const double h18 = binary_entropy(1.0 / 8.0);
  r.min_gap = h2 - h1;
  r.sum_gap = h2 + h3 - h1 - h4;
  r.largest_margin = h4 - h18;
  r.second_margin = h3 - h18 / 2.0;
  r.passes = r.min_gap >= -tol && r.sum_gap >= -tol && r.largest_margin >= -tol && r.second_margin >= -tol;
  return r;
}

}  // namespace qec

#endif  // QEC_CONE_HPP
