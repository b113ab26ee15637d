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

#ifndef QEC_ENTROPY_HPP
#define QEC_ENTROPY_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "qec/core.hpp"
#include "qec/qstate.hpp"

namespace qec {

// Entropy vectors grow as 2^N - 1; beyond this the tables are not built.
inline constexpr std::size_t kMaxVectorParties = 12;

namespace detail {

struct SubsetTable {
  std::vector<SubsystemMask> order;  // canonical position -> subset
  std::vector<int> position;         // mask bits -> canonical position, -1 for the empty set
};

inline SubsetTable build_subset_table(std::size_t n) {
  SubsetTable t;
  const std::uint32_t count = 1u << n;
  for (std::uint32_t b = 1; b < count; ++b) t.order.emplace_back(b);
  std::sort(t.order.begin(), t.order.end(), [](SubsystemMask a, SubsystemMask b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  t.position.assign(count, -1);
  for (std::size_t i = 0; i < t.order.size(); ++i) t.position[t.order[i].bits()] = static_cast<int>(i);
  return t;
}

inline const SubsetTable& subset_table(std::size_t n) {
  if (n < 1 || n > kMaxVectorParties)
    throw InputError("entropy vectors support 1 to " + std::to_string(kMaxVectorParties) + " parties");
  static const auto tables = [] {
    std::array<SubsetTable, kMaxVectorParties + 1> all;
    for (std::size_t k = 1; k <= kMaxVectorParties; ++k) all[k] = build_subset_table(k);
    return all;
  }();
  return tables[n];
}

}  // namespace detail

/// Non-empty subsets of {0..n-1} sorted by cardinality, then
/// lexicographically on the sorted members: A, B, C, AB, AC, BC, ABC.
inline const std::vector<SubsystemMask>& canonical_subsets(std::size_t n) {
  return detail::subset_table(n).order;
}

/// Party letters: A, B, C, ... (1-based numbers past Z).
inline std::string party_label(std::size_t party) {
  if (party < 26) return std::string(1, static_cast<char>('A' + party));
  return "X" + std::to_string(party + 1);
}

inline std::string subset_label(SubsystemMask mask) {
  std::string s;
  for (auto p : mask.members()) s += party_label(p);
  return s.empty() ? "0" : s;
}

/// Marginal entropies (bits) of all non-empty subsets, in canonical order.
/// Entries are not required to be non-negative so that arbitrary candidate
/// vectors can be tested against the cone.
class EntropyVector {
 public:
  EntropyVector() = default;

  EntropyVector(std::size_t parties, std::vector<double> values) : n_(parties), values_(std::move(values)) {
    const auto& t = detail::subset_table(n_);
    if (values_.size() != t.order.size())
      throw InputError("entropy vector for " + std::to_string(n_) + " parties needs " +
                       std::to_string(t.order.size()) + " entries, got " + std::to_string(values_.size()));
  }

  static EntropyVector zero(std::size_t parties) {
    return EntropyVector(parties, std::vector<double>((std::size_t{1} << parties) - 1, 0.0));
  }

  /// Vector given in the N=3 display order (A, B, C, BC, AC, AB, ABC).
  static EntropyVector from_paper_order(const std::vector<double>& v) {
    if (v.size() != 7) throw InputError("paper-order vectors have 7 entries (N=3)");
    return EntropyVector(3, {v[0], v[1], v[2], v[5], v[4], v[3], v[6]});
  }

  std::size_t parties() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// H(mask); H(empty) = 0.
  double at(SubsystemMask mask) const {
    if (mask.empty()) return 0.0;
    const auto& t = detail::subset_table(n_);
    if (mask.bits() >= t.position.size()) throw InputError("subset out of range");
    return values_[static_cast<std::size_t>(t.position[mask.bits()])];
  }

  SubsystemMask subset(std::size_t i) const { return detail::subset_table(n_).order.at(i); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (auto m : canonical_subsets(n_)) out.push_back(subset_label(m));
    return out;
  }

  /// N=3 display order (A, B, C, BC, AC, AB, ABC).
  std::vector<double> paper_order() const {
    if (n_ != 3) throw InputError("the (A,B,C,BC,AC,AB,ABC) order is defined for N=3 only");
    return {values_[0], values_[1], values_[2], values_[5], values_[4], values_[3], values_[6]};
  }

  EntropyVector scaled(double c) const {
    auto out = *this;
    for (auto& v : out.values_) v *= c;
    return out;
  }

  friend EntropyVector operator+(const EntropyVector& a, const EntropyVector& b) {
    if (a.n_ != b.n_) throw InputError("entropy vectors have different party counts");
    auto out = a;
    for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += b.values_[i];
    return out;
  }

  double max_abs_diff(const EntropyVector& other) const {
    if (n_ != other.n_) throw InputError("entropy vectors have different party counts");
    double m = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - other.values_[i]));
    return m;
  }

  double distance(const EntropyVector& other) const {
    if (n_ != other.n_) throw InputError("entropy vectors have different party counts");
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += (values_[i] - other.values_[i]) * (values_[i] - other.values_[i]);
    return std::sqrt(s);
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

inline EntropyVector entropy_vector(const DensityMatrix& rho) {
  const auto n = rho.parties();
  const auto& subsets = canonical_subsets(n);
  std::vector<double> values;
  values.reserve(subsets.size());
  for (auto m : subsets) values.push_back(von_neumann_entropy(partial_trace(rho, m)));
  return EntropyVector(n, std::move(values));
}

inline EntropyVector entropy_vector(const PureState& psi) {
  const auto n = psi.parties();
  std::vector<double> values;
  for (auto m : canonical_subsets(n)) values.push_back(entropy(psi, m));
  return EntropyVector(n, std::move(values));
}

/// Entropy vector of the marginal of `psi` on `keep`; the kept parties are
/// relabelled 0..k-1 in ascending order.
inline EntropyVector marginal_entropy_vector(const PureState& psi, SubsystemMask keep) {
  detail::check_keep(psi.dims(), keep);
  const auto members = keep.members();
  std::vector<double> values;
  for (auto m : canonical_subsets(members.size())) {
    std::uint32_t bits = 0;
    for (auto p : m.members()) bits |= 1u << members[p];
    values.push_back(entropy(psi, SubsystemMask(bits)));
  }
  return EntropyVector(members.size(), std::move(values));
}

namespace detail {

inline void check_pair(std::size_t parties, std::size_t i, std::size_t j) {
  if (i >= parties || j >= parties) throw InputError("party index out of range");
  if (i == j) throw InputError("mutual information needs two distinct parties");
}

inline double checked_mutual_information(double value) {
  if (value < -1e-9) throw NumericalError("mutual information " + std::to_string(value) + " below -1e-9");
  return value;
}

}  // namespace detail

/// I(i:j) = H(i) + H(j) - H(ij), from entropies.
inline double mutual_information(const DensityMatrix& rho, std::size_t i, std::size_t j) {
  detail::check_pair(rho.parties(), i, j);
  const double hi = von_neumann_entropy(partial_trace(rho, SubsystemMask::single(i)));
  const double hj = von_neumann_entropy(partial_trace(rho, SubsystemMask::single(j)));
  const double hij = von_neumann_entropy(partial_trace(rho, SubsystemMask::single(i) | SubsystemMask::single(j)));
  return detail::checked_mutual_information(hi + hj - hij);
}

inline double mutual_information(const PureState& psi, std::size_t i, std::size_t j) {
  detail::check_pair(psi.parties(), i, j);
  const auto a = SubsystemMask::single(i), b = SubsystemMask::single(j);
  return detail::checked_mutual_information(entropy(psi, a) + entropy(psi, b) - entropy(psi, a | b));
}

/// h(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("binary entropy argument must lie in [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

/// Shannon entropy (bits) of a probability list, e.g. squared coefficient
/// magnitudes.
inline double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return std::max(h, 0.0);
}

/// The N=3 pairs {X,Y} with Z the remaining party.
enum class Pair { AB = 0, AC = 1, BC = 2 };

inline constexpr std::array<Pair, 3> kPairs = {Pair::AB, Pair::AC, Pair::BC};

inline std::string pair_label(Pair p) {
  static const std::array<const char*, 3> names = {"AB", "AC", "BC"};
  return names[static_cast<std::size_t>(p)];
}

struct PairParties {
  SubsystemMask x, y, z;
};

inline PairParties pair_parties(Pair p) {
  switch (p) {
    case Pair::AB: return {SubsystemMask::single(0), SubsystemMask::single(1), SubsystemMask::single(2)};
    case Pair::AC: return {SubsystemMask::single(0), SubsystemMask::single(2), SubsystemMask::single(1)};
    case Pair::BC: return {SubsystemMask::single(1), SubsystemMask::single(2), SubsystemMask::single(0)};
  }
  throw InputError("unknown pair");
}

/// I, II, III, IV for each pair plus the pair-independent alternating sum M.
struct N3Quantities {
  std::array<double, 3> I{}, II{}, III{}, IV{};
  double M = 0.0;
  // Largest disagreement among the six evaluations of M.
  double m_spread = 0.0;
};

inline N3Quantities n3_quantities(const EntropyVector& v) {
  if (v.parties() != 3) throw InputError("N=3 quantities need a 3-party entropy vector");
  N3Quantities q;
  std::vector<double> ms;
  for (auto p : kPairs) {
    const auto [x, y, z] = pair_parties(p);
    const auto k = static_cast<std::size_t>(p);
    const double hx = v.at(x), hy = v.at(y), hz = v.at(z);
    const double hxy = v.at(x | y), hxz = v.at(x | z), hyz = v.at(y | z), hxyz = v.at(x | y | z);
    q.I[k] = hx + hy - hxy;
    q.II[k] = hxz + hyz - hz - hxyz;
    q.III[k] = hz + hxyz - hxy;
    q.IV[k] = hxz + hyz - hx - hy;
    ms.push_back(q.I[k] - q.II[k]);
    ms.push_back(q.III[k] - q.IV[k]);
  }
  const auto [lo, hi] = std::minmax_element(ms.begin(), ms.end());
  q.M = ms.front();
  q.m_spread = *hi - *lo;
  double scale = 1.0;
  for (double e : v.values()) scale = std::max(scale, std::abs(e));
  if (q.m_spread > 1e-9 * scale) throw NumericalError("M evaluations disagree by " + std::to_string(q.m_spread));
  return q;
}

/// Shortest decimal representation that round-trips, capped at 17 significant
/// digits; independent of the global locale.
inline std::string format_real(double x) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (res.ec != std::errc()) res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

/// Two-line CSV: subset labels, then values. `paper_order` applies to N=3.
inline std::string to_csv(const EntropyVector& v, bool paper_order = false) {
  std::vector<std::string> labels = v.labels();
  std::vector<double> values = v.values();
  if (paper_order) {
    values = v.paper_order();
    std::swap(labels[3], labels[5]);
  }
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
  out += "\n";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_real(values[i]);
  out += "\n";
  return out;
}

}  // namespace qec

#endif  // QEC_ENTROPY_HPP
