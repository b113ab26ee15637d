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

#ifndef QEC_CONSTRUCTIONS_HPP
#define QEC_CONSTRUCTIONS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qec/cone.hpp"
#include "qec/entropy.hpp"
#include "qec/qstate.hpp"

namespace qec {

// Entrywise tolerance between analytic and numerically verified vectors.
inline constexpr double kClaimTolerance = 1e-8;

/// Even permutations of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> even_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Product-structure residuals of the pair marginals involving `party`.
struct MarginalProductReport {
  struct PairResidual {
    std::size_t other = 0;
    double residual = 0.0;            // max |rho_ij - rho_i (x) rho_j| entrywise
    double mutual_information = 0.0;  // cross-check
  };
  std::size_t party = 0;
  std::vector<PairResidual> pairs;
  double max_residual = 0.0;

  bool holds(double tol) const { return max_residual <= tol; }
};

inline MarginalProductReport verify_marginal_product(const PureState& psi, std::size_t party) {
  const auto n = psi.parties();
  if (party >= n) throw InputError("party index out of range");
  MarginalProductReport r;
  r.party = party;
  const CMatrix rho_i = reduced_density(psi, SubsystemMask::single(party)).matrix();
  for (std::size_t j = 0; j < n; ++j) {
    if (j == party) continue;
    const CMatrix rho_j = reduced_density(psi, SubsystemMask::single(j)).matrix();
    const CMatrix rho_ij = reduced_density(psi, SubsystemMask::single(party) | SubsystemMask::single(j)).matrix();
    // rho_ij is ordered with the lower-numbered party first.
    const CMatrix product = party < j ? detail::kron(rho_i, rho_j) : detail::kron(rho_j, rho_i);
    MarginalProductReport::PairResidual pr;
    pr.other = j;
    pr.residual = (rho_ij - product).cwiseAbs().maxCoeff();
    pr.mutual_information = mutual_information(psi, party, j);
    r.max_residual = std::max(r.max_residual, pr.residual);
    r.pairs.push_back(pr);
  }
  return r;
}

/// A constructed state with its analytic entropy vector and the numerically
/// verified one. Only entries flagged in `claimed_mask` carry an analytic
/// claim; the others are placeholders equal to the verified value.
struct ConstructionResult {
  std::string name;
  PureState state;
  SubsystemMask vector_parties;  // parties whose marginal the vectors describe
  EntropyVector claimed;
  std::vector<bool> claimed_mask;
  EntropyVector verified;
  double max_claim_residual = 0.0;     // max |claimed - verified| over claimed entries
  double max_marginal_residual = 0.0;  // construction-specific marginal checks

  bool consistent(double tol = kClaimTolerance) const { return max_claim_residual <= tol; }
};

namespace detail {

inline void finish(ConstructionResult& r) {
  r.verified = marginal_entropy_vector(r.state, r.vector_parties);
  if (r.claimed_mask.empty()) r.claimed_mask.assign(r.claimed.size(), true);
  r.max_claim_residual = 0.0;
  for (std::size_t i = 0; i < r.claimed.size(); ++i) {
    if (!r.claimed_mask[i]) {
      r.claimed[i] = r.verified[i];
      continue;
    }
    r.max_claim_residual = std::max(r.max_claim_residual, std::abs(r.claimed[i] - r.verified[i]));
  }
}

inline double max_identity_residual(const PureState& psi, std::size_t party) {
  const CMatrix rho = reduced_density(psi, SubsystemMask::single(party)).matrix();
  const auto d = rho.rows();
  return (rho - CMatrix::Identity(d, d) / static_cast<double>(d)).cwiseAbs().maxCoeff();
}

inline void check_unit_norm(const std::vector<Complex>& coeffs, const char* what) {
  double s = 0.0;
  for (auto c : coeffs) s += std::norm(c);
  if (std::abs(s - 1.0) > 1e-9) throw InputError(std::string(what) + ": squared coefficient norm must be 1");
}

inline std::vector<double> squared_magnitudes(const std::vector<Complex>& coeffs) {
  std::vector<double> p;
  for (auto c : coeffs) p.push_back(std::norm(c));
  return p;
}

}  // namespace detail

/// |V_N>: (1/N) sum_k |k..k> + (1/N) sqrt(2/(N-2)!) sum over even
/// permutations sigma of |sigma(0)..sigma(N-1)>, each party of dimension N.
/// Every single-party marginal is maximally mixed; for N >= 4 every pair
/// marginal is the product of its single-party marginals.
inline ConstructionResult v_state(std::size_t n) {
  if (n < 3 || n > 5) throw InputError("v_state supports 3 <= N <= 5");
  const PartyDims dims(std::vector<std::size_t>(n, n));
  const auto s = detail::strides(dims.values());
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double diag = 1.0 / static_cast<double>(n);
  double fact = 1.0;
  for (std::size_t k = 2; k <= n - 2; ++k) fact *= static_cast<double>(k);
  const double perm = diag * std::sqrt(2.0 / fact);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx += k * s[i];
    amps[static_cast<Eigen::Index>(idx)] += diag;
  }
  for (const auto& p : even_permutations(n)) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx += p[i] * s[i];
    amps[static_cast<Eigen::Index>(idx)] += perm;
  }

  ConstructionResult r;
  r.name = "vN";
  r.state = PureState(dims, std::move(amps));
  r.vector_parties = dims.all();
  // H(S) = min(|S|, N - |S|) log2 N: single and pair marginals are products of
  // maximally mixed states, larger sets follow by complementarity.
  std::vector<double> claimed;
  for (auto m : canonical_subsets(n))
    claimed.push_back(static_cast<double>(std::min(m.size(), n - m.size())) * std::log2(static_cast<double>(n)));
  r.claimed = EntropyVector(n, std::move(claimed));
  for (std::size_t i = 0; i < n; ++i)
    r.max_marginal_residual = std::max(r.max_marginal_residual, detail::max_identity_residual(r.state, i));
  if (n >= 4)
    for (std::size_t i = 0; i < n; ++i)
      r.max_marginal_residual = std::max(r.max_marginal_residual, verify_marginal_product(r.state, i).max_residual);
  detail::finish(r);
  return r;
}

/// |W_N>, parties of dimension N-1 (arithmetic mod N-1):
///   (1/(N-1)) sum_k |0,k,..,k>
/// + (1/(N-1)) sum_{k>=1} sum_l |k, l, l+k, l+k+1, .., l+N-2, l+1, .., l+k-1>.
/// The first party is maximally mixed and in product with every other party.
inline ConstructionResult w_state(std::size_t n) {
  if (n < 4 || n > 6) throw InputError("w_state supports 4 <= N <= 6");
  const std::size_t d = n - 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  const PartyDims dims(std::vector<std::size_t>(n, d), std::max(kDefaultDimensionCap, total));
  const auto s = detail::strides(dims.values());
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double c = 1.0 / static_cast<double>(d);
  auto add = [&](const std::vector<std::size_t>& digits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx += digits[i] * s[i];
    amps[static_cast<Eigen::Index>(idx)] += c;
  };
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<std::size_t> digits(n, k);
    digits[0] = 0;
    add(digits);
  }
  for (std::size_t k = 1; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      std::vector<std::size_t> digits{k, l};
      for (std::size_t m = k; m <= n - 2; ++m) digits.push_back((l + m) % d);
      for (std::size_t m = 1; m < k; ++m) digits.push_back((l + m) % d);
      add(digits);
    }

  ConstructionResult r;
  r.name = "wN";
  r.state = PureState(dims, std::move(amps));
  r.vector_parties = dims.all();
  const double ld = std::log2(static_cast<double>(d));
  std::vector<double> claimed;
  for (auto m : canonical_subsets(n)) {
    // N=4: all six mutual informations vanish, so the vector is the |V_4>
    // pattern scaled by log2(3)/2. Otherwise only the sets X_1, X_1 X_j and
    // their complements carry a claim.
    const auto k = m.size();
    const auto small = std::min(k, n - k);
    bool claim = n == 4;
    double value = static_cast<double>(small) * ld;
    if (n > 4) {
      const auto side = k <= n - k ? m : dims.all() - m;
      claim = (side.size() == 1 && side.contains(0)) || (side.size() == 2 && side.contains(0));
      value = static_cast<double>(side.size()) * ld;
    }
    claimed.push_back(value);
    r.claimed_mask.push_back(claim);
  }
  r.claimed = EntropyVector(n, std::move(claimed));
  r.max_marginal_residual =
      std::max(detail::max_identity_residual(r.state, 0), verify_marginal_product(r.state, 0).max_residual);
  detail::finish(r);
  return r;
}

/// |V~_4> = (1/2) sum_i a_i |iiii> + (1/2) sum over even sigma of
/// a_{sigma(3)} |sigma(0) sigma(1) sigma(2) sigma(3)>. The fourth party has
/// entropy alpha = -sum |a_i|^2 log2 |a_i|^2 and is in product with the
/// others; the vectors describe the marginal on the first three parties.
inline ConstructionResult tilde_v4(const std::array<Complex, 4>& a) {
  const std::vector<Complex> coeffs(a.begin(), a.end());
  detail::check_unit_norm(coeffs, "tilde_v4");
  const PartyDims dims{4, 4, 4, 4};
  const auto s = detail::strides(dims.values());
  CVector amps = CVector::Zero(256);
  for (std::size_t i = 0; i < 4; ++i) amps[static_cast<Eigen::Index>(i * (s[0] + s[1] + s[2] + s[3]))] += 0.5 * a[i];
  for (const auto& p : even_permutations(4))
    amps[static_cast<Eigen::Index>(p[0] * s[0] + p[1] * s[1] + p[2] * s[2] + p[3] * s[3])] += 0.5 * a[p[3]];

  ConstructionResult r;
  r.name = "tilde-v4";
  r.state = PureState(dims, std::move(amps));
  r.vector_parties = SubsystemMask::of({0, 1, 2});
  const double alpha = shannon_entropy(detail::squared_magnitudes(coeffs));
  r.claimed = EntropyVector::from_paper_order({2, 2, 2, 2 + alpha, 2 + alpha, 2 + alpha, alpha});
  r.max_marginal_residual = verify_marginal_product(r.state, 3).max_residual;
  detail::finish(r);
  return r;
}

/// |V'> = sum_l a'_l |ll> on two parties of dimension coeffs.size().
inline PureState diagonal_bipartite(const std::vector<Complex>& coeffs) {
  if (coeffs.empty()) throw InputError("diagonal_bipartite needs at least one coefficient");
  detail::check_unit_norm(coeffs, "diagonal_bipartite");
  const std::size_t m = coeffs.size();
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(m * m));
  for (std::size_t l = 0; l < m; ++l) amps[static_cast<Eigen::Index>(l * m + l)] = coeffs[l];
  return PureState(PartyDims(std::vector<std::size_t>{m, m}, std::max(kDefaultDimensionCap, m * m)), std::move(amps));
}

/// Coefficients (sqrt p, sqrt((1-p)/(m-1)), ...) whose squared magnitudes
/// have Shannon entropy `target`, found by bisection on p in [1/m, 1].
inline std::vector<Complex> coefficients_for_entropy(double target, std::size_t m) {
  if (m < 1) throw InputError("coefficient list needs at least one entry");
  const double max_entropy = std::log2(static_cast<double>(m));
  if (!(target >= 0.0 && target <= max_entropy + 1e-12))
    throw InputError("entropy target " + format_real(target) + " outside [0, log2 " + std::to_string(m) + "]");
  auto coeffs = [m](double p) {
    std::vector<Complex> c(m, Complex(m > 1 ? std::sqrt((1.0 - p) / static_cast<double>(m - 1)) : 0.0));
    c[0] = std::sqrt(p);
    return c;
  };
  if (m == 1) return {Complex(1.0)};
  if (target >= max_entropy) return coeffs(1.0 / static_cast<double>(m));
  double lo = 1.0 / static_cast<double>(m), hi = 1.0;  // entropy decreasing in p
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (shannon_entropy(detail::squared_magnitudes(coeffs(mid))) > target) lo = mid;
    else hi = mid;
  }
  return coeffs(0.5 * (lo + hi));
}

/// Coefficient lists of the four-parameter family: `a` for |V~_4> and one
/// list per auxiliary pair B'C', A''C'', A'''B'''.
struct FamilyParams {
  std::array<Complex, 4> a{Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5)};
  std::vector<Complex> b{Complex(1.0), Complex(0.0)};
  std::vector<Complex> c{Complex(1.0), Complex(0.0)};
  std::vector<Complex> d{Complex(1.0), Complex(0.0)};

  double alpha() const { return shannon_entropy(detail::squared_magnitudes({a.begin(), a.end()})); }
  double beta() const { return shannon_entropy(detail::squared_magnitudes(b)); }
  double gamma() const { return shannon_entropy(detail::squared_magnitudes(c)); }
  double delta() const { return shannon_entropy(detail::squared_magnitudes(d)); }

  void validate() const {
    detail::check_unit_norm({a.begin(), a.end()}, "family coefficients a");
    detail::check_unit_norm(b, "family coefficients a'");
    detail::check_unit_norm(c, "family coefficients a''");
    detail::check_unit_norm(d, "family coefficients a'''");
  }

  /// Parameters hitting the entropy targets, auxiliary dimension `aux_dim`.
  static FamilyParams from_entropies(double alpha, double beta, double gamma, double delta,
                                     std::size_t aux_dim = 2) {
    FamilyParams p;
    const auto av = coefficients_for_entropy(alpha, 4);
    std::copy(av.begin(), av.end(), p.a.begin());
    p.b = coefficients_for_entropy(beta, aux_dim);
    p.c = coefficients_for_entropy(gamma, aux_dim);
    p.d = coefficients_for_entropy(delta, aux_dim);
    return p;
  }
};

/// Closed form (2+g+d, 2+b+d, 2+b+g, 2+a+g+d, 2+a+b+d, 2+a+b+g, a) in the
/// display order (A, B, C, BC, AC, AB, ABC).
inline EntropyVector family_vector(double alpha, double beta, double gamma, double delta) {
  return EntropyVector::from_paper_order({2 + gamma + delta, 2 + beta + delta, 2 + beta + gamma,
                                          2 + alpha + gamma + delta, 2 + alpha + beta + delta,
                                          2 + alpha + beta + gamma, alpha});
}

inline constexpr std::size_t kFamilyDimensionCap = std::size_t{1} << 16;

/// |V~_4>_{ABCD} (x) |V'>_{B'C'} (x) |V''>_{A''C''} (x) |V'''>_{A'''B'''}
/// regrouped into the four parties A A'' A''', B B' B''', C C' C'', D. The
/// vectors describe the marginal on the first three composite parties.
inline ConstructionResult four_param_family(const FamilyParams& p, std::size_t cap = kFamilyDimensionCap) {
  p.validate();
  const auto base = tilde_v4(p.a);
  const auto vb = diagonal_bipartite(p.b);  // B' C'
  const auto vc = diagonal_bipartite(p.c);  // A'' C''
  const auto vd = diagonal_bipartite(p.d);  // A''' B'''
  // Parties after each step are kept as A, B, C, D.
  auto psi = tensor_product(base.state, vb, PartyGrouping{{0, 1, 2, 3, 1, 2}}, cap);
  psi = tensor_product(psi, vc, PartyGrouping{{0, 1, 2, 3, 0, 2}}, cap);
  psi = tensor_product(psi, vd, PartyGrouping{{0, 1, 2, 3, 0, 1}}, cap);

  ConstructionResult r;
  r.name = "family";
  r.state = std::move(psi);
  r.vector_parties = SubsystemMask::of({0, 1, 2});
  r.claimed = family_vector(p.alpha(), p.beta(), p.gamma(), p.delta());
  r.max_marginal_residual = base.max_marginal_residual;
  detail::finish(r);
  return r;
}

}  // namespace qec

#endif  // QEC_CONSTRUCTIONS_HPP
