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

#ifndef QEC_LEMMA_LAB_HPP
#define QEC_LEMMA_LAB_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qec/constructions.hpp"
#include "qec/entropy.hpp"
#include "qec/qstate.hpp"

namespace qec {

inline constexpr double kProductTolerance = 1e-7;
// Eigenvalues closer than this are treated as one degenerate block.
inline constexpr double kDegeneracyTolerance = 1e-9;
// Below this H(X_c) counts as zero for the theorem hypothesis.
inline constexpr double kNonzeroEntropy = 1e-6;

/// A pure state expressed in the eigenbases of its single-party marginals.
/// unitaries[i] holds the eigenvectors of rho_{X_i} as columns, ordered by
/// descending eigenvalue.
struct EigenbasisState {
  PureState state;
  std::vector<Spectrum> spectra;
  std::vector<CMatrix> unitaries;
  std::vector<bool> degenerate;  // party marginal has a repeated eigenvalue
};

namespace detail {

// Multiplies each column by the phase that makes its first component of
// largest magnitude real and positive.
inline void fix_phase(CMatrix& vecs) {
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
      const double a = std::abs(vecs(r, c));
      if (a > mag + 1e-12) {
        mag = a;
        best = r;
      }
    }
    if (mag > 0) vecs.col(c) *= std::conj(vecs(best, c)) / mag;
  }
}

// Lexicographic "greater" on (re, im) component lists, with a small tolerance.
inline bool lex_greater(const CVector& a, const CVector& b) {
  constexpr double eps = 1e-12;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > eps) return a[i].real() > b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > eps) return a[i].imag() > b[i].imag();
  }
  return false;
}

// Replaces the basis of a degenerate eigenspace by Gram-Schmidt on its
// projections of the computational basis vectors, so the choice does not
// depend on the eigensolver.
inline CMatrix canonical_block(const CMatrix& block) {
  const CMatrix proj = block * block.adjoint();
  const Eigen::Index d = block.rows(), k = block.cols();
  CMatrix out(d, k);
  Eigen::Index found = 0;
  for (Eigen::Index e = 0; e < d && found < k; ++e) {
    CVector v = proj.col(e);
    for (Eigen::Index j = 0; j < found; ++j) v -= out.col(j) * out.col(j).dot(v);
    const double nrm = v.norm();
    if (nrm > 1e-6) out.col(found++) = v / nrm;
  }
  if (found < k) throw NumericalError("could not canonicalize a degenerate eigenspace");
  return out;
}

struct PartyBasis {
  Spectrum spectrum;
  CMatrix vectors;
  bool degenerate = false;
};

inline PartyBasis party_eigenbasis(const PureState& psi, std::size_t party) {
  const CMatrix rho = reduced_density(psi, SubsystemMask::single(party)).matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const Eigen::Index d = rho.rows();
  std::vector<double> vals(static_cast<std::size_t>(d));
  CMatrix vecs(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    vals[static_cast<std::size_t>(k)] = es.eigenvalues()[d - 1 - k];
    vecs.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  PartyBasis pb;
  for (Eigen::Index start = 0; start < d;) {
    Eigen::Index end = start + 1;
    while (end < d && vals[static_cast<std::size_t>(start)] - vals[static_cast<std::size_t>(end)] <= kDegeneracyTolerance)
      ++end;
    const Eigen::Index k = end - start;
    if (k > 1) {
      pb.degenerate = true;
      CMatrix block = canonical_block(vecs.middleCols(start, k));
      fix_phase(block);
      std::vector<CVector> cols;
      for (Eigen::Index j = 0; j < k; ++j) cols.emplace_back(block.col(j));
      std::stable_sort(cols.begin(), cols.end(), lex_greater);
      for (Eigen::Index j = 0; j < k; ++j) vecs.col(start + j) = cols[static_cast<std::size_t>(j)];
    } else {
      CMatrix col = vecs.col(start);
      fix_phase(col);
      vecs.col(start) = col;
    }
    start = end;
  }
  pb.spectrum = make_spectrum(std::move(vals));
  pb.vectors = std::move(vecs);
  return pb;
}

}  // namespace detail

/// Rotates every party into the eigenbasis of its marginal. Throws
/// NumericalError if a rotated marginal is not diagonal with descending
/// entries to 1e-9.
inline EigenbasisState to_eigenbasis(const PureState& psi) {
  EigenbasisState es;
  PureState rotated = psi;
  for (std::size_t i = 0; i < psi.parties(); ++i) {
    auto pb = detail::party_eigenbasis(psi, i);
    rotated = apply_local(rotated, i, pb.vectors.adjoint());
    es.spectra.push_back(std::move(pb.spectrum));
    es.unitaries.push_back(std::move(pb.vectors));
    es.degenerate.push_back(pb.degenerate);
  }
  for (std::size_t i = 0; i < psi.parties(); ++i) {
    const CMatrix rho = reduced_density(rotated, SubsystemMask::single(i)).matrix();
    const CMatrix off = rho - CMatrix(rho.diagonal().asDiagonal());
    if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-9)
      throw NumericalError("rotated marginal of party " + std::to_string(i + 1) + " is not diagonal");
    for (Eigen::Index k = 1; k < rho.rows(); ++k)
      if (rho(k, k).real() > rho(k - 1, k - 1).real() + 1e-9)
        throw NumericalError("rotated marginal of party " + std::to_string(i + 1) + " is not descending");
  }
  es.state = std::move(rotated);
  return es;
}

/// eps_i = 1 - lambda_1^i, eps = sum eps_i, and the amplitude sums that enter
/// the three lemmas, for the designated constrained party.
struct EpsilonReport {
  std::size_t constrained_party = 0;
  std::vector<double> eps_i;
  double eps_total = 0.0;
  double v111_sq = 0.0;   // |V_{1..1}|^2
  double tail_sum = 0.0;  // sum over x_c > 1 of |V_{1..x_c..1}|^2
  double lemma1 = 0.0;    // v111_sq - (1 - eps)
  double lemma2 = 0.0;    // tail_sum - eps_c (1 + eps_c - eps), meaningful under the product hypothesis
  double lemma3 = 0.0;    // eps_c (eps - eps_c) - (1 - eps_c) tail_sum
};

inline EpsilonReport epsilons(const EigenbasisState& es, std::size_t constrained_party = 0) {
  const auto n = es.state.parties();
  if (constrained_party >= n) throw InputError("constrained party out of range");
  EpsilonReport r;
  r.constrained_party = constrained_party;
  for (const auto& s : es.spectra) {
    r.eps_i.push_back(1.0 - s.largest());
    r.eps_total += r.eps_i.back();
  }
  const auto& amps = es.state.amplitudes();
  r.v111_sq = std::norm(amps[0]);
  const auto stride = detail::strides(es.state.dims().values())[constrained_party];
  for (std::size_t x = 1; x < es.state.dims()[constrained_party]; ++x)
    r.tail_sum += std::norm(amps[static_cast<Eigen::Index>(x * stride)]);
  const double e1 = r.eps_i[constrained_party];
  r.lemma1 = r.v111_sq - (1.0 - r.eps_total);
  r.lemma2 = r.tail_sum - e1 * (1.0 + e1 - r.eps_total);
  r.lemma3 = e1 * (r.eps_total - e1) - (1.0 - e1) * r.tail_sum;
  return r;
}

/// |V_{1..1}|^2 - (1 - eps); non-negative for every pure state.
inline double lemma1_margin(const EigenbasisState& es) { return epsilons(es).lemma1; }

/// tail_sum - eps_c (1 + eps_c - eps). Requires the constrained party's pair
/// marginals to be products within `product_tol` (entrywise); throws
/// HypothesisError naming the first offending pair otherwise.
inline double lemma2_margin(const EigenbasisState& es, std::size_t constrained_party = 0,
                            double product_tol = kProductTolerance) {
  const auto products = verify_marginal_product(es.state, constrained_party);
  for (const auto& p : products.pairs)
    if (p.residual > product_tol)
      throw HypothesisError("pair (" + std::to_string(constrained_party + 1) + "," + std::to_string(p.other + 1) +
                            ") is not a product state: residual " + format_real(p.residual));
  return epsilons(es, constrained_party).lemma2;
}

/// eps_c (eps - eps_c) - (1 - eps_c) tail_sum; non-negative for every pure state.
inline double lemma3_margin(const EigenbasisState& es, std::size_t constrained_party = 0) {
  return epsilons(es, constrained_party).lemma3;
}

struct EntropyBoundMargins {
  double entropy = 0.0;
  double eps = 0.0;
  double bound = 0.0;        // max{h(eps), -log2(1 - eps)}
  double upper_margin = 0.0; // H - bound
  double lower_margin = 0.0; // bound - 2 eps; only asserted when eps <= 1/2
  bool lower_applicable = false;
};

/// H(X_i) >= max{h(eps_i), -log2(1 - eps_i)} >= 2 eps_i, per party.
inline std::vector<EntropyBoundMargins> eigen_entropy_bound(const EigenbasisState& es) {
  std::vector<EntropyBoundMargins> out;
  for (const auto& s : es.spectra) {
    EntropyBoundMargins m;
    m.entropy = detail::entropy_bits(s);
    m.eps = std::clamp(1.0 - s.largest(), 0.0, 1.0);
    const double log_branch = m.eps < 1.0 ? -std::log2(1.0 - m.eps) : std::numeric_limits<double>::infinity();
    m.bound = std::max(binary_entropy(m.eps), log_branch);
    m.upper_margin = m.entropy - m.bound;
    m.lower_margin = m.bound - 2.0 * m.eps;
    m.lower_applicable = m.eps <= 0.5;
    out.push_back(m);
  }
  return out;
}

struct Theorem1Report {
  std::size_t constrained_party = 0;
  double entropy_sum = 0.0;     // sum_i H(X_i)
  double sum_margin = 0.0;      // entropy_sum - 1
  double eps_total = 0.0;
  double eps_constrained = 0.0;
  double eps_margin = 0.0;      // eps - 1/2
  double proof_margin = 0.0;    // 2 eps - 1 - (1 + eps - eps_c) eps_c
  double lemma2 = 0.0;
  double lemma3 = 0.0;
  std::vector<double> residuals;  // product residuals for j != c
  bool holds() const { return sum_margin > 0 && eps_margin > 0; }
};

/// Checks the hypotheses (H(X_c) > 1e-6, products within `product_tol`) and
/// reports the entropy-sum and eps claims with the lemma margins.
inline Theorem1Report theorem1_check(const PureState& psi, std::size_t constrained_party,
                                     double product_tol = kProductTolerance) {
  const auto n = psi.parties();
  if (constrained_party >= n) throw InputError("constrained party out of range");
  const double hc = entropy(psi, SubsystemMask::single(constrained_party));
  if (hc <= kNonzeroEntropy)
    throw HypothesisError("H(X" + std::to_string(constrained_party + 1) + ") = " + format_real(hc) + " vanishes");
  Theorem1Report r;
  r.constrained_party = constrained_party;
  const auto products = verify_marginal_product(psi, constrained_party);
  for (const auto& p : products.pairs) {
    r.residuals.push_back(p.residual);
    if (p.residual > product_tol)
      throw HypothesisError("pair (" + std::to_string(constrained_party + 1) + "," + std::to_string(p.other + 1) +
                            ") is not a product state: residual " + format_real(p.residual));
  }
  for (std::size_t i = 0; i < n; ++i) r.entropy_sum += entropy(psi, SubsystemMask::single(i));
  r.sum_margin = r.entropy_sum - 1.0;
  const auto es = to_eigenbasis(psi);
  const auto eps = epsilons(es, constrained_party);
  r.eps_total = eps.eps_total;
  r.eps_constrained = eps.eps_i[constrained_party];
  r.eps_margin = eps.eps_total - 0.5;
  r.proof_margin = 2.0 * eps.eps_total - 1.0 - (1.0 + eps.eps_total - r.eps_constrained) * r.eps_constrained;
  r.lemma2 = eps.lemma2;
  r.lemma3 = eps.lemma3;
  return r;
}

}  // namespace qec

#endif  // QEC_LEMMA_LAB_HPP
