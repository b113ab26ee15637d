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

#ifndef QEC_QSTATE_HPP
#define QEC_QSTATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qec/core.hpp"

namespace qec {

/// Multipartite pure state. Amplitudes are indexed by (x_1, ..., x_N) in
/// row-major order with the last party varying fastest.
class PureState {
 public:
  PureState() = default;

  /// Validates the length and renormalizes when the squared norm is within
  /// kNormTolerance of 1.
  PureState(PartyDims dims, CVector amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != dims_.total())
      throw InputError("amplitude count " + std::to_string(amps_.size()) +
                       " does not match product of dims " + std::to_string(dims_.total()));
    const double norm2 = amps_.squaredNorm();
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormTolerance)
      throw InputError("state norm^2 = " + std::to_string(norm2) + " is not within 1e-6 of 1");
    // Skipped at rounding level so that serialized states reload bit-for-bit.
    if (std::abs(norm2 - 1.0) > 1e-14) amps_ /= std::sqrt(norm2);
  }

  const PartyDims& dims() const { return dims_; }
  const CVector& amplitudes() const { return amps_; }
  std::size_t parties() const { return dims_.parties(); }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  PartyDims dims_;
  CVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite operator on the parties in
/// `dims`.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Validated construction: Hermiticity, trace and positivity are checked to
  /// kStateTolerance.
  DensityMatrix(PartyDims dims, CMatrix matrix) : dims_(std::move(dims)), m_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(dims_.total());
    if (m_.rows() != d || m_.cols() != d)
      throw InputError("density matrix side does not match product of dims");
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kStateTolerance) throw InputError("density matrix is not Hermitian");
    if (std::abs(m_.trace() - Complex(1.0)) > kStateTolerance)
      throw InputError("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    if (es.eigenvalues().minCoeff() < -kStateTolerance)
      throw InputError("density matrix has a negative eigenvalue");
  }

  /// Construction without validation, for operators that are density
  /// matrices by construction (partial traces, outer products).
  static DensityMatrix trusted(PartyDims dims, CMatrix matrix) {
    DensityMatrix rho;
    rho.dims_ = std::move(dims);
    rho.m_ = std::move(matrix);
    return rho;
  }

  const PartyDims& dims() const { return dims_; }
  const CMatrix& matrix() const { return m_; }
  std::size_t parties() const { return dims_.parties(); }

 private:
  PartyDims dims_;
  CMatrix m_;
};

/// Eigenvalues in descending order, clipped into [0, 1].
struct Spectrum {
  std::vector<double> values;
  bool clipped = false;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
};

inline PureState pure_from_amplitudes(const PartyDims& dims, std::span<const Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
  return PureState(dims, std::move(v));
}

/// Computational basis state |x_1 ... x_N>.
inline PureState basis_state(const PartyDims& dims, const std::vector<std::size_t>& digits) {
  if (digits.size() != dims.parties()) throw InputError("basis state needs one digit per party");
  const auto s = detail::strides(dims.values());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= dims[i]) throw InputError("basis digit out of range");
    idx += digits[i] * s[i];
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  v[static_cast<Eigen::Index>(idx)] = 1.0;
  return PureState(dims, std::move(v));
}

inline DensityMatrix density_from_pure(const PureState& psi) {
  return DensityMatrix::trusted(psi.dims(), psi.amplitudes() * psi.amplitudes().adjoint());
}

namespace detail {

inline void check_keep(const PartyDims& dims, SubsystemMask keep) {
  if (keep.empty()) throw InputError("subsystem to keep must be non-empty");
  dims.check_mask(keep);
}

// Psi(a, t) = psi[full(a, t)], so that rho_keep = Psi Psi^dagger.
inline CMatrix amplitude_matrix(const CVector& amps, const IndexSplit& split) {
  CMatrix psi(static_cast<Eigen::Index>(split.kept), static_cast<Eigen::Index>(split.traced));
  for (std::size_t a = 0; a < split.kept; ++a)
    for (std::size_t t = 0; t < split.traced; ++t)
      psi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          amps[static_cast<Eigen::Index>(split.full[a * split.traced + t])];
  return psi;
}

inline CMatrix reduced_matrix(const std::vector<std::size_t>& dims, const CVector& amps,
                              SubsystemMask keep) {
  const auto split = split_index(dims, keep);
  const CMatrix psi = amplitude_matrix(amps, split);
  CMatrix rho = CMatrix::Zero(psi.rows(), psi.rows());
  rho.selfadjointView<Eigen::Lower>().rankUpdate(psi);
  return rho.selfadjointView<Eigen::Lower>();
}

// Spectrum from raw eigenvalues (any order); applies the clipping rules.
inline Spectrum make_spectrum(std::vector<double> values) {
  Spectrum s;
  std::sort(values.begin(), values.end(), std::greater<>());
  for (auto& v : values) {
    if (v < 0.0) {
      if (v < -kStateTolerance)
        throw NumericalError("eigenvalue " + std::to_string(v) + " below -1e-10");
      v = 0.0;
      s.clipped = true;
    } else if (v > 1.0) {
      if (v > 1.0 + kStateTolerance)
        throw NumericalError("eigenvalue " + std::to_string(v) + " above 1 + 1e-10");
      v = 1.0;
      s.clipped = true;
    }
  }
  s.values = std::move(values);
  return s;
}

inline Spectrum hermitian_spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  return make_spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Eigenvalues are rescaled by their sum, which removes rounding drift in the
// trace (e.g. |1/sqrt 2|^2 = 0.5000000000000001).
inline double entropy_bits(const Spectrum& s) {
  const double total = s.sum();
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double v : s.values)
    if (v > 0.0) {
      const double p = v / total;
      h -= p * std::log2(p);
    }
  return std::max(h, 0.0);
}

// Entropy of the marginal on `mask` of a pure state, computed on whichever
// side of the cut has the smaller dimension.
inline double pure_marginal_entropy(const std::vector<std::size_t>& dims, const CVector& amps,
                                    SubsystemMask mask) {
  const SubsystemMask all = SubsystemMask::all(dims.size());
  const SubsystemMask rest = all - mask;
  if (mask.empty() || rest.empty()) return 0.0;
  std::size_t dk = 1, dr = 1;
  for (std::size_t p = 0; p < dims.size(); ++p) (mask.contains(p) ? dk : dr) *= dims[p];
  return entropy_bits(hermitian_spectrum(reduced_matrix(dims, amps, dk <= dr ? mask : rest)));
}

}  // namespace detail

/// Reduced state of `rho` on the parties in `keep`, labels in ascending order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, SubsystemMask keep) {
  detail::check_keep(rho.dims(), keep);
  if (keep == rho.dims().all()) return rho;
  const auto split = detail::split_index(rho.dims().values(), keep);
  const auto& m = rho.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(split.kept), static_cast<Eigen::Index>(split.kept));
  for (std::size_t a = 0; a < split.kept; ++a)
    for (std::size_t b = 0; b < split.kept; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < split.traced; ++t)
        sum += m(static_cast<Eigen::Index>(split.full[a * split.traced + t]),
                 static_cast<Eigen::Index>(split.full[b * split.traced + t]));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  return DensityMatrix::trusted(rho.dims().select(keep), std::move(out));
}

/// Reduced state of a pure state, without forming the full density matrix.
inline DensityMatrix reduced_density(const PureState& psi, SubsystemMask keep) {
  detail::check_keep(psi.dims(), keep);
  return DensityMatrix::trusted(psi.dims().select(keep),
                                detail::reduced_matrix(psi.dims().values(), psi.amplitudes(), keep));
}

inline Spectrum spectrum(const DensityMatrix& rho) { return detail::hermitian_spectrum(rho.matrix()); }

/// -Tr[rho log2 rho] in bits, with 0 log 0 = 0.
inline double von_neumann_entropy(const DensityMatrix& rho) { return detail::entropy_bits(spectrum(rho)); }

/// Entropy of the marginal of a pure state on `mask`; 0 for the empty set
/// and for the whole system.
inline double entropy(const PureState& psi, SubsystemMask mask) {
  psi.dims().check_mask(mask);
  return detail::pure_marginal_entropy(psi.dims().values(), psi.amplitudes(), mask);
}

/// Minimal purification: appends one party whose dimension is the numerical
/// rank of `rho`.
inline PureState purify(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = ev.size(); k-- > 0;)
    if (ev[k] > kRankThreshold) kept.push_back(k);
  if (kept.empty()) throw NumericalError("density matrix has no eigenvalue above the rank threshold");

  const std::size_t d = rho.dims().total();
  const std::size_t r = kept.size();
  std::vector<std::size_t> dims = rho.dims().values();
  dims.push_back(r);
  CVector amps(static_cast<Eigen::Index>(d * r));
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t k = 0; k < r; ++k)
      amps[static_cast<Eigen::Index>(x * r + k)] =
          std::sqrt(ev[kept[k]]) * es.eigenvectors()(static_cast<Eigen::Index>(x), kept[k]);
  return PureState(PartyDims(std::move(dims), std::max(rho.dims().cap(), d * r)), std::move(amps));
}

/// Haar-random pure state: normalized complex standard-normal vector.
inline PureState random_pure(const PartyDims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector v(static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  v.normalize();
  return PureState(dims, std::move(v));
}

/// Marginal of a Haar-random pure state on dims x (ancilla of dimension rank).
inline DensityMatrix random_density(const PartyDims& dims, std::size_t rank, std::uint64_t seed) {
  if (rank < 1) throw InputError("rank must be at least 1");
  std::vector<std::size_t> ext = dims.values();
  ext.push_back(rank);
  const PartyDims ext_dims(std::move(ext), std::max(dims.cap(), dims.total() * rank));
  const auto psi = random_pure(ext_dims, seed);
  const auto rho = reduced_density(psi, dims.all());
  return DensityMatrix::trusted(dims, rho.matrix());
}

/// Reorders parties so that new party k is old party order[k].
inline PureState permute_parties(const PureState& psi, const std::vector<std::size_t>& order) {
  const auto& dims = psi.dims().values();
  std::vector<std::size_t> check = order;
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check.size() != dims.size() || check[k] != k) throw InputError("invalid party permutation");
  const auto map = detail::permutation_map(dims, order);
  CVector out(psi.amplitudes().size());
  for (std::size_t f = 0; f < map.size(); ++f)
    out[static_cast<Eigen::Index>(map[f])] = psi.amplitudes()[static_cast<Eigen::Index>(f)];
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) new_dims[k] = dims[order[k]];
  return PureState(PartyDims(std::move(new_dims), psi.dims().cap()), std::move(out));
}

/// Applies the operator `op` to one party: (I x op x I)|psi>. The result is
/// renormalized, so `op` should be unitary.
inline PureState apply_local(const PureState& psi, std::size_t party, const CMatrix& op) {
  const auto& dims = psi.dims().values();
  if (party >= dims.size()) throw InputError("party index out of range");
  const auto d = static_cast<Eigen::Index>(dims[party]);
  if (op.rows() != d || op.cols() != d) throw InputError("local operator has the wrong size");
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < party; ++i) left *= dims[i];
  for (std::size_t i = party + 1; i < dims.size(); ++i) right *= dims[i];
  const auto& in = psi.amplitudes();
  CVector out = CVector::Zero(in.size());
  const auto r = static_cast<Eigen::Index>(right);
  for (Eigen::Index l = 0; l < static_cast<Eigen::Index>(left); ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k) {
        const Complex u = op(i, k);
        if (u == Complex(0.0)) continue;
        for (Eigen::Index t = 0; t < r; ++t) out[(l * d + i) * r + t] += u * in[(l * d + k) * r + t];
      }
  return PureState(psi.dims(), std::move(out));
}

/// Assignment of the parties of a tensor product (first operand's parties,
/// then the second's) to output parties. Input parties sharing a group are
/// merged into one composite party, in input order.
struct PartyGrouping {
  std::vector<std::size_t> group_of;

  static PartyGrouping disjoint(std::size_t parties) {
    PartyGrouping g;
    g.group_of.resize(parties);
    std::iota(g.group_of.begin(), g.group_of.end(), std::size_t{0});
    return g;
  }
};

namespace detail {

struct GroupPlan {
  std::vector<std::size_t> order;       // input parties sorted by group
  std::vector<std::size_t> group_dims;  // merged dimensions
};

inline GroupPlan plan_grouping(const std::vector<std::size_t>& dims, const PartyGrouping& g) {
  if (g.group_of.size() != dims.size())
    throw InputError("grouping must assign every party of both operands");
  const std::size_t groups = *std::max_element(g.group_of.begin(), g.group_of.end()) + 1;
  GroupPlan plan;
  plan.group_dims.assign(groups, 1);
  std::vector<bool> used(groups, false);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    used[g.group_of[i]] = true;
    plan.group_dims[g.group_of[i]] *= dims[i];
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw InputError("grouping labels must be contiguous from 0");
  plan.order.resize(dims.size());
  std::iota(plan.order.begin(), plan.order.end(), std::size_t{0});
  std::stable_sort(plan.order.begin(), plan.order.end(),
                   [&](std::size_t a, std::size_t b) { return g.group_of[a] < g.group_of[b]; });
  return plan;
}

inline std::vector<std::size_t> concat(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

inline PureState tensor_product(const PureState& a, const PureState& b, const PartyGrouping& grouping,
                                std::size_t cap = kDefaultDimensionCap) {
  const auto dims = detail::concat(a.dims().values(), b.dims().values());
  const auto plan = detail::plan_grouping(dims, grouping);
  const PartyDims joint(dims, cap);
  CVector kron(static_cast<Eigen::Index>(joint.total()));
  const auto nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    kron.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  const auto permuted = permute_parties(PureState(joint, std::move(kron)), plan.order);
  return PureState(PartyDims(plan.group_dims, cap), permuted.amplitudes());
}

inline PureState tensor_product(const PureState& a, const PureState& b) {
  return tensor_product(a, b, PartyGrouping::disjoint(a.parties() + b.parties()),
                        std::max(a.dims().cap(), b.dims().cap()));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b,
                                    const PartyGrouping& grouping, std::size_t cap = kDefaultDimensionCap) {
  const auto dims = detail::concat(a.dims().values(), b.dims().values());
  const auto plan = detail::plan_grouping(dims, grouping);
  const PartyDims joint(dims, cap);
  const CMatrix kron = detail::kron(a.matrix(), b.matrix());
  const auto map = detail::permutation_map(dims, plan.order);
  CMatrix out(kron.rows(), kron.cols());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j)
      out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
          kron(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return DensityMatrix::trusted(PartyDims(plan.group_dims, cap), std::move(out));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return tensor_product(a, b, PartyGrouping::disjoint(a.parties() + b.parties()),
                        std::max(a.dims().cap(), b.dims().cap()));
}

}  // namespace qec

#endif  // QEC_QSTATE_HPP
