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

#ifndef QEC_CORE_HPP
#define QEC_CORE_HPP

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDimensionCap = 4096;
inline constexpr std::size_t kMaxParties = 16;

// Amplitude vectors whose squared norm is this close to 1 are renormalized.
inline constexpr double kNormTolerance = 1e-6;
// Hermiticity, trace and eigenvalue-floor tolerance for density matrices.
inline constexpr double kStateTolerance = 1e-10;
// Eigenvalues above this count towards the numerical rank.
inline constexpr double kRankThreshold = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failure or a numerically invalid intermediate result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Total Hilbert-space dimension above the configured cap.
class DimensionCapError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The hypotheses of a lemma or theorem check do not hold for the state.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Set of parties, stored as a bitmask. Party indices are 0-based: bit i is
/// party i.
class SubsystemMask {
 public:
  constexpr SubsystemMask() = default;
  constexpr explicit SubsystemMask(std::uint32_t bits) : bits_(bits) {}

  static SubsystemMask of(std::initializer_list<std::size_t> parties) {
    return of(std::vector<std::size_t>(parties));
  }
  static SubsystemMask of(const std::vector<std::size_t>& parties) {
    std::uint32_t bits = 0;
    for (auto p : parties) {
      if (p >= kMaxParties) throw InputError("party index " + std::to_string(p) + " out of range");
      bits |= 1u << p;
    }
    return SubsystemMask(bits);
  }
  static constexpr SubsystemMask single(std::size_t party) { return SubsystemMask(1u << party); }
  static constexpr SubsystemMask all(std::size_t n) {
    return SubsystemMask(n >= 32 ? ~0u : ((1u << n) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t party) const { return (bits_ >> party) & 1u; }
  constexpr bool subset_of(SubsystemMask other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < 32; ++p)
      if (contains(p)) out.push_back(p);
    return out;
  }

  friend constexpr SubsystemMask operator|(SubsystemMask a, SubsystemMask b) {
    return SubsystemMask(a.bits_ | b.bits_);
  }
  friend constexpr SubsystemMask operator&(SubsystemMask a, SubsystemMask b) {
    return SubsystemMask(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr SubsystemMask operator-(SubsystemMask a, SubsystemMask b) {
    return SubsystemMask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(SubsystemMask, SubsystemMask) = default;
  friend constexpr auto operator<=>(SubsystemMask, SubsystemMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Per-party Hilbert-space dimensions. The product of all dimensions is
/// bounded by a cap that protects the dense eigensolvers.
class PartyDims {
 public:
  PartyDims() = default;

  explicit PartyDims(std::vector<std::size_t> dims, std::size_t cap = kDefaultDimensionCap)
      : dims_(std::move(dims)), cap_(cap) {
    if (dims_.empty()) throw InputError("at least one party is required");
    if (dims_.size() > kMaxParties)
      throw InputError("at most " + std::to_string(kMaxParties) + " parties are supported");
    total_ = 1;
    for (auto d : dims_) {
      if (d == 0) throw InputError("party dimensions must be positive");
      if (total_ > cap_ / d)
        throw DimensionCapError("total dimension exceeds cap " + std::to_string(cap_));
      total_ *= d;
    }
  }

  PartyDims(std::initializer_list<std::size_t> dims) : PartyDims(std::vector<std::size_t>(dims)) {}

  std::size_t parties() const { return dims_.size(); }
  std::size_t total() const { return total_; }
  std::size_t cap() const { return cap_; }
  std::size_t operator[](std::size_t party) const { return dims_.at(party); }
  const std::vector<std::size_t>& values() const { return dims_; }

  /// Dimension of the joint space of the parties in `mask`.
  std::size_t dimension(SubsystemMask mask) const {
    std::size_t d = 1;
    for (std::size_t p = 0; p < dims_.size(); ++p)
      if (mask.contains(p)) d *= dims_[p];
    return d;
  }

  /// Dimensions of the parties in `mask`, in ascending party order.
  PartyDims select(SubsystemMask mask) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < dims_.size(); ++p)
      if (mask.contains(p)) out.push_back(dims_[p]);
    return PartyDims(std::move(out), cap_);
  }

  SubsystemMask all() const { return SubsystemMask::all(dims_.size()); }

  void check_mask(SubsystemMask mask) const {
    if (!mask.subset_of(all())) throw InputError("subsystem refers to a party out of range");
  }

  friend bool operator==(const PartyDims& a, const PartyDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
  std::size_t cap_ = kDefaultDimensionCap;
};

namespace detail {

// Row-major strides with the last party varying fastest.
inline std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// For a split of the parties into kept and traced sets, full[a * traced + t]
// is the flat index of the basis state with kept index a and traced index t.
struct IndexSplit {
  std::size_t kept = 1;
  std::size_t traced = 1;
  std::vector<std::size_t> full;
};

inline IndexSplit split_index(const std::vector<std::size_t>& dims, SubsystemMask keep) {
  const std::size_t n = dims.size();
  IndexSplit split;
  std::vector<std::size_t> kstride(n, 0), tstride(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (keep.contains(i)) {
      kstride[i] = split.kept;
      split.kept *= dims[i];
    } else {
      tstride[i] = split.traced;
      split.traced *= dims[i];
    }
  }
  const std::size_t total = split.kept * split.traced;
  split.full.resize(total);
  std::vector<std::size_t> digit(n, 0);
  std::size_t a = 0, t = 0;
  for (std::size_t f = 0; f < total; ++f) {
    split.full[a * split.traced + t] = f;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) {
        a += kstride[i];
        t += tstride[i];
        break;
      }
      a -= kstride[i] * (dims[i] - 1);
      t -= tstride[i] * (dims[i] - 1);
      digit[i] = 0;
    }
  }
  return split;
}

// new_index[old] for reordering parties so that new party k is old party
// order[k].
inline std::vector<std::size_t> permutation_map(const std::vector<std::size_t>& dims,
                                                const std::vector<std::size_t>& order) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[order[k]];
  const auto new_strides = strides(new_dims);
  std::vector<std::size_t> stride_of_old(n);
  for (std::size_t k = 0; k < n; ++k) stride_of_old[order[k]] = new_strides[k];

  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(n, 0);
  std::size_t idx = 0;
  for (std::size_t f = 0; f < total; ++f) {
    map[f] = idx;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) {
        idx += stride_of_old[i];
        break;
      }
      idx -= stride_of_old[i] * (dims[i] - 1);
      digit[i] = 0;
    }
  }
  return map;
}

}  // namespace detail
}  // namespace qec

#endif  // QEC_CORE_HPP
