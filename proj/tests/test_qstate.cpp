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


#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qec/entropy.hpp"
#include "qec/qstate.hpp"

namespace {

using namespace qec;

std::vector<oracle::cd> amps_of(const PureState& psi) {
  return {psi.amplitudes().data(), psi.amplitudes().data() + psi.amplitudes().size()};
}

oracle::Matrix matrix_of(const CMatrix& m) {
  oracle::Matrix out{static_cast<std::size_t>(m.rows()), {}};
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.a.push_back(m(r, c));
  return out;
}

double max_diff(const CMatrix& a, const oracle::Matrix& b) {
  double d = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      d = std::max(d, std::abs(a(r, c) - b(static_cast<std::size_t>(r), static_cast<std::size_t>(c))));
  return d;
}

PureState bell() {
  const double s = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  v[0] = s;
  v[3] = s;
  return PureState(PartyDims{2, 2}, v);
}

TEST(PartyDims, RejectsEmptyAndZeroDims) {
  EXPECT_THROW(PartyDims(std::vector<std::size_t>{}), InputError);
  EXPECT_THROW(PartyDims({2, 0, 2}), InputError);
}

TEST(PartyDims, CapExceededIsNumerical) {
  EXPECT_THROW(PartyDims(std::vector<std::size_t>{16, 16, 16, 2}), DimensionCapError);
  EXPECT_NO_THROW(PartyDims(std::vector<std::size_t>{16, 16, 16, 2}, 8192));
  try {
    PartyDims(std::vector<std::size_t>{100, 100});
    FAIL();
  } catch (const NumericalError&) {
  }
}

TEST(PureState, NormChecks) {
  CVector v = CVector::Zero(4);
  v[0] = 1.0 + 1e-8;
  const PureState psi(PartyDims{2, 2}, v);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  v[0] = 1.1;
  EXPECT_THROW(PureState(PartyDims{2, 2}, v), InputError);
  EXPECT_THROW(PureState(PartyDims{2, 2}, CVector::Zero(3)), InputError);
}

TEST(DensityMatrix, Validation) {
  CMatrix m = CMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix(PartyDims{2}, m));
  CMatrix bad = m;
  bad(0, 1) = 0.3;
  EXPECT_THROW(DensityMatrix(PartyDims{2}, bad), InputError);
  EXPECT_THROW(DensityMatrix(PartyDims{2}, CMatrix::Identity(2, 2)), InputError);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  EXPECT_THROW(DensityMatrix(PartyDims{2}, neg), InputError);
}

TEST(Spectrum, ClipsRoundingNoiseOnly) {
  auto s = detail::make_spectrum({0.5, 0.5 + 5e-11, -5e-11});
  EXPECT_TRUE(s.clipped);
  EXPECT_EQ(s.values.back(), 0.0);
  EXPECT_THROW(detail::make_spectrum({1.0, -1e-9}), NumericalError);
  EXPECT_THROW(detail::make_spectrum({1.0 + 1e-9}), NumericalError);
}

TEST(PartialTrace, MatchesBruteForceOnPureStates) {
  const PartyDims dims{2, 3, 2};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto psi = random_pure(dims, seed);
    for (std::uint32_t keep = 1; keep < 8; ++keep) {
      const auto rho = reduced_density(psi, SubsystemMask(keep));
      EXPECT_LT(max_diff(rho.matrix(), oracle::partial_trace_pure(amps_of(psi), dims.values(), keep)), 1e-13);
    }
  }
}

TEST(PartialTrace, MatchesBruteForceOnMixedStates) {
  const PartyDims dims{2, 2, 3};
  const auto rho = random_density(dims, 3, 11);
  for (std::uint32_t keep = 1; keep < 8; ++keep) {
    const auto red = partial_trace(rho, SubsystemMask(keep));
    EXPECT_LT(max_diff(red.matrix(), oracle::partial_trace_mixed(matrix_of(rho.matrix()), dims.values(), keep)),
              1e-13);
  }
}

TEST(Entropy, ReferenceValues) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(PartyDims{3}, CMatrix::Identity(3, 3) / 3.0)), std::log2(3.0),
              1e-14);
  EXPECT_EQ(von_neumann_entropy(density_from_pure(bell())), 0.0);
  EXPECT_NEAR(entropy(bell(), SubsystemMask::single(0)), 1.0, 1e-15);
  EXPECT_EQ(entropy(bell(), SubsystemMask::all(2)), 0.0);
}

TEST(Entropy, MatchesJacobiOracle) {
  const PartyDims dims{2, 3, 2, 2};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto psi = random_pure(dims, 40 + seed);
    const auto v = entropy_vector(psi);
    const auto ref = oracle::entropy_vector_pure(amps_of(psi), dims.values());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(v[i], ref[i], 1e-10);
  }
}

TEST(Entropy, PureAndDensityPathsAgree) {
  const auto psi = random_pure(PartyDims{2, 2, 3}, 5);
  const auto a = entropy_vector(psi);
  const auto b = entropy_vector(density_from_pure(psi));
  EXPECT_LT(a.max_abs_diff(b), 1e-10);
}

TEST(Purify, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(PartyDims{2, 3}, 1 + seed % 6, seed);
    const auto psi = purify(rho);
    EXPECT_EQ(psi.parties(), 3u);
    const auto back = reduced_density(psi, SubsystemMask::of({0, 1}));
    EXPECT_LT((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(entropy(psi, SubsystemMask::single(2)), von_neumann_entropy(rho), 1e-9);
  }
}

TEST(RandomPure, DeterministicPerSeed) {
  const PartyDims dims{2, 2, 2};
  EXPECT_EQ(random_pure(dims, 9).amplitudes(), random_pure(dims, 9).amplitudes());
  EXPECT_NE(random_pure(dims, 9).amplitudes(), random_pure(dims, 10).amplitudes());
}

TEST(PermuteParties, PermutesEntropies) {
  const auto psi = random_pure(PartyDims{2, 3, 4}, 3);
  const auto q = permute_parties(psi, {2, 0, 1});
  EXPECT_EQ(q.dims().values(), (std::vector<std::size_t>{4, 2, 3}));
  EXPECT_NEAR(entropy(q, SubsystemMask::single(0)), entropy(psi, SubsystemMask::single(2)), 1e-12);
  EXPECT_NEAR(entropy(q, SubsystemMask::single(1)), entropy(psi, SubsystemMask::single(0)), 1e-12);
  EXPECT_THROW(permute_parties(psi, {0, 0, 1}), InputError);
}

TEST(ApplyLocal, UnitaryLeavesEntropiesInvariant) {
  const auto psi = random_pure(PartyDims{2, 3, 2}, 8);
  const auto u = random_pure(PartyDims{3, 3}, 1);
  // A unitary from the QR factor of a random square matrix.
  CMatrix m(3, 3);
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = u.amplitudes()[i];
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(m).householderQ();
  const auto rotated = apply_local(psi, 1, q);
  EXPECT_LT(entropy_vector(rotated).max_abs_diff(entropy_vector(psi)), 1e-12);
  EXPECT_THROW(apply_local(psi, 1, CMatrix::Identity(2, 2)), InputError);
}

TEST(TensorProduct, EntropiesAdd) {
  const auto a = random_pure(PartyDims{2, 2}, 1);
  const auto b = random_pure(PartyDims{3, 2}, 2);
  const auto ab = tensor_product(a, b);
  EXPECT_EQ(ab.parties(), 4u);
  EXPECT_NEAR(entropy(ab, SubsystemMask::of({0, 2})),
              entropy(a, SubsystemMask::single(0)) + entropy(b, SubsystemMask::single(0)), 1e-12);
  // Grouping party 0 of each factor into one composite party.
  const auto g = tensor_product(a, b, PartyGrouping{{0, 1, 0, 2}}, kDefaultDimensionCap);
  EXPECT_EQ(g.dims().values(), (std::vector<std::size_t>{6, 2, 2}));
  EXPECT_NEAR(entropy(g, SubsystemMask::single(0)),
              entropy(a, SubsystemMask::single(0)) + entropy(b, SubsystemMask::single(0)), 1e-12);
}

TEST(TensorProduct, DensityMatchesPure) {
  const auto a = random_pure(PartyDims{2}, 1);
  const auto b = random_pure(PartyDims{3}, 2);
  const auto rho = tensor_product(density_from_pure(a), density_from_pure(b));
  const auto pure = density_from_pure(tensor_product(a, b));
  EXPECT_LT((rho.matrix() - pure.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
