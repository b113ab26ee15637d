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
#include "qec/cone.hpp"
#include "qec/constructions.hpp"

namespace {

using namespace qec;

std::size_t nonzero_terms(const PureState& psi) {
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) k += std::abs(psi.amplitudes()[i]) > 1e-14;
  return k;
}

TEST(EvenPermutations, Counts) {
  EXPECT_EQ(even_permutations(3).size(), 3u);
  EXPECT_EQ(even_permutations(4).size(), 12u);
  EXPECT_EQ(even_permutations(5).size(), 60u);
  EXPECT_EQ(even_permutations(3)[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(VState, FourParties) {
  const auto r = v_state(4);
  EXPECT_EQ(nonzero_terms(r.state), 16u);
  EXPECT_TRUE(r.consistent());
  EXPECT_LT(r.max_marginal_residual, 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(entropy(r.state, SubsystemMask::single(i)), 2.0, 1e-12);
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_LT(std::abs(mutual_information(r.state, i, j)), 1e-9);
  }
  const auto abc = marginal_entropy_vector(r.state, SubsystemMask::of({0, 1, 2}));
  EXPECT_LT(abc.max_abs_diff(EntropyVector::from_paper_order({2, 2, 2, 4, 4, 4, 2})), 1e-8);
}

TEST(VState, ThreeAndFiveParties) {
  const auto v3 = v_state(3);
  EXPECT_TRUE(v3.consistent());
  // For three parties the pairs are not products.
  EXPECT_NEAR(mutual_information(v3.state, 0, 1), std::log2(3.0), 1e-12);
  const auto v5 = v_state(5);
  EXPECT_TRUE(v5.consistent());
  EXPECT_LT(v5.max_marginal_residual, 1e-12);
  EXPECT_THROW(v_state(2), InputError);
  EXPECT_THROW(v_state(6), InputError);
}

TEST(VState, AgreesWithOracleEntropies) {
  const auto r = v_state(4);
  const std::vector<oracle::cd> amps(r.state.amplitudes().data(),
                                     r.state.amplitudes().data() + r.state.amplitudes().size());
  const auto ref = oracle::entropy_vector_pure(amps, r.state.dims().values());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(r.verified[i], ref[i], 1e-9);
}

TEST(WState, ProportionalToV4) {
  const auto w = w_state(4);
  const auto v = v_state(4);
  EXPECT_TRUE(w.consistent());
  const double f = std::log2(3.0) / 2.0;
  for (std::size_t i = 0; i < w.verified.size(); ++i) EXPECT_NEAR(w.verified[i], f * v.verified[i], 1e-8);
  // Explicit form of the first few terms: (1/3)|0000>, (1/3)|0111>.
  EXPECT_NEAR(std::abs(w.state.amplitudes()[0]), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::abs(w.state.amplitudes()[1 * 9 + 1 * 3 + 1]), 1.0 / 3.0, 1e-15);
}

TEST(WState, FirstPartyClaimsForLargerN) {
  for (std::size_t n : {5u, 6u}) {
    const auto w = w_state(n);
    EXPECT_TRUE(w.consistent()) << n;
    EXPECT_LT(w.max_marginal_residual, 1e-12) << n;
    EXPECT_NEAR(entropy(w.state, SubsystemMask::single(0)), std::log2(static_cast<double>(n - 1)), 1e-12);
  }
}

TEST(TildeV4, AlphaGrid) {
  double lo = 10, hi = -10;
  for (int k = 0; k < 10; ++k) {
    const double t = k / 9.0;
    // Interpolates between (1,0,0,0) and the uniform vector.
    const double p = 1.0 - 0.75 * t;
    const double q = std::sqrt((1.0 - p) / 3.0);
    const auto r = tilde_v4({Complex(std::sqrt(p)), Complex(q), Complex(q), Complex(q)});
    const double alpha = shannon_entropy({p, q * q, q * q, q * q});
    EXPECT_LT(r.verified.max_abs_diff(
                  EntropyVector::from_paper_order({2, 2, 2, 2 + alpha, 2 + alpha, 2 + alpha, alpha})),
              1e-8);
    EXPECT_LT(r.max_marginal_residual, 1e-12);
    lo = std::min(lo, alpha);
    hi = std::max(hi, alpha);
  }
  EXPECT_NEAR(lo, 0.0, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
}

TEST(TildeV4, BasisCoefficientHasFourTerms) {
  const auto r = tilde_v4({Complex(1), Complex(0), Complex(0), Complex(0)});
  EXPECT_EQ(nonzero_terms(r.state), 4u);
  EXPECT_NEAR(entropy(r.state, SubsystemMask::single(3)), 0.0, 1e-12);
  EXPECT_THROW(tilde_v4({Complex(1), Complex(1), Complex(0), Complex(0)}), InputError);
}

TEST(DiagonalBipartite, EntropyIsShannon) {
  const auto c = coefficients_for_entropy(0.7, 3);
  const auto psi = diagonal_bipartite(c);
  EXPECT_NEAR(entropy(psi, SubsystemMask::single(0)), 0.7, 1e-12);
  EXPECT_THROW(coefficients_for_entropy(2.0, 3), InputError);
  EXPECT_EQ(coefficients_for_entropy(0.0, 2)[0], Complex(1.0));
}

TEST(Family, GridMatchesClosedForm) {
  const double grid[3] = {0.0, 0.5, 1.0};
  for (double a : {0.0, 1.0, 2.0})
    for (double b : grid)
      for (double g : grid)
        for (double d : grid) {
          const auto p = FamilyParams::from_entropies(a, b, g, d);
          const auto r = four_param_family(p);
          EXPECT_LT(r.verified.max_abs_diff(family_vector(a, b, g, d)), 1e-8) << a << b << g << d;
          if (a > 0) EXPECT_TRUE(corollary_conditions(r.verified).holds);
        }
}

TEST(Family, PureAlpha) {
  const auto r = four_param_family(FamilyParams::from_entropies(2, 0, 0, 0));
  EXPECT_EQ(r.claimed.paper_order(), (std::vector<double>{2, 2, 2, 4, 4, 4, 2}));
  EXPECT_EQ(r.state.dims().values(), (std::vector<std::size_t>{16, 16, 16, 4}));
}

}  // namespace
