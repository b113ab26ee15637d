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

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qec/cone.hpp"
#include "qec/constructions.hpp"

namespace {

using namespace qec;

EntropyVector ell(double c) { return EntropyVector::from_paper_order({c, c, c, 2 * c, 2 * c, 2 * c, c}); }

std::set<std::map<std::uint32_t, int>> rows_as_maps(std::size_t n) {
  std::set<std::map<std::uint32_t, int>> out;
  for (const auto& h : generate_inequalities(n)) {
    std::map<std::uint32_t, int> row;
    for (const auto& [m, c] : h.terms) row[m.bits()] = c;
    out.insert(row);
  }
  return out;
}

bool has_tag(const std::vector<std::string>& tags, const std::string& t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

TEST(Inequalities, MatchEnumerationOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto lib = generate_inequalities(n);
    const auto ref = oracle::sigma_rows(n);
    EXPECT_EQ(lib.size(), ref.size()) << "n=" << n;
    EXPECT_EQ(rows_as_maps(n), ref) << "n=" << n;
  }
}

TEST(Inequalities, TwoPartyRows) {
  // Subadditivity and the two Araki-Lieb rows.
  const auto rows = generate_inequalities(2);
  ASSERT_EQ(rows.size(), 3u);
  const auto v = EntropyVector(2, {1.0, 0.5, 0.5});
  std::vector<double> margins;
  for (const auto& h : rows) margins.push_back(h.evaluate(v));
  std::sort(margins.begin(), margins.end());
  EXPECT_EQ(margins, (std::vector<double>{0.0, 1.0, 1.0}));
}

TEST(Inequalities, NamedRowsPresentForThreeParties) {
  const auto rows = generate_inequalities(3);
  for (const char* kind : {"I", "II", "III", "IV"})
    for (const char* pair : {"AB", "AC", "BC"}) {
      const std::string tag = std::string(kind) + "_" + pair;
      EXPECT_TRUE(std::any_of(rows.begin(), rows.end(), [&](const Halfspace& h) { return h.tag == tag; })) << tag;
    }
  EXPECT_EQ(n3_named_inequalities().size(), 12u);
}

TEST(Membership, RandomStatesInside) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const auto v = entropy_vector(random_density(PartyDims(std::vector<std::size_t>(n, 2)), 1 + seed % 3, seed));
    const auto r = membership(v);
    EXPECT_TRUE(r.inside);
    for (const auto& m : r.margins) EXPECT_GE(m.value, -1e-8) << m.tag;
  }
}

TEST(Membership, NegativeEntryViolates) {
  const auto r = membership(EntropyVector::from_paper_order({-0.5, 1, 1, 1, 1, 1, 1}));
  EXPECT_FALSE(r.inside);
  EXPECT_FALSE(r.violated.empty());
}

TEST(Membership, Ghz3BothBranches) {
  CVector v = CVector::Zero(8);
  v[0] = v[7] = 1.0 / std::sqrt(2.0);
  const auto e = entropy_vector(PureState(PartyDims{2, 2, 2}, v));
  const auto r = membership(e);
  EXPECT_TRUE(r.inside);
  EXPECT_EQ(r.sigma3_branch, Sigma3Branch::Both);
  EXPECT_EQ(sigma3_branch(e), Sigma3Branch::Both);
}

TEST(Membership, LineIsInMinusBranch) {
  EXPECT_EQ(sigma3_branch(ell(1.0)), Sigma3Branch::Minus);
  const auto r = membership(ell(1.0), 1e-8, 1e-8);
  for (const char* t : {"I_AB", "I_AC", "I_BC", "III_AB", "III_AC", "III_BC"}) EXPECT_TRUE(has_tag(r.saturated, t));
  EXPECT_THROW(sigma3_branch(EntropyVector::from_paper_order({-1, 1, 1, 1, 1, 1, 1})), InputError);
}

TEST(Membership, BranchwiseAgreesWithSigma3) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  int inside = 0;
  for (int k = 0; k < 2000; ++k) {
    std::vector<double> vals(7);
    for (auto& x : vals) x = u(rng);
    const EntropyVector v(3, vals);
    const bool a = membership(v).inside;
    EXPECT_EQ(a, sigma3_branchwise_inside(v));
    inside += a;
  }
  EXPECT_GT(inside, 0);
}

TEST(LineCheck, Scales) {
  EXPECT_TRUE(line_ell_check(ell(0.3)).on_line);
  EXPECT_TRUE(line_ell_check(ell(2.0)).on_line);
  EXPECT_FALSE(line_ell_check(EntropyVector::from_paper_order({1, 1, 1, 1, 1, 1, 0})).on_line);
  EXPECT_EQ(ell_direction().values(), ell(1.0).values());
}

TEST(Corollary, ConditionsOnLine) {
  EXPECT_TRUE(corollary_conditions(ell(0.5)).holds);
  EXPECT_FALSE(corollary_conditions(EntropyVector::zero(3)).holds);
  EXPECT_THROW(corollary_conditions(EntropyVector::zero(2)), InputError);
}

TEST(TipBounds, ExcludedSegment) {
  const auto t03 = tip_bounds(ell(0.3));
  EXPECT_TRUE(t03.conditions_met);
  EXPECT_EQ(t03.n_prime, 4u);
  EXPECT_NEAR(t03.refined_threshold, oracle::binary_entropy(1.0 / 8.0), 1e-15);
  EXPECT_FALSE(t03.refined_pass);
  EXPECT_TRUE(t03.exclusion_advisory);
  EXPECT_EQ(t03.status, "excluded");

  const auto t02 = tip_bounds(ell(0.2));
  EXPECT_NEAR(t02.corollary_sum, 0.8, 1e-15);
  EXPECT_TRUE(has_tag(t02.triggered_by, "corollary"));

  const auto t1 = tip_bounds(ell(1.0));
  EXPECT_NEAR(t1.corollary_sum, 4.0, 1e-15);
  EXPECT_FALSE(t1.exclusion_advisory);
  EXPECT_EQ(t1.status, "consistent");

  EXPECT_EQ(tip_bounds(EntropyVector::zero(3)).status, "conditions unmet");
}

TEST(TipBounds, RefinedThresholdCountsNonzeroEntries) {
  // Two nonzero entries among H(A), H(B), H(C), H(ABC): threshold h(1/4).
  const auto t = tip_bounds(EntropyVector::from_paper_order({0.5, 0.5, 0, 0.5, 0.5, 1.0, 0}));
  EXPECT_EQ(t.n_prime, 2u);
  EXPECT_NEAR(t.refined_threshold, oracle::binary_entropy(0.25), 1e-15);
}

TEST(OrderingBounds, ConstructedStatesPass) {
  EXPECT_TRUE(n4_ordering_bounds(v_state(4).verified).passes);
  EXPECT_TRUE(n4_ordering_bounds(w_state(4).verified).passes);
  std::vector<double> vals(15, 0.1);
  EXPECT_FALSE(n4_ordering_bounds(EntropyVector(4, vals)).passes);
  EXPECT_THROW(n4_ordering_bounds(EntropyVector::zero(3)), InputError);
}

}  // namespace
