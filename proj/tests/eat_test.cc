// Copyright 2026 The ditk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ditk/eat.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ditk/entropy.h"

namespace ditk {
namespace {

const double kLog2Of13 = std::log2(13.0);

struct RateCurve {
  double n;
  double eps;
};

// Parameter sets of the published finite-size rate curves (gamma = 1,
// delta_est = 1e-3, eps_s = eps_e).
const std::vector<RateCurve> kRateCurves = {
    {1e8, 1e-6}, {1e7, 1e-5}, {1e7, 1e-6}, {1e6, 1e-3},
    {1e6, 1e-4}, {1e6, 1e-5}, {1e5, 1e-3}};

TEST(TradeoffGTest, KnownValues) {
  for (double gamma : {1.0, 0.3}) {
    EXPECT_NEAR(TradeoffG(gamma * 0.75, gamma), 0, 1e-12);
    EXPECT_EQ(TradeoffG(gamma, gamma), 1);
    EXPECT_NEAR(TradeoffG(gamma * 0.8, gamma), SecrecyBound(0.8), 1e-15);
  }
  EXPECT_THROW(TradeoffG(0.7, 1), std::domain_error);
  EXPECT_THROW(TradeoffG(0.5, 0), std::domain_error);
}

TEST(TradeoffGTest, SlopeMatchesCentralDifferences) {
  for (double gamma : {1.0, 0.5, 0.05}) {
    for (double w = 0.755; w < 0.85; w += 0.005) {
      const double cut = w * gamma;
      const double step = 1e-7 * gamma;
      const double fd =
          (TradeoffG(cut + step, gamma) - TradeoffG(cut - step, gamma)) / (2 * step);
      const double slope = TradeoffGSlope(cut, gamma);
      EXPECT_GT(slope, 0);
      EXPECT_NEAR(slope, fd, 1e-6 * fd) << gamma << " " << w;
    }
  }
}

TEST(TradeoffGTest, SlopeDivergesAtUpperEnd) {
  // Logarithmic growth: each decade of the gap adds a similar increment.
  double prev = 0;
  for (double gap : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
    const double slope = TradeoffGSlope(kOmegaQuantum - gap, 1);
    EXPECT_GT(slope, prev + 5);
    prev = slope;
  }
  EXPECT_THROW(TradeoffGSlope(kOmegaQuantum, 1), std::domain_error);
  EXPECT_THROW(TradeoffGSlope(0.75, 1), std::domain_error);
}

TEST(FMinTest, EqualsGBelowCutTangentAbove) {
  const TradeoffSpec spec{0.5, 0.5 * 0.82};
  for (double w = 0.75; w <= 1.0; w += 0.0025) {
    const double p1 = w * spec.gamma;
    const double f = FMin(p1, spec);
    if (p1 <= spec.p_cut1) {
      EXPECT_EQ(f, TradeoffG(p1, spec.gamma));
    } else {
      const double tangent =
          TradeoffG(spec.p_cut1, spec.gamma) +
          TradeoffGSlope(spec.p_cut1, spec.gamma) * (p1 - spec.p_cut1);
      EXPECT_NEAR(f, tangent, 1e-15);
    }
    // Tangent of a convex function stays below it on the quantum regime.
    if (w <= kOmegaQuantum) {
      EXPECT_LE(f, TradeoffG(p1, spec.gamma) + 1e-12);
    }
  }
}

TEST(FMinTest, ContinuousAndDifferentiableAtCut) {
  const TradeoffSpec spec{1, 0.81};
  const double h = 1e-7;
  EXPECT_NEAR(FMin(spec.p_cut1 - h, spec), FMin(spec.p_cut1 + h, spec), 1e-5);
  const double left = (FMin(spec.p_cut1, spec) - FMin(spec.p_cut1 - h, spec)) / h;
  const double right = (FMin(spec.p_cut1 + h, spec) - FMin(spec.p_cut1, spec)) / h;
  EXPECT_NEAR(left, right, 1e-4 * right);
}

TEST(FMinTest, ConvexOnGrid) {
  const TradeoffSpec spec{1, 0.80};
  std::vector<double> v;
  for (int i = 0; i <= 1000; ++i) v.push_back(FMin(0.75 + 0.25 * i / 1000, spec));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    EXPECT_GE(v[i - 1] + v[i + 1] - 2 * v[i], -1e-12) << i;
  }
}

TEST(MuTest, BelowFMinWithInverseRootConvergence) {
  const TradeoffSpec spec{1, 0.815};
  const EatEpsilons eps{1e-6, 1e-6};
  const double slope = TradeoffGSlope(spec.p_cut1, spec.gamma);
  const double c_expected = 2 * (kLog2Of13 + slope) *
                            std::sqrt(1 - 2 * std::log2(eps.eps_s * eps.eps_e));
  const double p1 = 0.83;
  for (double n : {1e4, 1e6, 1e8, 1e12}) {
    EXPECT_LT(Mu(p1, spec, eps, n), FMin(p1, spec));
  }
  // Fit the 1/sqrt(n) coefficient from two round counts.
  const double n1 = 1e8, n2 = 1e10;
  const double c_measured = (Mu(p1, spec, eps, n2) - Mu(p1, spec, eps, n1)) /
                            (1 / std::sqrt(n1) - 1 / std::sqrt(n2));
  EXPECT_NEAR(c_measured, c_expected, 0.01 * c_expected);
  EXPECT_NEAR(Mu(p1, spec, eps, 1e30), FMin(p1, spec), 1e-9);
}

TEST(MuTest, PenaltyPositive) {
  EXPECT_GT(SecondOrderPenalty(1e6, kLog2Of13, 0.1, EatEpsilons{}), 0);
  EXPECT_THROW(SecondOrderPenalty(0, kLog2Of13, 1, EatEpsilons{}),
               std::domain_error);
  EXPECT_THROW(SecondOrderPenalty(1e6, kLog2Of13, 1, EatEpsilons{0, 0.1}),
               std::domain_error);
}

TEST(MuOptTest, PublishedPoint) {
  const auto r = MuOpt(0.820736, 1e-3, 1, 1e8, EatEpsilons{1e-6, 1e-6});
  EXPECT_NEAR(r.value, 0.502133, 2e-5);
  EXPECT_NEAR(r.value, r.f_min - r.penalty, 1e-15);
  EXPECT_DOUBLE_EQ(r.p1, 0.820736 - 1e-3);
}

TEST(MuOptTest, InteriorAndMatchesDenseGrid) {
  for (const RateCurve& curve : kRateCurves) {
    const EatEpsilons eps{curve.eps, curve.eps};
    for (double omega : {0.78, 0.80, 0.82, 0.84}) {
      const auto r = MuOpt(omega, 1e-3, 1, curve.n, eps);
      EXPECT_GT(r.best_cut, kOmegaClassical);
      EXPECT_LT(r.best_cut, kOmegaQuantum);
      double grid_max = -1e300;
      const int points = 10000;
      for (int i = 1; i <= points; ++i) {
        const double cut = kOmegaClassical +
                           (kOmegaQuantum - kOmegaClassical) * i / (points + 1);
        grid_max = std::max(grid_max,
                            Mu(omega - 1e-3, TradeoffSpec{1, cut}, eps, curve.n));
      }
      EXPECT_GE(r.value, grid_max - 1e-9) << curve.n << " " << omega;
      EXPECT_LE(r.value, TradeoffG(omega - 1e-3, 1));
    }
  }
}

TEST(MuOptTest, IncreasingInRoundCount) {
  double prev = -1e300;
  for (double n : {1e5, 1e6, 1e7, 1e8, 1e9, 1e10}) {
    const double v = MuOpt(0.82, 1e-3, 1, n, EatEpsilons{}).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MuOptTest, RejectsStatisticBelowClassical) {
  EXPECT_THROW(MuOpt(0.75, 1e-2, 1, 1e6, EatEpsilons{}), std::domain_error);
}

TEST(EntropyBoundsTest, LowerBoundLinear) {
  EXPECT_EQ(EntropyLowerBound(1e8, 0), 0);
  EXPECT_DOUBLE_EQ(EntropyLowerBound(2e8, 0.3), 2 * EntropyLowerBound(1e8, 0.3));
}

TEST(EntropyBoundsTest, MaxEntropyUpper) {
  const double root_term =
      1e3 * 2 * std::log2(7.0) * std::sqrt(1 - 2 * std::log2(1e-6 / 4 * 2e-6));
  EXPECT_NEAR(MaxEntropyUpper(1e6, 0, 1e-6, 1e-6, 1e-6), root_term,
              1e-9 * root_term);
  EXPECT_NEAR(MaxEntropyUpper(1e6, 0.01, 1e-6, 1e-6, 1e-6), 1e4 + root_term,
              1e-9 * root_term);
  const double big = MaxEntropyUpper(1e10, 0.01, 1e-10, 1e-10, 1e-10);
  EXPECT_GT(big, 1e8);
  EXPECT_LT(big, 1.1e8);
  EXPECT_THROW(MaxEntropyUpper(1e6, 0.1, 0, 1e-6, 1e-6), std::domain_error);
}

TEST(BlockTest, ExpectedLength) {
  EXPECT_EQ(ExpectedBlockLength(BlockSpec{0.3, 1}), 1);
  EXPECT_EQ(ExpectedBlockLength(BlockSpec{1, 50}), 1);
  EXPECT_NEAR(ExpectedBlockLength(BlockSpec{0.01, 100}),
              (1 - std::pow(0.99, 100)) / 0.01, 1e-12);
  EXPECT_NEAR(ExpectedBlockLength(BlockSpec{0.01, 100}), 63.40, 5e-3);
  EXPECT_THROW(ExpectedBlockLength(BlockSpec{0.1, 0}), std::domain_error);
}

TEST(BlockTest, Log2DimensionMatchesCount) {
  for (int s = 1; s <= 6; ++s) {
    EXPECT_NEAR(BlockLog2Dimension(s), std::log2(1 + 2 * std::pow(6.0, s)), 1e-12);
  }
  EXPECT_NEAR(BlockLog2Dimension(1), kLog2Of13, 1e-15);
}

TEST(BlockTest, SingleRoundBlocksReduceToPerRound) {
  for (double gamma : {1.0, 0.4, 0.02}) {
    for (double cut : {0.76, 0.8, 0.84}) {
      const BlockSpec block{gamma, 1};
      const TradeoffSpec spec{gamma, cut * gamma};
      for (double w = 0.75; w <= 1.0; w += 0.01) {
        const double p1 = w * gamma;
        EXPECT_NEAR(FMinBlock(p1, block, cut), FMin(p1, spec), 1e-12);
        EXPECT_NEAR(MuBlock(p1, block, cut, EatEpsilons{}, 1e7),
                    Mu(p1, spec, EatEpsilons{}, 1e7), 1e-12);
      }
    }
  }
}

TEST(BlockTest, FlatRegionAndContinuity) {
  const BlockSpec block{0.05, 20};
  const double prob = BlockTestProbability(block);
  const double sbar = ExpectedBlockLength(block);
  // Cut close to the top: past the quantum maximum the bound is flat at sbar
  // only before the cut, so check the scaled secrecy bound.
  EXPECT_NEAR(FMinBlock(0.8 * prob, block, 0.84), sbar * SecrecyBound(0.8), 1e-12);
  const double cut = 0.81;
  EXPECT_NEAR(FMinBlock(cut * prob * (1 - 1e-12), block, cut),
              FMinBlock(cut * prob * (1 + 1e-12), block, cut), 1e-9);
  EXPECT_GT(SecondOrderPenalty(1e6, BlockLog2Dimension(20),
                               FMinBlockSlope(block, cut), EatEpsilons{}),
            0);
}

TEST(BlockTest, OptimizerAtSingleRoundMatchesPerRound) {
  for (double gamma : {1.0, 0.5}) {
    const auto block = MuBlockOpt(0.83, 1e-3, BlockSpec{gamma, 1}, 1e8, EatEpsilons{});
    const auto round = MuOpt(0.83, 1e-3, gamma, 1e8, EatEpsilons{});
    EXPECT_NEAR(block.value, round.value, 1e-9);
  }
}

TEST(RoundCountTailTest, Examples) {
  EXPECT_EQ(RoundCountTail(1e6, 1, 1e-10), 0);
  // m (1-gamma)^2 / gamma^2 = 1 with gamma = 1/2, m = 1.
  EXPECT_NEAR(RoundCountTail(1, 0.5, std::exp(-2.0)), 1, 1e-14);
  EXPECT_NEAR(RoundCountTail(1e6, 0.01, 1e-10),
              std::sqrt(1e6 * 0.99 * 0.99 * 10 * std::log(10.0) / (2 * 1e-4)),
              1e-6);
  EXPECT_THROW(RoundCountTail(10, 0.5, 0), std::domain_error);
  EXPECT_THROW(RoundCountTail(10, 0, 0.1), std::domain_error);
}

}  // namespace
}  // namespace ditk
