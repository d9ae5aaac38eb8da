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


#include "ditk/keyrates.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "ditk/entropy.h"

namespace ditk {
namespace {

double H(double p) { return BinaryEntropy(p); }

ProtocolParams Params(double n, double gamma, double qber, double delta) {
  ProtocolParams p;
  p.n = n;
  p.gamma = gamma;
  p.qber = qber;
  p.omega_exp = WernerOmegaFromQber(qber);
  p.delta_est = delta;
  return p;
}

EpsilonBudget Budget() {
  return EpsilonBudget::Make(1e-10, 1e-3, 3e-6, 3e-6, 3e-6);
}

TEST(HonestWernerTest, Examples) {
  auto [w0, q0] = HonestWerner(0);
  EXPECT_NEAR(w0, kOmegaQuantum, 1e-15);
  EXPECT_EQ(q0, 0);
  auto [w1, q1] = HonestWerner(1);
  EXPECT_NEAR(w1, 0.5, 1e-15);
  EXPECT_EQ(q1, 0.5);
  auto [w, q] = HonestWerner(0.1);
  EXPECT_NEAR(w, 0.81820, 5e-6);
  EXPECT_NEAR(q, 0.05, 1e-15);
  EXPECT_DOUBLE_EQ(WernerOmegaFromQber(0.05), w);
  EXPECT_THROW(HonestWerner(1.5), std::domain_error);
}

TEST(LeakEcTest, PlugIn) {
  const ProtocolParams p = Params(1e10, 1e-3, 0.025, 1e-3);
  const double e = 1e-10;
  const double expected =
      1e10 * (0.999 * H(0.025) + 1e-3 * H(p.omega_exp)) +
      1e5 * 4 * std::log2(2 * std::sqrt(2.0) + 1) *
          std::sqrt(2 * std::log2(8 / (e * e))) +
      std::log2(8 / (e * e) + 2 / (2 - e)) + std::log2(1 / e);
  EXPECT_NEAR(LeakEc(1e10, p, e, e), expected, 1e-9 * expected);
}

TEST(LeakEcTest, FirstOrderLimit) {
  const ProtocolParams p = Params(1e18, 1e-9, 0.03, 1e-3);
  EXPECT_NEAR(LeakEc(1e18, p, 1e-3, 1e-10) / 1e18, H(0.03), 1e-6);
  const ProtocolParams clean = Params(1e18, 1e-9, 0, 1e-3);
  EXPECT_NEAR(LeakEc(1e18, clean, 1e-3, 1e-10) / 1e18, 0, 1e-6);
  EXPECT_THROW(LeakEc(1e6, p, 1e-3, 1e-10, 1e-3), std::domain_error);
  EXPECT_THROW(LeakEc(1e6, p, 0, 1e-10), std::domain_error);
}

TEST(SmoothingCorrectionTest, MatchesDirectFormula) {
  for (double eps : {0.9, 0.5, 1e-2}) {
    const double x = eps / 4;
    EXPECT_NEAR(SmoothingCorrection(eps), 3 * std::log2(1 - std::sqrt(1 - x * x)),
                1e-9);
  }
  // Tiny eps where the direct form cancels to zero: 1 - sqrt(1-x^2) ~ x^2/2.
  const double x = 1e-9 / 4;
  EXPECT_NEAR(SmoothingCorrection(1e-9), 3 * std::log2(x * x / 2), 1e-9);
}

TEST(ErrorTermsTest, IndependentlyTypedFormulas) {
  const EpsilonBudget b = EpsilonBudget::Make(1e-10, 2e-3, 1e-6, 2e-6, 3e-6);
  EXPECT_DOUBLE_EQ(SoundnessError(b), 2e-10 + 3e-6 + 1e-6 + 2e-6);
  const ProtocolParams p = Params(1e4, 0.1, 0.01, 0.01);
  EXPECT_NEAR(CompletenessError(p, b) - 2e-3 - 1e-10, std::exp(-2.0), 1e-15);
  EXPECT_NEAR(std::exp(-2.0), 0.1353, 1e-4);
  const ProtocolParams wide = Params(1e8, 0.1, 0.01, 0.1);
  EXPECT_NEAR(CompletenessError(wide, b), 2e-3 + 1e-10, 1e-18);
}

TEST(KeyLengthTest, BreakdownMatchesClosedForm) {
  const ProtocolParams p = Params(1e9, 5e-3, 0.02, 1e-4);
  const EpsilonBudget b = Budget();
  const RateReport r = KeyLength(p, b);
  EXPECT_NEAR(r.terms.Sum(), r.key_length, 1e-9 * std::abs(r.key_length));
  const double s4 = b.eps_s / 4;
  const double event = b.eps_ea + b.eps_ec;
  const double expected =
      p.n * r.mu.value - LeakEc(p.n, p, b.eps_ec_prime, b.eps_ec) -
      3 * std::log2(1 - std::sqrt(1 - s4 * s4)) - p.gamma * p.n -
      std::sqrt(p.n) * 2 * std::log2(7.0) * std::sqrt(1 - 2 * std::log2(s4 * event)) -
      2 * std::log2(1 / b.eps_pa);
  EXPECT_NEAR(r.key_length, expected, 1e-9 * std::abs(expected));
  EXPECT_DOUBLE_EQ(r.rate, r.key_length / p.n);
  const auto mu = MuOpt(p.omega_exp, p.delta_est, p.gamma, p.n, EatEpsilons{s4, event});
  EXPECT_EQ(r.mu.value, mu.value);
}

TEST(KeyLengthTest, DecreasingInQber) {
  double prev = 1e300;
  for (double q = 0; q <= 0.06; q += 0.005) {
    const double rate = KeyLength(Params(1e10, 1e-2, q, 1e-4), Budget()).rate;
    EXPECT_LT(rate, prev) << q;
    prev = rate;
  }
}

TEST(KeyLengthTest, AsymptoticLimit) {
  for (double q : {0.0, 0.01, 0.03}) {
    const double rate = OptimizeRate(1e15, q, RateCaps{}, RateMode::kBlock).rate;
    const double ideal = DwRate(SecrecyBound(WernerOmegaFromQber(q)), H(q));
    EXPECT_LT(rate, ideal);
    EXPECT_GT(rate, ideal - 5e-3) << q;
  }
}

TEST(KeyLengthTest, NegativeLengthReported) {
  EXPECT_LT(KeyLength(Params(1e4, 0.5, 0.05, 1e-2), Budget()).key_length, 0);
}

TEST(KeyLengthBlockTest, SingleRoundBlocksMatchPerRound) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const double n = std::pow(10.0, 6 + 6 * unit(rng));
    const double gamma = std::pow(10.0, -3 * unit(rng));
    const double q = 0.04 * unit(rng);
    const double delta = std::pow(10.0, -4 - 2 * unit(rng));
    const ProtocolParams p = Params(n, gamma, q, delta);
    const RateReport block = KeyLengthBlock(p, Budget(), 1);
    const RateReport round = KeyLength(p, Budget());
    EXPECT_EQ(block.tail_t, 0);
    EXPECT_NEAR(block.rate, round.rate, 1e-9) << trial;
  }
}

TEST(KeyLengthBlockTest, TailAndConstraints) {
  EpsilonBudget b = Budget();
  b.eps_t = 1e-20;
  const RateReport full = KeyLengthBlock(Params(1e8, 1, 0.01, 1e-3), b, 4);
  EXPECT_EQ(full.tail_t, 0);
  const RateReport r = KeyLengthBlock(Params(1e8, 0.05, 0.01, 1e-3), b, 20);
  EXPECT_GT(r.tail_t, 0);
  EXPECT_DOUBLE_EQ(r.effective_rounds, 1e8 + r.tail_t);
  EXPECT_NEAR(r.terms.Sum(), r.key_length, 1e-9 * std::abs(r.key_length));
  b.eps_t = 0;
  EXPECT_THROW(KeyLengthBlock(Params(1e8, 0.05, 0.01, 1e-3), b, 20),
               std::domain_error);
  b.eps_t = 1e-12;  // sqrt(eps_t) = 1e-6 exceeds eps_s / 4
  EXPECT_THROW(KeyLengthBlock(Params(1e8, 0.05, 0.01, 1e-3), b, 20),
               std::domain_error);
}

TEST(OptimizeRateTest, RespectsCapsAndBeatsFixedChoice) {
  const RateCaps caps;
  const RateReport r = OptimizeRate(1e10, 0.005, caps, RateMode::kBlock);
  EXPECT_LE(r.soundness_error, caps.soundness * (1 + 1e-12));
  EXPECT_NEAR(r.soundness_error, caps.soundness, 1e-12 * caps.soundness);
  EXPECT_LE(r.completeness_error, caps.completeness * (1 + 1e-12));
  EXPECT_NEAR(r.rate, 0.810984, 0.01);
  EpsilonBudget b = Budget();
  b.eps_t = 1e-14;
  const double fixed = KeyLengthBlock(Params(1e10, 1e-2, 0.005, 1e-4), b, 100).rate;
  EXPECT_GE(r.rate, fixed);
}

TEST(OptimizeRateTest, RejectsInfeasibleCaps) {
  RateCaps caps;
  caps.soundness = 1e-10;
  EXPECT_THROW(OptimizeRate(1e8, 0.01, caps, RateMode::kPerRound),
               std::domain_error);
  EXPECT_THROW(OptimizeRate(1e8, 0.5, RateCaps{}, RateMode::kPerRound),
               std::domain_error);
}

TEST(RateCurveTest, GridOrderAndMonotone) {
  const std::vector<double> qs = {0.0, 0.01, 0.02};
  const auto by_q = RateCurve(RateAxis::kQber, qs, 1e9, RateCaps{},
                              RateMode::kPerRound);
  ASSERT_EQ(by_q.size(), qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    EXPECT_EQ(by_q[i].params.qber, qs[i]);
    if (i > 0) EXPECT_LT(by_q[i].rate, by_q[i - 1].rate);
  }
  const auto by_n = RateCurve(RateAxis::kRounds, {1e8, 1e10}, 0.01, RateCaps{},
                              RateMode::kPerRound);
  EXPECT_LT(by_n[0].rate, by_n[1].rate);
}

}  // namespace
}  // namespace ditk
