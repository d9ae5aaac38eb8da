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

// Min-tradeoff functions for the CHSH-based protocol and the finite-size
// entropy rate they yield, in the per-round and in the block variant.
//
// A test-statistic distribution p over {0, 1, untested} is represented by
// p1 = p(1) alone; p(0) + p(1) = gamma is implicit.

#ifndef DITK_EAT_H_
#define DITK_EAT_H_

namespace ditk {

struct TradeoffSpec {
  double gamma = 1;
  double p_cut1 = 0.8;  // cut point, as a value of p(1)

  void Validate() const;
};

struct EatEpsilons {
  double eps_s = 1e-6;  // smoothing
  double eps_e = 1e-6;  // event probability

  void Validate() const;
};

struct BlockSpec {
  double gamma = 1;
  int s_max = 1;

  void Validate() const;
};

// SecrecyBound(p1 / gamma), flat at 1 above the quantum maximum. Throws
// std::domain_error unless p1 / gamma lies in [3/4, 1].
double TradeoffG(double p1, double gamma);

// d/dp1 of TradeoffG at the cut; throws at or outside the open interval.
double TradeoffGSlope(double p_cut1, double gamma);

// TradeoffG up to the cut, its tangent at the cut beyond.
double FMin(double p1, const TradeoffSpec& spec);

// 2 (d_O + slope) sqrt(1 - 2 log2(eps_s eps_e)) / sqrt(n).
double SecondOrderPenalty(double n, double log2_dim, double slope,
                          const EatEpsilons& eps);

double Mu(double p1, const TradeoffSpec& spec, const EatEpsilons& eps, double n);

struct MuOptResult {
  double value = 0;
  double best_cut = 0;  // p(1) value for per-round, normalized for blocks
  double f_min = 0;
  double penalty = 0;
  double slope = 0;
  double p1 = 0;  // statistic at which the rate is evaluated
};

// Cut grid resolution and endpoint shrink of the optimizer.
inline constexpr int kCutGridPoints = 256;
inline constexpr double kCutEndpointShrink = 1e-9;

// Maximizes Mu(omega_exp * gamma - delta_est, cut) over cuts in the open
// interval (3/4 gamma, (2+sqrt2)/4 gamma). Throws std::domain_error when the
// statistic falls below 3/4 gamma.
MuOptResult MuOpt(double omega_exp, double delta_est, double gamma, double n,
                  const EatEpsilons& eps);

double EntropyLowerBound(double n, double mu_opt_value);

// gamma n + sqrt(n) 2 log2 7 sqrt(1 - 2 log2(smoothing * eps_event)).
double MaxEntropyUpperAt(double n, double gamma, double smoothing,
                         double eps_event);
// MaxEntropyUpperAt(n, gamma, eps_s / 4, eps_ea + eps_ec).
double MaxEntropyUpper(double n, double gamma, double eps_s, double eps_ea,
                       double eps_ec);

// Block mode. A block ends at its first test round or after s_max rounds.

// Probability that a block contains a test, 1 - (1-gamma)^s_max.
double BlockTestProbability(const BlockSpec& block);
// Expected block length (1 - (1-gamma)^s_max) / gamma.
double ExpectedBlockLength(const BlockSpec& block);

// log2(1 + 2 * 2^s * 3^s), evaluated without overflow.
double BlockLog2Dimension(int s_max);

// Per-block min-tradeoff function. The cut is given as a normalized winning
// probability in (3/4, (2+sqrt2)/4); the statistic p1_tilde ranges over
// [3/4 P, P] with P = BlockTestProbability.
double FMinBlock(double p1_tilde, const BlockSpec& block, double cut_omega);
// Slope of the per-block tangent, sbar * SecrecyBound'(cut) / P.
double FMinBlockSlope(const BlockSpec& block, double cut_omega);

double MuBlock(double p1_tilde, const BlockSpec& block, double cut_omega,
               const EatEpsilons& eps, double m_blocks);

// Maximizes MuBlock(omega_exp * P - delta_est, cut) over normalized cuts.
MuOptResult MuBlockOpt(double omega_exp, double delta_est,
                       const BlockSpec& block, double m_blocks,
                       const EatEpsilons& eps);

// t with exp(-2 t^2 gamma^2 / (m (1-gamma)^2)) = eps_t; zero at gamma = 1.
double RoundCountTail(double m_blocks, double gamma, double eps_t);

}  // namespace ditk

#endif  // DITK_EAT_H_
