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

// Finite-size key length of the CHSH-based device-independent QKD protocol,
// its error budget, and rate optimization over the free protocol parameters.

#ifndef DITK_KEYRATES_H_
#define DITK_KEYRATES_H_

#include <string>
#include <utility>
#include <vector>

#include "ditk/eat.h"

namespace ditk {

struct ProtocolParams {
  double n = 1e8;  // rounds; the expected round count in block mode
  double gamma = 1e-2;
  double omega_exp = 0.85;
  double delta_est = 1e-3;
  double qber = 0;

  void Validate() const;
};

struct EpsilonBudget {
  double eps_ec = 1e-10;
  double eps_ec_prime = 1e-3;  // always eps_ec_complete - eps_ec
  double eps_ec_complete = 1e-3 + 1e-10;
  double eps_s = 1e-6;
  double eps_ea = 1e-6;
  double eps_pa = 1e-6;
  double eps_t = 0;  // block mode only

  static EpsilonBudget Make(double eps_ec, double eps_ec_complete, double eps_s,
                            double eps_ea, double eps_pa, double eps_t = 0);
  void Validate() const;
};

// Signed contributions to the key length; they sum to it.
struct RateTerms {
  double entropy = 0;                // + accumulated smooth min-entropy
  double leak_ec = 0;                // - error-correction leakage
  double smoothing = 0;              // - 3 log2(1 - sqrt(1 - (eps_s/4)^2))
  double max_entropy = 0;            // - test-round max-entropy bound
  double privacy_amplification = 0;  // - 2 log2(1/eps_pa)

  double Sum() const {
    return entropy + leak_ec + smoothing + max_entropy + privacy_amplification;
  }
};

struct RateReport {
  double key_length = 0;
  double rate = 0;  // key_length / n
  RateTerms terms;
  double soundness_error = 0;
  double completeness_error = 0;
  MuOptResult mu;
  ProtocolParams params;
  EpsilonBudget budget;
  bool block_mode = false;
  int s_max = 1;
  double m_blocks = 0;
  double tail_t = 0;
  double effective_rounds = 0;  // n, or n + t in block mode
};

// (omega, Q) of the honest device built on a Werner state with noise nu.
std::pair<double, double> HonestWerner(double nu);
// Winning probability of the Werner device with bit error rate Q = nu / 2.
double WernerOmegaFromQber(double qber);

// Leakage bound of one-way error correction. `sqrt_eps_t` shrinks the
// smoothing of the sqrt term by 2 sqrt(eps_t), as used in block mode.
double LeakEc(double n_eff, const ProtocolParams& params, double eps_ec_prime,
              double eps_ec, double sqrt_eps_t = 0);

// 3 log2(1 - sqrt(1 - x^2)) for x = eps_s / 4, evaluated without
// cancellation.
double SmoothingCorrection(double eps_s);

double SoundnessError(const EpsilonBudget& budget);
// eps_ec_complete + eps_ec + exp(-2 n delta^2), with n = params.n.
double CompletenessError(const ProtocolParams& params,
                         const EpsilonBudget& budget);

// Per-round key length. A negative length is reported as is.
RateReport KeyLength(const ProtocolParams& params, const EpsilonBudget& budget);

// Block variant; params.n is the expected round count. For s_max = 1 the
// block lengths are deterministic, so t = 0 and eps_t plays no role.
RateReport KeyLengthBlock(const ProtocolParams& params,
                          const EpsilonBudget& budget, int s_max);

enum class RateMode { kPerRound, kBlock };

const char* RateModeName(RateMode mode);

struct RateCaps {
  double soundness = 1e-5;
  double completeness = 1e-2;
  double eps_ec = 1e-10;

  void Validate() const;
};

// Maximizes the key rate at fixed n and Q over gamma, delta_est, the
// soundness split (eps_s, eps_ea, eps_pa) and, in block mode, eps_t with
// s_max = ceil(1/gamma). Soundness is used in full; completeness stays
// within its cap. Throws std::domain_error when no feasible point is found.
RateReport OptimizeRate(double n, double qber, const RateCaps& caps,
                        RateMode mode);

enum class RateAxis { kQber, kRounds };

// One OptimizeRate per grid value; the other coordinate is `fixed`.
// Points run in parallel and come back in grid order.
std::vector<RateReport> RateCurve(RateAxis axis, const std::vector<double>& grid,
                                  double fixed, const RateCaps& caps,
                                  RateMode mode);

}  // namespace ditk

#endif  // DITK_KEYRATES_H_
