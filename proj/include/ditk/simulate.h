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

// Monte Carlo runs of the entropy-accumulation protocol with an honest IID
// device, per round and in blocks.
//
// Randomness: each (seed, trial) pair seeds its own std::mt19937_64 through
// std::seed_seq{seed_lo, seed_hi, trial_lo, trial_hi}; uniforms are the top
// 53 bits of one draw. Draws per round, in order:
//   test flag; test rounds: x, y, a, win; generation rounds: a, disagree.
// Test rounds use x, y in {0,1} and b = a xor x*y xor (1 - win), so the
// record is a CHSH round with the sampled outcome. Generation rounds use
// (x, y) = (0, 2).

#ifndef DITK_SIMULATE_H_
#define DITK_SIMULATE_H_

#include <cstdint>
#include <vector>

#include "ditk/eat.h"

namespace ditk {

struct HonestDevice {
  double omega_exp = 0.81;  // CHSH winning probability in test rounds
  double qber = 0;          // disagreement probability in generation rounds

  void Validate() const;
};

struct SimulationConfig {
  bool block_mode = false;
  std::int64_t n = 10000;  // rounds, or blocks in block mode
  double gamma = 0.5;
  int s_max = 1;           // block mode only
  double omega_threshold = 0.81;
  double delta_est = 0.02;
  HonestDevice device;

  void Validate() const;
  // Abort iff the win count falls below this.
  double AbortThreshold() const;
  // exp(-2 n delta_est^2), n counted in rounds or blocks.
  double HoeffdingBound() const;
};

struct RoundRecord {
  bool test = false;
  int x = 0, y = 0, a = 0, b = 0;
  int w = -1;  // -1 stands for no statistic (generation round)
};

struct Transcript {
  std::vector<RoundRecord> rounds;  // empty unless requested
  std::vector<int> block_wins;      // block mode: -1, 0 or 1 per block
  bool aborted = false;
  std::int64_t win_count = 0;
  std::int64_t test_count = 0;
  std::int64_t round_count = 0;
  std::int64_t generation_count = 0;
  std::int64_t disagreements = 0;  // generation rounds with a != b
};

// Per-round protocol; ignores s_max and block_mode.
Transcript RunProtocol(const SimulationConfig& config, std::uint64_t seed,
                       std::uint64_t trial = 0, bool keep_rounds = true);
// Blocks end at the first test round or after s_max rounds; config.n is the
// block count.
Transcript RunProtocolBlocks(const SimulationConfig& config, std::uint64_t seed,
                             std::uint64_t trial = 0, bool keep_rounds = true);

struct Interval {
  double lo = 0;
  double hi = 0;
};

// 95% Wilson score interval.
Interval WilsonInterval(std::int64_t successes, std::int64_t trials);

struct AbortEstimate {
  std::int64_t trials = 0;
  std::int64_t aborts = 0;
  double frequency = 0;
  Interval ci;
  double hoeffding_bound = 0;
};

// Trials run in parallel; trial i always uses (seed, i).
AbortEstimate EstimateAbortProbability(const SimulationConfig& config,
                                       std::int64_t trials, std::uint64_t seed);

struct RoundCountStats {
  double expected_rounds = 0;  // m * expected block length
  double tail_t = 0;           // RoundCountTail(m, gamma, eps_t)
  double mean_rounds = 0;
  std::int64_t tail_count = 0;  // trials with N > expected + t
  double tail_frequency = 0;
  Interval ci;
};

RoundCountStats RoundCountStatistics(std::int64_t m_blocks,
                                     const BlockSpec& block,
                                     const HonestDevice& device,
                                     std::int64_t trials, std::uint64_t seed,
                                     double eps_t);

}  // namespace ditk

#endif  // DITK_SIMULATE_H_
