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

#include "ditk/simulate.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ditk/parallel.h"

namespace ditk {
namespace {

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }
  int Bit() { return Uniform() < 0.5 ? 1 : 0; }

 private:
  std::mt19937_64 engine_;
};

// One round; returns the recorded statistic (-1 for generation rounds).
int PlayRound(TrialRng& rng, double gamma, const HonestDevice& device,
              Transcript& t, bool keep) {
  RoundRecord r;
  r.test = rng.Bernoulli(gamma);
  ++t.round_count;
  if (r.test) {
    r.x = rng.Bit();
    r.y = rng.Bit();
    r.a = rng.Bit();
    r.w = rng.Bernoulli(device.omega_exp) ? 1 : 0;
    r.b = r.a ^ (r.x & r.y) ^ (1 - r.w);
    ++t.test_count;
    t.win_count += r.w;
  } else {
    r.x = 0;
    r.y = 2;
    r.a = rng.Bit();
    const bool disagree = rng.Bernoulli(device.qber);
    r.b = disagree ? 1 - r.a : r.a;
    ++t.generation_count;
    t.disagreements += disagree ? 1 : 0;
  }
  if (keep) t.rounds.push_back(r);
  return r.w;
}

}  // namespace

void HonestDevice::Validate() const {
  if (!(omega_exp >= 0 && omega_exp <= 1) || !(qber >= 0 && qber <= 1)) {
    throw std::invalid_argument("honest device rates must lie in [0,1]");
  }
}

void SimulationConfig::Validate() const {
  device.Validate();
  if (n < 1) throw std::invalid_argument("simulation needs n >= 1");
  if (!(gamma > 0 && gamma <= 1)) {
    throw std::invalid_argument("gamma must lie in (0,1]");
  }
  if (block_mode && s_max < 1) {
    throw std::invalid_argument("s_max must be at least 1");
  }
  if (!(omega_threshold >= 0 && omega_threshold <= 1) || !(delta_est >= 0)) {
    throw std::invalid_argument("threshold parameters out of range");
  }
}

double SimulationConfig::AbortThreshold() const {
  const double rate = block_mode
                          ? omega_threshold * BlockTestProbability({gamma, s_max})
                          : omega_threshold * gamma;
  return (rate - delta_est) * static_cast<double>(n);
}

double SimulationConfig::HoeffdingBound() const {
  return std::exp(-2.0 * static_cast<double>(n) * delta_est * delta_est);
}

Transcript RunProtocol(const SimulationConfig& config, std::uint64_t seed,
                       std::uint64_t trial, bool keep_rounds) {
  config.Validate();
  TrialRng rng(seed, trial);
  Transcript t;
  if (keep_rounds) t.rounds.reserve(static_cast<std::size_t>(config.n));
  for (std::int64_t i = 0; i < config.n; ++i) {
    PlayRound(rng, config.gamma, config.device, t, keep_rounds);
  }
  t.aborted = static_cast<double>(t.win_count) < config.AbortThreshold();
  return t;
}

Transcript RunProtocolBlocks(const SimulationConfig& config, std::uint64_t seed,
                             std::uint64_t trial, bool keep_rounds) {
  config.Validate();
  if (config.s_max < 1) throw std::invalid_argument("s_max must be >= 1");
  TrialRng rng(seed, trial);
  Transcript t;
  t.block_wins.reserve(static_cast<std::size_t>(config.n));
  for (std::int64_t j = 0; j < config.n; ++j) {
    int block_w = -1;
    for (int s = 0; s < config.s_max; ++s) {
      const int w = PlayRound(rng, config.gamma, config.device, t, keep_rounds);
      if (w >= 0) {
        block_w = w;
        break;
      }
    }
    t.block_wins.push_back(block_w);
  }
  SimulationConfig blocks = config;
  blocks.block_mode = true;
  t.aborted = static_cast<double>(t.win_count) < blocks.AbortThreshold();
  return t;
}

Interval WilsonInterval(std::int64_t successes, std::int64_t trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson interval needs 0 <= k <= n, n >= 1");
  }
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

AbortEstimate EstimateAbortProbability(const SimulationConfig& config,
                                       std::int64_t trials,
                                       std::uint64_t seed) {
  config.Validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<char> aborted(static_cast<std::size_t>(trials), 0);
  ParallelFor(aborted.size(), [&](std::size_t i) {
    const Transcript t = config.block_mode
                             ? RunProtocolBlocks(config, seed, i, false)
                             : RunProtocol(config, seed, i, false);
    aborted[i] = t.aborted ? 1 : 0;
  });
  AbortEstimate out;
  out.trials = trials;
  for (char c : aborted) out.aborts += c;
  out.frequency = static_cast<double>(out.aborts) / static_cast<double>(trials);
  out.ci = WilsonInterval(out.aborts, trials);
  out.hoeffding_bound = config.HoeffdingBound();
  return out;
}

RoundCountStats RoundCountStatistics(std::int64_t m_blocks,
                                     const BlockSpec& block,
                                     const HonestDevice& device,
                                     std::int64_t trials, std::uint64_t seed,
                                     double eps_t) {
  block.Validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  SimulationConfig config;
  config.block_mode = true;
  config.n = m_blocks;
  config.gamma = block.gamma;
  config.s_max = block.s_max;
  config.device = device;
  config.delta_est = 0;
  config.omega_threshold = 0;
  std::vector<std::int64_t> rounds(static_cast<std::size_t>(trials));
  ParallelFor(rounds.size(), [&](std::size_t i) {
    rounds[i] = RunProtocolBlocks(config, seed, i, false).round_count;
  });
  RoundCountStats out;
  const double m = static_cast<double>(m_blocks);
  out.expected_rounds = m * ExpectedBlockLength(block);
  out.tail_t = RoundCountTail(m, block.gamma, eps_t);
  double sum = 0;
  for (std::int64_t r : rounds) {
    sum += static_cast<double>(r);
    // Strict: at gamma = 1 the count equals its mean and t = 0.
    if (static_cast<double>(r) > out.expected_rounds + out.tail_t) {
      ++out.tail_count;
    }
  }
  out.mean_rounds = sum / static_cast<double>(trials);
  out.tail_frequency =
      static_cast<double>(out.tail_count) / static_cast<double>(trials);
  out.ci = WilsonInterval(out.tail_count, trials);
  return out;
}

}  // namespace ditk
