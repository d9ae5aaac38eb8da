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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "ditk/entropy.h"
#include "ditk/parallel.h"

namespace ditk {
namespace {

const double kLog2TauQubit = std::log2(2 * std::sqrt(2.0) + 1);

bool InOpenUnit(double v) { return v > 0 && v < 1; }

}  // namespace

void ProtocolParams::Validate() const {
  if (!(n >= 1)) throw std::domain_error("round count must be at least 1");
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  if (!InOpenUnit(delta_est)) throw std::domain_error("delta_est outside (0,1)");
  if (!InQuantumChshRegime(omega_exp)) {
    throw std::domain_error("omega_exp outside the quantum CHSH regime");
  }
  if (!(qber >= 0 && qber <= 0.5)) throw std::domain_error("Q outside [0,1/2]");
}

EpsilonBudget EpsilonBudget::Make(double eps_ec, double eps_ec_complete,
                                  double eps_s, double eps_ea, double eps_pa,
                                  double eps_t) {
  EpsilonBudget b;
  b.eps_ec = eps_ec;
  b.eps_ec_complete = eps_ec_complete;
  b.eps_ec_prime = eps_ec_complete - eps_ec;
  b.eps_s = eps_s;
  b.eps_ea = eps_ea;
  b.eps_pa = eps_pa;
  b.eps_t = eps_t;
  return b;
}

void EpsilonBudget::Validate() const {
  if (!InOpenUnit(eps_ec) || !InOpenUnit(eps_ec_prime) ||
      !InOpenUnit(eps_ec_complete) || !InOpenUnit(eps_s) ||
      !InOpenUnit(eps_ea) || !InOpenUnit(eps_pa)) {
    throw std::domain_error("every epsilon must lie in (0,1)");
  }
  if (!(eps_t >= 0 && eps_t < 1)) throw std::domain_error("eps_t outside [0,1)");
  const double expect = eps_ec_complete - eps_ec;
  if (std::abs(eps_ec_prime - expect) > 1e-12 * std::max(1e-300, eps_ec_complete)) {
    throw std::domain_error("eps_ec_prime must equal eps_ec_complete - eps_ec");
  }
}

std::pair<double, double> HonestWerner(double nu) {
  if (!(nu >= 0 && nu <= 1)) throw std::domain_error("Werner noise outside [0,1]");
  return {(2 + std::sqrt(2.0) * (1 - nu)) / 4, nu / 2};
}

double WernerOmegaFromQber(double qber) { return HonestWerner(2 * qber).first; }

double LeakEc(double n_eff, const ProtocolParams& params, double eps_ec_prime,
              double eps_ec, double sqrt_eps_t) {
  if (!InOpenUnit(eps_ec_prime) || !InOpenUnit(eps_ec)) {
    throw std::domain_error("error-correction epsilons must lie in (0,1)");
  }
  const double shifted = eps_ec_prime - 2 * sqrt_eps_t;
  if (!(shifted > 0)) throw std::domain_error("eps_ec_prime <= 2 sqrt(eps_t)");
  const double g = params.gamma;
  const double first =
      n_eff * ((1 - g) * BinaryEntropy(params.qber) +
               g * BinaryEntropy(params.omega_exp));
  const double second = std::sqrt(n_eff) * 4 * kLog2TauQubit *
                        std::sqrt(2 * std::log2(8 / (shifted * shifted)));
  const double third =
      std::log2(8 / (eps_ec_prime * eps_ec_prime) + 2 / (2 - eps_ec_prime));
  return first + second + third + std::log2(1 / eps_ec);
}

double SmoothingCorrection(double eps_s) {
  const double x = eps_s / 4;
  // 1 - sqrt(1 - x^2) = x^2 / (1 + sqrt(1 - x^2)).
  return 3 * std::log2(x * x / (1 + std::sqrt(1 - x * x)));
}

double SoundnessError(const EpsilonBudget& b) {
  return 2 * b.eps_ec + b.eps_pa + b.eps_s + b.eps_ea;
}

double CompletenessError(const ProtocolParams& p, const EpsilonBudget& b) {
  return b.eps_ec_complete + b.eps_ec +
         std::exp(-2 * p.n * p.delta_est * p.delta_est);
}

RateReport KeyLength(const ProtocolParams& params, const EpsilonBudget& budget) {
  params.Validate();
  budget.Validate();
  RateReport r;
  r.params = params;
  r.budget = budget;
  r.effective_rounds = params.n;
  const EatEpsilons eat{budget.eps_s / 4, budget.eps_ea + budget.eps_ec};
  r.mu = MuOpt(params.omega_exp, params.delta_est, params.gamma, params.n, eat);
  r.terms.entropy = EntropyLowerBound(params.n, r.mu.value);
  r.terms.leak_ec = -LeakEc(params.n, params, budget.eps_ec_prime, budget.eps_ec);
  r.terms.smoothing = -SmoothingCorrection(budget.eps_s);
  r.terms.max_entropy = -MaxEntropyUpper(params.n, params.gamma, budget.eps_s,
                                         budget.eps_ea, budget.eps_ec);
  r.terms.privacy_amplification = -2 * std::log2(1 / budget.eps_pa);
  r.key_length = r.terms.Sum();
  r.rate = r.key_length / params.n;
  r.soundness_error = SoundnessError(budget);
  r.completeness_error = CompletenessError(params, budget);
  return r;
}

RateReport KeyLengthBlock(const ProtocolParams& params,
                          const EpsilonBudget& budget, int s_max) {
  params.Validate();
  budget.Validate();
  const BlockSpec block{params.gamma, s_max};
  block.Validate();
  RateReport r;
  r.params = params;
  r.budget = budget;
  r.block_mode = true;
  r.s_max = s_max;
  r.m_blocks = params.n / ExpectedBlockLength(block);
  double sqrt_eps_t = 0;
  if (s_max > 1) {
    if (!(budget.eps_t > 0)) {
      throw std::domain_error("block mode with s_max > 1 needs eps_t > 0");
    }
    sqrt_eps_t = std::sqrt(budget.eps_t);
    r.tail_t = RoundCountTail(r.m_blocks, params.gamma, budget.eps_t);
  }
  if (!(sqrt_eps_t < budget.eps_s / 4)) {
    throw std::domain_error("sqrt(eps_t) must be below eps_s / 4");
  }
  if (!(2 * sqrt_eps_t < budget.eps_ec_prime)) {
    throw std::domain_error("2 sqrt(eps_t) must be below eps_ec_prime");
  }
  r.effective_rounds = params.n + r.tail_t;
  const double n_eff = r.effective_rounds;
  const double eps_event = budget.eps_ea + budget.eps_ec;
  r.mu = MuBlockOpt(params.omega_exp, params.delta_est, block, r.m_blocks,
                    EatEpsilons{budget.eps_s / 4, eps_event});
  r.terms.entropy = EntropyLowerBound(r.m_blocks, r.mu.value);
  r.terms.leak_ec =
      -LeakEc(n_eff, params, budget.eps_ec_prime, budget.eps_ec, sqrt_eps_t);
  r.terms.smoothing = -SmoothingCorrection(budget.eps_s);
  r.terms.max_entropy = -MaxEntropyUpperAt(
      n_eff, params.gamma, budget.eps_s / 4 - sqrt_eps_t, eps_event);
  r.terms.privacy_amplification = -2 * std::log2(1 / budget.eps_pa);
  r.key_length = r.terms.Sum();
  r.rate = r.key_length / params.n;
  r.soundness_error = SoundnessError(budget);
  r.completeness_error = CompletenessError(params, budget);
  return r;
}

const char* RateModeName(RateMode mode) {
  return mode == RateMode::kBlock ? "block" : "per-round";
}

void RateCaps::Validate() const {
  if (!InOpenUnit(soundness) || !InOpenUnit(completeness) || !InOpenUnit(eps_ec)) {
    throw std::domain_error("caps must lie in (0,1)");
  }
  if (!(soundness > 2 * eps_ec)) {
    throw std::domain_error("soundness cap must exceed 2 eps_ec");
  }
  if (!(completeness > 2 * eps_ec)) {
    throw std::domain_error("completeness cap must exceed 2 eps_ec");
  }
}

// ---------------------------------------------------------------------------
// Optimization.
//
// Coordinates:
//   z[0] = log10 gamma                        in [-4, 0]
//   z[1] = log10 delta_est                    in [-9, -1]
//   z[2] = log10(eps_pa / B)                  in [-12, log10 0.999]
//   z[3] = logit share of eps_s in B - eps_pa in [-15, 15]
//   z[4] = log10 eps_t (block mode only)      in [-60, -4]
// with B = soundness cap - 2 eps_ec, so the soundness cap is met with
// equality. eps_ec_complete takes what the completeness cap leaves.

namespace {

constexpr int kCoords = 5;
using Point = std::array<double, kCoords>;

const Point kLower = {-4, -9, -12, -15, -60};
const Point kUpper = {0, -1, std::log10(0.999), 15, -4};
constexpr double kInfeasible = -std::numeric_limits<double>::max();

int SMaxFor(double gamma) {
  return std::max(1, static_cast<int>(std::ceil(1 / gamma - 1e-9)));
}

class RateObjective {
 public:
  RateObjective(double n, double qber, const RateCaps& caps, RateMode mode)
      : n_(n), qber_(qber), caps_(caps), mode_(mode),
        omega_(WernerOmegaFromQber(qber)) {}

  int dims() const { return mode_ == RateMode::kBlock ? 5 : 4; }

  bool Build(const Point& z, ProtocolParams& p, EpsilonBudget& b,
             int& s_max) const {
    p.n = n_;
    p.qber = qber_;
    p.omega_exp = omega_;
    p.gamma = std::pow(10.0, z[0]);
    p.delta_est = std::pow(10.0, z[1]);
    const double budget = caps_.soundness - 2 * caps_.eps_ec;
    const double eps_pa = budget * std::pow(10.0, z[2]);
    const double rest = budget - eps_pa;
    const double share = 1 / (1 + std::exp(-z[3]));
    const double eps_s = rest * share;
    const double eps_ea = rest - eps_s;
    const double hoeffding = std::exp(-2 * n_ * p.delta_est * p.delta_est);
    const double eps_ec_complete = caps_.completeness - caps_.eps_ec - hoeffding;
    const double eps_t =
        mode_ == RateMode::kBlock ? std::pow(10.0, z[4]) : 0.0;
    if (!(eps_ec_complete > caps_.eps_ec) || !(eps_s > 0) || !(eps_ea > 0)) {
      return false;
    }
    b = EpsilonBudget::Make(caps_.eps_ec, eps_ec_complete, eps_s, eps_ea,
                            eps_pa, eps_t);
    s_max = mode_ == RateMode::kBlock ? SMaxFor(p.gamma) : 1;
    return true;
  }

  RateReport Report(const Point& z) const {
    ProtocolParams p;
    EpsilonBudget b;
    int s_max = 1;
    if (!Build(z, p, b, s_max)) throw std::domain_error("infeasible budget");
    return mode_ == RateMode::kBlock ? KeyLengthBlock(p, b, s_max)
                                     : KeyLength(p, b);
  }

  double operator()(const Point& z) const {
    try {
      return Report(z).rate;
    } catch (const std::domain_error&) {
      return kInfeasible;
    }
  }

 private:
  double n_, qber_;
  RateCaps caps_;
  RateMode mode_;
  double omega_;
};

}  // namespace

RateReport OptimizeRate(double n, double qber, const RateCaps& caps,
                        RateMode mode) {
  caps.Validate();
  if (!(n >= 1)) throw std::domain_error("round count must be at least 1");
  if (!(qber >= 0 && qber < 0.5)) throw std::domain_error("Q outside [0,1/2)");
  const RateObjective objective(n, qber, caps, mode);
  const int dims = objective.dims();

  // Equal split of the soundness budget to start with; eps_t well inside
  // its constraint.
  const double third = (caps.soundness - 2 * caps.eps_ec) / 3;
  Point best = {0, -3, std::log10(1.0 / 3), 0,
                std::clamp(2 * std::log10(third / 40), kLower[4], kUpper[4])};
  double best_value = kInfeasible;

  // Coarse grid over gamma (8 per decade) and delta_est (4 per decade).
  for (int i = 0; i <= 32; ++i) {
    for (int j = 0; j <= 32; ++j) {
      Point z = best;
      z[0] = -4 + i / 8.0;
      z[1] = -9 + j / 4.0;
      const double v = objective(z);
      if (v > best_value) {
        best_value = v;
        best = z;
      }
    }
  }
  if (best_value == kInfeasible) {
    throw std::domain_error("no feasible parameters for these caps");
  }

  // Cyclic coordinate refinement with Brent on a shrinking bracket.
  Point width = {0.25, 0.5, 3, 6, 10};
  for (int sweep = 0; sweep < 40; ++sweep) {
    const double before = best_value;
    for (int k = 0; k < dims; ++k) {
      const double lo = std::max(kLower[k], best[k] - width[k]);
      const double hi = std::min(kUpper[k], best[k] + width[k]);
      if (!(hi > lo)) continue;
      std::uintmax_t iters = 60;
      Point trial = best;
      const auto r = boost::math::tools::brent_find_minima(
          [&](double v) {
            trial[k] = v;
            return -objective(trial);
          },
          lo, hi, 24, iters);
      if (-r.second > best_value) {
        best_value = -r.second;
        best[k] = r.first;
      }
    }
    if (best_value - before < 1e-12) {
      for (double& w : width) w *= 0.5;
      if (width[0] < 1e-4) break;
    }
  }
  return objective.Report(best);
}

std::vector<RateReport> RateCurve(RateAxis axis, const std::vector<double>& grid,
                                  double fixed, const RateCaps& caps,
                                  RateMode mode) {
  std::vector<RateReport> out(grid.size());
  ParallelFor(grid.size(), [&](std::size_t i) {
    const double n = axis == RateAxis::kRounds ? grid[i] : fixed;
    const double q = axis == RateAxis::kQber ? grid[i] : fixed;
    out[i] = OptimizeRate(n, q, caps, mode);
  });
  return out;
}

}  // namespace ditk
