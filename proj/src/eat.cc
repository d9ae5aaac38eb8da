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
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "ditk/entropy.h"

namespace ditk {
namespace {

const double kLog2Of13 = std::log2(13.0);

// Grid search then Brent refinement between the neighbours of the best grid
// point. Ties on the grid go to the smaller cut.
std::pair<double, double> MaximizeOnInterval(
    const std::function<double(double)>& f, double lo, double hi) {
  std::vector<double> xs(kCutGridPoints), vs(kCutGridPoints);
  int best = 0;
  for (int i = 0; i < kCutGridPoints; ++i) {
    xs[i] = lo + (hi - lo) * i / (kCutGridPoints - 1);
    vs[i] = f(xs[i]);
    if (vs[i] > vs[best]) best = i;
  }
  const double left = xs[best > 0 ? best - 1 : 0];
  const double right = xs[best + 1 < kCutGridPoints ? best + 1 : best];
  double x_best = xs[best], v_best = vs[best];
  if (right > left) {
    std::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::brent_find_minima(
        [&f](double x) { return -f(x); }, left, right,
        std::numeric_limits<double>::digits / 2, max_iter);
    if (-r.second > v_best) {
      x_best = r.first;
      v_best = -r.second;
    }
  }
  return {x_best, v_best};
}

void CheckStatistic(double p1, double scale) {
  const double w = p1 / scale;
  if (!(w >= kOmegaClassical - kClampSlack && w <= 1 + kClampSlack)) {
    throw std::domain_error("statistic outside the min-tradeoff domain");
  }
}

void CheckCut(double cut_omega) {
  if (!(cut_omega > kOmegaClassical && cut_omega < kOmegaQuantum)) {
    throw std::domain_error("cut outside the open interval (3/4, (2+sqrt2)/4)");
  }
}

}  // namespace

void TradeoffSpec::Validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  CheckCut(p_cut1 / gamma);
}

void EatEpsilons::Validate() const {
  if (!(eps_s > 0 && eps_s < 1 && eps_e > 0 && eps_e < 1)) {
    throw std::domain_error("epsilons must lie in (0,1)");
  }
}

void BlockSpec::Validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  if (s_max < 1) throw std::domain_error("s_max must be at least 1");
}

double TradeoffG(double p1, double gamma) {
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  CheckStatistic(p1, gamma);
  return SecrecyBound(std::min(p1 / gamma, 1.0));
}

double TradeoffGSlope(double p_cut1, double gamma) {
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  CheckCut(p_cut1 / gamma);
  return SecrecyBoundDerivative(p_cut1 / gamma) / gamma;
}

double FMin(double p1, const TradeoffSpec& spec) {
  spec.Validate();
  CheckStatistic(p1, spec.gamma);
  if (p1 <= spec.p_cut1) return TradeoffG(p1, spec.gamma);
  return TradeoffG(spec.p_cut1, spec.gamma) +
         TradeoffGSlope(spec.p_cut1, spec.gamma) * (p1 - spec.p_cut1);
}

double SecondOrderPenalty(double n, double log2_dim, double slope,
                          const EatEpsilons& eps) {
  eps.Validate();
  if (!(n > 0)) throw std::domain_error("round count must be positive");
  return 2 / std::sqrt(n) * (log2_dim + slope) *
         std::sqrt(1 - 2 * std::log2(eps.eps_s * eps.eps_e));
}

double Mu(double p1, const TradeoffSpec& spec, const EatEpsilons& eps,
          double n) {
  return FMin(p1, spec) -
         SecondOrderPenalty(n, kLog2Of13, TradeoffGSlope(spec.p_cut1, spec.gamma),
                            eps);
}

MuOptResult MuOpt(double omega_exp, double delta_est, double gamma, double n,
                  const EatEpsilons& eps) {
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  eps.Validate();
  const double p1 = omega_exp * gamma - delta_est;
  CheckStatistic(p1, gamma);
  const double shrink = kCutEndpointShrink * gamma;
  const double lo = kOmegaClassical * gamma + shrink;
  const double hi = kOmegaQuantum * gamma - shrink;
  auto objective = [&](double cut) {
    return Mu(p1, TradeoffSpec{gamma, cut}, eps, n);
  };
  const auto [cut, value] = MaximizeOnInterval(objective, lo, hi);
  MuOptResult r;
  r.value = value;
  r.best_cut = cut;
  r.p1 = p1;
  r.slope = TradeoffGSlope(cut, gamma);
  r.f_min = FMin(p1, TradeoffSpec{gamma, cut});
  r.penalty = SecondOrderPenalty(n, kLog2Of13, r.slope, eps);
  return r;
}

double EntropyLowerBound(double n, double mu_opt_value) {
  return n * mu_opt_value;
}

double MaxEntropyUpperAt(double n, double gamma, double smoothing,
                         double eps_event) {
  if (!(n >= 0)) throw std::domain_error("round count must be non-negative");
  if (!(smoothing > 0 && smoothing < 1 && eps_event > 0 && eps_event < 1)) {
    throw std::domain_error("smoothing parameters must lie in (0,1)");
  }
  return gamma * n + std::sqrt(n) * 2 * std::log2(7.0) *
                         std::sqrt(1 - 2 * std::log2(smoothing * eps_event));
}

double MaxEntropyUpper(double n, double gamma, double eps_s, double eps_ea,
                       double eps_ec) {
  return MaxEntropyUpperAt(n, gamma, eps_s / 4, eps_ea + eps_ec);
}

double BlockTestProbability(const BlockSpec& block) {
  block.Validate();
  // 1 - (1-gamma)^s computed as -expm1(s log1p(-gamma)).
  if (block.gamma == 1) return 1;
  return -std::expm1(block.s_max * std::log1p(-block.gamma));
}

double ExpectedBlockLength(const BlockSpec& block) {
  return BlockTestProbability(block) / block.gamma;
}

double BlockLog2Dimension(int s_max) {
  if (s_max < 1) throw std::domain_error("s_max must be at least 1");
  // log2(1 + 2^L) with L = 1 + s log2 6.
  const double l = 1 + s_max * std::log2(6.0);
  return l + std::log1p(std::exp2(-l)) / std::log(2.0);
}

double FMinBlockSlope(const BlockSpec& block, double cut_omega) {
  CheckCut(cut_omega);
  return ExpectedBlockLength(block) * SecrecyBoundDerivative(cut_omega) /
         BlockTestProbability(block);
}

double FMinBlock(double p1_tilde, const BlockSpec& block, double cut_omega) {
  CheckCut(cut_omega);
  const double prob = BlockTestProbability(block);
  const double sbar = ExpectedBlockLength(block);
  CheckStatistic(p1_tilde, prob);
  const double w = p1_tilde / prob;
  if (w <= cut_omega) return sbar * SecrecyBound(std::min(w, 1.0));
  return sbar * SecrecyBound(cut_omega) +
         FMinBlockSlope(block, cut_omega) * (p1_tilde - cut_omega * prob);
}

double MuBlock(double p1_tilde, const BlockSpec& block, double cut_omega,
               const EatEpsilons& eps, double m_blocks) {
  return FMinBlock(p1_tilde, block, cut_omega) -
         SecondOrderPenalty(m_blocks, BlockLog2Dimension(block.s_max),
                            FMinBlockSlope(block, cut_omega), eps);
}

MuOptResult MuBlockOpt(double omega_exp, double delta_est,
                       const BlockSpec& block, double m_blocks,
                       const EatEpsilons& eps) {
  block.Validate();
  eps.Validate();
  const double prob = BlockTestProbability(block);
  const double p1 = omega_exp * prob - delta_est;
  CheckStatistic(p1, prob);
  const double lo = kOmegaClassical + kCutEndpointShrink;
  const double hi = kOmegaQuantum - kCutEndpointShrink;
  auto objective = [&](double cut) {
    return MuBlock(p1, block, cut, eps, m_blocks);
  };
  const auto [cut, value] = MaximizeOnInterval(objective, lo, hi);
  MuOptResult r;
  r.value = value;
  r.best_cut = cut;
  r.p1 = p1;
  r.slope = FMinBlockSlope(block, cut);
  r.f_min = FMinBlock(p1, block, cut);
  r.penalty = SecondOrderPenalty(m_blocks, BlockLog2Dimension(block.s_max),
                                 r.slope, eps);
  return r;
}

double RoundCountTail(double m_blocks, double gamma, double eps_t) {
  if (!(eps_t > 0 && eps_t < 1)) throw std::domain_error("eps_t outside (0,1)");
  if (!(gamma > 0 && gamma <= 1)) throw std::domain_error("gamma outside (0,1]");
  if (!(m_blocks >= 0)) throw std::domain_error("negative block count");
  if (gamma == 1) return 0;
  return std::sqrt(-m_blocks * (1 - gamma) * (1 - gamma) * std::log(eps_t) /
                   (2 * gamma * gamma));
}

}  // namespace ditk
