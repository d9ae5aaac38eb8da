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

#include "ditk/signalling.h"

#include <cmath>
#include <algorithm>
#include <string>

#include <boost/math/distributions/binomial.hpp>

namespace ditk {

void SigTarget::Validate(const Alphabets& s) const {
  const int outcome_size =
      direction == SigDirection::kAtoB ? s.b_size : s.a_size;
  if (x < 0 || x >= s.x_size || y < 0 || y >= s.y_size || outcome < 0 ||
      outcome >= outcome_size) {
    throw std::invalid_argument("signalling target out of range");
  }
}

double SigMeasure(const SingleRoundBox& box, const InputDistribution& q,
                  const SigTarget& t) {
  const Alphabets& s = box.alphabets();
  if (q.x_size() != s.x_size || q.y_size() != s.y_size) {
    throw std::invalid_argument("input distribution does not match the box");
  }
  if (!q.complete_support()) {
    throw std::invalid_argument("signalling measure needs complete support");
  }
  t.Validate(s);
  double joint = 0;     // O(x, y, outcome)
  double marginal = 0;  // O(outcome, conditioning input)
  if (t.direction == SigDirection::kAtoB) {
    for (int a = 0; a < s.a_size; ++a) {
      joint += q(t.x, t.y) * box(t.x, t.y, a, t.outcome);
    }
    for (int x = 0; x < s.x_size; ++x) {
      for (int a = 0; a < s.a_size; ++a) {
        marginal += q(x, t.y) * box(x, t.y, a, t.outcome);
      }
    }
    if (marginal == 0) return 0;
    return joint - q.x_given_y(t.x, t.y) * marginal;
  }
  for (int b = 0; b < s.b_size; ++b) {
    joint += q(t.x, t.y) * box(t.x, t.y, t.outcome, b);
  }
  for (int y = 0; y < s.y_size; ++y) {
    for (int b = 0; b < s.b_size; ++b) {
      marginal += q(t.x, y) * box(t.x, y, t.outcome, b);
    }
  }
  if (marginal == 0) return 0;
  return joint - q.y_given_x(t.y, t.x) * marginal;
}

double SanovDelta(double n, double eps, int cells) {
  if (!(n >= 1) || !(eps > 0) || cells < 1) {
    throw std::invalid_argument("sanov bound needs n >= 1, eps > 0, cells >= 1");
  }
  return std::exp((cells - 1) * std::log1p(n) - n * eps * eps / 2);
}

void TestParams::Validate() const {
  if (!(eps > 0) || !(zeta >= 7 * eps)) {
    throw std::invalid_argument("signalling test needs zeta >= 7 eps > 0");
  }
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("signalling test needs an even n >= 2");
  }
}

SigTestResult RunSignallingTest(const ObservedData& data,
                                const Alphabets& alphabets,
                                const InputDistribution& q,
                                const TestParams& params,
                                const SigTarget& target) {
  params.Validate();
  data.Validate(alphabets);
  target.Validate(alphabets);
  if (static_cast<std::int64_t>(data.size()) != params.n) {
    throw std::invalid_argument("data length differs from the test's n");
  }
  SigTestResult result;
  result.threshold = params.zeta - 2 * params.eps;
  const std::size_t half = data.size() / 2;
  for (std::size_t begin : {std::size_t{0}, half}) {
    std::vector<char> seen(alphabets.x_size * alphabets.y_size, 0);
    for (std::size_t i = begin; i < begin + half; ++i) {
      seen[data.x[i] * alphabets.y_size + data.y[i]] = 1;
    }
    for (char c : seen) {
      if (!c) result.missing_pairs = true;
    }
  }
  if (result.missing_pairs) return result;
  const SingleRoundBox second =
      FrequencyBox(data.Slice(half, data.size()), alphabets, q);
  result.sig = SigMeasure(second, q, target);
  result.passed = result.sig >= result.threshold;
  return result;
}

double GuessingValue(const InputDistribution& q, int x, int y) {
  if (x < 0 || x >= q.x_size() || y < 0 || y >= q.y_size()) {
    throw std::invalid_argument("input out of range");
  }
  return q.x_given_y(x, y);
}

double BoostedGuessingBound(double w_ns, double nu, double o_by,
                            double cdelta) {
  if (!(w_ns >= 0 && w_ns <= 1) || !(nu >= 0) || !(o_by > 0 && o_by <= 1) ||
      !(cdelta >= 0 && cdelta <= 1)) {
    throw std::invalid_argument("guessing bound argument out of range");
  }
  return (1 - std::sqrt(cdelta)) * (nu / o_by + w_ns);
}

int ThresholdDimension(const Alphabets& s) {
  s.Validate();
  return s.x_size * s.y_size * (s.a_size + s.b_size);
}

namespace {

double PreconditionRhs(double eps, const Alphabets& s) {
  return 20.0 * s.cells() * std::log(2 / eps) / (eps * eps);
}

}  // namespace

bool ThresholdPrecondition(double n, double eps, const Alphabets& s) {
  s.Validate();
  if (!(eps > 0 && eps < 2)) {
    throw std::invalid_argument("threshold precondition needs eps in (0,2)");
  }
  if (!(n > 1)) return false;
  return n / std::log(n) > PreconditionRhs(eps, s);
}

double RequiredRounds(double eps, const Alphabets& s) {
  double hi = 3;
  while (!ThresholdPrecondition(hi, eps, s)) {
    hi *= 2;
    if (!std::isfinite(hi)) {
      throw std::domain_error("required round count overflows");
    }
  }
  // n / ln n is increasing for n > e, so bisect on integers.
  double lo = hi / 2;
  while (hi - lo > 1) {
    const double mid = std::floor((lo + hi) / 2);
    if (ThresholdPrecondition(mid, eps, s)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double ThresholdExponent(double n, double beta, int d) {
  const double scale = 30.0 * d;
  return std::exp(-n * beta * beta / (scale * scale));
}

double ThresholdBound(const Game& game, double n, double beta) {
  if (!(beta >= 0 && beta <= 1) || !(n >= 1)) {
    throw std::invalid_argument("threshold bound needs n >= 1, beta in [0,1]");
  }
  if (beta == 0) return 1;
  const Alphabets& s = game.alphabets();
  const int d = ThresholdDimension(s);
  const double eps = beta / (10.0 * d);
  if (!(game.q().min_entry() > eps)) {
    throw std::domain_error(
        "input distribution has an entry at or below beta / (10 d)");
  }
  if (!ThresholdPrecondition(n, eps, s)) {
    const double required = RequiredRounds(eps, s);
    throw ThresholdPreconditionError(
        "round count too small for the threshold bound; need n >= " +
            std::to_string(static_cast<long long>(required)),
        required);
  }
  return ThresholdExponent(n, beta, d);
}

IidThreshold IidThresholdProbability(const SingleRoundBox& single,
                                     const Game& game, std::int64_t n,
                                     double beta) {
  if (n < 1 || !(beta >= 0 && beta <= 1)) {
    throw std::invalid_argument("iid threshold needs n >= 1, beta in [0,1]");
  }
  IidThreshold out;
  out.omega = WinningProbability(single, game);
  out.hoeffding = std::exp(-2.0 * static_cast<double>(n) * beta * beta);
  const double nd = static_cast<double>(n);
  const double k = std::max(0.0, std::ceil((out.omega + beta) * nd - 1e-9));
  out.threshold_wins = k;
  if (k > nd) {
    out.exact = 0;
  } else if (k <= 0) {
    out.exact = 1;
  } else if (out.omega >= 1) {
    out.exact = 1;
  } else if (out.omega <= 0) {
    out.exact = 0;
  } else {
    const boost::math::binomial_distribution<double> wins(nd, out.omega);
    out.exact = boost::math::cdf(boost::math::complement(wins, k - 1));
  }
  return out;
}

}  // namespace ditk
