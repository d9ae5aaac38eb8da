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

// Signalling measure and test, Sanov's deviation bound, guessing-game values
// and the non-signalling threshold bound for parallel repetition.

#ifndef DITK_SIGNALLING_H_
#define DITK_SIGNALLING_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ditk/boxes.h"

namespace ditk {

enum class SigDirection { kAtoB, kBtoA };

struct SigTarget {
  SigDirection direction = SigDirection::kAtoB;
  int x = 0;
  int y = 0;
  int outcome = 0;  // b for kAtoB, a for kBtoA

  void Validate(const Alphabets& alphabets) const;
};

// With O = Q * P:
//   A->B: sum_a O(x,y,a,b) - Q(x|y) O_BY(b,y)
//   B->A: sum_b O(x,y,a,b) - Q(y|x) O_AX(a,x)
// The box may be unnormalized (a frequency box). Zero conditioning mass
// gives 0. Throws std::invalid_argument unless q has complete support.
double SigMeasure(const SingleRoundBox& box, const InputDistribution& q,
                  const SigTarget& target);

// (n+1)^(cells-1) exp(-n eps^2 / 2), not capped at 1.
double SanovDelta(double n, double eps, int cells);

struct TestParams {
  double zeta = 0.07;
  double eps = 0.01;
  std::int64_t n = 2;  // even

  // Throws std::invalid_argument unless zeta >= 7 eps > 0 and n is even
  // and positive.
  void Validate() const;
};

struct SigTestResult {
  bool passed = false;  // signalling detected
  bool missing_pairs = false;
  double sig = 0;       // measure on the second-half frequency box
  double threshold = 0; // zeta - 2 eps
};

// Splits the rounds into first and second half; passes iff every input
// pair occurs in both halves and the second-half Sig is at least
// zeta - 2 eps. data.size() must equal params.n.
SigTestResult RunSignallingTest(const ObservedData& data,
                                const Alphabets& alphabets,
                                const InputDistribution& q,
                                const TestParams& params,
                                const SigTarget& target);

// Q(x|y), the best non-signalling value of guessing x from y.
double GuessingValue(const InputDistribution& q, int x, int y);

// (1 - sqrt(cdelta)) (nu / o_by + w_ns)
double BoostedGuessingBound(double w_ns, double nu, double o_by,
                            double cdelta);

// |X||Y|(|A|+|B|)
int ThresholdDimension(const Alphabets& alphabets);

// n / ln n > 20 |X||Y||A||B| ln(2/eps) / eps^2
bool ThresholdPrecondition(double n, double eps, const Alphabets& alphabets);
// Smallest integer n satisfying the precondition.
double RequiredRounds(double eps, const Alphabets& alphabets);

class ThresholdPreconditionError : public std::domain_error {
 public:
  ThresholdPreconditionError(const std::string& what, double required_n)
      : std::domain_error(what), required_n_(required_n) {}
  double required_n() const { return required_n_; }

 private:
  double required_n_;
};

// exp(-n beta^2 / (30 d)^2) with no checks.
double ThresholdExponent(double n, double beta, int d);

// Bound on the probability that non-signalling players win more than a
// (w_ns + beta) fraction of n parallel rounds. beta = 0 gives 1.
// Throws ThresholdPreconditionError when n is too small for
// eps = beta / (10 d), and std::domain_error when min q <= eps.
double ThresholdBound(const Game& game, double n, double beta);

struct IidThreshold {
  double omega = 0;
  double threshold_wins = 0;  // smallest winning count
  double exact = 0;           // Pr[wins >= threshold_wins]
  double hoeffding = 0;       // exp(-2 n beta^2)
};

// Winning count of n IID rounds is Binomial(n, omega); the tail is taken at
// ceil((omega + beta) n).
IidThreshold IidThresholdProbability(const SingleRoundBox& single,
                                     const Game& game, std::int64_t n,
                                     double beta);

}  // namespace ditk

#endif  // DITK_SIGNALLING_H_
