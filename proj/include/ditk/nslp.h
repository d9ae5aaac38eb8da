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

// Linear programs for the best non-signalling winning probability of a game
// and for its relaxation to slightly signalling strategies.
//
// Variables are P(a,b|x,y) in box order [x][y][a][b]. Rows come in three
// groups, in this order:
//   A->B signalling rows, one per (x,y,b), in x,y,b order;
//   B->A signalling rows, one per (x,y,a), in x,y,a order;
//   normalization rows, one per (x,y).
// Each signalling row is the Sig functional of the signalling module written
// as a linear form in P.

#ifndef DITK_NSLP_H_
#define DITK_NSLP_H_

#include <vector>

#include "ditk/boxes.h"
#include "ditk/lp.h"

namespace ditk {

enum class SigRowForm {
  kEqual,      // Sig = 0
  kLessEqual,  // Sig <= slack
};

// Number of signalling rows, |X||Y|(|A|+|B|).
int SignallingRowCount(const Alphabets& alphabets);

// Throws std::invalid_argument when the input distribution lacks complete
// support.
LinearProgram BuildNsLp(const Game& game, SigRowForm form = SigRowForm::kEqual,
                        double slack = 0);

struct NsValue {
  double value = 0;
  // Multipliers of all rows of the <= form (signalling rows first); the
  // signalling multipliers are non-negative.
  std::vector<double> dual;
  double kappa = 0;
  int d = 0;
};

// Solves the <= form, whose optimum equals that of the equality form, so
// the signalling multipliers are sign-constrained and certify the
// sensitivity bound. Throws std::runtime_error if the solver fails.
NsValue SolveNsValue(const Game& game);

double PerturbedValue(const Game& game, double slack);

// Sum of |y| over the signalling rows of the <= form.
double DualKappa(const Game& game);

// ns_val + slack * kappa_or_d.
double SensitivityBound(double ns_val, double slack, double kappa_or_d);

}  // namespace ditk

#endif  // DITK_NSLP_H_
