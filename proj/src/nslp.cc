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

#include "ditk/nslp.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ditk {
namespace {

std::string Label(const char* prefix, int i, int j, int k) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" +
         std::to_string(j) + "_" + std::to_string(k);
}

}  // namespace

int SignallingRowCount(const Alphabets& s) {
  return s.x_size * s.y_size * (s.a_size + s.b_size);
}

LinearProgram BuildNsLp(const Game& game, SigRowForm form, double slack) {
  const Alphabets& s = game.alphabets();
  const InputDistribution& q = game.q();
  if (!q.complete_support()) {
    throw std::invalid_argument("non-signalling program needs complete support");
  }
  if (slack < 0) throw std::invalid_argument("slack must be non-negative");
  auto idx = [&](int x, int y, int a, int b) {
    return static_cast<int>(SingleRoundBox::Index(s, x, y, a, b));
  };
  LinearProgram lp;
  lp.num_variables = s.cells();
  lp.objective.assign(lp.num_variables, 0.0);
  lp.variable_names.resize(lp.num_variables);
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b) {
          lp.objective[idx(x, y, a, b)] = game.win(a, b, x, y) ? q(x, y) : 0.0;
          lp.variable_names[idx(x, y, a, b)] =
              "p_" + std::to_string(a) + std::to_string(b) + "_" +
              std::to_string(x) + std::to_string(y);
        }
  const Relation rel =
      form == SigRowForm::kEqual ? Relation::kEqual : Relation::kLessEqual;
  const double rhs = form == SigRowForm::kEqual ? 0.0 : slack;

  // Sig(A->B,x,y,b) = sum_a q(x,y)P(a,b|x,y)
  //                   - Q(x|y) sum_{x',a} q(x',y)P(a,b|x',y).
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int b = 0; b < s.b_size; ++b) {
        Constraint c{std::vector<double>(lp.num_variables, 0.0), rel, rhs,
                     Label("sigAB", x, y, b)};
        const double cond = q.x_given_y(x, y);
        for (int xp = 0; xp < s.x_size; ++xp)
          for (int a = 0; a < s.a_size; ++a) {
            double& coef = c.coefficients[idx(xp, y, a, b)];
            if (xp == x) coef += q(x, y);
            coef -= cond * q(xp, y);
          }
        lp.constraints.push_back(std::move(c));
      }
  // Mirror image for B->A.
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int a = 0; a < s.a_size; ++a) {
        Constraint c{std::vector<double>(lp.num_variables, 0.0), rel, rhs,
                     Label("sigBA", x, y, a)};
        const double cond = q.y_given_x(y, x);
        for (int yp = 0; yp < s.y_size; ++yp)
          for (int b = 0; b < s.b_size; ++b) {
            double& coef = c.coefficients[idx(x, yp, a, b)];
            if (yp == y) coef += q(x, y);
            coef -= cond * q(x, yp);
          }
        lp.constraints.push_back(std::move(c));
      }
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y) {
      Constraint c{std::vector<double>(lp.num_variables, 0.0), Relation::kEqual,
                   1.0, "norm_" + std::to_string(x) + "_" + std::to_string(y)};
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b) c.coefficients[idx(x, y, a, b)] = 1.0;
      lp.constraints.push_back(std::move(c));
    }
  return lp;
}

NsValue SolveNsValue(const Game& game) {
  const LinearProgram lp = BuildNsLp(game, SigRowForm::kLessEqual, 0.0);
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("non-signalling program is ") +
                             LpStatusName(sol.status));
  }
  NsValue out;
  out.value = sol.value;
  out.dual = sol.dual;
  out.d = SignallingRowCount(game.alphabets());
  for (int i = 0; i < out.d; ++i) out.kappa += std::abs(sol.dual[i]);
  return out;
}

double PerturbedValue(const Game& game, double slack) {
  const LpSolution sol = Solve(BuildNsLp(game, SigRowForm::kLessEqual, slack));
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("perturbed program is ") +
                             LpStatusName(sol.status));
  }
  return sol.value;
}

double DualKappa(const Game& game) { return SolveNsValue(game).kappa; }

double SensitivityBound(double ns_val, double slack, double kappa_or_d) {
  if (ns_val < 0 || slack < 0 || kappa_or_d < 0) {
    throw std::invalid_argument("sensitivity bound inputs must be non-negative");
  }
  return ns_val + slack * kappa_or_d;
}

}  // namespace ditk
