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

// Dense two-phase primal simplex for small programs of the form
//   maximize c.x  subject to  rows (<=, =, >=),  x >= 0.
// Pivoting follows Bland's rule, so results are deterministic.

#ifndef DITK_LP_H_
#define DITK_LP_H_

#include <string>
#include <vector>

namespace ditk {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0;
  std::string name;
};

struct LinearProgram {
  int num_variables = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<std::string> variable_names;  // optional

  // Throws std::invalid_argument on ragged rows.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0;
  std::vector<double> primal;
  // One multiplier per constraint row. For a maximization, multipliers of
  // <= rows are >= 0 and of >= rows are <= 0.
  std::vector<double> dual;
  int iterations = 0;
};

struct SolverOptions {
  double tolerance = 1e-9;
  int max_iterations = 200000;
};

// Throws std::runtime_error when the iteration guard is exhausted.
LpSolution Solve(const LinearProgram& lp, const SolverOptions& options = {});

// Sum of dual[i] * rhs[i]; equals the primal value at optimality.
double DualObjective(const LinearProgram& lp, const LpSolution& solution);

// Plain-text tableau listing for debugging.
std::string ExportText(const LinearProgram& lp);

}  // namespace ditk

#endif  // DITK_LP_H_
