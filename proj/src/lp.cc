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

#include "ditk/lp.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ditk {
namespace {

// Tableau with rows 0..m-1 for constraints and a separate reduced-cost row.
// Column layout: structural | slack/surplus | artificial, rhs kept apart.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol) : tol_(tol) {
    m_ = static_cast<int>(lp.constraints.size());
    n_ = lp.num_variables;
    sign_.assign(m_, 1.0);
    std::vector<Relation> rel(m_);
    int slack_count = 0, art_count = 0;
    for (int i = 0; i < m_; ++i) {
      rel[i] = lp.constraints[i].relation;
      if (lp.constraints[i].rhs < 0) {
        sign_[i] = -1.0;
        if (rel[i] == Relation::kLessEqual) {
          rel[i] = Relation::kGreaterEqual;
        } else if (rel[i] == Relation::kGreaterEqual) {
          rel[i] = Relation::kLessEqual;
        }
      }
      if (rel[i] != Relation::kEqual) ++slack_count;
      if (rel[i] != Relation::kLessEqual) ++art_count;
    }
    art_begin_ = n_ + slack_count;
    cols_ = art_begin_ + art_count;
    a_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    identity_col_.assign(m_, -1);
    int next_slack = n_, next_art = art_begin_;
    for (int i = 0; i < m_; ++i) {
      const Constraint& c = lp.constraints[i];
      for (int j = 0; j < n_; ++j) at(i, j) = sign_[i] * c.coefficients[j];
      rhs_[i] = sign_[i] * c.rhs;
      if (rel[i] == Relation::kLessEqual) {
        at(i, next_slack) = 1.0;
        identity_col_[i] = basis_[i] = next_slack++;
      } else {
        if (rel[i] == Relation::kGreaterEqual) at(i, next_slack++) = -1.0;
        at(i, next_art) = 1.0;
        identity_col_[i] = basis_[i] = next_art++;
      }
    }
    reduced_.assign(cols_, 0.0);
  }

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool has_artificials() const { return art_begin_ < cols_; }

  // Sets the reduced-cost row for the given cost vector (length cols_).
  void Price(const std::vector<double>& cost) {
    cost_ = cost;
    for (int j = 0; j < cols_; ++j) {
      double z = 0;
      for (int i = 0; i < m_; ++i) z += cost_[basis_[i]] * at(i, j);
      reduced_[j] = z - cost_[j];
    }
  }

  double Objective() const {
    double v = 0;
    for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * rhs_[i];
    return v;
  }

  // Runs Bland's rule; columns >= `enter_limit` may not enter.
  // Returns false if unbounded.
  bool Optimize(int enter_limit, int& iterations, int max_iterations) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {
        if (reduced_[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0;
      for (int i = 0; i < m_; ++i) {
        const double coef = at(i, enter);
        if (coef > tol_) {
          const double ratio = rhs_[i] / coef;
          if (leave < 0 || ratio < best_ratio - tol_ ||
              (std::abs(ratio - best_ratio) <= tol_ && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
      if (++iterations > max_iterations) {
        throw std::runtime_error("simplex iteration limit exceeded");
      }
    }
  }

  void Pivot(int row, int col) {
    const double p = at(row, col);
    for (int j = 0; j < cols_; ++j) at(row, j) /= p;
    rhs_[row] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(row, j);
      rhs_[i] -= f * rhs_[row];
      at(i, col) = 0;
    }
    const double f = reduced_[col];
    if (f != 0) {
      for (int j = 0; j < cols_; ++j) reduced_[j] -= f * at(row, j);
      reduced_[col] = 0;
    }
    basis_[row] = col;
  }

  // After phase 1, pivots zero-level artificials out of the basis where a
  // structural or slack column can replace them.
  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j) {
        if (std::abs(at(i, j)) > tol_) {
          Pivot(i, j);
          break;
        }
      }
    }
  }

  int m_ = 0, n_ = 0, cols_ = 0, art_begin_ = 0;
  double tol_;
  std::vector<double> a_, rhs_, reduced_, cost_, sign_;
  std::vector<int> basis_, identity_col_;
};

}  // namespace

void LinearProgram::Validate() const {
  if (num_variables < 0) throw std::invalid_argument("negative variable count");
  if (static_cast<int>(objective.size()) != num_variables) {
    throw std::invalid_argument("objective length differs from variable count");
  }
  for (const Constraint& c : constraints) {
    if (static_cast<int>(c.coefficients.size()) != num_variables) {
      throw std::invalid_argument("constraint row length differs from variable count");
    }
  }
  if (!variable_names.empty() &&
      static_cast<int>(variable_names.size()) != num_variables) {
    throw std::invalid_argument("variable name count differs from variable count");
  }
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution Solve(const LinearProgram& lp, const SolverOptions& options) {
  lp.Validate();
  Tableau t(lp, options.tolerance);
  LpSolution sol;
  if (t.has_artificials()) {
    std::vector<double> phase1(t.cols_, 0.0);
    for (int j = t.art_begin_; j < t.cols_; ++j) phase1[j] = -1.0;
    t.Price(phase1);
    t.Optimize(t.cols_, sol.iterations, options.max_iterations);
    // Feasibility is judged relative to the right-hand side scale.
    double scale = 1.0;
    for (double r : t.rhs_) scale = std::max(scale, std::abs(r));
    if (t.Objective() < -1e3 * options.tolerance * scale) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    t.DriveOutArtificials();
  }
  std::vector<double> cost(t.cols_, 0.0);
  for (int j = 0; j < t.n_; ++j) cost[j] = lp.objective[j];
  t.Price(cost);
  if (!t.Optimize(t.art_begin_, sol.iterations, options.max_iterations)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.primal.assign(t.n_, 0.0);
  for (int i = 0; i < t.m_; ++i) {
    if (t.basis_[i] < t.n_) sol.primal[t.basis_[i]] = t.rhs_[i];
  }
  sol.value = 0;
  for (int j = 0; j < t.n_; ++j) sol.value += lp.objective[j] * sol.primal[j];
  // The reduced cost of a row's identity column (cost 0) is its multiplier
  // in the sign-normalized system.
  sol.dual.resize(t.m_);
  for (int i = 0; i < t.m_; ++i) {
    sol.dual[i] = t.sign_[i] * t.reduced_[t.identity_col_[i]];
  }
  return sol;
}

double DualObjective(const LinearProgram& lp, const LpSolution& solution) {
  double v = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    v += solution.dual[i] * lp.constraints[i].rhs;
  }
  return v;
}

std::string ExportText(const LinearProgram& lp) {
  lp.Validate();
  std::ostringstream out;
  auto name = [&](int j) {
    return lp.variable_names.empty() ? "v" + std::to_string(j)
                                     : lp.variable_names[j];
  };
  char buf[64];
  out << "maximize\n ";
  for (int j = 0; j < lp.num_variables; ++j) {
    if (lp.objective[j] == 0) continue;
    std::snprintf(buf, sizeof(buf), " %+.9g", lp.objective[j]);
    out << buf << ' ' << name(j);
  }
  out << "\nsubject to\n";
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Constraint& c = lp.constraints[i];
    out << ' ' << (c.name.empty() ? "r" + std::to_string(i) : c.name) << ':';
    for (int j = 0; j < lp.num_variables; ++j) {
      if (c.coefficients[j] == 0) continue;
      std::snprintf(buf, sizeof(buf), " %+.9g", c.coefficients[j]);
      out << buf << ' ' << name(j);
    }
    const char* rel = c.relation == Relation::kLessEqual   ? "<="
                      : c.relation == Relation::kEqual     ? "="
                                                           : ">=";
    std::snprintf(buf, sizeof(buf), " %s %.9g\n", rel, c.rhs);
    out << buf;
  }
  out << "bounds\n  all variables >= 0\nend\n";
  return out.str();
}

}  // namespace ditk
