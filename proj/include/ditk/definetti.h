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

// The de Finetti box tau (a fixed mixture of IID boxes) and the exact
// inequality P <= (n+1)^{l(m-1)} tau for permutation-invariant boxes P.
//
// Input pairs and output pairs are labelled canonically:
//   j = x * y_size + y,  k = a * b_size + b.
// Outcomes are split off in increasing k, which fixes the (asymmetric)
// entry values of tau.

#ifndef DITK_DEFINETTI_H_
#define DITK_DEFINETTI_H_

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ditk/boxes.h"

namespace ditk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct TypeCounts {
  int l = 0;  // input-pair count
  int m = 0;  // output-pair count
  // joint[j][k]: rounds with input pair j and output pair k.
  std::vector<std::vector<int>> joint;

  static TypeCounts Empty(int l, int m);
  // Counts of the strings (xs, ys, as, bs) under the canonical labelling.
  static TypeCounts Of(const Alphabets& alphabets, const std::vector<int>& xs,
                       const std::vector<int>& ys, const std::vector<int>& as,
                       const std::vector<int>& bs);

  int occurrences(int j) const;  // n_j
  int total() const;             // n
  void Validate() const;
};

BigInt Binomial(int n, int k);
// n_j! / prod_k n_{j,k}!
BigInt Multinomial(const std::vector<int>& parts);

// Exact tau entry: for each j, with running remainder r starting at n_j,
// multiply C(r, n_{j,k})^{-1} / (r+1) for k = 0..m-2 and subtract n_{j,k}.
Rational TauEntryExact(const TypeCounts& counts);
// prod_j Multinomial^{-1} (n_j + 1)^{-(m-1)}
Rational TauLowerBound(const TypeCounts& counts);
// prod_j Multinomial^{-1}
Rational PermUpperBound(const TypeCounts& counts);
// (n+1)^{l(m-1)}
BigInt ReductionFactor(int n, int l, int m);

MultiRoundBox TauBox(int n, const Alphabets& alphabets);

// Exact value of a double.
Rational ToRational(double v);

struct ReductionCheck {
  double max_ratio = 0;  // max over entries of P / tau
  BigInt factor;
  bool holds = true;     // P <= factor * tau on every entry, exactly
  std::uint64_t exact_comparisons = 0;  // entries that needed rationals
};

// Throws std::invalid_argument when `box` is not permutation invariant
// within `tol`. By default entries clearly below the bound in floating
// point (relative margin 1e-12, far above the rounding error) skip the
// rational comparison; `exact_only` compares every entry as a rational.
ReductionCheck VerifyReduction(const MultiRoundBox& box, double tol = 1e-9,
                               bool exact_only = false);

// Test sets. Every deterministic single-round box, lifted to n IID rounds.
std::vector<MultiRoundBox> DeterministicIidBoxes(int n,
                                                 const Alphabets& alphabets);
// Uniform (flat Dirichlet) conditional distribution per input string pair,
// symmetrized over all n! permutations. Deterministic in `seed`.
MultiRoundBox RandomSymmetricBox(int n, const Alphabets& alphabets,
                                 std::uint64_t seed);

// weight * element <= parent + tol on every entry.
bool PartitionFeasible(double weight, const MultiRoundBox& element,
                       const MultiRoundBox& parent, double tol);

}  // namespace ditk

#endif  // DITK_DEFINETTI_H_
