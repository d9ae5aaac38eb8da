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

// Scalar entropy functions. All logarithms are base 2.

#ifndef DITK_ENTROPY_H_
#define DITK_ENTROPY_H_

#include <array>
#include <cmath>

namespace ditk {

// CHSH winning probability of the best classical and quantum strategies.
inline constexpr double kOmegaClassical = 0.75;
inline const double kOmegaQuantum = (2.0 + std::sqrt(2.0)) / 4.0;

// Inputs within this distance outside [0,1] are clamped.
inline constexpr double kClampSlack = 1e-12;

// h(p); throws std::domain_error outside [-slack, 1+slack].
double BinaryEntropy(double p);

bool InQuantumChshRegime(double omega);

// 1 - h(1/2 + sqrt(16 w (w-1) + 3) / 2): conditional von Neumann entropy of
// Alice's output given the adversary, for CHSH winning probability w.
// Outside the quantum regime the default is flat (0 below 3/4, 1 above the
// quantum maximum); with `strict` such inputs throw std::domain_error.
double SecrecyBound(double omega, bool strict = false);

// d/dw SecrecyBound on the open quantum regime; throws std::domain_error at
// or outside its ends, where the slope is 0 or unbounded.
double SecrecyBoundDerivative(double omega);

// 2 h(1/2 - (2w-1)/sqrt 2) - 1: upper bound on H(QA|QB) for Bell-diagonal
// states with CHSH winning probability w.
double BellDiagBound(double omega);

// Optimal Bell-basis eigenvalues (Phi+, Psi+, Phi-, Psi-) at CHSH value
// beta in [2, 2 sqrt 2].
std::array<double, 4> BellOptEigenvalues(double beta);

double ShannonEntropy(const double* p, int size);

struct AepParams {
  double n = 1;
  double eps = 0.5;
  double hmax_single = 1;

  void Validate() const;
};

// sqrt(n) correction 4 log nu sqrt(log(2/eps^2)), nu = 2 sqrt(2^hmax) + 1.
double AepCorrection(const AepParams& params);
double AepMinLower(const AepParams& params, double h_single);
double AepMaxUpper(const AepParams& params, double h_single);

// Asymptotic IID key rate H(A|E) - H(A|B).
double DwRate(double h_ae, double h_ab);

}  // namespace ditk

#endif  // DITK_ENTROPY_H_
