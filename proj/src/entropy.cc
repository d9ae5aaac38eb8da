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

#include "ditk/entropy.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ditk {
namespace {

double Radicand(double omega) { return 16 * omega * (omega - 1) + 3; }

}  // namespace

double BinaryEntropy(double p) {
  if (!(p >= -kClampSlack && p <= 1 + kClampSlack)) {
    throw std::domain_error("binary entropy argument outside [0,1]: " +
                            std::to_string(p));
  }
  p = std::clamp(p, 0.0, 1.0);
  if (p == 0 || p == 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

bool InQuantumChshRegime(double omega) {
  return omega >= kOmegaClassical - kClampSlack &&
         omega <= kOmegaQuantum + kClampSlack;
}

double SecrecyBound(double omega, bool strict) {
  if (!(omega >= 0 && omega <= 1)) {
    throw std::domain_error("winning probability outside [0,1]");
  }
  if (!InQuantumChshRegime(omega)) {
    if (strict) throw std::domain_error("outside the quantum CHSH regime");
    return omega < kOmegaClassical ? 0.0 : 1.0;
  }
  const double r = std::clamp(Radicand(omega), 0.0, 1.0);
  return 1 - BinaryEntropy(0.5 + 0.5 * std::sqrt(r));
}

double SecrecyBoundDerivative(double omega) {
  if (!(omega > kOmegaClassical && omega < kOmegaQuantum)) {
    throw std::domain_error("slope is defined on the open quantum regime only");
  }
  const double s = std::sqrt(Radicand(omega));
  const double x = 0.5 + 0.5 * s;
  // -h'(x) dx/dw with h'(x) = log2((1-x)/x) and dx/dw = 16(2w-1)/(4s).
  return -std::log2((1 - x) / x) * 16 * (2 * omega - 1) / (4 * s);
}

double BellDiagBound(double omega) {
  if (!InQuantumChshRegime(omega)) {
    throw std::domain_error("outside the quantum CHSH regime");
  }
  const double u = 0.5 - (2 * omega - 1) / std::sqrt(2.0);
  return 2 * BinaryEntropy(std::max(u, 0.0)) - 1;
}

std::array<double, 4> BellOptEigenvalues(double beta) {
  if (!(beta >= 2 - kClampSlack && beta <= 2 * std::sqrt(2.0) + kClampSlack)) {
    throw std::domain_error("CHSH value outside [2, 2 sqrt 2]");
  }
  const double lo = std::max(0.5 - beta / (4 * std::sqrt(2.0)), 0.0);
  const double hi = 0.5 + beta / (4 * std::sqrt(2.0));
  return {lo * lo, hi * hi, lo * hi, lo * hi};
}

double ShannonEntropy(const double* p, int size) {
  double h = 0;
  for (int i = 0; i < size; ++i) {
    if (p[i] > 0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

void AepParams::Validate() const {
  if (!(n >= 1)) throw std::domain_error("AEP needs n >= 1");
  if (!(eps > 0 && eps < 1)) throw std::domain_error("AEP needs eps in (0,1)");
  if (!(hmax_single >= 0)) throw std::domain_error("AEP needs hmax >= 0");
}

double AepCorrection(const AepParams& params) {
  params.Validate();
  const double nu = 2 * std::sqrt(std::exp2(params.hmax_single)) + 1;
  return std::sqrt(params.n) * 4 * std::log2(nu) *
         std::sqrt(std::log2(2 / (params.eps * params.eps)));
}

double AepMinLower(const AepParams& params, double h_single) {
  return params.n * h_single - AepCorrection(params);
}

double AepMaxUpper(const AepParams& params, double h_single) {
  return params.n * h_single + AepCorrection(params);
}

double DwRate(double h_ae, double h_ab) { return h_ae - h_ab; }

}  // namespace ditk
