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

#include "ditk/definetti.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace ditk {
namespace {

// Type label of every table entry plus the distinct count tables.
struct TypeIndex {
  std::vector<int> entry_type;
  std::vector<TypeCounts> types;
};

TypeIndex IndexTypes(const MultiRoundBox& shape) {
  const Alphabets& s = shape.alphabets();
  const int n = shape.n();
  TypeIndex out;
  out.entry_type.resize(shape.table().size());
  std::map<std::vector<std::vector<int>>, int> seen;
  for (std::size_t xs = 0; xs < shape.x_strings(); ++xs) {
    const auto xd = DecodeString(xs, s.x_size, n);
    for (std::size_t ys = 0; ys < shape.y_strings(); ++ys) {
      const auto yd = DecodeString(ys, s.y_size, n);
      for (std::size_t as = 0; as < shape.a_strings(); ++as) {
        const auto ad = DecodeString(as, s.a_size, n);
        for (std::size_t bs = 0; bs < shape.b_strings(); ++bs) {
          const auto bd = DecodeString(bs, s.b_size, n);
          TypeCounts c = TypeCounts::Of(s, xd, yd, ad, bd);
          auto [it, inserted] =
              seen.emplace(c.joint, static_cast<int>(out.types.size()));
          if (inserted) out.types.push_back(std::move(c));
          out.entry_type[shape.Index(xs, ys, as, bs)] = it->second;
        }
      }
    }
  }
  return out;
}

}  // namespace

TypeCounts TypeCounts::Empty(int l, int m) {
  TypeCounts c;
  c.l = l;
  c.m = m;
  c.joint.assign(l, std::vector<int>(m, 0));
  return c;
}

TypeCounts TypeCounts::Of(const Alphabets& s, const std::vector<int>& xs,
                          const std::vector<int>& ys, const std::vector<int>& as,
                          const std::vector<int>& bs) {
  TypeCounts c = Empty(s.x_size * s.y_size, s.a_size * s.b_size);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ++c.joint[xs[i] * s.y_size + ys[i]][as[i] * s.b_size + bs[i]];
  }
  return c;
}

int TypeCounts::occurrences(int j) const {
  int s = 0;
  for (int v : joint[j]) s += v;
  return s;
}

int TypeCounts::total() const {
  int s = 0;
  for (int j = 0; j < l; ++j) s += occurrences(j);
  return s;
}

void TypeCounts::Validate() const {
  if (l < 1 || m < 1 || static_cast<int>(joint.size()) != l) {
    throw std::invalid_argument("type counts have the wrong shape");
  }
  for (const auto& row : joint) {
    if (static_cast<int>(row.size()) != m) {
      throw std::invalid_argument("type counts have the wrong shape");
    }
    for (int v : row) {
      if (v < 0) throw std::invalid_argument("negative type count");
    }
  }
}

BigInt Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt Multinomial(const std::vector<int>& parts) {
  BigInt r = 1;
  int running = 0;
  for (int p : parts) {
    running += p;
    r *= Binomial(running, p);
  }
  return r;
}

Rational TauEntryExact(const TypeCounts& counts) {
  counts.Validate();
  BigInt denominator = 1;
  for (int j = 0; j < counts.l; ++j) {
    int r = counts.occurrences(j);
    for (int k = 0; k + 1 < counts.m; ++k) {
      denominator *= Binomial(r, counts.joint[j][k]) * (r + 1);
      r -= counts.joint[j][k];
    }
  }
  return Rational(BigInt(1), denominator);
}

Rational TauLowerBound(const TypeCounts& counts) {
  counts.Validate();
  BigInt denominator = 1;
  for (int j = 0; j < counts.l; ++j) {
    const BigInt base = counts.occurrences(j) + 1;
    denominator *= Multinomial(counts.joint[j]) * pow(base, counts.m - 1);
  }
  return Rational(BigInt(1), denominator);
}

Rational PermUpperBound(const TypeCounts& counts) {
  counts.Validate();
  BigInt denominator = 1;
  for (int j = 0; j < counts.l; ++j) denominator *= Multinomial(counts.joint[j]);
  return Rational(BigInt(1), denominator);
}

BigInt ReductionFactor(int n, int l, int m) {
  if (n < 0 || l < 1 || m < 1) {
    throw std::invalid_argument("reduction factor needs n >= 0, l, m >= 1");
  }
  return pow(BigInt(n + 1), static_cast<unsigned>(l * (m - 1)));
}

MultiRoundBox TauBox(int n, const Alphabets& alphabets) {
  const std::size_t size = MultiRoundBox::TableSize(n, alphabets);
  const MultiRoundBox shape =
      MultiRoundBox::Unchecked(n, alphabets, std::vector<double>(size, 0.0));
  const TypeIndex index = IndexTypes(shape);
  std::vector<double> values(index.types.size());
  for (std::size_t t = 0; t < index.types.size(); ++t) {
    values[t] = TauEntryExact(index.types[t]).convert_to<double>();
  }
  std::vector<double> p(size);
  for (std::size_t i = 0; i < size; ++i) p[i] = values[index.entry_type[i]];
  return MultiRoundBox(n, alphabets, std::move(p));
}

Rational ToRational(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  if (v == 0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  // mantissa * 2^53 is an integer for every double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r{BigInt(scaled)};
  const int shift = exponent - 53;
  if (shift >= 0) {
    r *= Rational(pow(BigInt(2), static_cast<unsigned>(shift)));
  } else {
    r /= Rational(pow(BigInt(2), static_cast<unsigned>(-shift)));
  }
  return r;
}

ReductionCheck VerifyReduction(const MultiRoundBox& box, double tol,
                               bool exact_only) {
  if (!IsPermutationInvariant(box, tol)) {
    throw std::invalid_argument("box is not permutation invariant");
  }
  const Alphabets& s = box.alphabets();
  const int l = s.x_size * s.y_size;
  const int m = s.a_size * s.b_size;
  ReductionCheck out;
  out.factor = ReductionFactor(box.n(), l, m);
  const Rational factor(out.factor);
  const double factor_d = out.factor.convert_to<double>();
  const TypeIndex index = IndexTypes(box);
  std::vector<Rational> bound(index.types.size());
  std::vector<double> tau_d(index.types.size());
  for (std::size_t t = 0; t < index.types.size(); ++t) {
    const Rational tau = TauEntryExact(index.types[t]);
    tau_d[t] = tau.convert_to<double>();
    bound[t] = factor * tau;
  }
  for (std::size_t i = 0; i < box.table().size(); ++i) {
    const double p = box.table()[i];
    const int t = index.entry_type[i];
    out.max_ratio = std::max(out.max_ratio, p / tau_d[t]);
    // Fast path with a safety margin; decide the rest exactly.
    if (!exact_only && p <= factor_d * tau_d[t] * (1 - 1e-12)) continue;
    ++out.exact_comparisons;
    if (ToRational(p) > bound[t]) out.holds = false;
  }
  return out;
}

std::vector<MultiRoundBox> DeterministicIidBoxes(int n,
                                                 const Alphabets& alphabets) {
  alphabets.Validate();
  const int inputs = alphabets.x_size * alphabets.y_size;
  const int outputs = alphabets.a_size * alphabets.b_size;
  const std::size_t count = IntPow(outputs, inputs);
  std::vector<MultiRoundBox> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    // Digit j of `code` is the output pair k answered on input pair j.
    const std::vector<int> answer = DecodeString(code, outputs, inputs);
    const SingleRoundBox single = SingleRoundBox::FromFunction(
        alphabets, [&](int a, int b, int x, int y) {
          return answer[x * alphabets.y_size + y] == a * alphabets.b_size + b
                     ? 1.0
                     : 0.0;
        });
    out.push_back(IidBox(single, n));
  }
  return out;
}

MultiRoundBox RandomSymmetricBox(int n, const Alphabets& alphabets,
                                 std::uint64_t seed) {
  const std::size_t size = MultiRoundBox::TableSize(n, alphabets);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> p(size);
  const std::size_t block =
      IntPow(alphabets.a_size, n) * IntPow(alphabets.b_size, n);
  for (std::size_t start = 0; start < size; start += block) {
    double total = 0;
    for (std::size_t i = start; i < start + block; ++i) total += p[i] = draw(rng);
    for (std::size_t i = start; i < start + block; ++i) p[i] /= total;
  }
  return Symmetrize(MultiRoundBox(n, alphabets, std::move(p)));
}

bool PartitionFeasible(double weight, const MultiRoundBox& element,
                       const MultiRoundBox& parent, double tol) {
  if (!(weight >= 0 && weight <= 1)) {
    throw std::invalid_argument("weight outside [0,1]");
  }
  if (element.n() != parent.n() || !(element.alphabets() == parent.alphabets())) {
    throw std::invalid_argument("element and parent shapes differ");
  }
  for (std::size_t i = 0; i < parent.table().size(); ++i) {
    if (weight * element.table()[i] > parent.table()[i] + tol) return false;
  }
  return true;
}

}  // namespace ditk
