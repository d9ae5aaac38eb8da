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

#include "ditk/boxes.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace ditk {
namespace {

void CheckSize(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(want) + " entries, got " +
                                std::to_string(got));
  }
}

// For every string code s over `radix`, the code of the permuted string.
std::vector<std::size_t> PermutedCodes(int radix, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const std::size_t count = IntPow(radix, n);
  std::vector<std::size_t> out(count);
  std::vector<int> permuted(n);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<int> digits = DecodeString(s, radix, n);
    for (int i = 0; i < n; ++i) permuted[i] = digits[perm[i]];
    out[s] = EncodeString(permuted, radix);
  }
  return out;
}

}  // namespace

void Alphabets::Validate() const {
  if (a_size < 1 || b_size < 1 || x_size < 1 || y_size < 1) {
    throw std::invalid_argument("alphabet sizes must be at least 1");
  }
}

// ---------------------------------------------------------------------------
// SingleRoundBox

SingleRoundBox::SingleRoundBox(const Alphabets& alphabets, std::vector<double> p,
                               double tol, bool renormalize)
    : alphabets_(alphabets), p_(std::move(p)) {
  alphabets_.Validate();
  CheckSize(p_.size(), alphabets_.cells(), "box table");
  for (double v : p_) {
    if (!(v >= -tol && v <= 1 + tol)) {
      throw std::invalid_argument("box entry outside [0,1]: " +
                                  std::to_string(v));
    }
  }
  if (NormalizationError() > tol) {
    throw std::invalid_argument("box is not normalized for every (x,y)");
  }
  if (renormalize) {
    const int block = alphabets_.a_size * alphabets_.b_size;
    for (std::size_t start = 0; start < p_.size(); start += block) {
      double sum = 0;
      for (int k = 0; k < block; ++k) {
        p_[start + k] = std::clamp(p_[start + k], 0.0, 1.0);
        sum += p_[start + k];
      }
      for (int k = 0; k < block; ++k) p_[start + k] /= sum;
    }
  }
}

SingleRoundBox SingleRoundBox::Unchecked(const Alphabets& alphabets,
                                         std::vector<double> p) {
  alphabets.Validate();
  CheckSize(p.size(), alphabets.cells(), "box table");
  SingleRoundBox box;
  box.alphabets_ = alphabets;
  box.p_ = std::move(p);
  return box;
}

SingleRoundBox SingleRoundBox::FromFunction(
    const Alphabets& s, const std::function<double(int, int, int, int)>& f) {
  s.Validate();
  std::vector<double> p(s.cells());
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b) p[Index(s, x, y, a, b)] = f(a, b, x, y);
  return SingleRoundBox(s, std::move(p));
}

double SingleRoundBox::NormalizationError() const {
  const int block = alphabets_.a_size * alphabets_.b_size;
  double worst = 0;
  for (std::size_t start = 0; start < p_.size(); start += block) {
    double sum = 0;
    for (int k = 0; k < block; ++k) sum += p_[start + k];
    worst = std::max(worst, std::abs(sum - 1));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// InputDistribution

InputDistribution::InputDistribution(int x_size, int y_size,
                                     std::vector<double> q, double tol)
    : x_size_(x_size), y_size_(y_size), q_(std::move(q)) {
  if (x_size < 1 || y_size < 1) {
    throw std::invalid_argument("input alphabet sizes must be at least 1");
  }
  CheckSize(q_.size(), static_cast<std::size_t>(x_size) * y_size,
            "input distribution");
  double sum = 0;
  for (double v : q_) {
    if (!(v >= 0)) throw std::invalid_argument("negative input probability");
    sum += v;
  }
  if (std::abs(sum - 1) > tol) {
    throw std::invalid_argument("input distribution does not sum to 1");
  }
}

InputDistribution InputDistribution::Uniform(int x_size, int y_size) {
  const double v = 1.0 / (static_cast<double>(x_size) * y_size);
  return InputDistribution(x_size, y_size,
                           std::vector<double>(x_size * y_size, v));
}

bool InputDistribution::complete_support() const {
  return std::all_of(q_.begin(), q_.end(), [](double v) { return v > 0; });
}

double InputDistribution::min_entry() const {
  return *std::min_element(q_.begin(), q_.end());
}

double InputDistribution::marginal_x(int x) const {
  double s = 0;
  for (int y = 0; y < y_size_; ++y) s += (*this)(x, y);
  return s;
}

double InputDistribution::marginal_y(int y) const {
  double s = 0;
  for (int x = 0; x < x_size_; ++x) s += (*this)(x, y);
  return s;
}

double InputDistribution::x_given_y(int x, int y) const {
  const double qy = marginal_y(y);
  if (qy <= 0) throw std::domain_error("Q(y) = 0");
  return (*this)(x, y) / qy;
}

double InputDistribution::y_given_x(int y, int x) const {
  const double qx = marginal_x(x);
  if (qx <= 0) throw std::domain_error("Q(x) = 0");
  return (*this)(x, y) / qx;
}

// ---------------------------------------------------------------------------
// Game

Game::Game(const Alphabets& alphabets, InputDistribution q,
           std::vector<std::uint8_t> win)
    : alphabets_(alphabets), q_(std::move(q)), win_(std::move(win)) {
  alphabets_.Validate();
  if (q_.x_size() != alphabets_.x_size || q_.y_size() != alphabets_.y_size) {
    throw std::invalid_argument("input distribution does not match alphabets");
  }
  CheckSize(win_.size(), alphabets_.cells(), "win table");
}

Game Game::FromPredicate(const Alphabets& s, InputDistribution q,
                         const std::function<bool(int, int, int, int)>& pred) {
  s.Validate();
  std::vector<std::uint8_t> win(s.cells());
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b)
          win[SingleRoundBox::Index(s, x, y, a, b)] = pred(a, b, x, y) ? 1 : 0;
  return Game(s, std::move(q), std::move(win));
}

Game ChshGame() {
  const Alphabets s{2, 2, 2, 2};
  return Game::FromPredicate(s, InputDistribution::Uniform(2, 2),
                             [](int a, int b, int x, int y) {
                               return (a ^ b) == (x & y);
                             });
}

Game ExtendedChshGame() {
  const Alphabets s{2, 2, 2, 3};
  return Game::FromPredicate(s, InputDistribution::Uniform(2, 3),
                             [](int a, int b, int x, int y) {
                               if (y < 2) return (a ^ b) == (x & y);
                               if (x == 0) return a == b;
                               return true;
                             });
}

// ---------------------------------------------------------------------------
// ObservedData

void ObservedData::Validate(const Alphabets& s) const {
  const std::size_t n = a.size();
  if (b.size() != n || x.size() != n || y.size() != n) {
    throw std::invalid_argument("data vectors differ in length");
  }
  auto in_range = [](const std::vector<int>& v, int size) {
    return std::all_of(v.begin(), v.end(),
                       [size](int e) { return e >= 0 && e < size; });
  };
  if (!in_range(a, s.a_size) || !in_range(b, s.b_size) ||
      !in_range(x, s.x_size) || !in_range(y, s.y_size)) {
    throw std::invalid_argument("data value outside its alphabet");
  }
}

ObservedData ObservedData::Slice(std::size_t begin, std::size_t end) const {
  ObservedData out;
  out.a.assign(a.begin() + begin, a.begin() + end);
  out.b.assign(b.begin() + begin, b.begin() + end);
  out.x.assign(x.begin() + begin, x.begin() + end);
  out.y.assign(y.begin() + begin, y.begin() + end);
  return out;
}

// ---------------------------------------------------------------------------
// Strings

std::size_t IntPow(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

std::size_t EncodeString(const std::vector<int>& digits, int radix) {
  std::size_t code = 0;
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    code = code * radix + digits[i];
  }
  return code;
}

std::vector<int> DecodeString(std::size_t code, int radix, int n) {
  std::vector<int> digits(n);
  for (int i = 0; i < n; ++i) {
    digits[i] = static_cast<int>(code % radix);
    code /= radix;
  }
  return digits;
}

// ---------------------------------------------------------------------------
// MultiRoundBox

std::size_t MultiRoundBox::TableSize(int n, const Alphabets& s) {
  if (n < 1) throw std::invalid_argument("round count must be at least 1");
  s.Validate();
  const double log_size = n * std::log2(static_cast<double>(s.cells()));
  if (log_size > std::log2(static_cast<double>(kMaxMultiRoundEntries))) {
    throw std::length_error("multi-round table exceeds the size limit");
  }
  return IntPow(s.cells(), n);
}

void MultiRoundBox::InitShape() {
  xn_ = IntPow(alphabets_.x_size, n_);
  yn_ = IntPow(alphabets_.y_size, n_);
  an_ = IntPow(alphabets_.a_size, n_);
  bn_ = IntPow(alphabets_.b_size, n_);
}

MultiRoundBox::MultiRoundBox(int n, const Alphabets& alphabets,
                             std::vector<double> p, double tol)
    : n_(n), alphabets_(alphabets), p_(std::move(p)) {
  CheckSize(p_.size(), TableSize(n, alphabets), "multi-round table");
  InitShape();
  for (double v : p_) {
    if (!(v >= -tol)) throw std::invalid_argument("negative multi-round entry");
  }
  if (NormalizationError() > tol) {
    throw std::invalid_argument("multi-round box is not normalized");
  }
}

MultiRoundBox MultiRoundBox::Unchecked(int n, const Alphabets& alphabets,
                                       std::vector<double> p) {
  MultiRoundBox box;
  CheckSize(p.size(), TableSize(n, alphabets), "multi-round table");
  box.n_ = n;
  box.alphabets_ = alphabets;
  box.p_ = std::move(p);
  box.InitShape();
  return box;
}

double MultiRoundBox::NormalizationError() const {
  const std::size_t block = an_ * bn_;
  double worst = 0;
  for (std::size_t start = 0; start < p_.size(); start += block) {
    double sum = 0;
    for (std::size_t k = 0; k < block; ++k) sum += p_[start + k];
    worst = std::max(worst, std::abs(sum - 1));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Operations

bool IsNonSignalling(const SingleRoundBox& box, double tol) {
  // A single round is a one-round multi-round box with identical layout.
  return IsNonSignalling(
      MultiRoundBox::Unchecked(1, box.alphabets(), box.table()), tol);
}

bool IsNonSignalling(const MultiRoundBox& box, double tol) {
  const std::size_t xn = box.x_strings(), yn = box.y_strings();
  const std::size_t an = box.a_strings(), bn = box.b_strings();
  // Alice's marginal must not depend on ys.
  for (std::size_t xs = 0; xs < xn; ++xs) {
    for (std::size_t as = 0; as < an; ++as) {
      double ref = 0;
      for (std::size_t bs = 0; bs < bn; ++bs) ref += box.at(xs, 0, as, bs);
      for (std::size_t ys = 1; ys < yn; ++ys) {
        double m = 0;
        for (std::size_t bs = 0; bs < bn; ++bs) m += box.at(xs, ys, as, bs);
        if (std::abs(m - ref) > tol) return false;
      }
    }
  }
  // Bob's marginal must not depend on xs.
  for (std::size_t ys = 0; ys < yn; ++ys) {
    for (std::size_t bs = 0; bs < bn; ++bs) {
      double ref = 0;
      for (std::size_t as = 0; as < an; ++as) ref += box.at(0, ys, as, bs);
      for (std::size_t xs = 1; xs < xn; ++xs) {
        double m = 0;
        for (std::size_t as = 0; as < an; ++as) m += box.at(xs, ys, as, bs);
        if (std::abs(m - ref) > tol) return false;
      }
    }
  }
  return true;
}

double WinningProbability(const SingleRoundBox& box, const Game& game) {
  if (!(box.alphabets() == game.alphabets())) {
    throw std::invalid_argument("box and game alphabets differ");
  }
  const Alphabets& s = game.alphabets();
  double w = 0;
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y) {
      double cell = 0;
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b)
          if (game.win(a, b, x, y)) cell += box(x, y, a, b);
      w += game.q()(x, y) * cell;
    }
  return w;
}

double ClassicalValue(const Game& game, double max_pairs) {
  const Alphabets& s = game.alphabets();
  const double pairs = std::pow(static_cast<double>(s.a_size), s.x_size) *
                       std::pow(static_cast<double>(s.b_size), s.y_size);
  if (pairs > max_pairs) {
    throw std::length_error("classical value enumeration exceeds the cap");
  }
  const std::size_t alice_count = IntPow(s.a_size, s.x_size);
  double best = 0;
  // For a fixed Alice strategy Bob's best response decouples over y, which
  // gives the same maximum as enumerating all pairs.
  for (std::size_t code = 0; code < alice_count; ++code) {
    const std::vector<int> fa = DecodeString(code, s.a_size, s.x_size);
    double total = 0;
    for (int y = 0; y < s.y_size; ++y) {
      double best_b = 0;
      for (int b = 0; b < s.b_size; ++b) {
        double v = 0;
        for (int x = 0; x < s.x_size; ++x)
          if (game.win(fa[x], b, x, y)) v += game.q()(x, y);
        best_b = std::max(best_b, v);
      }
      total += best_b;
    }
    best = std::max(best, total);
  }
  return best;
}

SingleRoundBox FrequencyBox(const ObservedData& data, const Alphabets& s,
                            const InputDistribution& q) {
  data.Validate(s);
  if (q.x_size() != s.x_size || q.y_size() != s.y_size) {
    throw std::invalid_argument("input distribution does not match alphabets");
  }
  if (!q.complete_support()) {
    throw std::invalid_argument("input distribution has a zero entry");
  }
  const std::size_t n = data.size();
  std::vector<double> counts(s.cells(), 0.0);
  std::vector<int> pair_seen(s.x_size * s.y_size, 0);
  for (std::size_t i = 0; i < n; ++i) {
    counts[SingleRoundBox::Index(s, data.x[i], data.y[i], data.a[i],
                                 data.b[i])] += 1;
    pair_seen[data.x[i] * s.y_size + data.y[i]] = 1;
  }
  if (std::find(pair_seen.begin(), pair_seen.end(), 0) != pair_seen.end()) {
    throw std::invalid_argument("an input pair is missing from the data");
  }
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y)
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b)
          counts[SingleRoundBox::Index(s, x, y, a, b)] /= (n * q(x, y));
  return SingleRoundBox::Unchecked(s, std::move(counts));
}

MultiRoundBox IidBox(const SingleRoundBox& single, int n) {
  const Alphabets& s = single.alphabets();
  std::vector<double> p(MultiRoundBox::TableSize(n, s));
  MultiRoundBox shape = MultiRoundBox::Unchecked(n, s, p);
  for (std::size_t xs = 0; xs < shape.x_strings(); ++xs) {
    const auto xd = DecodeString(xs, s.x_size, n);
    for (std::size_t ys = 0; ys < shape.y_strings(); ++ys) {
      const auto yd = DecodeString(ys, s.y_size, n);
      for (std::size_t as = 0; as < shape.a_strings(); ++as) {
        const auto ad = DecodeString(as, s.a_size, n);
        for (std::size_t bs = 0; bs < shape.b_strings(); ++bs) {
          const auto bd = DecodeString(bs, s.b_size, n);
          double v = 1;
          for (int i = 0; i < n && v != 0; ++i) v *= single(xd[i], yd[i], ad[i], bd[i]);
          p[shape.Index(xs, ys, as, bs)] = v;
        }
      }
    }
  }
  return MultiRoundBox::Unchecked(n, s, std::move(p));
}

MultiRoundBox Permute(const MultiRoundBox& box, const std::vector<int>& perm) {
  const int n = box.n();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation length differs from round count");
  }
  std::vector<int> sorted(perm);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i) {
    if (sorted[i] != i) throw std::invalid_argument("not a permutation");
  }
  const Alphabets& s = box.alphabets();
  const auto mx = PermutedCodes(s.x_size, perm);
  const auto my = PermutedCodes(s.y_size, perm);
  const auto ma = PermutedCodes(s.a_size, perm);
  const auto mb = PermutedCodes(s.b_size, perm);
  std::vector<double> p(box.table().size());
  for (std::size_t xs = 0; xs < box.x_strings(); ++xs)
    for (std::size_t ys = 0; ys < box.y_strings(); ++ys)
      for (std::size_t as = 0; as < box.a_strings(); ++as)
        for (std::size_t bs = 0; bs < box.b_strings(); ++bs)
          p[box.Index(xs, ys, as, bs)] = box.at(mx[xs], my[ys], ma[as], mb[bs]);
  return MultiRoundBox::Unchecked(n, s, std::move(p));
}

MultiRoundBox Symmetrize(const MultiRoundBox& box) {
  const int n = box.n();
  if (n > kMaxSymmetrizeRounds) {
    throw std::length_error("symmetrize supports at most 6 rounds");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> acc(box.table().size(), 0.0);
  std::size_t count = 0;
  do {
    const MultiRoundBox permuted = Permute(box, perm);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += permuted.table()[i];
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : acc) v /= static_cast<double>(count);
  return MultiRoundBox::Unchecked(n, box.alphabets(), std::move(acc));
}

bool IsPermutationInvariant(const MultiRoundBox& box, double tol) {
  // Adjacent transpositions generate the symmetric group.
  const int n = box.n();
  std::vector<int> perm(n);
  for (int i = 0; i + 1 < n; ++i) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[i + 1]);
    const MultiRoundBox swapped = Permute(box, perm);
    for (std::size_t k = 0; k < box.table().size(); ++k) {
      if (std::abs(swapped.table()[k] - box.table()[k]) > tol) return false;
    }
  }
  return true;
}

double L1Distance(const SingleRoundBox& b1, const SingleRoundBox& b2,
                  const InputDistribution& q) {
  if (!(b1.alphabets() == b2.alphabets())) {
    throw std::invalid_argument("boxes have different alphabets");
  }
  const Alphabets& s = b1.alphabets();
  if (q.x_size() != s.x_size || q.y_size() != s.y_size) {
    throw std::invalid_argument("input distribution does not match alphabets");
  }
  double d = 0;
  for (int x = 0; x < s.x_size; ++x)
    for (int y = 0; y < s.y_size; ++y) {
      double cell = 0;
      for (int a = 0; a < s.a_size; ++a)
        for (int b = 0; b < s.b_size; ++b)
          cell += std::abs(b1(x, y, a, b) - b2(x, y, a, b));
      d += q(x, y) * cell;
    }
  return d;
}

double ThresholdWinFraction(const ObservedData& data, const Game& game) {
  data.Validate(game.alphabets());
  if (data.size() == 0) throw std::invalid_argument("empty data");
  std::size_t wins = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (game.win(data.a[i], data.b[i], data.x[i], data.y[i])) ++wins;
  }
  return static_cast<double>(wins) / data.size();
}

bool ThresholdGame::Wins(const ObservedData& data) const {
  if (static_cast<int>(data.size()) != n) {
    throw std::invalid_argument("data length differs from threshold game n");
  }
  return ThresholdWinFraction(data, base) * n >= threshold - 1e-9;
}

double ThresholdGame::WinningProbability(const MultiRoundBox& box) const {
  const Alphabets& s = base.alphabets();
  if (box.n() != n || !(box.alphabets() == s)) {
    throw std::invalid_argument("box does not match threshold game");
  }
  double total = 0;
  for (std::size_t xs = 0; xs < box.x_strings(); ++xs) {
    const auto xd = DecodeString(xs, s.x_size, n);
    for (std::size_t ys = 0; ys < box.y_strings(); ++ys) {
      const auto yd = DecodeString(ys, s.y_size, n);
      double q = 1;
      for (int i = 0; i < n; ++i) q *= base.q()(xd[i], yd[i]);
      if (q == 0) continue;
      double won = 0;
      for (std::size_t as = 0; as < box.a_strings(); ++as) {
        const auto ad = DecodeString(as, s.a_size, n);
        for (std::size_t bs = 0; bs < box.b_strings(); ++bs) {
          const auto bd = DecodeString(bs, s.b_size, n);
          int wins = 0;
          for (int i = 0; i < n; ++i) wins += base.win(ad[i], bd[i], xd[i], yd[i]);
          if (wins >= threshold) won += box.at(xs, ys, as, bs);
        }
      }
      total += q * won;
    }
  }
  return total;
}

}  // namespace ditk
