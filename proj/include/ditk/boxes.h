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

// Single-round and multi-round boxes (conditional distributions P(a,b|x,y)),
// two-player games and observed round data.
//
// Tables are dense and row-major. A single-round table is indexed
// [x][y][a][b]. A multi-round table over n rounds is indexed by the four
// strings (xs, ys, as, bs), each string encoded as a mixed-radix integer
// with round 1 as the least significant digit, and flattened as
//   ((xs * Y^n + ys) * A^n + as) * B^n + bs.

#ifndef DITK_BOXES_H_
#define DITK_BOXES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ditk {

inline constexpr double kLoadTolerance = 1e-9;

struct Alphabets {
  int a_size = 1;
  int b_size = 1;
  int x_size = 1;
  int y_size = 1;

  // Throws std::invalid_argument unless every size is at least 1.
  void Validate() const;
  int cells() const { return a_size * b_size * x_size * y_size; }
  bool operator==(const Alphabets&) const = default;
};

class SingleRoundBox {
 public:
  // Validates entries in [0,1] and per-(x,y) normalization within `tol`.
  // With `renormalize` each (x,y) block is rescaled to sum to one after the
  // check.
  SingleRoundBox(const Alphabets& alphabets, std::vector<double> p,
                 double tol = kLoadTolerance, bool renormalize = false);

  // Skips all checks except the table size. Used for frequency boxes, whose
  // entries need not be normalized.
  static SingleRoundBox Unchecked(const Alphabets& alphabets,
                                  std::vector<double> p);

  static SingleRoundBox FromFunction(
      const Alphabets& alphabets,
      const std::function<double(int a, int b, int x, int y)>& f);

  double operator()(int x, int y, int a, int b) const {
    return p_[Index(alphabets_, x, y, a, b)];
  }
  const Alphabets& alphabets() const { return alphabets_; }
  const std::vector<double>& table() const { return p_; }

  // Largest |sum_{a,b} P(a,b|x,y) - 1| over inputs.
  double NormalizationError() const;

  static std::size_t Index(const Alphabets& s, int x, int y, int a, int b) {
    return ((static_cast<std::size_t>(x) * s.y_size + y) * s.a_size + a) *
               s.b_size + b;
  }

 private:
  SingleRoundBox() = default;
  Alphabets alphabets_;
  std::vector<double> p_;
};

class InputDistribution {
 public:
  InputDistribution(int x_size, int y_size, std::vector<double> q,
                    double tol = kLoadTolerance);
  static InputDistribution Uniform(int x_size, int y_size);

  double operator()(int x, int y) const { return q_[x * y_size_ + y]; }
  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  const std::vector<double>& table() const { return q_; }

  bool complete_support() const;
  double min_entry() const;
  double marginal_x(int x) const;
  double marginal_y(int y) const;
  // Q(x|y); throws std::domain_error when Q(y) = 0.
  double x_given_y(int x, int y) const;
  // Q(y|x); throws std::domain_error when Q(x) = 0.
  double y_given_x(int y, int x) const;

 private:
  int x_size_;
  int y_size_;
  std::vector<double> q_;
};

class Game {
 public:
  // `win` is indexed like a single-round box, [x][y][a][b].
  Game(const Alphabets& alphabets, InputDistribution q,
       std::vector<std::uint8_t> win);
  static Game FromPredicate(
      const Alphabets& alphabets, InputDistribution q,
      const std::function<bool(int a, int b, int x, int y)>& predicate);

  bool win(int a, int b, int x, int y) const {
    return win_[SingleRoundBox::Index(alphabets_, x, y, a, b)] != 0;
  }
  const Alphabets& alphabets() const { return alphabets_; }
  const InputDistribution& q() const { return q_; }
  const std::vector<std::uint8_t>& win_table() const { return win_; }

 private:
  Alphabets alphabets_;
  InputDistribution q_;
  std::vector<std::uint8_t> win_;
};

// Binary CHSH with uniform inputs: win iff a xor b = x*y.
Game ChshGame();
// x in {0,1}, y in {0,1,2}, uniform inputs. CHSH for y < 2, a = b for
// (x,y) = (0,2), and always a win for (1,2).
Game ExtendedChshGame();

struct ObservedData {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<int> x;
  std::vector<int> y;

  std::size_t size() const { return a.size(); }
  // Throws std::invalid_argument on length mismatch or out-of-range values.
  void Validate(const Alphabets& alphabets) const;
  // Rounds [begin, end).
  ObservedData Slice(std::size_t begin, std::size_t end) const;
};

// Encodes / decodes a string over {0..radix-1}; digit 0 is round 1 and is
// the least significant.
std::size_t EncodeString(const std::vector<int>& digits, int radix);
std::vector<int> DecodeString(std::size_t code, int radix, int n);
std::size_t IntPow(std::size_t base, int exponent);

inline constexpr std::size_t kMaxMultiRoundEntries = std::size_t{1} << 24;

class MultiRoundBox {
 public:
  MultiRoundBox(int n, const Alphabets& alphabets, std::vector<double> p,
                double tol = kLoadTolerance);
  static MultiRoundBox Unchecked(int n, const Alphabets& alphabets,
                                 std::vector<double> p);
  // Number of table entries for the given shape; throws std::length_error
  // beyond kMaxMultiRoundEntries.
  static std::size_t TableSize(int n, const Alphabets& alphabets);

  int n() const { return n_; }
  const Alphabets& alphabets() const { return alphabets_; }
  const std::vector<double>& table() const { return p_; }

  std::size_t x_strings() const { return xn_; }
  std::size_t y_strings() const { return yn_; }
  std::size_t a_strings() const { return an_; }
  std::size_t b_strings() const { return bn_; }

  std::size_t Index(std::size_t xs, std::size_t ys, std::size_t as,
                    std::size_t bs) const {
    return ((xs * yn_ + ys) * an_ + as) * bn_ + bs;
  }
  double at(std::size_t xs, std::size_t ys, std::size_t as,
            std::size_t bs) const {
    return p_[Index(xs, ys, as, bs)];
  }
  double NormalizationError() const;

 private:
  MultiRoundBox() = default;
  void InitShape();
  int n_ = 0;
  Alphabets alphabets_;
  std::vector<double> p_;
  std::size_t xn_ = 1, yn_ = 1, an_ = 1, bn_ = 1;
};

bool IsNonSignalling(const SingleRoundBox& box, double tol);
// Non-signalling between Alice's and Bob's whole strings.
bool IsNonSignalling(const MultiRoundBox& box, double tol);

double WinningProbability(const SingleRoundBox& box, const Game& game);

inline constexpr double kClassicalEnumerationCap = 1e6;
// Best deterministic strategy pair. Throws std::length_error when
// |A|^|X| * |B|^|Y| exceeds `max_pairs`.
double ClassicalValue(const Game& game,
                      double max_pairs = kClassicalEnumerationCap);

// O(a,b|x,y) = freq(a,b,x,y) / Q(x,y). Not renormalized.
SingleRoundBox FrequencyBox(const ObservedData& data, const Alphabets& alphabets,
                            const InputDistribution& q);

MultiRoundBox IidBox(const SingleRoundBox& single, int n);

// Result entry (as,bs|xs,ys) equals the input entry at the permuted strings,
// where the permuted string s' has s'_i = s_{perm[i]}.
MultiRoundBox Permute(const MultiRoundBox& box, const std::vector<int>& perm);

inline constexpr int kMaxSymmetrizeRounds = 6;
MultiRoundBox Symmetrize(const MultiRoundBox& box);
bool IsPermutationInvariant(const MultiRoundBox& box, double tol);

// sum_{x,y} Q(x,y) sum_{a,b} |P1 - P2|.
double L1Distance(const SingleRoundBox& b1, const SingleRoundBox& b2,
                  const InputDistribution& q);

// Fraction of rounds won.
double ThresholdWinFraction(const ObservedData& data, const Game& game);

// A game played n times in parallel, won iff at least `threshold` rounds
// are won.
struct ThresholdGame {
  Game base;
  int n;
  int threshold;

  bool Wins(const ObservedData& data) const;
  // Winning probability of an n-round box, inputs drawn IID from base.q().
  double WinningProbability(const MultiRoundBox& box) const;
};

}  // namespace ditk

#endif  // DITK_BOXES_H_
