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
#include <random>

#include <gtest/gtest.h>

#include "ditk/nslp.h"
#include "ditk/signalling.h"
#include "test_util.h"

namespace ditk {
namespace {

using testing::kBinary;

SingleRoundBox ConstantBox(int a0, int b0) {
  return SingleRoundBox::FromFunction(kBinary, [=](int a, int b, int, int) {
    return a == a0 && b == b0 ? 1.0 : 0.0;
  });
}

SingleRoundBox UniformBox(const Alphabets& s) {
  return SingleRoundBox::FromFunction(
      s, [&](int, int, int, int) { return 1.0 / (s.a_size * s.b_size); });
}

TEST(AlphabetsTest, RejectsNonPositiveSizes) {
  EXPECT_THROW((Alphabets{0, 2, 2, 2}.Validate()), std::invalid_argument);
  EXPECT_NO_THROW(kBinary.Validate());
}

TEST(SingleRoundBoxTest, RejectsBadTables) {
  EXPECT_THROW(SingleRoundBox(kBinary, std::vector<double>(15, 0.25)),
               std::invalid_argument);
  std::vector<double> p(16, 0.25);
  p[0] = 0.3;
  EXPECT_THROW(SingleRoundBox(kBinary, p), std::invalid_argument);
  p[0] = -0.25;
  p[1] = 0.75;
  EXPECT_THROW(SingleRoundBox(kBinary, p), std::invalid_argument);
}

TEST(SingleRoundBoxTest, RenormalizesWithinTolerance) {
  std::vector<double> p(16, 0.25);
  p[0] += 5e-10;
  const SingleRoundBox box(kBinary, p, 1e-9, true);
  EXPECT_LE(box.NormalizationError(), 1e-12);
}

TEST(NonSignallingTest, ProductBoxIsNonSignalling) {
  const SingleRoundBox box =
      SingleRoundBox::FromFunction(kBinary, [](int a, int b, int x, int y) {
        const double pa = x == 0 ? (a == 0 ? 0.3 : 0.7) : (a == 0 ? 0.9 : 0.1);
        const double pb = y == 0 ? (b == 0 ? 0.6 : 0.4) : (b == 0 ? 0.2 : 0.8);
        return pa * pb;
      });
  EXPECT_TRUE(IsNonSignalling(box, 1e-12));
}

TEST(NonSignallingTest, BobCopyingXSignals) {
  const SingleRoundBox box = SingleRoundBox::FromFunction(
      kBinary, [](int, int b, int x, int) { return b == x ? 0.5 : 0.0; });
  EXPECT_FALSE(IsNonSignalling(box, 1e-9));
}

TEST(NonSignallingTest, PrBoxIsNonSignalling) {
  EXPECT_TRUE(IsNonSignalling(testing::PrBox(), 1e-12));
}

TEST(WinningProbabilityTest, ChshExamples) {
  const Game chsh = ChshGame();
  EXPECT_DOUBLE_EQ(WinningProbability(ConstantBox(0, 0), chsh), 0.75);
  EXPECT_DOUBLE_EQ(WinningProbability(testing::PrBox(), chsh), 1.0);
  EXPECT_DOUBLE_EQ(WinningProbability(UniformBox(kBinary), chsh), 0.5);
}

TEST(WinningProbabilityTest, AlphabetMismatchThrows) {
  const SingleRoundBox box = UniformBox({2, 2, 2, 3});
  EXPECT_THROW(WinningProbability(box, ChshGame()), std::invalid_argument);
}

TEST(GameTest, ChshTable) {
  const Game chsh = ChshGame();
  EXPECT_TRUE(chsh.win(0, 0, 0, 0));
  // 0 xor 1 = 1 * 1, so this tuple wins.
  EXPECT_TRUE(chsh.win(0, 1, 1, 1));
  EXPECT_FALSE(chsh.win(0, 0, 1, 1));
  EXPECT_FALSE(chsh.win(1, 0, 0, 1));
}

TEST(GameTest, ExtendedChshTable) {
  const Game g = ExtendedChshGame();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      EXPECT_TRUE(g.win(a, b, 1, 2));
      EXPECT_EQ(g.win(a, b, 0, 2), a == b);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          EXPECT_EQ(g.win(a, b, x, y), (a ^ b) == (x & y));
        }
      }
    }
  }
  EXPECT_NEAR(g.q()(0, 2), 1.0 / 6, 1e-15);
}

TEST(ClassicalValueTest, Examples) {
  EXPECT_DOUBLE_EQ(ClassicalValue(ChshGame()), 0.75);
  const Game always = Game::FromPredicate(
      kBinary, InputDistribution::Uniform(2, 2),
      [](int, int, int, int) { return true; });
  EXPECT_DOUBLE_EQ(ClassicalValue(always), 1.0);
}

// Independent oracle: enumerate the 4 * 8 deterministic pairs directly.
TEST(ClassicalValueTest, ExtendedChshMatchesEnumeration) {
  const Game g = ExtendedChshGame();
  double best = 0;
  for (int fa = 0; fa < 4; ++fa) {
    for (int fb = 0; fb < 8; ++fb) {
      double w = 0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 3; ++y) {
          w += g.q()(x, y) * g.win((fa >> x) & 1, (fb >> y) & 1, x, y);
        }
      }
      best = std::max(best, w);
    }
  }
  EXPECT_DOUBLE_EQ(ClassicalValue(g), best);
  EXPECT_NEAR(best, 5.0 / 6, 1e-15);
}

TEST(ClassicalValueTest, EnumerationCap) {
  EXPECT_THROW(ClassicalValue(ChshGame(), 10), std::length_error);
}

TEST(ClassicalValueTest, NeverExceedsNonSignallingValue) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Game g = testing::RandomGame(rng);
    EXPECT_LE(ClassicalValue(g), SolveNsValue(g).value + 1e-9);
  }
}

TEST(FrequencyBoxTest, OneRoundPerInputPair) {
  ObservedData d;
  d.x = {0, 0, 1, 1};
  d.y = {0, 1, 0, 1};
  d.a = {1, 0, 1, 0};
  d.b = {0, 0, 1, 1};
  const SingleRoundBox f =
      FrequencyBox(d, kBinary, InputDistribution::Uniform(2, 2));
  EXPECT_DOUBLE_EQ(f(0, 0, 1, 0), 1.0);
  EXPECT_DOUBLE_EQ(f(1, 1, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(f(0, 0, 0, 0), 0.0);
}

TEST(FrequencyBoxTest, MissingPairIsRejected) {
  ObservedData d;
  d.x = {0};
  d.y = {0};
  d.a = {0};
  d.b = {0};
  EXPECT_THROW(FrequencyBox(d, kBinary, InputDistribution::Uniform(2, 2)),
               std::invalid_argument);
}

TEST(FrequencyBoxTest, ZeroInputProbabilityIsRejected) {
  ObservedData d;
  d.x = {0, 0, 1, 1};
  d.y = {0, 1, 0, 1};
  d.a = {0, 0, 0, 0};
  d.b = {0, 0, 0, 0};
  const InputDistribution q(2, 2, {0.5, 0.5, 0.0, 0.0});
  EXPECT_THROW(FrequencyBox(d, kBinary, q), std::invalid_argument);
}

TEST(FrequencyBoxTest, IsNotRenormalized) {
  ObservedData d;
  d.x = {0, 0, 0, 1, 1};
  d.y = {0, 0, 1, 0, 1};
  d.a = {0, 1, 0, 0, 0};
  d.b = {0, 0, 0, 0, 0};
  const SingleRoundBox f =
      FrequencyBox(d, kBinary, InputDistribution::Uniform(2, 2));
  // (0,0) occurs at 2/5 of the rounds against q = 1/4.
  EXPECT_DOUBLE_EQ(f(0, 0, 0, 0) + f(0, 0, 1, 0), 1.6);
}

// Frequencies of IID samples approach the source; large deviations are no
// more frequent than the Sanov bound allows.
TEST(FrequencyBoxTest, ConvergesWithinSanovBound) {
  std::mt19937_64 rng(5);
  const SingleRoundBox source = testing::RandomBox(kBinary, rng);
  const InputDistribution q = InputDistribution::Uniform(2, 2);
  const double eps = 0.5;
  double mean_prev = 1e9;
  for (std::size_t n : {1000u, 10000u}) {
    const int trials = 100;
    double mean = 0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
      const ObservedData d = testing::SampleIid(source, q, n, rng);
      const double dist = L1Distance(FrequencyBox(d, kBinary, q), source, q);
      mean += dist / trials;
      violations += dist > eps;
    }
    EXPECT_LT(mean, mean_prev);
    mean_prev = mean;
    const double delta = std::min(1.0, SanovDelta(n, eps, kBinary.cells()));
    EXPECT_LE(static_cast<double>(violations) / trials, delta);
  }
}

TEST(IidBoxTest, SingleRoundIsIdentity) {
  std::mt19937_64 rng(1);
  const SingleRoundBox s = testing::RandomBox(kBinary, rng);
  const MultiRoundBox m = IidBox(s, 1);
  ASSERT_EQ(m.table().size(), s.table().size());
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) EXPECT_EQ(m.at(x, y, a, b), s(x, y, a, b));
      }
    }
  }
}

TEST(IidBoxTest, EntriesAreProducts) {
  std::mt19937_64 rng(2);
  const Alphabets s{2, 3, 2, 2};
  const SingleRoundBox single = testing::RandomBox(s, rng);
  const MultiRoundBox m = IidBox(single, 2);
  EXPECT_LE(m.NormalizationError(), 1e-12);
  for (std::size_t xs = 0; xs < m.x_strings(); ++xs) {
    for (std::size_t ys = 0; ys < m.y_strings(); ++ys) {
      for (std::size_t as = 0; as < m.a_strings(); ++as) {
        for (std::size_t bs = 0; bs < m.b_strings(); ++bs) {
          const auto x = DecodeString(xs, 2, 2), y = DecodeString(ys, 2, 2);
          const auto a = DecodeString(as, 2, 2), b = DecodeString(bs, 3, 2);
          EXPECT_NEAR(m.at(xs, ys, as, bs),
                      single(x[0], y[0], a[0], b[0]) *
                          single(x[1], y[1], a[1], b[1]),
                      1e-15);
        }
      }
    }
  }
}

TEST(IidBoxTest, DeterministicStaysDeterministic) {
  const MultiRoundBox m = IidBox(ConstantBox(1, 0), 2);
  for (double v : m.table()) EXPECT_TRUE(v == 0.0 || v == 1.0);
}

TEST(IidBoxTest, SizeLimit) {
  EXPECT_THROW(IidBox(UniformBox(kBinary), 7), std::length_error);
}

// Independent check of whole-string non-signalling: Alice's marginal on
// (as | xs, ys) must not depend on ys, Bob's not on xs.
bool StringMarginalsAgree(const MultiRoundBox& m, double tol) {
  for (std::size_t xs = 0; xs < m.x_strings(); ++xs) {
    for (std::size_t as = 0; as < m.a_strings(); ++as) {
      double first = -1;
      for (std::size_t ys = 0; ys < m.y_strings(); ++ys) {
        double sum = 0;
        for (std::size_t bs = 0; bs < m.b_strings(); ++bs) sum += m.at(xs, ys, as, bs);
        if (first < 0) first = sum;
        if (std::abs(sum - first) > tol) return false;
      }
    }
  }
  for (std::size_t ys = 0; ys < m.y_strings(); ++ys) {
    for (std::size_t bs = 0; bs < m.b_strings(); ++bs) {
      double first = -1;
      for (std::size_t xs = 0; xs < m.x_strings(); ++xs) {
        double sum = 0;
        for (std::size_t as = 0; as < m.a_strings(); ++as) sum += m.at(xs, ys, as, bs);
        if (first < 0) first = sum;
        if (std::abs(sum - first) > tol) return false;
      }
    }
  }
  return true;
}

TEST(IidBoxTest, NonSignallingIsInherited) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const SingleRoundBox s = testing::RandomNsBox(kBinary, rng);
    ASSERT_TRUE(IsNonSignalling(s, 1e-12));
    for (int n = 1; n <= 3; ++n) {
      const MultiRoundBox m = IidBox(s, n);
      EXPECT_TRUE(IsNonSignalling(m, 1e-12));
      EXPECT_TRUE(StringMarginalsAgree(m, 1e-12));
    }
  }
  const MultiRoundBox sig = IidBox(
      SingleRoundBox::FromFunction(
          kBinary, [](int, int b, int x, int) { return b == x ? 0.5 : 0.0; }),
      2);
  EXPECT_FALSE(IsNonSignalling(sig, 1e-9));
  EXPECT_FALSE(StringMarginalsAgree(sig, 1e-9));
}

// Two rounds where Alice's first output copies the second input.
MultiRoundBox WiredBox() {
  std::vector<double> p(MultiRoundBox::TableSize(2, kBinary), 0.0);
  const MultiRoundBox shape = MultiRoundBox::Unchecked(2, kBinary, p);
  for (std::size_t xs = 0; xs < 4; ++xs) {
    const auto x = DecodeString(xs, 2, 2);
    for (std::size_t ys = 0; ys < 4; ++ys) {
      const std::size_t as = EncodeString({x[1], 0}, 2);
      p[shape.Index(xs, ys, as, 0)] = 1.0;
    }
  }
  return MultiRoundBox(2, kBinary, p);
}

TEST(PermuteTest, IdentityAndInverse) {
  std::mt19937_64 rng(4);
  const MultiRoundBox box = testing::RandomMultiRoundBox(3, kBinary, rng);
  const MultiRoundBox same = Permute(box, {0, 1, 2});
  EXPECT_EQ(same.table(), box.table());
  const std::vector<int> perm{2, 0, 1};
  std::vector<int> inverse(3);
  for (int i = 0; i < 3; ++i) inverse[perm[i]] = i;
  const MultiRoundBox back = Permute(Permute(box, perm), inverse);
  EXPECT_EQ(back.table(), box.table());
}

TEST(PermuteTest, MovesRounds) {
  const MultiRoundBox wired = WiredBox();
  // After swapping, Alice's second output copies the first input.
  const MultiRoundBox swapped = Permute(wired, {1, 0});
  for (std::size_t xs = 0; xs < 4; ++xs) {
    const auto x = DecodeString(xs, 2, 2);
    EXPECT_EQ(swapped.at(xs, 0, EncodeString({0, x[0]}, 2), 0), 1.0);
  }
}

TEST(PermuteTest, InvalidPermutationThrows) {
  const MultiRoundBox box = WiredBox();
  EXPECT_THROW(Permute(box, {0, 0}), std::invalid_argument);
  EXPECT_THROW(Permute(box, {0}), std::invalid_argument);
}

TEST(PermuteTest, IidBoxIsInvariant) {
  std::mt19937_64 rng(6);
  const MultiRoundBox iid = IidBox(testing::RandomBox(kBinary, rng), 3);
  std::vector<int> perm{0, 1, 2};
  do {
    const MultiRoundBox p = Permute(iid, perm);
    for (std::size_t i = 0; i < p.table().size(); ++i) {
      EXPECT_NEAR(p.table()[i], iid.table()[i], 1e-15);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_TRUE(IsPermutationInvariant(iid, 1e-12));
}

TEST(PermuteTest, PreservesNormalizationNonSignallingAndThresholdValue) {
  std::mt19937_64 rng(7);
  const ThresholdGame game{ChshGame(), 3, 2};
  for (int trial = 0; trial < 5; ++trial) {
    // Product of different non-signalling boxes: non-signalling, not
    // permutation invariant.
    std::vector<SingleRoundBox> rounds;
    for (int i = 0; i < 3; ++i) rounds.push_back(testing::RandomNsBox(kBinary, rng));
    std::vector<double> p(MultiRoundBox::TableSize(3, kBinary));
    const MultiRoundBox shape = MultiRoundBox::Unchecked(3, kBinary, p);
    for (std::size_t xs = 0; xs < 8; ++xs) {
      for (std::size_t ys = 0; ys < 8; ++ys) {
        for (std::size_t as = 0; as < 8; ++as) {
          for (std::size_t bs = 0; bs < 8; ++bs) {
            double v = 1;
            for (int i = 0; i < 3; ++i) {
              v *= rounds[i]((xs >> i) & 1, (ys >> i) & 1, (as >> i) & 1,
                             (bs >> i) & 1);
            }
            p[shape.Index(xs, ys, as, bs)] = v;
          }
        }
      }
    }
    const MultiRoundBox box(3, kBinary, p);
    const double w = game.WinningProbability(box);
    std::vector<int> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      const MultiRoundBox q = Permute(box, perm);
      EXPECT_LE(q.NormalizationError(), 1e-12);
      EXPECT_TRUE(IsNonSignalling(q, 1e-12));
      EXPECT_NEAR(game.WinningProbability(q), w, 1e-12);
    }
  }
}

TEST(SymmetrizeTest, WiredBoxBecomesInvariant) {
  const MultiRoundBox wired = WiredBox();
  EXPECT_FALSE(IsPermutationInvariant(wired, 1e-9));
  const MultiRoundBox sym = Symmetrize(wired);
  EXPECT_TRUE(IsPermutationInvariant(sym, 1e-12));
  EXPECT_LE(sym.NormalizationError(), 1e-12);
  const MultiRoundBox swapped = Permute(sym, {1, 0});
  for (std::size_t i = 0; i < sym.table().size(); ++i) {
    EXPECT_NEAR(swapped.table()[i], sym.table()[i], 1e-15);
  }
}

TEST(SymmetrizeTest, InvariantBoxUnchanged) {
  std::mt19937_64 rng(8);
  const MultiRoundBox iid = IidBox(testing::RandomBox(kBinary, rng), 2);
  const MultiRoundBox sym = Symmetrize(iid);
  for (std::size_t i = 0; i < iid.table().size(); ++i) {
    EXPECT_NEAR(sym.table()[i], iid.table()[i], 1e-15);
  }
}

TEST(SymmetrizeTest, PreservesThresholdWinningProbability) {
  std::mt19937_64 rng(9);
  const MultiRoundBox box = testing::RandomMultiRoundBox(3, kBinary, rng);
  for (int threshold = 0; threshold <= 3; ++threshold) {
    const ThresholdGame game{ChshGame(), 3, threshold};
    EXPECT_NEAR(game.WinningProbability(Symmetrize(box)),
                game.WinningProbability(box), 1e-12);
  }
}

TEST(SymmetrizeTest, RoundLimit) {
  const Alphabets tiny{1, 1, 1, 1};
  const MultiRoundBox big(7, tiny, {1.0});
  EXPECT_THROW(Symmetrize(big), std::length_error);
}

TEST(L1DistanceTest, Examples) {
  std::mt19937_64 rng(10);
  const InputDistribution q = InputDistribution::Uniform(2, 2);
  const SingleRoundBox b = testing::RandomBox(kBinary, rng);
  EXPECT_EQ(L1Distance(b, b, q), 0.0);
  EXPECT_DOUBLE_EQ(L1Distance(ConstantBox(0, 0), ConstantBox(1, 0), q), 2.0);
  for (int i = 0; i < 20; ++i) {
    const SingleRoundBox p1 = testing::RandomBox(kBinary, rng);
    const SingleRoundBox p2 = testing::RandomBox(kBinary, rng);
    const SingleRoundBox p3 = testing::RandomBox(kBinary, rng);
    EXPECT_LE(L1Distance(p1, p3, q),
              L1Distance(p1, p2, q) + L1Distance(p2, p3, q) + 1e-15);
  }
}

TEST(ThresholdWinFractionTest, Examples) {
  const Game chsh = ChshGame();
  ObservedData d;
  d.x = {0, 1, 1, 0};
  d.y = {0, 1, 1, 1};
  d.a = {0, 0, 0, 1};
  d.b = {0, 1, 0, 1};
  // Wins: yes, yes, no, yes.
  EXPECT_DOUBLE_EQ(ThresholdWinFraction(d, chsh), 0.75);
  d.b = {1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(ThresholdWinFraction(d, chsh), 0.25);
  d.a = {0, 0};
  d.b = {0, 0};
  d.x = {0, 1};
  d.y = {0, 1};
  EXPECT_DOUBLE_EQ(ThresholdWinFraction(d, chsh), 0.5);
  d.b = {0, 1};
  EXPECT_DOUBLE_EQ(ThresholdWinFraction(d, chsh), 1.0);
  d.b = {1, 0};
  EXPECT_DOUBLE_EQ(ThresholdWinFraction(d, chsh), 0.0);
}

TEST(ThresholdGameTest, IidValueIsBinomialTail) {
  const ThresholdGame game{ChshGame(), 3, 2};
  const MultiRoundBox box = IidBox(ConstantBox(0, 0), 3);
  // Rounds are won independently with probability 3/4.
  const double w = 0.75;
  EXPECT_NEAR(game.WinningProbability(box), 3 * w * w * (1 - w) + w * w * w,
              1e-12);
}

TEST(StringCodesTest, RoundTrip) {
  for (std::size_t code = 0; code < 27; ++code) {
    EXPECT_EQ(EncodeString(DecodeString(code, 3, 3), 3), code);
  }
  EXPECT_EQ(DecodeString(1, 2, 3), (std::vector<int>{1, 0, 0}));
}

}  // namespace
}  // namespace ditk
