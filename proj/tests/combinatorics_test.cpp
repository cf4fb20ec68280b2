// Copyright 2026 The qgd Authors
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

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "qgd/combinatorics.hpp"

using namespace qgd;

namespace {

bool disjoint(const KSet &a, const KSet &b) {
    for (int x : a)
        for (int y : b)
            if (x == y) return false;
    return true;
}

/// Maximum number of k-sets meeting a given k-set, counted directly.
std::uint64_t bruteMaxConflictDegree(int n, int k) {
    auto all = allKSets(n, k);
    std::uint64_t best = 0;
    for (const auto &a : all) {
        std::uint64_t d = 0;
        for (const auto &b : all)
            if (a != b && !disjoint(a, b)) ++d;
        best = std::max(best, d);
    }
    return best;
}

}  // namespace

TEST(CeilLog2, SmallValues) {
    EXPECT_EQ(ceilLog2(1), 0);
    EXPECT_EQ(ceilLog2(2), 1);
    EXPECT_EQ(ceilLog2(3), 2);
    EXPECT_EQ(ceilLog2(4), 2);
    EXPECT_EQ(ceilLog2(5), 3);
    EXPECT_EQ(ceilLog2(1024), 10);
    EXPECT_EQ(nextPowerOfTwo(5), 8u);
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(3, 5), 0u);
}

TEST(PartitionKSets, Examples) {
    auto p42 = partitionKSets(4, 2);
    ASSERT_EQ(p42.classes.size(), 3u);
    for (const auto &c : p42.classes) EXPECT_EQ(c.size(), 2u);  // a perfect matching of K4 has 2 edges
    auto p33 = partitionKSets(3, 3);
    ASSERT_EQ(p33.classes.size(), 1u);
    EXPECT_EQ(p33.classes[0], (std::vector<KSet>{{0, 1, 2}}));
    auto p51 = partitionKSets(5, 1);
    ASSERT_EQ(p51.classes.size(), 1u);
    EXPECT_EQ(p51.classes[0].size(), 5u);
    EXPECT_THROW(partitionKSets(3, 4), InvalidArgument);
    EXPECT_THROW(partitionKSets(3, 0), InvalidArgument);
}

TEST(PartitionKSets, CoverDisjointnessAndBoundsExhaustive) {
    for (int n = 1; n <= 10; ++n)
        for (int k = 1; k <= std::min(4, n); ++k) {
            auto part = partitionKSets(n, k);
            std::set<KSet> seen;
            for (const auto &cls : part.classes) {
                EXPECT_LE(static_cast<int>(cls.size()), n / k);
                for (size_t a = 0; a < cls.size(); ++a) {
                    EXPECT_TRUE(seen.insert(cls[a]).second);
                    for (size_t b = a + 1; b < cls.size(); ++b) EXPECT_TRUE(disjoint(cls[a], cls[b]));
                }
            }
            EXPECT_EQ(seen.size(), binomial(n, k));
            EXPECT_EQ(conflictDegreeBound(n, k), bruteMaxConflictDegree(n, k)) << n << "," << k;
            EXPECT_LE(part.classes.size(), conflictDegreeBound(n, k) + 1);
            if (3 * k < n + 2) EXPECT_LE(part.classes.size(), explicitClassBound(n, k));
        }
}

TEST(PhiSeries, Examples) {
    EXPECT_EQ(phiSeries(1), Rational(1, 2));
    EXPECT_EQ(phiSeries(2), Rational(1));
    EXPECT_EQ(phiSeries(3), Rational(11, 8));
}

TEST(PhiSeries, ClosedFormUpTo30) {
    for (int k = 1; k <= 30; ++k) {
        std::int64_t den = std::int64_t{1} << k;
        std::int64_t num = 2 * den - k - 2;
        std::int64_t g = std::gcd(num, den);
        auto s = phiSeries(k);
        EXPECT_EQ(s.numerator(), num / g);
        EXPECT_EQ(s.denominator(), den / g);
    }
}

TEST(IntSeqEncoding, BitLayoutIsLsbFirstPerInteger) {
    auto e = IntSeqEncoding::fromValues({1, 2}, 2);
    EXPECT_EQ(e.bits, (std::vector<std::uint8_t>{1, 0, 0, 1}));
    EXPECT_TRUE(e.bit(0, 0));
    EXPECT_TRUE(e.bit(1, 1));
    EXPECT_EQ(e.values(), (std::vector<std::uint64_t>{1, 2}));
    EXPECT_THROW(IntSeqEncoding::fromValues({4}, 2), InvalidArgument);
    EXPECT_THROW(IntSeqEncoding::fromBits({1, 0, 1}, 2, 2), InvalidArgument);
}

TEST(DecodePermutation, Examples) {
    EXPECT_EQ(decodePermutation(IntSeqEncoding::fromValues({2, 0, 3, 1}, 2)), (std::vector<int>{2, 0, 3, 1}));
    EXPECT_EQ(decodePermutation(IntSeqEncoding::fromValues({1, 1, 2, 3}, 2)), std::nullopt);
    EXPECT_EQ(decodePermutation(IntSeqEncoding::fromValues({0, 1, 3}, 2)), std::nullopt);
}

TEST(DecodePermutation, AcceptsExactlyThePermutations) {
    for (int n = 2; n <= 5; ++n) {
        const int w = ceilLog2(n);
        int accepted = 0;
        for (std::uint64_t g = 0; g < (1ull << (n * w)); ++g) {
            std::vector<std::uint8_t> bits(n * w);
            for (int b = 0; b < n * w; ++b) bits[b] = g >> b & 1;
            auto enc = IntSeqEncoding::fromBits(bits, n, w);
            auto v = enc.values();
            std::set<std::uint64_t> distinct(v.begin(), v.end());
            bool isPerm = distinct.size() == static_cast<size_t>(n) && *distinct.rbegin() < static_cast<std::uint64_t>(n);
            ASSERT_EQ(decodePermutation(enc).has_value(), isPerm);
            accepted += isPerm;
        }
        int fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        EXPECT_EQ(accepted, fact);
    }
}

TEST(DecodeEdgeSubset, Examples) {
    auto s = decodeEdgeSubset(IntSeqEncoding::fromValues({0, 3}, 2), 4);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(s->indices, (std::vector<int>{0, 3}));
    EXPECT_EQ(decodeEdgeSubset(IntSeqEncoding::fromValues({2, 2}, 2), 4), std::nullopt);
    EXPECT_EQ(decodeEdgeSubset(IntSeqEncoding::fromValues({3}, 2), 3), std::nullopt);
    auto r = decodeEdgeSubset(IntSeqEncoding::fromValues({3, 1}, 2), 4);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->indices, (std::vector<int>{1, 3}));
}
