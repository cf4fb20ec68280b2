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

#include <cmath>
#include <random>
#include <set>

#include "qgd/metrics.hpp"
#include "qgd/problem.hpp"
#include "qgd/simulate.hpp"
#include "qgd/transducers.hpp"

using namespace qgd;

namespace {

struct Run {
    std::vector<std::uint8_t> bits;
    const Circuit *c;

    std::uint64_t get(const std::string &name, int i = -1) const {
        const auto &r = c->reg(name);
        if (i >= 0) return bits[r.offset + i];
        std::uint64_t v = 0;
        for (int k = 0; k < r.size; ++k) v |= std::uint64_t{bits[r.offset + k]} << k;
        return v;
    }
    bool ancillasClear() const {
        for (const auto &r : c->registers())
            if (r.role == Role::ancilla)
                for (int k = 0; k < r.size; ++k)
                    if (bits[r.offset + k]) return false;
        return true;
    }
};

/// Loads `values` (width bits each, LSB first) into register `name` and runs the circuit.
Run runWith(const Circuit &c, const std::string &name, const std::vector<std::uint64_t> &values, int width) {
    std::vector<std::uint8_t> bits(c.numQubits(), 0);
    int off = c.reg(name).offset;
    for (size_t i = 0; i < values.size(); ++i)
        for (int b = 0; b < width; ++b) bits[off + i * width + b] = values[i] >> b & 1;
    return Run{runBasis(c, bits).bits, &c};
}

std::vector<std::uint64_t> tupleOf(std::uint64_t code, int count, int base) {
    std::vector<std::uint64_t> v(count);
    for (int i = 0; i < count; ++i, code /= base) v[i] = code % base;
    return v;
}

std::uint64_t power(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST(CollisionDetector, Examples) {
    auto c = buildCollisionDetector(3, 2);
    EXPECT_EQ(runWith(c, "values", {0, 1, 2}, 2).get("flag"), 1u);
    EXPECT_EQ(runWith(c, "values", {0, 2, 2}, 2).get("flag"), 0u);
    EXPECT_THROW(buildCollisionDetector(1, 2), InvalidArgument);
}

TEST(CollisionDetector, ExhaustiveFourValues) {
    auto c = buildCollisionDetector(4, 2);
    for (std::uint64_t code = 0; code < 256; ++code) {
        auto v = tupleOf(code, 4, 4);
        auto r = runWith(c, "values", v, 2);
        std::set<std::uint64_t> s(v.begin(), v.end());
        EXPECT_EQ(r.get("flag"), s.size() == 4 ? 1u : 0u);
        EXPECT_TRUE(r.ancillasClear());
    }
}

TEST(CollisionDetector, BoundRejectsOutOfRange) {
    auto c = buildCollisionDetector(3, 2, 3);
    for (std::uint64_t code = 0; code < 64; ++code) {
        auto v = tupleOf(code, 3, 4);
        std::set<std::uint64_t> s(v.begin(), v.end());
        bool want = s.size() == 3 && *s.rbegin() < 3;
        auto r = runWith(c, "values", v, 2);
        EXPECT_EQ(r.get("flag"), want ? 1u : 0u);
        EXPECT_TRUE(r.ancillasClear());
    }
}

TEST(PrecedenceConstructor, Examples) {
    auto c = buildPrecedenceConstructor(3);
    auto r = runWith(c, "phi", {1, 0, 2}, 2);
    EXPECT_EQ(r.get("x", pairIndex(3, 0, 1)), 0u);
    EXPECT_EQ(r.get("x", pairIndex(3, 0, 2)), 1u);
    EXPECT_EQ(r.get("x", pairIndex(3, 1, 2)), 1u);
    auto c2 = buildPrecedenceConstructor(2);
    EXPECT_EQ(runWith(c2, "phi", {0, 1}, 1).get("x", 0), 1u);
}

TEST(PrecedenceConstructor, ExhaustiveSmall) {
    for (int n : {2, 3, 4}) {
        auto c = buildPrecedenceConstructor(n);
        const int w = ceilLog2(n);
        for (std::uint64_t code = 0; code < power(1u << w, n); ++code) {
            auto v = tupleOf(code, n, 1 << w);
            auto r = runWith(c, "phi", v, w);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) EXPECT_EQ(r.get("x", pairIndex(n, i, j)), v[i] < v[j] ? 1u : 0u);
            EXPECT_TRUE(r.ancillasClear());
        }
    }
}

TEST(OrderTransducer, Examples) {
    auto c4 = buildOrderTransducer(4);
    auto r = runWith(c4, "phi", {2, 0, 3, 1}, 2);
    EXPECT_EQ(r.get("f_phi"), 1u);
    std::vector<std::uint64_t> phi{2, 0, 3, 1};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) EXPECT_EQ(r.get("x", pairIndex(4, i, j)), phi[i] < phi[j] ? 1u : 0u);
    EXPECT_EQ(runWith(c4, "phi", {0, 0, 1, 2}, 2).get("f_phi"), 0u);
    auto c3 = buildOrderTransducer(3);
    EXPECT_EQ(runWith(c3, "phi", {0, 1, 3}, 2).get("f_phi"), 0u);
    EXPECT_EQ(runWith(c3, "phi", {2, 1, 0}, 2).get("f_phi"), 1u);
}

TEST(OrderTransducer, FlagMatchesDecodePermutationOverAllInputs) {
    for (int n : {2, 3, 4}) {
        auto c = buildOrderTransducer(n);
        const int w = ceilLog2(n);
        const int bitsLen = n * w;
        for (std::uint64_t g = 0; g < (1ull << bitsLen); ++g) {
            auto enc = IntSeqEncoding::fromBits(bitsOf(g, bitsLen), n, w);
            auto v = enc.values();
            auto r = runWith(c, "phi", v, w);
            bool perm = decodePermutation(enc).has_value();
            ASSERT_EQ(r.get("f_phi"), perm ? 1u : 0u) << n << " " << g;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) EXPECT_EQ(r.get("x", pairIndex(n, i, j)), v[i] < v[j] ? 1u : 0u);
            EXPECT_TRUE(r.ancillasClear());
        }
    }
}

TEST(OrderTransducer, InverseRestoresEveryBasisState) {
    for (int n : {2, 3, 4}) {
        auto c = buildOrderTransducer(n);
        auto round = compose(c, inverse(c));
        const int q = c.numQubits();
        const int phiLen = c.reg("phi").size;
        // All phi values, with random garbage in the output and scratch wires.
        std::mt19937_64 rng(n);
        for (std::uint64_t g = 0; g < (1ull << phiLen); ++g) {
            auto bits = bitsOf(g, q);
            for (int k = phiLen; k < q; ++k) bits[k] = rng() & 1;
            EXPECT_EQ(runBasis(round, bits).bits, bits);
        }
    }
}

TEST(OrderTransducer, AncillaCount) {
    for (int n : {2, 4, 8, 16}) {
        auto lay = orderTransducerLayout(buildOrderTransducer(n));
        EXPECT_EQ(lay.n, n);
        EXPECT_EQ(lay.ancillas, (n / 2) * (n - 1 + ceilLog2(n)) + 1) << n;
    }
    EXPECT_EQ(orderTransducerLayout(buildOrderTransducer(8)).ancillas, 41);
}

TEST(OrderTransducer, ResourceFits) {
    for (int n : {4, 8, 16}) {
        auto m = metrics(buildOrderTransducer(n));
        double lg = std::log2(n);
        EXPECT_LE(m.complexity, 13.0 * n * n * lg) << n;
        EXPECT_LE(m.depth, 13.0 * n * lg) << n;
    }
}

TEST(EdgeConstructor, Examples) {
    auto c = buildEdgeConstructor(4, 2);
    auto r = runWith(c, "theta", {0, 3}, 2);
    EXPECT_EQ(r.get("e"), 0b1001u);
    EXPECT_EQ(runWith(c, "theta", {1, 1}, 2).get("e"), 0u);
}

TEST(EdgeConstructor, ExhaustiveM4Sigma2) {
    auto c = buildEdgeConstructor(4, 2);
    for (std::uint64_t code = 0; code < 16; ++code) {
        auto v = tupleOf(code, 2, 4);
        std::uint64_t want = (1u << v[0]) ^ (1u << v[1]);
        EXPECT_EQ(runWith(c, "theta", v, 2).get("e"), want);
    }
}

TEST(SkewnessTransducer, Examples) {
    auto c = buildSkewnessTransducer(4, 2);
    auto r = runWith(c, "theta", {0, 3}, 2);
    EXPECT_EQ(r.get("f_theta"), 1u);
    EXPECT_EQ(r.get("e"), 0b1001u);
    EXPECT_EQ(runWith(c, "theta", {2, 2}, 2).get("f_theta"), 0u);
}

TEST(SkewnessTransducer, AgreesWithDecodeEdgeSubset) {
    for (int m : {4, 5}) {
        for (int sigma : {1, 2, 3}) {
            auto c = buildSkewnessTransducer(m, sigma);
            const int w = ceilLog2(m);
            for (std::uint64_t g = 0; g < (1ull << (sigma * w)); ++g) {
                auto enc = IntSeqEncoding::fromBits(bitsOf(g, sigma * w), sigma, w);
                auto r = runWith(c, "theta", enc.values(), w);
                auto sub = decodeEdgeSubset(enc, m);
                ASSERT_EQ(r.get("f_theta"), sub ? 1u : 0u) << m << " " << sigma << " " << g;
                if (sub) {
                    std::uint64_t mask = 0;
                    for (int i : sub->indices) mask |= std::uint64_t{1} << i;
                    EXPECT_EQ(r.get("e"), mask);
                }
                EXPECT_TRUE(r.ancillasClear());
            }
        }
    }
}

TEST(SkewnessTransducer, ResourceFit) {
    for (int m : {4, 8, 16, 32, 64})
        for (int sigma : {1, 2, 4}) {
            if (sigma > m / 2) continue;
            auto mt = metrics(buildSkewnessTransducer(m, sigma));
            EXPECT_LE(mt.complexity, 8.0 * sigma * m * std::log2(m)) << m << " " << sigma;
        }
}
