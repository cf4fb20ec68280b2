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

#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "qgd/error.hpp"
#include "qgd/graph.hpp"

namespace qgd {

/// ceil(log2 k); 0 for k <= 1.
inline int ceilLog2(std::uint64_t k) {
    int r = 0;
    while ((std::uint64_t{1} << r) < k) ++r;
    return r;
}

inline std::uint64_t nextPowerOfTwo(std::uint64_t k) { return std::uint64_t{1} << ceilLog2(k); }

inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

using KSet = std::vector<int>;

struct KSetPartition {
    int groundSize = 0;
    int k = 0;
    std::vector<std::vector<KSet>> classes;
};

/**
 * @brief Greedy proper coloring of the intersection graph of `family`, in the given order.
 *
 * Each set goes to the first class none of whose members it meets, so every class is
 * pairwise disjoint and the class count is at most the maximum intersection degree plus one.
 */
inline std::vector<std::vector<KSet>> colorDisjointClasses(const std::vector<KSet> &family, int groundSize) {
    std::vector<std::vector<KSet>> classes;
    std::vector<std::vector<char>> used;
    for (const auto &s : family) {
        size_t c = 0;
        for (; c < classes.size(); ++c) {
            bool clash = false;
            for (int e : s)
                if (used[c][e]) {
                    clash = true;
                    break;
                }
            if (!clash) break;
        }
        if (c == classes.size()) {
            classes.emplace_back();
            used.emplace_back(groundSize, 0);
        }
        classes[c].push_back(s);
        for (int e : s) used[c][e] = 1;
    }
    return classes;
}

/// All k-subsets of [groundSize] in lexicographic order.
inline std::vector<KSet> allKSets(int groundSize, int k) {
    std::vector<KSet> out;
    KSet cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    if (k > groundSize) return out;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == groundSize - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline KSetPartition partitionKSets(int groundSize, int k) {
    if (k < 1 || k > groundSize) throw InvalidArgument("k out of range");
    return KSetPartition{groundSize, k, colorDisjointClasses(allKSets(groundSize, k), groundSize)};
}

/// Number of other k-sets meeting a fixed k-set: sum_{i=1}^{k-1} C(k,i) C(|X|-k, k-i).
inline std::uint64_t conflictDegreeBound(int groundSize, int k) {
    std::uint64_t d = 0;
    for (int i = 1; i <= k - 1; ++i) d += binomial(k, i) * binomial(groundSize - k, k - i);
    return d;
}

/// 2 C(k, ceil(k/2)) |X|^{k-1} + 1, valid for k < (|X|+2)/3.
inline std::uint64_t explicitClassBound(int groundSize, int k) {
    std::uint64_t p = 1;
    for (int i = 0; i < k - 1; ++i) p *= static_cast<std::uint64_t>(groundSize);
    return 2 * binomial(k, (k + 1) / 2) * p + 1;
}

using Rational = boost::rational<std::int64_t>;

/// sum_{i=1}^{k} i / 2^i, exactly.
inline Rational phiSeries(int k) {
    if (k < 1 || k > 60) throw InvalidArgument("phiSeries needs 1 <= k <= 60");
    Rational s(0);
    for (int i = 1; i <= k; ++i) s += Rational(i, std::int64_t{1} << i);
    return s;
}

/// Sequence of `count` integers of `width` bits; integer i uses bits [width*i, width*i+width), LSB first.
struct IntSeqEncoding {
    int count = 0;
    int width = 0;
    std::vector<std::uint8_t> bits;

    static IntSeqEncoding fromValues(const std::vector<std::uint64_t> &values, int width) {
        IntSeqEncoding e{static_cast<int>(values.size()), width, {}};
        e.bits.assign(static_cast<size_t>(e.count) * width, 0);
        for (int i = 0; i < e.count; ++i) {
            if (width < 64 && values[i] >> width) throw InvalidArgument("value does not fit the width");
            for (int j = 0; j < width; ++j) e.bits[i * width + j] = (values[i] >> j) & 1;
        }
        return e;
    }

    static IntSeqEncoding fromBits(std::vector<std::uint8_t> bits, int count, int width) {
        if (static_cast<long>(bits.size()) != static_cast<long>(count) * width)
            throw InvalidArgument("bit length does not equal count*width");
        return IntSeqEncoding{count, width, std::move(bits)};
    }

    bool bit(int i, int j) const { return bits[i * width + j] != 0; }

    std::uint64_t value(int i) const {
        std::uint64_t v = 0;
        for (int j = 0; j < width; ++j) v |= std::uint64_t{bits[i * width + j]} << j;
        return v;
    }

    std::vector<std::uint64_t> values() const {
        std::vector<std::uint64_t> v(count);
        for (int i = 0; i < count; ++i) v[i] = value(i);
        return v;
    }
};

/// The permutation when all values are distinct and < count.
inline std::optional<std::vector<int>> decodePermutation(const IntSeqEncoding &enc) {
    std::vector<char> seen(enc.count, 0);
    std::vector<int> out(enc.count);
    for (int i = 0; i < enc.count; ++i) {
        auto v = enc.value(i);
        if (v >= static_cast<std::uint64_t>(enc.count) || seen[v]) return std::nullopt;
        seen[v] = 1;
        out[i] = static_cast<int>(v);
    }
    return out;
}

/// The edge set when all entries are distinct and < m.
inline std::optional<EdgeRemovalSet> decodeEdgeSubset(const IntSeqEncoding &enc, int m) {
    std::vector<int> idx;
    for (int i = 0; i < enc.count; ++i) {
        auto v = enc.value(i);
        if (v >= static_cast<std::uint64_t>(m)) return std::nullopt;
        idx.push_back(static_cast<int>(v));
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return std::nullopt;
    return EdgeRemovalSet{idx};
}

}  // namespace qgd
