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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "qgd/problem.hpp"

namespace qgd {

struct BruteForceOptions {
    int maxLayer = 8;   ///< two-level family: largest layer
    int maxBookN = 8;   ///< book family: vertex count
};

struct BruteForceResult {
    std::optional<Solution> witness;
    std::uint64_t acceptingCount = 0;  ///< accepting search-register bitstrings
    std::optional<int> optimum;        ///< minimum crossings for TLCM / OPCM
};

namespace detail {

inline std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

/// Crossing pairs under a position vector, for the given crossing test.
template <class Cross>
std::vector<std::pair<int, int>> crossingPairs(const std::vector<Edge> &edges, const std::vector<int> &pos, Cross cross) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(edges.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(edges.size()); ++b)
            if (cross(pos, edges[a], edges[b])) out.emplace_back(a, b);
    return out;
}

/// Sigma-subsets of [m] hitting every crossing pair; returns the count and the first one found.
inline std::uint64_t countRemovalSets(int m, int sigma, const std::vector<std::pair<int, int>> &pairs,
                                      std::optional<EdgeRemovalSet> &first) {
    if (sigma > m) return 0;
    std::uint64_t count = 0;
    for (const auto &s : allKSets(m, sigma)) {
        std::vector<char> in(m, 0);
        for (int e : s) in[e] = 1;
        bool ok = std::all_of(pairs.begin(), pairs.end(), [&](auto p) { return in[p.first] || in[p.second]; });
        if (ok) {
            if (!first) first = EdgeRemovalSet{s};
            ++count;
        }
    }
    return count;
}

/// Page assignments with values in [tau] where no crossing pair shares a page.
inline std::uint64_t countPageAssignments(int m, int tau, const std::vector<std::pair<int, int>> &pairs,
                                          std::optional<PageAssignment> &first) {
    std::vector<std::vector<int>> earlier(m);
    for (auto [a, b] : pairs) earlier[b].push_back(a);
    std::vector<int> page(m, 0);
    std::uint64_t count = 0;
    auto rec = [&](auto &&self, int e) -> void {
        if (e == m) {
            if (!first) first = PageAssignment{page, tau};
            ++count;
            return;
        }
        for (int p = 0; p < tau; ++p) {
            bool ok = true;
            for (int a : earlier[e])
                if (page[a] == p) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            page[e] = p;
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace detail

/**
 * @brief Exhaustive solver and accepting-bitstring counter.
 *
 * Two-level problems enumerate both layer orders; each pair of layer orders is produced by
 * C(n, |U|) vertex-position permutations. Book problems enumerate all spine orders. Removal
 * sets of size sigma are encoded by sigma! ordered tuples.
 */
inline BruteForceResult bruteForceSolve(const ProblemInstance &p, const BruteForceOptions &opt = {}) {
    BruteForceResult res;
    const int m = p.m();
    int bestCross = INT32_MAX;
    if (isTwoLevel(p.kind)) {
        const auto &g = p.bipartite();
        if (g.sizeU > opt.maxLayer || g.sizeV > opt.maxLayer) throw CapacityError("layer size exceeds brute-force guard");
        std::vector<int> ou(g.sizeU), ov(g.sizeV);
        std::iota(ou.begin(), ou.end(), 0);
        std::uint64_t layouts = 0;
        std::vector<int> pos(g.n());
        do {
            for (int i = 0; i < g.sizeU; ++i) pos[ou[i]] = i;
            std::iota(ov.begin(), ov.end(), g.sizeU);
            do {
                for (int i = 0; i < g.sizeV; ++i) pos[ov[i]] = i;
                TwoLevelOrder order{ou, ov};
                auto pairs = detail::crossingPairs(g.edges, pos, detail::crossTwoLevel);
                std::uint64_t accepted = 0;
                std::optional<EdgeRemovalSet> removal;
                switch (p.kind) {
                    case ProblemKind::TLCM: {
                        int c = static_cast<int>(pairs.size());
                        accepted = c <= p.parameter;
                        if (c < bestCross) {
                            bestCross = c;
                            if (accepted) res.witness = Solution{order, {}, {}, {}};
                        }
                        break;
                    }
                    case ProblemKind::TLKP: {
                        std::vector<int> per(m, 0);
                        for (auto [a, b] : pairs) ++per[a], ++per[b];
                        accepted = std::all_of(per.begin(), per.end(), [&](int v) { return v <= p.parameter; });
                        break;
                    }
                    case ProblemKind::TLQP:
                        accepted = !hasThreePairwiseCrossing(g, order);
                        break;
                    case ProblemKind::TLS:
                        accepted = detail::countRemovalSets(m, p.parameter, pairs, removal) * detail::factorial(p.parameter);
                        break;
                    default:
                        break;
                }
                if (accepted && !res.witness && p.kind != ProblemKind::TLCM) res.witness = Solution{order, {}, {}, removal};
                layouts += accepted;
            } while (std::next_permutation(ov.begin(), ov.end()));
        } while (std::next_permutation(ou.begin(), ou.end()));
        res.acceptingCount = layouts * binomial(g.n(), g.sizeU);
    } else {
        Graph g = p.plain();
        if (g.n > opt.maxBookN) throw CapacityError("vertex count exceeds brute-force guard");
        std::vector<int> order(g.n), pos(g.n);
        std::iota(order.begin(), order.end(), 0);
        do {
            for (int i = 0; i < g.n; ++i) pos[order[i]] = i;
            auto pairs = detail::crossingPairs(g.edges, pos, detail::crossSpine);
            std::uint64_t accepted = 0;
            std::optional<EdgeRemovalSet> removal;
            std::optional<PageAssignment> pages;
            switch (p.kind) {
                case ProblemKind::OPCM: {
                    int c = static_cast<int>(pairs.size());
                    accepted = c <= p.parameter;
                    if (c < bestCross) {
                        bestCross = c;
                        if (accepted) res.witness = Solution{{}, SpineOrder{order}, {}, {}};
                    }
                    break;
                }
                case ProblemKind::BT:
                    accepted = detail::countPageAssignments(m, p.parameter, pairs, pages);
                    break;
                case ProblemKind::BS:
                    accepted = detail::countRemovalSets(m, p.parameter, pairs, removal) * detail::factorial(p.parameter);
                    break;
                default:
                    break;
            }
            if (accepted && !res.witness && p.kind != ProblemKind::OPCM)
                res.witness = Solution{{}, SpineOrder{order}, pages, removal};
            res.acceptingCount += accepted;
        } while (std::next_permutation(order.begin(), order.end()));
    }
    if (p.kind == ProblemKind::TLCM || p.kind == ProblemKind::OPCM) res.optimum = bestCross;
    return res;
}

}  // namespace qgd
