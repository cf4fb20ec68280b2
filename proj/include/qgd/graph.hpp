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
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgd/error.hpp"

namespace qgd {

using Edge = std::pair<int, int>;

/// Simple undirected graph. Edge index i is list position i.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    int m() const { return static_cast<int>(edges.size()); }

    static Graph make(int n, std::vector<Edge> edges) {
        if (n < 0) throw InvalidArgument("negative vertex count");
        std::set<Edge> seen;
        for (auto &[a, b] : edges) {
            if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
            if (a == b) throw InvalidArgument("self-loop");
            if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw InvalidArgument("duplicate edge");
        }
        return Graph{n, std::move(edges)};
    }

    bool operator==(const Graph &) const = default;
};

/// Bipartite graph. U vertices are labeled 0..sizeU-1 and V vertices sizeU..sizeU+sizeV-1;
/// each edge stores (u label, v label).
struct BipartiteGraph {
    int sizeU = 0;
    int sizeV = 0;
    std::vector<Edge> edges;

    int n() const { return sizeU + sizeV; }
    int m() const { return static_cast<int>(edges.size()); }
    bool inU(int v) const { return v < sizeU; }

    static BipartiteGraph make(int sizeU, int sizeV, std::vector<Edge> edges) {
        if (sizeU < 0 || sizeV < 0) throw InvalidArgument("negative layer size");
        std::set<Edge> seen;
        for (auto &[u, v] : edges) {
            if (u < 0 || u >= sizeU) throw InvalidArgument("u endpoint out of range");
            if (v < sizeU || v >= sizeU + sizeV) throw InvalidArgument("v endpoint out of range");
            if (!seen.insert({u, v}).second) throw InvalidArgument("duplicate edge");
        }
        return BipartiteGraph{sizeU, sizeV, std::move(edges)};
    }

    Graph asGraph() const { return Graph{n(), edges}; }

    bool operator==(const BipartiteGraph &) const = default;
};

/// Complete bipartite graph K_{p,q}, edges in lexicographic order.
inline BipartiteGraph completeBipartite(int p, int q) {
    std::vector<Edge> edges;
    for (int u = 0; u < p; ++u)
        for (int v = 0; v < q; ++v) edges.emplace_back(u, p + v);
    return BipartiteGraph::make(p, q, std::move(edges));
}

/// Complete graph K_n, edges in lexicographic order.
inline Graph completeGraph(int n) {
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    return Graph::make(n, std::move(edges));
}

inline Graph cycleGraph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::make(n, std::move(edges));
}

struct TwoLevelOrder {
    std::vector<int> orderU;  ///< U labels, left to right
    std::vector<int> orderV;  ///< V labels, left to right
    bool operator==(const TwoLevelOrder &) const = default;
};

struct SpineOrder {
    std::vector<int> order;  ///< vertex labels along the spine
    bool operator==(const SpineOrder &) const = default;
};

struct PageAssignment {
    std::vector<int> pages;
    int tau = 1;
    bool operator==(const PageAssignment &) const = default;
};

struct EdgeRemovalSet {
    std::vector<int> indices;  ///< sorted
    bool contains(int e) const { return std::binary_search(indices.begin(), indices.end(), e); }
    bool operator==(const EdgeRemovalSet &) const = default;
};

namespace detail {

inline bool isPermutationOf(const std::vector<int> &p, int lo, int count) {
    if (static_cast<int>(p.size()) != count) return false;
    std::vector<char> seen(count, 0);
    for (int v : p) {
        if (v < lo || v >= lo + count || seen[v - lo]) return false;
        seen[v - lo] = 1;
    }
    return true;
}

inline bool sharesEndpoint(const Edge &a, const Edge &b) {
    return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

/// Crossing test for 2-level drawings from per-vertex positions within each layer.
inline bool crossTwoLevel(const std::vector<int> &pos, const Edge &a, const Edge &b) {
    if (a.first == b.first || a.second == b.second) return false;
    return (pos[a.first] < pos[b.first]) != (pos[a.second] < pos[b.second]);
}

/// Crossing test for spine layouts: endpoints interleave.
inline bool crossSpine(const std::vector<int> &pos, const Edge &a, const Edge &b) {
    if (sharesEndpoint(a, b)) return false;
    int lo = std::min(pos[a.first], pos[a.second]);
    int hi = std::max(pos[a.first], pos[a.second]);
    bool in1 = lo < pos[b.first] && pos[b.first] < hi;
    bool in2 = lo < pos[b.second] && pos[b.second] < hi;
    return in1 != in2;
}

inline std::vector<int> twoLevelPositions(const BipartiteGraph &g, const TwoLevelOrder &o) {
    if (!isPermutationOf(o.orderU, 0, g.sizeU) || !isPermutationOf(o.orderV, g.sizeU, g.sizeV))
        throw InvalidArgument("two-level order does not match graph layers");
    std::vector<int> pos(g.n());
    for (int i = 0; i < g.sizeU; ++i) pos[o.orderU[i]] = i;
    for (int i = 0; i < g.sizeV; ++i) pos[o.orderV[i]] = i;
    return pos;
}

inline std::vector<int> spinePositions(int n, const SpineOrder &o) {
    if (!isPermutationOf(o.order, 0, n)) throw InvalidArgument("spine order is not a permutation");
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[o.order[i]] = i;
    return pos;
}

inline void checkEdgeIndex(int m, int a) {
    if (a < 0 || a >= m) throw InvalidArgument("edge index out of range");
}

}  // namespace detail

inline bool twoLevelCross(const BipartiteGraph &g, const TwoLevelOrder &order, int a, int b) {
    detail::checkEdgeIndex(g.m(), a);
    detail::checkEdgeIndex(g.m(), b);
    if (a == b) throw InvalidArgument("edge compared with itself");
    return detail::crossTwoLevel(detail::twoLevelPositions(g, order), g.edges[a], g.edges[b]);
}

inline bool bookCross(const Graph &g, const SpineOrder &order, int a, int b) {
    detail::checkEdgeIndex(g.m(), a);
    detail::checkEdgeIndex(g.m(), b);
    if (a == b) throw InvalidArgument("edge compared with itself");
    return detail::crossSpine(detail::spinePositions(g.n, order), g.edges[a], g.edges[b]);
}

inline int countCrossings(const BipartiteGraph &g, const TwoLevelOrder &order,
                          const std::optional<EdgeRemovalSet> &removed = std::nullopt) {
    auto pos = detail::twoLevelPositions(g, order);
    int count = 0;
    for (int a = 0; a < g.m(); ++a) {
        if (removed && removed->contains(a)) continue;
        for (int b = a + 1; b < g.m(); ++b) {
            if (removed && removed->contains(b)) continue;
            count += detail::crossTwoLevel(pos, g.edges[a], g.edges[b]);
        }
    }
    return count;
}

inline int countCrossings(const Graph &g, const SpineOrder &order,
                          const std::optional<EdgeRemovalSet> &removed = std::nullopt) {
    auto pos = detail::spinePositions(g.n, order);
    int count = 0;
    for (int a = 0; a < g.m(); ++a) {
        if (removed && removed->contains(a)) continue;
        for (int b = a + 1; b < g.m(); ++b) {
            if (removed && removed->contains(b)) continue;
            count += detail::crossSpine(pos, g.edges[a], g.edges[b]);
        }
    }
    return count;
}

/// Per-edge crossing counts of a 2-level drawing.
inline std::vector<int> crossingsPerEdge(const BipartiteGraph &g, const TwoLevelOrder &order) {
    auto pos = detail::twoLevelPositions(g, order);
    std::vector<int> c(g.m(), 0);
    for (int a = 0; a < g.m(); ++a)
        for (int b = a + 1; b < g.m(); ++b)
            if (detail::crossTwoLevel(pos, g.edges[a], g.edges[b])) ++c[a], ++c[b];
    return c;
}

/// True iff three edges pairwise cross somewhere in the drawing.
inline bool hasThreePairwiseCrossing(const BipartiteGraph &g, const TwoLevelOrder &order) {
    auto pos = detail::twoLevelPositions(g, order);
    int m = g.m();
    std::vector<char> x(static_cast<size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) x[a * m + b] = x[b * m + a] = detail::crossTwoLevel(pos, g.edges[a], g.edges[b]);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (!x[a * m + b]) continue;
            for (int c = b + 1; c < m; ++c)
                if (x[a * m + c] && x[b * m + c]) return true;
        }
    return false;
}

/// True iff no two edges on the same page cross.
inline bool isValidBookEmbedding(const Graph &g, const SpineOrder &order, const PageAssignment &p) {
    if (static_cast<int>(p.pages.size()) != g.m()) return false;
    for (int pg : p.pages)
        if (pg < 0 || pg >= p.tau) return false;
    auto pos = detail::spinePositions(g.n, order);
    for (int a = 0; a < g.m(); ++a)
        for (int b = a + 1; b < g.m(); ++b)
            if (p.pages[a] == p.pages[b] && detail::crossSpine(pos, g.edges[a], g.edges[b])) return false;
    return true;
}

inline bool isCaterpillarForest(const Graph &g) {
    std::vector<std::vector<int>> adj(g.n);
    for (auto [a, b] : g.edges) adj[a].push_back(b), adj[b].push_back(a);
    // Acyclic iff every component has exactly |component|-1 edges.
    std::vector<int> comp(g.n, -1);
    int components = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = components;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) comp[w] = components, stack.push_back(w);
        }
        ++components;
    }
    if (g.m() != g.n - components) return false;
    // Spine vertices: degree >= 2. Each must have at most two spine neighbours.
    for (int v = 0; v < g.n; ++v) {
        if (adj[v].size() < 2) continue;
        int spineNeighbours = 0;
        for (int w : adj[v]) spineNeighbours += adj[w].size() >= 2;
        if (spineNeighbours > 2) return false;
    }
    return true;
}

/// Exhaustive search over spine orders with vertex 0 fixed first; returns a crossing-free order.
inline std::optional<SpineOrder> findOuterplanarOrder(const Graph &g, int guard = 10) {
    if (g.n <= 3) {
        SpineOrder o{std::vector<int>(g.n)};
        std::iota(o.order.begin(), o.order.end(), 0);
        return o;
    }
    if (g.m() > 2 * g.n - 3) return std::nullopt;
    if (g.n > guard) throw CapacityError("outerplanarity brute force exceeds vertex guard");
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> pos(g.n);
    // Rotations of a spine order preserve interleaving, so vertex 0 can stay first.
    do {
        for (int i = 0; i < g.n; ++i) pos[perm[i]] = i;
        bool ok = true;
        for (int a = 0; a < g.m() && ok; ++a)
            for (int b = a + 1; b < g.m() && ok; ++b)
                if (detail::crossSpine(pos, g.edges[a], g.edges[b])) ok = false;
        if (ok) return SpineOrder{perm};
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return std::nullopt;
}

inline bool isOuterplanar(const Graph &g, int guard = 10) { return findOuterplanarOrder(g, guard).has_value(); }

/// Exact 2-level crossing minimization: enumerate U orders, dynamic programming over V subsets.
inline std::pair<int, TwoLevelOrder> minTwoLevelCrossings(const BipartiteGraph &g, int guard = 9) {
    if (g.sizeU > guard || g.sizeV > 20) throw CapacityError("exact 2-level minimization exceeds guard");
    const int p = g.sizeU, q = g.sizeV;
    std::vector<std::vector<int>> nbr(q);
    for (auto [u, v] : g.edges) nbr[v - p].push_back(u);
    std::vector<int> orderU(p);
    std::iota(orderU.begin(), orderU.end(), 0);
    std::vector<int> posU(p);
    int best = std::numeric_limits<int>::max();
    TwoLevelOrder bestOrder;
    const std::uint32_t full = (1u << q) - 1;
    std::vector<int> dp(static_cast<size_t>(full) + 1), from(static_cast<size_t>(full) + 1);
    std::vector<int> cost(static_cast<size_t>(q) * q);
    do {
        for (int i = 0; i < p; ++i) posU[orderU[i]] = i;
        // cost[v*q+w]: crossings between edges at v and w when v is left of w.
        for (int v = 0; v < q; ++v)
            for (int w = 0; w < q; ++w) {
                int c = 0;
                if (v != w)
                    for (int a : nbr[v])
                        for (int b : nbr[w]) c += posU[a] > posU[b];
                cost[v * q + w] = c;
            }
        std::fill(dp.begin(), dp.end(), std::numeric_limits<int>::max());
        dp[0] = 0;
        for (std::uint32_t s = 0; s <= full; ++s) {
            if (dp[s] == std::numeric_limits<int>::max()) continue;
            for (int w = 0; w < q; ++w) {
                if (s >> w & 1) continue;
                int add = 0;
                for (int v = 0; v < q; ++v)
                    if (s >> v & 1) add += cost[v * q + w];
                std::uint32_t t = s | (1u << w);
                if (dp[s] + add < dp[t]) dp[t] = dp[s] + add, from[t] = w;
            }
        }
        if (dp[full] < best) {
            best = dp[full];
            std::vector<int> ov;
            for (std::uint32_t s = full; s; s &= ~(1u << from[s])) ov.push_back(p + from[s]);
            std::reverse(ov.begin(), ov.end());
            bestOrder = TwoLevelOrder{orderU, ov};
        }
    } while (std::next_permutation(orderU.begin(), orderU.end()));
    return {best, bestOrder};
}

/// Drops vertices without incident edges and relabels the rest, keeping edge order.
inline BipartiteGraph withoutIsolatedVertices(const BipartiteGraph &g) {
    std::vector<int> deg(g.n(), 0);
    for (auto [u, v] : g.edges) ++deg[u], ++deg[v];
    std::vector<int> label(g.n(), -1);
    int p = 0, q = 0;
    for (int u = 0; u < g.sizeU; ++u)
        if (deg[u]) label[u] = p++;
    for (int v = g.sizeU; v < g.n(); ++v)
        if (deg[v]) label[v] = q++;
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges) edges.emplace_back(label[u], p + label[v]);
    return BipartiteGraph::make(p, q, std::move(edges));
}

}  // namespace qgd
