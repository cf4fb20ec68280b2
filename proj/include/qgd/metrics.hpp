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
#include <queue>
#include <vector>

#include "qgd/circuit.hpp"

namespace qgd {

struct ResourceMetrics {
    std::int64_t complexity = 0;
    std::int64_t depth = 0;
    std::int64_t width = 0;
    bool widthExact = true;  ///< false: per-layer lower bound
};

/// Elementary-gate weight: X, H, CNOT, Toffoli count 1; MCX with c > 2 controls counts c - 1.
inline std::int64_t gateWeight(const Gate &g) {
    auto c = static_cast<std::int64_t>(g.controls.size());
    return c <= 2 ? 1 : c - 1;
}

namespace detail {

/// Dinic max flow on int64 capacities.
class MaxFlow {
   public:
    explicit MaxFlow(int n) : adj_(n), level_(n), it_(n) {}

    int addEdge(int a, int b, std::int64_t cap, std::int64_t revCap = 0) {
        adj_[a].push_back(static_cast<int>(e_.size()));
        e_.push_back({b, cap});
        adj_[b].push_back(static_cast<int>(e_.size()));
        e_.push_back({a, revCap});
        return static_cast<int>(e_.size()) - 2;
    }

    std::int64_t run(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
        }
        return flow;
    }

   private:
    struct E {
        int to;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj_[v])
                if (e_[id].cap > 0 && level_[e_[id].to] < 0) level_[e_[id].to] = level_[v] + 1, q.push(e_[id].to);
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t f) {
        if (v == t) return f;
        std::int64_t pushed = 0;
        for (int &i = it_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
            int id = adj_[v][i];
            if (e_[id].cap <= 0 || level_[e_[id].to] != level_[v] + 1) continue;
            std::int64_t d = dfs(e_[id].to, t, std::min(f - pushed, e_[id].cap));
            if (d > 0) {
                e_[id].cap -= d;
                e_[id ^ 1].cap += d;
                pushed += d;
                if (pushed == f) break;
            }
        }
        if (pushed == 0) level_[v] = -1;
        return pushed;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<E> e_;
    std::vector<int> level_, it_;
};

/// Predecessor lists: for each gate, the previous gate on each qubit it touches.
inline std::vector<std::vector<int>> gatePredecessors(const Circuit &c) {
    std::vector<int> last(c.numQubits(), -1);
    std::vector<std::vector<int>> pred(c.gates().size());
    for (size_t gi = 0; gi < c.gates().size(); ++gi) {
        const auto &g = c.gates()[gi];
        auto touch = [&](int q) {
            if (last[q] >= 0) pred[gi].push_back(last[q]);
            last[q] = static_cast<int>(gi);
        };
        for (const auto &ct : g.controls) touch(ct.qubit);
        touch(g.target);
        std::sort(pred[gi].begin(), pred[gi].end());
        pred[gi].erase(std::unique(pred[gi].begin(), pred[gi].end()), pred[gi].end());
    }
    return pred;
}

}  // namespace detail

/**
 * @brief Complexity, depth and width of the weighted gate DAG.
 *
 * Depth is the heaviest chain. Width is the heaviest antichain, computed as a minimum flow
 * with vertex lower bounds when the circuit has at most `exactWidthLimit` gates; above that
 * the heaviest ASAP layer is reported and `widthExact` is false.
 */
inline ResourceMetrics metrics(const Circuit &c, size_t exactWidthLimit = 10000) {
    ResourceMetrics r;
    const auto &gates = c.gates();
    const int n = static_cast<int>(gates.size());
    if (n == 0) return r;
    auto pred = detail::gatePredecessors(c);
    std::vector<std::int64_t> w(n), chain(n);
    std::vector<int> layer(n);
    for (int i = 0; i < n; ++i) {
        w[i] = gateWeight(gates[i]);
        r.complexity += w[i];
        std::int64_t best = 0;
        int lv = 0;
        for (int p : pred[i]) best = std::max(best, chain[p]), lv = std::max(lv, layer[p] + 1);
        chain[i] = best + w[i];
        layer[i] = lv;
        r.depth = std::max(r.depth, chain[i]);
    }
    if (static_cast<size_t>(n) > exactWidthLimit) {
        std::vector<std::int64_t> perLayer(*std::max_element(layer.begin(), layer.end()) + 1, 0);
        for (int i = 0; i < n; ++i) perLayer[layer[i]] += w[i];
        r.width = *std::max_element(perLayer.begin(), perLayer.end());
        r.widthExact = false;
        return r;
    }
    // Minimum chain cover with each gate covered w times equals the heaviest antichain.
    // Start from one chain per unit of weight, then cancel as much as possible from t to s.
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    const int s = 0, t = 1;
    detail::MaxFlow mf(2 + 2 * n);
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        int in = 2 + 2 * i, out = 3 + 2 * i;
        // Residual capacities of the initial flow: forward inf, backward = flow - lower bound.
        mf.addEdge(s, in, inf, w[i]);
        mf.addEdge(in, out, inf, 0);
        mf.addEdge(out, t, inf, w[i]);
        for (int p : pred[i]) mf.addEdge(3 + 2 * p, in, inf, 0);
        total += w[i];
    }
    r.width = total - mf.run(t, s);
    return r;
}

}  // namespace qgd
