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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qgd/combinatorics.hpp"
#include "qgd/error.hpp"
#include "qgd/graph.hpp"

namespace qgd {

enum class ProblemKind { TLCM, TLKP, TLQP, TLS, OPCM, BT, BS };

inline constexpr ProblemKind kAllProblems[] = {ProblemKind::TLCM, ProblemKind::TLKP, ProblemKind::TLQP,
                                               ProblemKind::TLS,  ProblemKind::OPCM, ProblemKind::BT,
                                               ProblemKind::BS};

inline const char *problemName(ProblemKind k) {
    switch (k) {
        case ProblemKind::TLCM: return "tlcm";
        case ProblemKind::TLKP: return "tlkp";
        case ProblemKind::TLQP: return "tlqp";
        case ProblemKind::TLS: return "tls";
        case ProblemKind::OPCM: return "opcm";
        case ProblemKind::BT: return "bt";
        case ProblemKind::BS: return "bs";
    }
    return "?";
}

inline ProblemKind parseProblem(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    for (auto k : kAllProblems)
        if (s == problemName(k)) return k;
    throw ParseError("unknown problem: " + s);
}

inline bool isTwoLevel(ProblemKind k) {
    return k == ProblemKind::TLCM || k == ProblemKind::TLKP || k == ProblemKind::TLQP || k == ProblemKind::TLS;
}

inline bool usesTheta(ProblemKind k) { return k == ProblemKind::TLS || k == ProblemKind::BS; }

using AnyGraph = std::variant<Graph, BipartiteGraph>;

/**
 * @brief A problem with its graph and integer parameter.
 *
 * The parameter is the crossing budget (TLCM, OPCM), the per-edge budget (TLKP), the number of
 * removed edges (TLS, BS) or the page count (BT); TLQP ignores it.
 */
struct ProblemInstance {
    ProblemKind kind = ProblemKind::TLCM;
    AnyGraph graph;
    int parameter = 0;

    static ProblemInstance make(ProblemKind kind, AnyGraph graph, int parameter) {
        ProblemInstance p{kind, std::move(graph), parameter};
        if (isTwoLevel(kind) && !std::holds_alternative<BipartiteGraph>(p.graph))
            throw InvalidArgument(std::string(problemName(kind)) + " needs a bipartite graph");
        if (p.n() < 2) throw InvalidArgument("instance needs at least two vertices");
        if (parameter < 0) throw InvalidArgument("parameter must be non-negative");
        if (kind == ProblemKind::BT && parameter < 1) throw InvalidArgument("page count must be >= 1");
        if (usesTheta(kind)) {
            if (parameter < 1) throw InvalidArgument("number of removed edges must be >= 1");
            if (p.m() < 2) throw InvalidArgument("edge removal problems need at least two edges");
        }
        return p;
    }

    Graph plain() const {
        if (auto *b = std::get_if<BipartiteGraph>(&graph)) return b->asGraph();
        return std::get<Graph>(graph);
    }
    const BipartiteGraph &bipartite() const { return std::get<BipartiteGraph>(graph); }
    int n() const {
        if (auto *b = std::get_if<BipartiteGraph>(&graph)) return b->n();
        return std::get<Graph>(graph).n;
    }
    int m() const { return std::visit([](const auto &g) { return g.m(); }, graph); }
};

/// Bit layout of the search register: phi, then psi (BT), then theta (TLS, BS).
struct SearchLayout {
    int n = 0, phiWidth = 0;
    int psiCount = 0, psiWidth = 0;
    int thetaCount = 0, thetaWidth = 0;

    int phiBits() const { return n * phiWidth; }
    int psiBits() const { return psiCount * psiWidth; }
    int thetaBits() const { return thetaCount * thetaWidth; }
    int ell() const { return phiBits() + psiBits() + thetaBits(); }
};

inline SearchLayout searchLayout(const ProblemInstance &p) {
    SearchLayout s;
    s.n = p.n();
    s.phiWidth = ceilLog2(s.n);
    if (p.kind == ProblemKind::BT) s.psiCount = p.m(), s.psiWidth = ceilLog2(p.parameter);
    if (usesTheta(p.kind)) s.thetaCount = p.parameter, s.thetaWidth = ceilLog2(p.m());
    return s;
}

/// Decoded layout; unused parts stay empty.
struct Solution {
    std::optional<TwoLevelOrder> twoLevel;
    std::optional<SpineOrder> spine;
    std::optional<PageAssignment> pages;
    std::optional<EdgeRemovalSet> removed;
    bool operator==(const Solution &) const = default;
};

/// Layout from a vertex-to-position permutation.
inline Solution layoutFromPositions(const ProblemInstance &p, const std::vector<int> &pos) {
    Solution s;
    std::vector<int> byPos(pos.size());
    for (size_t v = 0; v < pos.size(); ++v) byPos[pos[v]] = static_cast<int>(v);
    if (isTwoLevel(p.kind)) {
        const auto &g = p.bipartite();
        TwoLevelOrder o;
        for (int v : byPos) (g.inU(v) ? o.orderU : o.orderV).push_back(v);
        s.twoLevel = o;
    } else {
        s.spine = SpineOrder{byPos};
    }
    return s;
}

/// Decodes gamma; nullopt when any block is degenerate.
inline std::optional<Solution> decodeGamma(const ProblemInstance &p, const std::vector<std::uint8_t> &gamma) {
    auto lay = searchLayout(p);
    if (static_cast<int>(gamma.size()) != lay.ell()) throw InvalidArgument("bitstring length does not match the search register");
    auto block = [&](int from, int count, int width) {
        return IntSeqEncoding::fromBits(std::vector<std::uint8_t>(gamma.begin() + from, gamma.begin() + from + count * width),
                                        count, width);
    };
    auto perm = decodePermutation(block(0, lay.n, lay.phiWidth));
    if (!perm) return std::nullopt;
    Solution s = layoutFromPositions(p, *perm);
    if (p.kind == ProblemKind::BT) {
        auto psi = block(lay.phiBits(), lay.psiCount, lay.psiWidth);
        PageAssignment pa{std::vector<int>(lay.psiCount), p.parameter};
        for (int a = 0; a < lay.psiCount; ++a) {
            auto v = psi.value(a);
            if (v >= static_cast<std::uint64_t>(p.parameter)) return std::nullopt;
            pa.pages[a] = static_cast<int>(v);
        }
        s.pages = pa;
    }
    if (usesTheta(p.kind)) {
        auto k = decodeEdgeSubset(block(lay.phiBits() + lay.psiBits(), lay.thetaCount, lay.thetaWidth), p.m());
        if (!k) return std::nullopt;
        s.removed = *k;
    }
    return s;
}

/// Whether a decoded layout satisfies the problem condition.
inline bool satisfies(const ProblemInstance &p, const Solution &s) {
    try {
        switch (p.kind) {
            case ProblemKind::TLCM:
                return s.twoLevel && countCrossings(p.bipartite(), *s.twoLevel) <= p.parameter;
            case ProblemKind::TLKP: {
                if (!s.twoLevel) return false;
                auto c = crossingsPerEdge(p.bipartite(), *s.twoLevel);
                return std::all_of(c.begin(), c.end(), [&](int v) { return v <= p.parameter; });
            }
            case ProblemKind::TLQP:
                return s.twoLevel && !hasThreePairwiseCrossing(p.bipartite(), *s.twoLevel);
            case ProblemKind::TLS:
                return s.twoLevel && s.removed && static_cast<int>(s.removed->indices.size()) == p.parameter &&
                       countCrossings(p.bipartite(), *s.twoLevel, s.removed) == 0;
            case ProblemKind::OPCM:
                return s.spine && countCrossings(p.plain(), *s.spine) <= p.parameter;
            case ProblemKind::BT:
                return s.spine && s.pages && s.pages->tau == p.parameter && isValidBookEmbedding(p.plain(), *s.spine, *s.pages);
            case ProblemKind::BS:
                return s.spine && s.removed && static_cast<int>(s.removed->indices.size()) == p.parameter &&
                       countCrossings(p.plain(), *s.spine, s.removed) == 0;
        }
    } catch (const InvalidArgument &) {
        return false;
    }
    return false;
}

/// Full check of a reported solution, including removal-set validity.
inline bool verifySolution(const ProblemInstance &p, const Solution &s) {
    if (s.removed) {
        const auto &idx = s.removed->indices;
        if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return false;
        for (int e : idx)
            if (e < 0 || e >= p.m()) return false;
    }
    return satisfies(p, s);
}

inline bool predicate(const ProblemInstance &p, const std::vector<std::uint8_t> &gamma) {
    auto s = decodeGamma(p, gamma);
    return s && satisfies(p, *s);
}

inline std::vector<std::uint8_t> bitsOf(std::uint64_t index, int length) {
    std::vector<std::uint8_t> b(length);
    for (int i = 0; i < length; ++i) b[i] = (index >> i) & 1;
    return b;
}

/// Search-register bits encoding a solution (the inverse of decodeGamma).
inline std::vector<std::uint8_t> encodeSolution(const ProblemInstance &p, const Solution &s) {
    auto lay = searchLayout(p);
    std::vector<std::uint64_t> phi(lay.n);
    if (s.twoLevel) {
        // Interleave the layers: U vertices take the first positions.
        int pos = 0;
        for (int v : s.twoLevel->orderU) phi[v] = pos++;
        for (int v : s.twoLevel->orderV) phi[v] = pos++;
    } else if (s.spine) {
        for (int i = 0; i < lay.n; ++i) phi[s.spine->order[i]] = i;
    }
    auto bits = IntSeqEncoding::fromValues(phi, lay.phiWidth).bits;
    if (lay.psiCount) {
        std::vector<std::uint64_t> v(s.pages->pages.begin(), s.pages->pages.end());
        auto b = IntSeqEncoding::fromValues(v, lay.psiWidth).bits;
        bits.insert(bits.end(), b.begin(), b.end());
    }
    if (lay.thetaCount) {
        std::vector<std::uint64_t> v(s.removed->indices.begin(), s.removed->indices.end());
        auto b = IntSeqEncoding::fromValues(v, lay.thetaWidth).bits;
        bits.insert(bits.end(), b.begin(), b.end());
    }
    return bits;
}

}  // namespace qgd
