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
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qgd/problem.hpp"
#include "qgd/transducers.hpp"

namespace qgd {

/// Edge pairs (a < b) without a shared endpoint.
inline std::vector<std::pair<int, int>> independentPairs(const std::vector<Edge> &edges) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(edges.size()); ++a)
        for (int b = a + 1; b < static_cast<int>(edges.size()); ++b)
            if (!detail::sharesEndpoint(edges[a], edges[b])) out.emplace_back(a, b);
    return out;
}

/// Qubit of x_{min(i,j), max(i,j)} and whether "i before j" is its negation.
struct Precedence {
    int qubit;
    bool negated;
};

inline Precedence precedence(const Qubits &x, int n, int i, int j) {
    return i < j ? Precedence{x[pairIndex(n, i, j)], false} : Precedence{x[pairIndex(n, j, i)], true};
}

/**
 * @brief chi[(a,b)] ^= [e_a and e_b cross] in the 2-level drawing encoded by x.
 *
 * Two Toffolis per independent pair implement the XOR of the U-side and V-side precedence bits.
 * Gates are grouped by cross-independent classes of their precedence-qubit pairs.
 */
inline void appendCrossFinder2L(Circuit &c, const BipartiteGraph &g, const Qubits &x, const Qubits &chi) {
    const int n = g.n(), m = g.m();
    std::map<KSet, std::vector<std::pair<int, int>>> byVars;
    for (auto [a, b] : independentPairs(g.edges)) {
        auto p = precedence(x, n, g.edges[a].first, g.edges[b].first);
        auto q = precedence(x, n, g.edges[a].second, g.edges[b].second);
        KSet key{p.qubit, q.qubit};
        std::sort(key.begin(), key.end());
        byVars[key].emplace_back(a, b);
    }
    std::vector<KSet> family;
    for (const auto &kv : byVars) family.push_back(kv.first);
    int ground = 0;
    for (int q : x) ground = std::max(ground, q + 1);
    for (const auto &cls : colorDisjointClasses(family, ground))
        for (const auto &key : cls)
            for (auto [a, b] : byVars[key]) {
                auto p = precedence(x, n, g.edges[a].first, g.edges[b].first);
                auto q = precedence(x, n, g.edges[a].second, g.edges[b].second);
                int target = chi[pairIndex(m, a, b)];
                // Cross iff (p.qubit ^ p.negated) != (q.qubit ^ q.negated).
                bool flip = p.negated != q.negated;
                c.ccx(p.qubit, true, q.qubit, flip, target);
                c.ccx(p.qubit, false, q.qubit, !flip, target);
            }
}

/**
 * @brief chi[(a,b)] ^= [endpoints of e_a and e_b interleave] on the spine encoded by x.
 *
 * Each of the eight interleaved orders s0 < s1 < s2 < s3 of the four endpoints is matched by one
 * MCX on the three consecutive precedences; under a consistent x at most one of them fires.
 */
inline void appendCrossFinder1P(Circuit &c, const Graph &g, const Qubits &x, const Qubits &chi) {
    const int n = g.n, m = g.m();
    auto pairs = independentPairs(g.edges);
    std::vector<KSet> family;
    std::map<KSet, std::pair<int, int>> byVars;
    for (auto [a, b] : pairs) {
        auto [i, j] = g.edges[a];
        auto [k, l] = g.edges[b];
        KSet key{precedence(x, n, i, k).qubit, precedence(x, n, i, l).qubit, precedence(x, n, j, k).qubit,
                 precedence(x, n, j, l).qubit};
        std::sort(key.begin(), key.end());
        family.push_back(key);
        byVars[key] = {a, b};
    }
    int ground = 0;
    for (int q : x) ground = std::max(ground, q + 1);
    for (const auto &cls : colorDisjointClasses(family, ground))
        for (const auto &key : cls) {
            auto [a, b] = byVars[key];
            std::vector<int> v{g.edges[a].first, g.edges[a].second, g.edges[b].first, g.edges[b].second};
            std::sort(v.begin(), v.end());
            int target = chi[pairIndex(m, a, b)];
            do {
                auto at = [&](int vertex) { return static_cast<int>(std::find(v.begin(), v.end(), vertex) - v.begin()); };
                // Interleaved iff exactly one endpoint of e_b lies between those of e_a.
                int pa = at(g.edges[a].first), pb = at(g.edges[a].second);
                int lo = std::min(pa, pb), hi = std::max(pa, pb);
                int k1 = at(g.edges[b].first), k2 = at(g.edges[b].second);
                if ((lo < k1 && k1 < hi) == (lo < k2 && k2 < hi)) continue;
                std::vector<Control> ctl;
                for (int s = 0; s < 3; ++s) {
                    auto pr = precedence(x, n, v[s], v[s + 1]);
                    ctl.push_back({pr.qubit, !pr.negated});
                }
                c.mcx(ctl, target);
            } while (std::next_permutation(v.begin(), v.end()));
        }
}

/// Registers x (n(n-1)/2, input), chi (m(m-1)/2, flag).
inline Circuit buildCrossFinder2L(const BipartiteGraph &g) {
    Circuit c;
    c.addRegister("x", std::max(1, g.n() * (g.n() - 1) / 2), Role::input);
    int P = g.m() * (g.m() - 1) / 2;
    if (P) c.addRegister("chi", P, Role::flag);
    if (P) appendCrossFinder2L(c, g, c.qubits("x"), c.qubits("chi"));
    return c;
}

inline Circuit buildCrossFinder1P(const Graph &g) {
    Circuit c;
    c.addRegister("x", std::max(1, g.n * (g.n - 1) / 2), Role::input);
    int P = g.m() * (g.m() - 1) / 2;
    if (P) c.addRegister("chi", P, Role::flag);
    if (P) appendCrossFinder1P(c, g, c.qubits("x"), c.qubits("chi"));
    return c;
}

struct OracleBundle {
    ProblemInstance instance;
    Circuit phaseInversion;
    int ell = 0;
    size_t detectorBegin = 0;  ///< gate span of the solution detector (compute, phase flip, uncompute)
    size_t detectorEnd = 0;

    bool predicate(const std::vector<std::uint8_t> &gamma) const { return qgd::predicate(instance, gamma); }
};

/// Copy of `c` restricted to gates [begin, end).
inline Circuit sliceGates(const Circuit &c, size_t begin, size_t end) {
    Circuit r;
    for (const auto &reg : c.registers()) r.addRegister(reg.name, reg.size, reg.role);
    for (size_t i = begin; i < end; ++i) r.add(c.gates()[i]);
    return r;
}

namespace detail {

/// x[gate] over a list of flags: per-class AND of negated members.
inline void appendClassFlag(Circuit &c, const Qubits &members, int target) {
    std::vector<Control> ctl;
    for (int q : members) ctl.push_back({q, false});
    c.mcx(ctl, target);
}

inline void appendCountBelow(Circuit &c, const Qubits &count, std::uint64_t K, int target, AncillaPool &pool, Qubits &held) {
    // Comparator against a register holding the constant K.
    Qubits kreg = pool.acquire(static_cast<int>(count.size()));
    held.insert(held.end(), kreg.begin(), kreg.end());
    for (size_t b = 0; b < kreg.size(); ++b)
        if (K >> b & 1) c.x(kreg[b]);
    Qubits carries = pool.acquire(static_cast<int>(count.size()));
    appendLess(c, count, kreg, carries, target);
    pool.release(carries);
}

inline Qubits padTo(const Qubits &in, size_t size, AncillaPool &pool, Qubits &held) {
    Qubits out = in;
    if (out.size() < size) {
        Qubits pad = pool.acquire(static_cast<int>(size - out.size()));
        held.insert(held.end(), pad.begin(), pad.end());
        out.insert(out.end(), pad.begin(), pad.end());
    }
    return out;
}

}  // namespace detail

/**
 * @brief Phase inversion U_I, U_S, U_I^-1 for a problem instance.
 *
 * The search register (phi, then psi or theta) occupies qubits [0, ell). A single phase qubit
 * carries |->; an MCX onto it marks accepting bitstrings.
 */
inline OracleBundle buildPhaseInversion(const ProblemInstance &p) {
    const auto lay = searchLayout(p);
    const int n = p.n(), m = p.m(), P = m * (m - 1) / 2;
    const bool twoLevel = isTwoLevel(p.kind);
    const Graph plain = p.plain();
    Circuit c;
    c.addRegister("phi", lay.phiBits(), Role::input);
    if (lay.psiBits()) c.addRegister("psi", lay.psiBits(), Role::input);
    if (lay.thetaBits()) c.addRegister("theta", lay.thetaBits(), Role::input);
    c.addRegister("f_phi", 1, Role::flag);
    c.addRegister("x", n * (n - 1) / 2, Role::ancilla);
    if (usesTheta(p.kind)) {
        c.addRegister("f_theta", 1, Role::flag);
        c.addRegister("e", m, Role::ancilla);
    }
    if (P) c.addRegister("chi", P, Role::ancilla);
    const bool counting = p.kind == ProblemKind::TLCM || p.kind == ProblemKind::OPCM;
    const int countT = static_cast<int>(nextPowerOfTwo(std::max(P, 2)));
    const int countW = 1 + ceilLog2(countT);
    const int edgeT = static_cast<int>(nextPowerOfTwo(std::max(m - 1, 2)));
    const int edgeW = 1 + ceilLog2(edgeT);
    if (counting && P) c.addRegister("count", countW, Role::ancilla);
    if (p.kind == ProblemKind::TLKP && m >= 2) c.addRegister("edge_counts", m * edgeW, Role::ancilla);
    c.addRegister("g", 1, Role::flag);
    c.addRegister("phase", 1, Role::phase);
    c.addRegister("scratch", (n / 2) * lay.phiWidth, Role::ancilla);
    AncillaPool pool(c, "scratch");

    const Qubits x = c.qubits("x");
    const Qubits chi = P ? c.qubits("chi") : Qubits{};
    const int g = c.qubit("g");
    auto grp = c.beginGroup();
    appendOrderTransducer(c, c.qubits("phi"), n, c.qubit("f_phi"), x, pool);
    if (usesTheta(p.kind))
        appendSkewnessTransducer(c, c.qubits("theta"), m, p.parameter, c.qubit("f_theta"), c.qubits("e"), pool);
    c.endGroup("U_I", grp);
    const size_t t1 = c.gates().size();

    Qubits held;
    const size_t d0 = c.gates().size();
    grp = c.beginGroup();
    if (P) {
        if (twoLevel)
            appendCrossFinder2L(c, p.bipartite(), x, chi);
        else
            appendCrossFinder1P(c, plain, x, chi);
    }
    c.endGroup(twoLevel ? "U_chi" : "U_chi_p", grp);
    auto chiOf = [&](int a, int b) { return chi[pairIndex(m, std::min(a, b), std::max(a, b))]; };
    const auto pairs = independentPairs(plain.edges);

    switch (p.kind) {
        case ProblemKind::TLCM:
        case ProblemKind::OPCM: {
            if (!P) {
                c.x(g);
                break;
            }
            Qubits in = detail::padTo(chi, countT, pool, held);
            appendPopcount(c, in, c.qubits("count"), pool);
            std::uint64_t K = static_cast<std::uint64_t>(std::min(p.parameter, P)) + 1;
            detail::appendCountBelow(c, c.qubits("count"), K, g, pool, held);
            break;
        }
        case ProblemKind::TLKP: {
            if (m < 2) {
                c.x(g);
                break;
            }
            Qubits counts = c.qubits("edge_counts");
            for (int i = 0; i < m; ++i) {
                Qubits in;
                for (int a = 0; a < m; ++a)
                    if (a != i) in.push_back(chiOf(a, i));
                in = detail::padTo(in, edgeT, pool, held);
                appendPopcount(c, in, Qubits(counts.begin() + i * edgeW, counts.begin() + (i + 1) * edgeW), pool);
            }
            std::uint64_t K = static_cast<std::uint64_t>(std::min(p.parameter, m - 1)) + 1;
            Qubits kreg = pool.acquire(edgeW);
            held.insert(held.end(), kreg.begin(), kreg.end());
            for (int b = 0; b < edgeW; ++b)
                if (K >> b & 1) c.x(kreg[b]);
            Qubits kappa;
            for (int i = 0; i < m; ++i) {
                int k = pool.acquireOne();
                held.push_back(k);
                kappa.push_back(k);
                Qubits carries = pool.acquire(edgeW);
                appendLess(c, Qubits(counts.begin() + i * edgeW, counts.begin() + (i + 1) * edgeW), kreg, carries, k);
                pool.release(carries);
            }
            appendAndMcx(c, kappa, g);
            break;
        }
        case ProblemKind::TLQP: {
            std::vector<KSet> triples;
            const auto &edges = plain.edges;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    for (int d = b + 1; d < m; ++d)
                        if (!detail::sharesEndpoint(edges[a], edges[b]) && !detail::sharesEndpoint(edges[a], edges[d]) &&
                            !detail::sharesEndpoint(edges[b], edges[d]))
                            triples.push_back({pairIndex(m, a, b), pairIndex(m, a, d), pairIndex(m, b, d)});
            Qubits classFlags;
            for (const auto &cls : colorDisjointClasses(triples, std::max(P, 1))) {
                Qubits q = pool.acquire(static_cast<int>(cls.size()));
                size_t s0 = c.gates().size();
                for (size_t t = 0; t < cls.size(); ++t)
                    c.mcx({{chi[cls[t][0]], true}, {chi[cls[t][1]], true}, {chi[cls[t][2]], true}}, q[t]);
                size_t s1 = c.gates().size();
                int f = pool.acquireOne();
                held.push_back(f);
                classFlags.push_back(f);
                detail::appendClassFlag(c, q, f);
                c.appendReversed(s0, s1);
                pool.release(q);
            }
            appendAndCascade(c, classFlags, g, pool, held);
            break;
        }
        case ProblemKind::TLS:
        case ProblemKind::BS: {
            const Qubits e = c.qubits("e");
            std::vector<KSet> family;
            for (auto [a, b] : pairs) family.push_back({a, b});
            Qubits classFlags;
            for (const auto &cls : colorDisjointClasses(family, m)) {
                Qubits s = pool.acquire(static_cast<int>(cls.size()));
                size_t s0 = c.gates().size();
                for (size_t t = 0; t < cls.size(); ++t) {
                    int a = cls[t][0], b = cls[t][1];
                    c.mcx({{e[a], false}, {e[b], false}, {chiOf(a, b), true}}, s[t]);
                }
                size_t s1 = c.gates().size();
                int f = pool.acquireOne();
                held.push_back(f);
                classFlags.push_back(f);
                detail::appendClassFlag(c, s, f);
                c.appendReversed(s0, s1);
                pool.release(s);
            }
            appendAndCascade(c, classFlags, g, pool, held);
            break;
        }
        case ProblemKind::BT: {
            const int w = lay.psiWidth;
            const auto psi = w ? splitRegister(c.qubits("psi"), m, w) : std::vector<Qubits>(m);
            Qubits finals;
            if (w && p.parameter < (1 << w)) {
                for (int a = 0; a < m; ++a) {
                    int r = pool.acquireOne();
                    held.push_back(r);
                    finals.push_back(r);
                    Qubits carries = pool.acquire(w);
                    appendLessConst(c, psi[a], static_cast<std::uint64_t>(p.parameter), carries, r);
                    pool.release(carries);
                }
            }
            std::vector<KSet> family;
            for (auto [a, b] : pairs) family.push_back({a, b});
            for (const auto &cls : colorDisjointClasses(family, m)) {
                int f = pool.acquireOne();
                held.push_back(f);
                finals.push_back(f);
                if (!w) {
                    Qubits members;
                    for (const auto &pr : cls) members.push_back(chiOf(pr[0], pr[1]));
                    detail::appendClassFlag(c, members, f);
                    continue;
                }
                const int k = static_cast<int>(cls.size());
                Qubits eq = pool.acquire(k), anc = pool.acquire(k * w), lam = pool.acquire(k);
                size_t s0 = c.gates().size();
                for (int t = 0; t < k; ++t) {
                    int a = cls[t][0], b = cls[t][1];
                    appendEq(c, psi[a], psi[b], Qubits(anc.begin() + t * w, anc.begin() + (t + 1) * w), eq[t]);
                    c.ccx(eq[t], true, chiOf(a, b), true, lam[t]);
                }
                size_t s1 = c.gates().size();
                detail::appendClassFlag(c, lam, f);
                c.appendReversed(s0, s1);
                pool.release(lam);
                pool.release(anc);
                pool.release(eq);
            }
            appendAndCascade(c, finals, g, pool, held);
            break;
        }
    }
    const size_t d1 = c.gates().size();
    std::vector<Control> fc{{c.qubit("f_phi"), true}};
    if (usesTheta(p.kind)) fc.push_back({c.qubit("f_theta"), true});
    fc.push_back({g, true});
    c.mcx(fc, c.qubit("phase"));
    c.appendReversed(d0, d1);
    pool.release(held);
    const size_t d2 = c.gates().size();
    c.appendReversed(0, t1);
    return OracleBundle{p, std::move(c), lay.ell(), d0, d2};
}

/// The solution detector alone: its compute, phase flip and uncompute gates.
inline Circuit detectorCircuit(const OracleBundle &b) {
    return sliceGates(b.phaseInversion, b.detectorBegin, b.detectorEnd);
}

}  // namespace qgd
