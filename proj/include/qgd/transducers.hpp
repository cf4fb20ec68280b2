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

#include <optional>
#include <vector>

#include "qgd/arith.hpp"
#include "qgd/combinatorics.hpp"

namespace qgd {

/// Splits a flat register into `count` integers of `width` bits.
inline std::vector<Qubits> splitRegister(const Qubits &flat, int count, int width) {
    std::vector<Qubits> out(count);
    for (int i = 0; i < count; ++i) out[i].assign(flat.begin() + i * width, flat.begin() + (i + 1) * width);
    return out;
}

/// Index of pair (i, j), i < j, in the row-major upper triangle of an n x n matrix.
inline int pairIndex(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

/// Global AND of `flags` into `target`, as one MCX.
inline void appendAndMcx(Circuit &c, const Qubits &flags, int target) {
    std::vector<Control> ctl;
    for (int q : flags) ctl.push_back({q, true});
    c.mcx(ctl, target);
}

/**
 * @brief AND of `flags` into `target` through a chain of Toffolis.
 *
 * Intermediate results stay on pool qubits, which are appended to `held`; the caller
 * releases them once the chain has been undone.
 */
inline void appendAndCascade(Circuit &c, const Qubits &flags, int target, AncillaPool &pool, Qubits &held) {
    if (flags.empty()) {
        c.x(target);
        return;
    }
    if (flags.size() == 1) {
        c.cx(flags[0], target);
        return;
    }
    int acc = flags[0];
    for (size_t i = 1; i < flags.size(); ++i) {
        int out = i + 1 == flags.size() ? target : pool.acquireOne();
        if (out != target) held.push_back(out);
        c.ccx(acc, true, flags[i], true, out);
        acc = out;
    }
}

/**
 * @brief flag ^= [values pairwise distinct, and each < bound when a bound is given].
 *
 * Pairs are scheduled by cross-independent classes. Within a class every pair gets its own
 * comparator ancillas and equality flag; the class flag is set when no pair in it is equal.
 * The final MCX reads all class flags (and range flags), after which everything is undone.
 */
inline void appendCollisionDetector(Circuit &c, const std::vector<Qubits> &values, std::optional<std::uint64_t> bound,
                                    int flag, AncillaPool &pool) {
    const int count = static_cast<int>(values.size());
    const int w = count ? static_cast<int>(values[0].size()) : 0;
    if (bound && w < 64 && *bound >= (std::uint64_t{1} << w)) bound.reset();
    Qubits held, finals;
    size_t begin = c.gates().size();
    if (bound) {
        for (int i = 0; i < count; ++i) {
            int r = pool.acquireOne();
            Qubits carries = pool.acquire(w);
            appendLessConst(c, values[i], *bound, carries, r);
            pool.release(carries);
            held.push_back(r);
            finals.push_back(r);
        }
    }
    std::vector<std::vector<KSet>> classes;
    if (count >= 2) classes = partitionKSets(count, 2).classes;
    const bool direct = classes.size() == 1 && finals.empty();
    for (const auto &cls : classes) {
        Qubits eq = pool.acquire(static_cast<int>(cls.size()));
        Qubits anc = pool.acquire(static_cast<int>(cls.size()) * w);
        size_t s0 = c.gates().size();
        for (size_t p = 0; p < cls.size(); ++p) {
            Qubits a(anc.begin() + p * w, anc.begin() + (p + 1) * w);
            appendEq(c, values[cls[p][0]], values[cls[p][1]], a, eq[p]);
        }
        size_t s1 = c.gates().size();
        int classFlag = direct ? flag : pool.acquireOne();
        std::vector<Control> ctl;
        for (int q : eq) ctl.push_back({q, false});
        c.mcx(ctl, classFlag);
        c.appendReversed(s0, s1);
        pool.release(anc);
        pool.release(eq);
        if (!direct) {
            held.push_back(classFlag);
            finals.push_back(classFlag);
        }
    }
    if (direct) return;
    size_t end = c.gates().size();
    appendAndMcx(c, finals, flag);
    c.appendReversed(begin, end);
    pool.release(held);
}

/// x[pairIndex(i,j)] ^= [values[i] < values[j]] for all i < j, one comparator per pair.
inline void appendPrecedenceConstructor(Circuit &c, const std::vector<Qubits> &values, const Qubits &x,
                                        AncillaPool &pool) {
    const int n = static_cast<int>(values.size());
    if (n < 2) return;
    const int w = static_cast<int>(values[0].size());
    for (const auto &cls : partitionKSets(n, 2).classes) {
        Qubits carries = pool.acquire(static_cast<int>(cls.size()) * w);
        for (size_t p = 0; p < cls.size(); ++p) {
            Qubits cr(carries.begin() + p * w, carries.begin() + (p + 1) * w);
            int i = cls[p][0], j = cls[p][1];
            appendLess(c, values[i], values[j], cr, x[pairIndex(n, i, j)]);
        }
        pool.release(carries);
    }
}

/// Collision detector with range check, then precedence constructor. The x block is borrowed as scratch while still zero.
inline void appendOrderTransducer(Circuit &c, const Qubits &phi, int n, int flag, const Qubits &x, AncillaPool &pool) {
    const int w = ceilLog2(n);
    auto values = splitRegister(phi, n, w);
    size_t g = c.beginGroup();
    pool.donate(x);
    appendCollisionDetector(c, values, static_cast<std::uint64_t>(n), flag, pool);
    pool.withdraw(x);
    c.endGroup("U_C", g);
    g = c.beginGroup();
    appendPrecedenceConstructor(c, values, x, pool);
    c.endGroup("U_P", g);
}

/// e[i] ^= [theta[j] == i] for every j; the constant i sits in the control polarities.
inline void appendEdgeConstructor(Circuit &c, const std::vector<Qubits> &theta, const Qubits &e) {
    for (size_t i = 0; i < e.size(); ++i)
        for (const auto &t : theta) {
            std::vector<Control> ctl;
            for (size_t b = 0; b < t.size(); ++b) ctl.push_back({t[b], ((i >> b) & 1) != 0});
            c.mcx(ctl, e[i]);
        }
}

inline void appendSkewnessTransducer(Circuit &c, const Qubits &theta, int m, int sigma, int flag, const Qubits &e,
                                     AncillaPool &pool) {
    const int w = ceilLog2(m);
    auto values = splitRegister(theta, sigma, w);
    size_t g = c.beginGroup();
    pool.donate(e);
    appendCollisionDetector(c, values, static_cast<std::uint64_t>(m), flag, pool);
    pool.withdraw(e);
    c.endGroup("U_C", g);
    g = c.beginGroup();
    appendEdgeConstructor(c, values, e);
    c.endGroup("U_E", g);
}

/// Registers values (count*width, input), flag, scratch.
inline Circuit buildCollisionDetector(int count, int width, std::optional<std::uint64_t> bound = std::nullopt) {
    if (count < 2 || width < 1) throw InvalidArgument("collision detector needs count >= 2 and width >= 1");
    Circuit c;
    c.addRegister("values", count * width, Role::input);
    c.addRegister("flag", 1, Role::flag);
    AncillaPool pool(c, "scratch");
    appendCollisionDetector(c, splitRegister(c.qubits("values"), count, width), bound, c.qubit("flag"), pool);
    return c;
}

/// Registers phi (n log n, input), x (n(n-1)/2, flag), scratch.
inline Circuit buildPrecedenceConstructor(int n) {
    if (n < 2) throw InvalidArgument("precedence constructor needs n >= 2");
    const int w = ceilLog2(n);
    Circuit c;
    c.addRegister("phi", n * w, Role::input);
    c.addRegister("x", n * (n - 1) / 2, Role::flag);
    c.addRegister("scratch", (n / 2) * w, Role::ancilla);
    AncillaPool pool(c, "scratch");
    appendPrecedenceConstructor(c, splitRegister(c.qubits("phi"), n, w), c.qubits("x"), pool);
    return c;
}

struct OrderTransducerLayout {
    int n = 0;
    int width = 0;
    int ancillas = 0;  ///< f + x block + scratch
};

/// Registers phi, f_phi, x, scratch. Ancillas total (n/2)(n-1+log n)+1 for even n.
inline Circuit buildOrderTransducer(int n) {
    if (n < 2) throw InvalidArgument("order transducer needs n >= 2");
    const int w = ceilLog2(n);
    Circuit c;
    c.addRegister("phi", n * w, Role::input);
    c.addRegister("f_phi", 1, Role::flag);
    c.addRegister("x", n * (n - 1) / 2, Role::flag);
    c.addRegister("scratch", (n / 2) * w, Role::ancilla);
    AncillaPool pool(c, "scratch");
    appendOrderTransducer(c, c.qubits("phi"), n, c.qubit("f_phi"), c.qubits("x"), pool);
    return c;
}

inline OrderTransducerLayout orderTransducerLayout(const Circuit &c) {
    const auto &phi = c.reg("phi");
    int n = static_cast<int>(c.reg("x").size);
    int k = 2;
    while (k * (k - 1) / 2 < n) ++k;
    return OrderTransducerLayout{k, k ? phi.size / k : 0, c.numQubits() - phi.size};
}

/// Registers edge constructor: theta (sigma*log m, input), e (m, flag).
inline Circuit buildEdgeConstructor(int m, int sigma) {
    if (m < 2 || sigma < 1) throw InvalidArgument("edge constructor needs m >= 2 and sigma >= 1");
    const int w = ceilLog2(m);
    Circuit c;
    c.addRegister("theta", sigma * w, Role::input);
    c.addRegister("e", m, Role::flag);
    appendEdgeConstructor(c, splitRegister(c.qubits("theta"), sigma, w), c.qubits("e"));
    return c;
}

/// Registers theta, f_theta, e, scratch.
inline Circuit buildSkewnessTransducer(int m, int sigma) {
    if (m < 2 || sigma < 1) throw InvalidArgument("skewness transducer needs m >= 2 and sigma >= 1");
    const int w = ceilLog2(m);
    Circuit c;
    c.addRegister("theta", sigma * w, Role::input);
    c.addRegister("f_theta", 1, Role::flag);
    c.addRegister("e", m, Role::flag);
    AncillaPool pool(c, "scratch");
    appendSkewnessTransducer(c, c.qubits("theta"), m, sigma, c.qubit("f_theta"), c.qubits("e"), pool);
    return c;
}

}  // namespace qgd
