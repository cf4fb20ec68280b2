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
#include <string>
#include <vector>

#include "qgd/circuit.hpp"
#include "qgd/combinatorics.hpp"

namespace qgd {

using Qubits = std::vector<int>;

/**
 * @brief Hands out zero-valued qubits.
 *
 * Borrowed qubits (blocks that are known to be |0> for a while) are used first. When the free
 * list is empty the named scratch register grows; it must be the last register of the circuit.
 * Callers return qubits only after restoring them to |0>.
 */
class AncillaPool {
   public:
    AncillaPool(Circuit &c, std::string scratchName) : c_(&c), scratch_(std::move(scratchName)) {
        if (c.hasRegister(scratch_)) {
            if (c.registers().back().name != scratch_) throw InvalidArgument("scratch register must be last");
            for (int q : c.qubits(scratch_)) free_.push_back(q);
        }
    }

    void donate(const Qubits &qs) { free_.insert(free_.end(), qs.begin(), qs.end()); }

    /// Takes `qs` back out of the free list; they must all be free.
    void withdraw(const Qubits &qs) {
        for (int q : qs) {
            auto it = std::find(free_.begin(), free_.end(), q);
            if (it == free_.end()) throw InvalidArgument("withdrawing a qubit that is in use");
            free_.erase(it);
        }
    }

    Qubits acquire(int k) {
        Qubits out;
        while (static_cast<int>(out.size()) < k && !free_.empty()) {
            out.push_back(free_.front());
            free_.erase(free_.begin());
        }
        int missing = k - static_cast<int>(out.size());
        if (missing > 0) {
            if (!c_->hasRegister(scratch_))
                c_->addRegister(scratch_, missing, Role::ancilla);
            else if (c_->registers().back().name == scratch_)
                c_->growLastRegister(missing);
            else
                throw InvalidArgument("scratch register is no longer last");
            const auto &r = c_->reg(scratch_);
            for (int i = r.size - missing; i < r.size; ++i) out.push_back(r.offset + i);
        }
        return out;
    }

    int acquireOne() { return acquire(1)[0]; }

    void release(const Qubits &qs) { free_.insert(free_.end(), qs.begin(), qs.end()); }
    void release(int q) { free_.push_back(q); }

   private:
    Circuit *c_;
    std::string scratch_;
    Qubits free_;
};

/// Flag ^= [a == b] with one ancilla per bit, restored afterwards.
inline void appendEq(Circuit &c, const Qubits &a, const Qubits &b, const Qubits &anc, int flag) {
    const size_t w = a.size();
    if (w == 0) {
        c.x(flag);
        return;
    }
    size_t begin = c.gates().size();
    for (size_t i = 0; i < w; ++i) {
        c.ccx(a[i], true, b[i], true, anc[i]);
        c.ccx(a[i], false, b[i], false, anc[i]);
    }
    size_t end = c.gates().size();
    std::vector<Control> all;
    for (int q : anc) all.push_back({q, true});
    c.mcx(all, flag);
    c.appendReversed(begin, end);
}

/**
 * @brief Flag ^= [a < b] for unsigned operands of equal width.
 *
 * carries[k] holds the carry out of bit k of a + ~b + 1, so the last carry is [a >= b] and an
 * anticontrolled NOT on it gives the strict comparison.
 */
inline void appendLess(Circuit &c, const Qubits &a, const Qubits &b, const Qubits &carries, int flag) {
    const size_t w = a.size();
    if (w == 0) return;
    size_t begin = c.gates().size();
    c.x(carries[0]);
    c.ccx(a[0], false, b[0], true, carries[0]);
    for (size_t k = 1; k < w; ++k) {
        c.ccx(a[k], true, b[k], false, carries[k]);
        c.ccx(a[k], true, carries[k - 1], true, carries[k]);
        c.ccx(b[k], false, carries[k - 1], true, carries[k]);
    }
    size_t end = c.gates().size();
    c.cx(carries[w - 1], flag, false);
    c.appendReversed(begin, end);
}

/// Flag ^= [a < K] for a classical constant K; the constant lives in the gate polarities.
inline void appendLessConst(Circuit &c, const Qubits &a, std::uint64_t K, const Qubits &carries, int flag) {
    const size_t w = a.size();
    if (K == 0) return;
    if (w < 64 && K >= (std::uint64_t{1} << w)) {
        c.x(flag);
        return;
    }
    size_t begin = c.gates().size();
    if (K & 1)
        c.cx(a[0], carries[0]);
    else
        c.x(carries[0]);
    for (size_t k = 1; k < w; ++k) {
        if (K >> k & 1) {
            c.ccx(a[k], true, carries[k - 1], true, carries[k]);
        } else {
            c.x(carries[k]);
            c.ccx(a[k], false, carries[k - 1], false, carries[k]);
        }
    }
    size_t end = c.gates().size();
    c.cx(carries[w - 1], flag, false);
    c.appendReversed(begin, end);
}

/// (a, b, 0, 0) -> (a, b, a^b, a&b)
inline void appendHalfAdder(Circuit &c, int a, int b, int sum, int carry) {
    size_t g = c.beginGroup();
    c.cx(a, sum);
    c.cx(b, sum);
    c.ccx(a, true, b, true, carry);
    c.endGroup("HA", g);
}

/// (a, b, cin, 0, 0) -> (a, b, cin, a^b^cin, maj(a,b,cin)); the majority is the XOR of the pairwise ANDs.
inline void appendFullAdder(Circuit &c, int a, int b, int cin, int sum, int carry) {
    size_t g = c.beginGroup();
    c.cx(a, sum);
    c.cx(b, sum);
    c.cx(cin, sum);
    c.ccx(a, true, b, true, carry);
    c.ccx(a, true, cin, true, carry);
    c.ccx(b, true, cin, true, carry);
    c.endGroup("FA", g);
}

/**
 * @brief result ^= popcount(inputs).
 *
 * `inputs` must have power-of-two length t >= 2 and `result` 1 + log t qubits. The adder tree
 * pairs neighbouring numbers level by level; its outputs are copied out and the tree undone.
 */
inline void appendPopcount(Circuit &c, const Qubits &inputs, const Qubits &result, AncillaPool &pool) {
    const size_t t = inputs.size();
    if (t < 2 || (t & (t - 1))) throw InvalidArgument("popcount input length must be a power of two >= 2");
    const int L = ceilLog2(t);
    if (static_cast<int>(result.size()) != L + 1) throw InvalidArgument("popcount result width must be 1 + log t");
    Qubits used;
    size_t begin = c.gates().size();
    std::vector<Qubits> nums;
    for (size_t i = 0; i < t / 2; ++i) {
        Qubits zc = pool.acquire(2);
        used.insert(used.end(), zc.begin(), zc.end());
        appendHalfAdder(c, inputs[2 * i], inputs[2 * i + 1], zc[0], zc[1]);
        nums.push_back(zc);
    }
    for (int level = 2; level <= L; ++level) {
        std::vector<Qubits> next;
        for (size_t j = 0; j + 1 < nums.size(); j += 2) {
            const Qubits &x = nums[j], &y = nums[j + 1];
            Qubits out;
            int carry = -1;
            for (int k = 0; k < level; ++k) {
                Qubits zc = pool.acquire(2);
                used.insert(used.end(), zc.begin(), zc.end());
                if (k == 0)
                    appendHalfAdder(c, x[0], y[0], zc[0], zc[1]);
                else
                    appendFullAdder(c, x[k], y[k], carry, zc[0], zc[1]);
                out.push_back(zc[0]);
                carry = zc[1];
            }
            out.push_back(carry);
            next.push_back(out);
        }
        nums = std::move(next);
    }
    size_t end = c.gates().size();
    for (int b = 0; b <= L; ++b) c.cx(nums[0][b], result[b]);
    c.appendReversed(begin, end);
    pool.release(used);
}

/// HA + FA instances in one adder tree of a popcount over t inputs.
inline std::int64_t popcountAdderCount(const Circuit &c) { return c.groupCount("HA") + c.groupCount("FA"); }

struct ComparatorLayout {
    int t = 0;
    int width = 0;  ///< log t
    int ancillas = 0;
};

struct PopcountLayout {
    int t = 0;        ///< padded input length
    int inputs = 0;   ///< requested input length
    int h = 0;        ///< scratch ancillas, 4t - 2 log t - 4
    int k = 0;        ///< result bits, 1 + log t
};

inline PopcountLayout popcountLayout(int t) {
    if (t < 2) throw InvalidArgument("popcount needs t >= 2");
    int T = static_cast<int>(nextPowerOfTwo(t));
    int L = ceilLog2(T);
    return PopcountLayout{T, t, 4 * T - 2 * L - 4, 1 + L};
}

/// Registers a (input), b (input), anc (ancilla), flag (flag).
inline Circuit buildEq(int t) {
    if (t < 2) throw InvalidArgument("buildEq needs t >= 2");
    int w = ceilLog2(t);
    Circuit c;
    c.addRegister("a", w, Role::input);
    c.addRegister("b", w, Role::input);
    c.addRegister("anc", w, Role::ancilla);
    c.addRegister("flag", 1, Role::flag);
    appendEq(c, c.qubits("a"), c.qubits("b"), c.qubits("anc"), c.qubit("flag"));
    return c;
}

inline Circuit buildLess(int t) {
    if (t < 2) throw InvalidArgument("buildLess needs t >= 2");
    int w = ceilLog2(t);
    Circuit c;
    c.addRegister("a", w, Role::input);
    c.addRegister("b", w, Role::input);
    c.addRegister("anc", w, Role::ancilla);
    c.addRegister("flag", 1, Role::flag);
    appendLess(c, c.qubits("a"), c.qubits("b"), c.qubits("anc"), c.qubit("flag"));
    return c;
}

/// Registers in (a, b), sum, carry.
inline Circuit buildHalfAdder() {
    Circuit c;
    c.addRegister("in", 2, Role::input);
    c.addRegister("sum", 1, Role::flag);
    c.addRegister("carry", 1, Role::flag);
    appendHalfAdder(c, 0, 1, 2, 3);
    return c;
}

/// Registers in (a, b, cin), sum, carry.
inline Circuit buildFullAdder() {
    Circuit c;
    c.addRegister("in", 3, Role::input);
    c.addRegister("sum", 1, Role::flag);
    c.addRegister("carry", 1, Role::flag);
    appendFullAdder(c, 0, 1, 2, 3, 4);
    return c;
}

/// Registers b (t inputs), pad (constant zeros up to a power of two), s (result), scratch (h ancillas).
inline Circuit buildPopcount(int t) {
    auto lay = popcountLayout(t);
    Circuit c;
    c.addRegister("b", t, Role::input);
    if (lay.t > t) c.addRegister("pad", lay.t - t, Role::ancilla);
    c.addRegister("s", lay.k, Role::flag);
    c.addRegister("scratch", lay.h, Role::ancilla);
    Qubits in = c.qubits("b");
    if (lay.t > t)
        for (int q : c.qubits("pad")) in.push_back(q);
    AncillaPool pool(c, "scratch");
    appendPopcount(c, in, c.qubits("s"), pool);
    return c;
}

}  // namespace qgd
