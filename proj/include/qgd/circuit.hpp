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
#include <span>
#include <string>
#include <vector>

#include "qgd/error.hpp"

namespace qgd {

enum class Role { input, ancilla, flag, phase };

inline const char *roleName(Role r) {
    switch (r) {
        case Role::input: return "input";
        case Role::ancilla: return "ancilla";
        case Role::flag: return "flag";
        case Role::phase: return "phase";
    }
    return "?";
}

inline Role parseRole(const std::string &s) {
    if (s == "input") return Role::input;
    if (s == "ancilla") return Role::ancilla;
    if (s == "flag") return Role::flag;
    if (s == "phase") return Role::phase;
    throw ParseError("unknown register role: " + s);
}

/// Named contiguous block of qubits [offset, offset+size).
struct Register {
    std::string name;
    int offset = 0;
    int size = 0;
    Role role = Role::ancilla;
    bool operator==(const Register &) const = default;
};

enum class GateKind { X, H, MCX };

struct Control {
    int qubit;
    bool positive;  ///< false: anticontrol, fires on |0>
    bool operator==(const Control &) const = default;
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<Control> controls;
    int target = 0;
    bool operator==(const Gate &) const = default;
};

/// Named span [begin, end) of gate indices.
struct GateGroup {
    std::string name;
    size_t begin = 0;
    size_t end = 0;
};

/**
 * @brief Gate list over named registers.
 *
 * Qubits are numbered globally; register r owns [r.offset, r.offset + r.size). When a circuit
 * acts on a basis state, qubit q is bit q of the state index (little-endian).
 */
class Circuit {
   public:
    int numQubits() const { return numQubits_; }
    const std::vector<Register> &registers() const { return registers_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<GateGroup> &groups() const { return groups_; }

    /// Appends a register; zero-size registers are rejected.
    int addRegister(const std::string &name, int size, Role role) {
        if (size < 1) throw InvalidArgument("register '" + name + "' must have size >= 1");
        if (hasRegister(name)) throw InvalidArgument("duplicate register name '" + name + "'");
        registers_.push_back(Register{name, numQubits_, size, role});
        numQubits_ += size;
        return registers_.back().offset;
    }

    /// Enlarges the most recently added register.
    void growLastRegister(int extra) {
        if (registers_.empty()) throw InvalidArgument("no register to grow");
        registers_.back().size += extra;
        numQubits_ += extra;
    }

    bool hasRegister(const std::string &name) const {
        return std::any_of(registers_.begin(), registers_.end(), [&](const Register &r) { return r.name == name; });
    }

    const Register &reg(const std::string &name) const {
        for (const auto &r : registers_)
            if (r.name == name) return r;
        throw InvalidArgument("no register named '" + name + "'");
    }

    int qubit(const std::string &name, int i = 0) const {
        const auto &r = reg(name);
        if (i < 0 || i >= r.size) throw InvalidArgument("qubit index out of register '" + name + "'");
        return r.offset + i;
    }

    std::vector<int> qubits(const std::string &name) const {
        const auto &r = reg(name);
        std::vector<int> q(r.size);
        for (int i = 0; i < r.size; ++i) q[i] = r.offset + i;
        return q;
    }

    Role roleOf(int q) const {
        for (const auto &r : registers_)
            if (q >= r.offset && q < r.offset + r.size) return r.role;
        throw InvalidArgument("qubit outside every register");
    }

    void add(Gate g) {
        check(g.target);
        if (g.kind == GateKind::MCX) {
            for (size_t i = 0; i < g.controls.size(); ++i) {
                check(g.controls[i].qubit);
                if (g.controls[i].qubit == g.target) throw InvalidArgument("control equals target");
                for (size_t j = 0; j < i; ++j)
                    if (g.controls[j].qubit == g.controls[i].qubit) throw InvalidArgument("repeated control qubit");
            }
            if (g.controls.empty()) g.kind = GateKind::X;
        } else if (!g.controls.empty()) {
            throw InvalidArgument("X/H gates take no controls");
        }
        gates_.push_back(std::move(g));
    }

    void x(int q) { add(Gate{GateKind::X, {}, q}); }
    void h(int q) { add(Gate{GateKind::H, {}, q}); }
    void mcx(std::vector<Control> controls, int target) { add(Gate{GateKind::MCX, std::move(controls), target}); }
    void cx(int c, int t, bool positive = true) { mcx({{c, positive}}, t); }
    void ccx(int a, bool pa, int b, bool pb, int t) { mcx({{a, pa}, {b, pb}}, t); }

    /// Appends the reversed gate range [begin, end); all gates in use are self-inverse.
    void appendReversed(size_t begin, size_t end) {
        for (size_t i = end; i-- > begin;) gates_.push_back(gates_[i]);
    }

    /// Embeds `sub`, sending its qubit q to map[q].
    void append(const Circuit &sub, std::span<const int> map) {
        if (static_cast<int>(map.size()) != sub.numQubits()) throw InvalidArgument("qubit map size mismatch");
        for (const auto &g : sub.gates()) {
            Gate h = g;
            h.target = map[g.target];
            for (auto &c : h.controls) c.qubit = map[c.qubit];
            add(std::move(h));
        }
    }

    size_t beginGroup() const { return gates_.size(); }
    void endGroup(const std::string &name, size_t begin) { groups_.push_back(GateGroup{name, begin, gates_.size()}); }

    size_t groupCount(const std::string &name, size_t begin = 0, size_t end = SIZE_MAX) const {
        size_t c = 0;
        for (const auto &g : groups_)
            if (g.name == name && g.begin >= begin && g.end <= end) ++c;
        return c;
    }

    friend Circuit inverse(const Circuit &c);
    friend Circuit compose(const Circuit &a, const Circuit &b);

   private:
    void check(int q) const {
        if (q < 0 || q >= numQubits_) throw InvalidArgument("qubit index out of range");
    }

    int numQubits_ = 0;
    std::vector<Register> registers_;
    std::vector<Gate> gates_;
    std::vector<GateGroup> groups_;
};

inline Circuit inverse(const Circuit &c) {
    for (const auto &g : c.gates_)
        if (g.kind == GateKind::H) throw InvalidArgument("inverse is defined for X/MCX circuits");
    Circuit r = c;
    std::reverse(r.gates_.begin(), r.gates_.end());
    const size_t n = c.gates_.size();
    for (auto &g : r.groups_) {
        size_t b = n - g.end, e = n - g.begin;
        g.begin = b, g.end = e;
    }
    return r;
}

inline Circuit compose(const Circuit &a, const Circuit &b) {
    if (a.registers_ != b.registers_) throw InvalidArgument("compose: register layouts differ");
    Circuit r = a;
    const size_t shift = a.gates_.size();
    r.gates_.insert(r.gates_.end(), b.gates_.begin(), b.gates_.end());
    for (auto g : b.groups_) {
        g.begin += shift, g.end += shift;
        r.groups_.push_back(g);
    }
    return r;
}

template <class... Rest>
Circuit compose(const Circuit &a, const Circuit &b, const Rest &...rest) {
    return compose(compose(a, b), rest...);
}

}  // namespace qgd
