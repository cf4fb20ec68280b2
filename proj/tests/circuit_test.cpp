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

#include <random>

#include "qgd/io.hpp"
#include "qgd/metrics.hpp"
#include "qgd/problem.hpp"
#include "qgd/simulate.hpp"

using namespace qgd;

namespace {

Circuit randomCircuit(int qubits, int gates, std::mt19937_64 &rng, bool withH = false) {
    Circuit c;
    c.addRegister("q", qubits, Role::input);
    std::uniform_int_distribution<int> pick(0, qubits - 1), kind(0, withH ? 3 : 2), nctl(0, std::min(4, qubits - 1));
    for (int i = 0; i < gates; ++i) {
        int t = pick(rng);
        int k = kind(rng);
        if (k == 3) {
            c.h(t);
        } else if (k == 0) {
            c.x(t);
        } else {
            std::vector<int> pool;
            for (int q = 0; q < qubits; ++q)
                if (q != t) pool.push_back(q);
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<Control> ctl;
            int m = std::max(1, nctl(rng));
            for (int j = 0; j < m; ++j) ctl.push_back({pool[j], static_cast<bool>(rng() & 1)});
            c.mcx(ctl, t);
        }
    }
    return c;
}

std::uint64_t indexOf(const std::vector<std::uint8_t> &b) {
    std::uint64_t v = 0;
    for (size_t i = 0; i < b.size(); ++i) v |= std::uint64_t{b[i]} << i;
    return v;
}

/// Heaviest antichain by subset enumeration over the gate DAG (gates sharing a qubit are ordered).
std::int64_t bruteWidth(const Circuit &c) {
    const auto &g = c.gates();
    const int n = static_cast<int>(g.size());
    auto touches = [](const Gate &x) {
        std::vector<int> q{x.target};
        for (auto &ct : x.controls) q.push_back(ct.qubit);
        return q;
    };
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            bool share = false;
            for (int a : touches(g[i]))
                for (int b : touches(g[j])) share |= a == b;
            if (share) reach[i][j] = 1;
        }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    std::int64_t best = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
        bool ok = true;
        std::int64_t w = 0;
        for (int i = 0; i < n && ok; ++i) {
            if (!(s >> i & 1)) continue;
            w += gateWeight(g[i]);
            for (int j = i + 1; j < n; ++j)
                if ((s >> j & 1) && reach[i][j]) ok = false;
        }
        if (ok) best = std::max(best, w);
    }
    return best;
}

}  // namespace

TEST(Metrics, SingleCnot) {
    Circuit c;
    c.addRegister("q", 2, Role::input);
    c.cx(0, 1);
    auto m = metrics(c);
    EXPECT_EQ(m.complexity, 1);
    EXPECT_EQ(m.depth, 1);
    EXPECT_EQ(m.width, 1);
    EXPECT_TRUE(m.widthExact);
}

TEST(Metrics, TwoDisjointCnots) {
    Circuit c;
    c.addRegister("q", 4, Role::input);
    c.cx(0, 1);
    c.cx(2, 3);
    auto m = metrics(c);
    EXPECT_EQ(m.complexity, 2);
    EXPECT_EQ(m.depth, 1);
    EXPECT_EQ(m.width, 2);
}

TEST(Metrics, GateWeights) {
    Circuit c;
    c.addRegister("q", 6, Role::input);
    c.mcx({{0, true}, {1, false}, {2, true}, {3, true}, {4, true}}, 5);
    EXPECT_EQ(metrics(c).complexity, 4);
    EXPECT_EQ(gateWeight(Gate{GateKind::MCX, {{0, true}, {1, true}}, 2}), 1);
    EXPECT_EQ(gateWeight(Gate{GateKind::MCX, {{0, true}, {1, true}, {2, true}}, 3}), 2);
    EXPECT_EQ(gateWeight(Gate{GateKind::H, {}, 0}), 1);
}

TEST(Metrics, ChainAndEmpty) {
    Circuit c;
    c.addRegister("q", 3, Role::input);
    EXPECT_EQ(metrics(c).complexity, 0);
    c.ccx(0, true, 1, true, 2);
    c.cx(2, 0);
    auto m = metrics(c);
    EXPECT_EQ(m.depth, 2);
    EXPECT_EQ(m.width, 1);
    EXPECT_THROW(c.mcx({{0, true}, {0, true}}, 1), InvalidArgument);
    EXPECT_THROW(c.mcx({{1, true}}, 1), InvalidArgument);
}

TEST(Metrics, WidthMatchesAntichainEnumeration) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int q = 3 + static_cast<int>(rng() % 5);
        int n = 1 + static_cast<int>(rng() % 12);
        auto c = randomCircuit(q, n, rng, true);
        auto m = metrics(c);
        ASSERT_TRUE(m.widthExact);
        EXPECT_EQ(m.width, bruteWidth(c)) << toNetlist(c);
        EXPECT_LE(m.width, m.complexity);
        EXPECT_LE(m.depth, m.complexity);
    }
}

TEST(Metrics, LayerFallbackIsALowerBound) {
    std::mt19937_64 rng(11);
    auto c = randomCircuit(6, 12, rng);
    auto exact = metrics(c);
    auto approx = metrics(c, 0);
    EXPECT_FALSE(approx.widthExact);
    EXPECT_LE(approx.width, exact.width);
    EXPECT_EQ(approx.depth, exact.depth);
    EXPECT_EQ(approx.complexity, exact.complexity);
}

TEST(Circuit, RegistersAndRoles) {
    Circuit c;
    EXPECT_EQ(c.addRegister("a", 3, Role::input), 0);
    EXPECT_EQ(c.addRegister("b", 2, Role::ancilla), 3);
    EXPECT_EQ(c.numQubits(), 5);
    EXPECT_EQ(c.qubit("b", 1), 4);
    EXPECT_EQ(c.roleOf(4), Role::ancilla);
    EXPECT_THROW(c.addRegister("a", 1, Role::flag), InvalidArgument);
    EXPECT_THROW(c.addRegister("z", 0, Role::flag), InvalidArgument);
    EXPECT_THROW(c.qubit("b", 2), InvalidArgument);
    EXPECT_THROW(c.x(5), InvalidArgument);
}

TEST(Circuit, InverseUndoesCircuit) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto c = randomCircuit(5, 20, rng);
        auto id = compose(c, inverse(c));
        for (std::uint64_t v = 0; v < 32; ++v) EXPECT_EQ(runBasis(id, bitsOf(v, 5)).bits, bitsOf(v, 5));
    }
    Circuit h;
    h.addRegister("q", 1, Role::input);
    h.h(0);
    EXPECT_THROW(inverse(h), InvalidArgument);
}

TEST(Circuit, ComposeAppliesInOrder) {
    Circuit a, b;
    a.addRegister("q", 2, Role::input);
    b.addRegister("q", 2, Role::input);
    a.x(0);
    b.cx(0, 1);
    EXPECT_EQ(runBasis(compose(a, b), bitsOf(0, 2)).bits, bitsOf(3, 2));
    EXPECT_EQ(runBasis(compose(b, a), bitsOf(0, 2)).bits, bitsOf(1, 2));
    Circuit other;
    other.addRegister("r", 2, Role::input);
    EXPECT_THROW(compose(a, other), InvalidArgument);
}

TEST(Circuit, NetlistRoundTrip) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c;
        c.addRegister("in", 3, Role::input);
        c.addRegister("anc", 2, Role::ancilla);
        c.addRegister("ph", 1, Role::phase);
        auto r = randomCircuit(6, 15, rng, true);
        std::vector<int> id{0, 1, 2, 3, 4, 5};
        c.append(r, id);
        auto text = toNetlist(c);
        auto back = parseNetlist(text);
        EXPECT_EQ(back.registers(), c.registers());
        EXPECT_EQ(back.gates(), c.gates());
        EXPECT_EQ(toNetlist(back), text);
    }
    EXPECT_THROW(parseNetlist("qubits 2\nregister q 0 2 input\ngate Y target=0\n"), ParseError);
}

TEST(Simulate, DenseAgreesWithBasis) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = randomCircuit(6, 25, rng);
        for (std::uint64_t v = 0; v < 64; v += 5) {
            auto basis = runBasis(c, bitsOf(v, 6));
            auto dense = runDense(c, DenseState::basis(6, v));
            std::uint64_t want = indexOf(basis.bits);
            for (std::uint64_t i = 0; i < 64; ++i) EXPECT_NEAR(std::abs(dense.amplitudes[i]), i == want ? 1.0 : 0.0, 1e-12);
        }
    }
}

TEST(Simulate, PhaseRegisterKickback) {
    // Marking |11> through a phase qubit: basis runner flips the sign, dense run on |-> agrees.
    Circuit c;
    c.addRegister("x", 2, Role::input);
    c.addRegister("p", 1, Role::phase);
    c.ccx(0, true, 1, true, 2);
    for (std::uint64_t v = 0; v < 4; ++v) {
        auto b = runBasis(c, bitsOf(v, 3));
        EXPECT_EQ(b.sign, v == 3 ? -1 : 1);
        EXPECT_EQ(indexOf(b.bits), v);

        Circuit full;
        full.addRegister("x", 2, Role::input);
        full.addRegister("p", 1, Role::phase);
        full.x(2);
        full.h(2);
        std::vector<int> id{0, 1, 2};
        full.append(c, id);
        full.h(2);
        full.x(2);
        auto d = runDense(full, DenseState::basis(3, v));
        EXPECT_NEAR(d.amplitudes[v].real(), b.sign, 1e-12);
        EXPECT_NEAR(d.norm(), 1.0, 1e-12);
    }
}

TEST(Simulate, DenseCapAndHadamard) {
    Circuit c;
    c.addRegister("q", 2, Role::input);
    c.h(0);
    c.h(1);
    auto d = runDense(c, DenseState::basis(2, 0));
    for (auto a : d.amplitudes) EXPECT_NEAR(a.real(), 0.5, 1e-12);
    EXPECT_THROW(runDense(c, DenseState::basis(2, 0), 1), CapacityError);
    EXPECT_THROW(runBasis(c, bitsOf(0, 2)), InvalidArgument);
}
