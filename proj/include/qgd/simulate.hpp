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

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qgd/circuit.hpp"
#include "qgd/error.hpp"

namespace qgd {

/// Classical basis state with a global sign.
struct BasisState {
    std::vector<std::uint8_t> bits;
    int sign = 1;
    bool operator==(const BasisState &) const = default;
};

struct DenseState {
    int numQubits = 0;
    std::vector<std::complex<double>> amplitudes;

    static DenseState basis(int numQubits, std::uint64_t index) {
        DenseState s{numQubits, std::vector<std::complex<double>>(std::size_t{1} << numQubits)};
        s.amplitudes[index] = 1.0;
        return s;
    }

    double norm() const {
        double n = 0;
        for (const auto &a : amplitudes) n += std::norm(a);
        return std::sqrt(n);
    }
};

inline constexpr int kDefaultDenseCap = 26;

/**
 * @brief Reusable classical simulator for X/MCX circuits.
 *
 * An MCX whose target lies in a phase register acts on |->, so it flips the sign instead of the bit.
 */
class BasisRunner {
   public:
    explicit BasisRunner(const Circuit &c) : c_(&c), phase_(c.numQubits(), 0) {
        for (const auto &r : c.registers())
            if (r.role == Role::phase)
                for (int i = 0; i < r.size; ++i) phase_[r.offset + i] = 1;
        for (const auto &g : c.gates())
            if (g.kind == GateKind::H) throw InvalidArgument("basis simulation cannot apply H");
    }

    void apply(std::vector<std::uint8_t> &bits, int &sign) const {
        for (const auto &g : c_->gates()) {
            bool fire = true;
            for (const auto &ct : g.controls)
                if ((bits[ct.qubit] != 0) != ct.positive) {
                    fire = false;
                    break;
                }
            if (!fire) continue;
            if (phase_[g.target])
                sign = -sign;
            else
                bits[g.target] ^= 1;
        }
    }

   private:
    const Circuit *c_;
    std::vector<char> phase_;
};

inline BasisState runBasis(const Circuit &c, BasisState s) {
    if (static_cast<int>(s.bits.size()) != c.numQubits()) throw InvalidArgument("bitstring length mismatch");
    BasisRunner(c).apply(s.bits, s.sign);
    return s;
}

inline BasisState runBasis(const Circuit &c, const std::vector<std::uint8_t> &bits) {
    return runBasis(c, BasisState{bits, 1});
}

inline DenseState runDense(const Circuit &c, DenseState s, int cap = kDefaultDenseCap) {
    if (c.numQubits() > cap) throw CapacityError("dense simulation exceeds qubit cap");
    if (s.numQubits != c.numQubits()) throw InvalidArgument("state width does not match circuit");
    const std::uint64_t dim = std::uint64_t{1} << s.numQubits;
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto &g : c.gates()) {
        const std::uint64_t tb = std::uint64_t{1} << g.target;
        if (g.kind == GateKind::H) {
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & tb) continue;
                auto a = s.amplitudes[i], b = s.amplitudes[i | tb];
                s.amplitudes[i] = r * (a + b);
                s.amplitudes[i | tb] = r * (a - b);
            }
            continue;
        }
        std::uint64_t mask = 0, want = 0;
        for (const auto &ct : g.controls) {
            mask |= std::uint64_t{1} << ct.qubit;
            if (ct.positive) want |= std::uint64_t{1} << ct.qubit;
        }
        for (std::uint64_t i = 0; i < dim; ++i)
            if (!(i & tb) && (i & mask) == want) std::swap(s.amplitudes[i], s.amplitudes[i | tb]);
    }
    return s;
}

}  // namespace qgd
