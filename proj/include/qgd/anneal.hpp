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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qgd/qubo.hpp"

namespace qgd {

struct AnnealSchedule {
    int sweeps = 10000;
    int sweepsPerTemperature = 0;     ///< 0: sweeps / 200, at least 1
    double decay = 0.95;
    double initialAcceptance = 0.8;   ///< T0 calibrated so uphill moves pass with this probability
    int calibrationFlips = 100;
    double initialTemperature = 0;    ///< > 0 overrides calibration
    int restarts = 1;
};

struct AnnealResult {
    std::vector<std::uint8_t> assignment;
    std::int64_t energy = 0;          ///< f_Q(assignment) including the offset
    std::int64_t objectiveValue = 0;  ///< filled by callers that know the CBO model
    int constraintViolations = 0;
    double wallTime = 0;
    int sweeps = 0;
};

/// Submit a QUBO, receive the best assignment found.
class Annealer {
   public:
    virtual ~Annealer() = default;
    virtual AnnealResult solve(const QuboModel &q, const AnnealSchedule &schedule, std::uint64_t seed) const = 0;
};

/// Single-bit-flip Metropolis annealing with a geometric schedule.
class SimulatedAnnealer final : public Annealer {
   public:
    AnnealResult solve(const QuboModel &q, const AnnealSchedule &schedule, std::uint64_t seed) const override {
        auto t0 = std::chrono::steady_clock::now();
        const int n = q.numVars;
        std::vector<std::int64_t> diag(n, 0);
        std::vector<std::vector<std::pair<int, std::int64_t>>> rows(n);
        for (const auto &[ij, c] : q.Q) {
            if (ij.first == ij.second) {
                diag[ij.first] += c;
            } else {
                rows[ij.first].emplace_back(ij.second, c);
                rows[ij.second].emplace_back(ij.first, c);
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::uniform_int_distribution<int> pick(0, std::max(n - 1, 0));

        AnnealResult best;
        best.assignment.assign(n, 0);
        best.energy = q.offset;
        bool haveBest = false;
        const int perT = schedule.sweepsPerTemperature > 0 ? schedule.sweepsPerTemperature : std::max(1, schedule.sweeps / 200);

        for (int rep = 0; rep < std::max(1, schedule.restarts); ++rep) {
            std::vector<std::uint8_t> x(n);
            for (auto &b : x) b = static_cast<std::uint8_t>(rng() & 1);
            // field[i] = sum_j Q_ij x_j over off-diagonal neighbours
            std::vector<std::int64_t> field(n, 0);
            for (int i = 0; i < n; ++i)
                for (auto [j, c] : rows[i])
                    if (x[j]) field[i] += c;
            auto delta = [&](int i) { return (x[i] ? -1 : 1) * (diag[i] + field[i]); };
            auto flip = [&](int i) {
                const std::int64_t s = x[i] ? -1 : 1;
                x[i] ^= 1;
                for (auto [j, c] : rows[i]) field[j] += s * c;
            };
            std::int64_t e = q.energy(x);
            if (!haveBest || e < best.energy) best.assignment = x, best.energy = e, haveBest = true;
            if (n == 0) break;

            double T = schedule.initialTemperature;
            if (T <= 0) {
                double sum = 0;
                int cnt = 0;
                for (int k = 0; k < schedule.calibrationFlips; ++k) {
                    auto d = delta(pick(rng));
                    if (d > 0) sum += static_cast<double>(d), ++cnt;
                }
                double mean = cnt ? sum / cnt : 1.0;
                T = -mean / std::log(schedule.initialAcceptance);
            }
            for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
                for (int k = 0; k < n; ++k) {
                    int i = pick(rng);
                    auto d = delta(i);
                    if (d <= 0 || uni(rng) < std::exp(-static_cast<double>(d) / T)) {
                        flip(i);
                        e += d;
                        if (e < best.energy) best.assignment = x, best.energy = e;
                    }
                }
                if ((sweep + 1) % perT == 0) T *= schedule.decay;
            }
            best.sweeps += schedule.sweeps;
        }
        best.wallTime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return best;
    }
};

struct CboAnnealResult {
    AnnealResult anneal;
    DecodeReport decoded;
};

/**
 * @brief Anneals the compiled model of `model` and decodes the best assignment.
 *
 * objectiveValue is the original objective evaluated on the CBO variables;
 * constraintViolations counts violated constraints of the unlinearized model.
 */
inline CboAnnealResult annealProblem(const ProblemInstance &p, const CboModel &model, const AnnealSchedule &schedule,
                                     std::uint64_t seed, QuboEncoding enc = QuboEncoding::slack,
                                     const Annealer &annealer = SimulatedAnnealer{}) {
    QuboModel q = compileProblem(model, enc);
    CboAnnealResult r;
    r.anneal = annealer.solve(q, schedule, seed);
    auto x = q.originalAssignment(r.anneal.assignment);
    r.anneal.objectiveValue = model.objective.evaluate(x);
    r.anneal.constraintViolations = static_cast<int>(model.violated(x).size());
    r.decoded = decodeAssignment(p, model, x);
    return r;
}

}  // namespace qgd
