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

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qgd/anneal.hpp"

namespace qgd {

/// Bipartite graph with n vertices per layer; each of the n^2 edges present with probability d/100.
inline BipartiteGraph randomBipartite(int n, int densityPercent, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(densityPercent / 100.0);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, n + j);
    return BipartiteGraph::make(n, n, edges);
}

struct ExperimentConfig {
    std::vector<int> sizes{6, 8, 10};
    std::vector<int> densities{10, 30, 50};
    int instances = 10;
    int seeds = 1;
    std::uint64_t baseSeed = 0;
    AnnealSchedule schedule{};
    QuboEncoding encoding = QuboEncoding::ordering;
    int exactLimit = 6;  ///< layers up to this size also get the brute-force optimum
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct ModeResult {
    std::size_t constraints = 0;  ///< CBO constraints before linearization
    double time = 0;              ///< mean anneal wall time over seeds
    double crossings = 0;         ///< mean crossings of feasible decodes
    int infeasible = 0;           ///< seeds whose best assignment violates a constraint
    int optimalSeeds = 0;         ///< seeds reaching the optimum (when known)
    std::vector<int> perSeed;     ///< crossings per seed, -1 when infeasible
};

struct InstanceResult {
    int n = 0, d = 0, index = 0;
    int m = 0;
    int sizeU = 0, sizeV = 0;  ///< layer sizes after dropping isolated vertices
    std::optional<int> optimum;
    ModeResult linear, quadratic;
};

struct ExperimentRow {
    int n = 0, d = 0;
    double timeLinear = 0, constraintsLinear = 0, crossingsLinear = 0;
    double timeQuadratic = 0, constraintsQuadratic = 0, crossingsQuadratic = 0;
    std::optional<double> optimum, gapLinear, gapQuadratic;
};

struct ExperimentReport {
    std::vector<InstanceResult> instances;
    std::vector<ExperimentRow> rows;

    std::string csv() const;
    std::string table() const;
};

namespace detail {

inline ModeResult runMode(const ProblemInstance &p, Transitivity t, const ExperimentConfig &cfg, std::optional<int> optimum) {
    ModeResult r;
    CboModel model = buildCbo(p, t);
    r.constraints = model.constraints.size();
    int feasible = 0;
    for (int s = 0; s < cfg.seeds; ++s) {
        auto res = annealProblem(p, model, cfg.schedule, cfg.baseSeed + static_cast<std::uint64_t>(s), cfg.encoding);
        r.time += res.anneal.wallTime;
        if (res.decoded.feasible() && res.decoded.solution) {
            int c = countCrossings(p.bipartite(), *res.decoded.solution->twoLevel);
            r.perSeed.push_back(c);
            r.crossings += c;
            ++feasible;
            if (optimum && c == *optimum) ++r.optimalSeeds;
        } else {
            r.perSeed.push_back(-1);
            ++r.infeasible;
        }
    }
    r.time /= std::max(1, cfg.seeds);
    if (feasible) r.crossings /= feasible;
    return r;
}

inline std::string fmt(double v, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

}  // namespace detail

/**
 * @brief TLCM annealing experiment over random bipartite instances.
 *
 * Isolated vertices are dropped before modelling. Instances run on a thread pool; each
 * anneal is single threaded and seeded, so results do not depend on the thread count.
 */
inline ExperimentReport experimentHarness(const ExperimentConfig &cfg) {
    struct Task {
        int n, d, index;
    };
    std::vector<Task> tasks;
    for (int n : cfg.sizes)
        for (int d : cfg.densities)
            for (int i = 0; i < cfg.instances; ++i) tasks.push_back({n, d, i});
    ExperimentReport rep;
    rep.instances.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < tasks.size();) {
            const auto &t = tasks[k];
            std::seed_seq seq{static_cast<std::uint64_t>(cfg.baseSeed), static_cast<std::uint64_t>(t.n),
                              static_cast<std::uint64_t>(t.d), static_cast<std::uint64_t>(t.index)};
            std::mt19937_64 rng(seq);
            auto g = withoutIsolatedVertices(randomBipartite(t.n, t.d, rng));
            InstanceResult &ir = rep.instances[k];
            ir.n = t.n, ir.d = t.d, ir.index = t.index, ir.m = g.m();
            ir.sizeU = g.sizeU, ir.sizeV = g.sizeV;
            if (g.sizeU < 1 || g.sizeV < 1) {
                ir.optimum = 0;
                continue;
            }
            auto p = ProblemInstance::make(ProblemKind::TLCM, g, 0);
            if (t.n <= cfg.exactLimit) ir.optimum = minTwoLevelCrossings(g).first;
            ir.linear = detail::runMode(p, Transitivity::linear, cfg, ir.optimum);
            ir.quadratic = detail::runMode(p, Transitivity::quadratic, cfg, ir.optimum);
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto &th : pool) th.join();

    for (int n : cfg.sizes)
        for (int d : cfg.densities) {
            ExperimentRow row;
            row.n = n, row.d = d;
            int count = 0;
            double opt = 0;
            bool exact = true;
            for (const auto &ir : rep.instances) {
                if (ir.n != n || ir.d != d) continue;
                ++count;
                row.timeLinear += ir.linear.time, row.constraintsLinear += ir.linear.constraints;
                row.crossingsLinear += ir.linear.crossings;
                row.timeQuadratic += ir.quadratic.time, row.constraintsQuadratic += ir.quadratic.constraints;
                row.crossingsQuadratic += ir.quadratic.crossings;
                if (ir.optimum)
                    opt += *ir.optimum;
                else
                    exact = false;
            }
            if (count) {
                for (double *v : {&row.timeLinear, &row.constraintsLinear, &row.crossingsLinear, &row.timeQuadratic,
                                   &row.constraintsQuadratic, &row.crossingsQuadratic})
                    *v /= count;
                if (exact) {
                    row.optimum = opt / count;
                    row.gapLinear = row.crossingsLinear - *row.optimum;
                    row.gapQuadratic = row.crossingsQuadratic - *row.optimum;
                }
            }
            rep.rows.push_back(row);
        }
    return rep;
}

inline std::string ExperimentReport::csv() const {
    std::ostringstream os;
    os << "n,d,time_linear,constraints_linear,crossings_linear,time_quadratic,constraints_quadratic,"
          "crossings_quadratic,optimum,gap_linear,gap_quadratic\n";
    auto opt = [](const std::optional<double> &v) { return v ? detail::fmt(*v, 2) : std::string(); };
    for (const auto &r : rows)
        os << r.n << ',' << r.d << ',' << detail::fmt(r.timeLinear, 4) << ',' << detail::fmt(r.constraintsLinear, 1) << ','
           << detail::fmt(r.crossingsLinear, 2) << ',' << detail::fmt(r.timeQuadratic, 4) << ','
           << detail::fmt(r.constraintsQuadratic, 1) << ',' << detail::fmt(r.crossingsQuadratic, 2) << ','
           << opt(r.optimum) << ',' << opt(r.gapLinear) << ',' << opt(r.gapQuadratic) << '\n';
    return os.str();
}

inline std::string ExperimentReport::table() const {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%4s %4s | %10s %12s %10s | %10s %12s %10s | %8s\n", "n", "d", "time(lin)", "#cons(lin)",
                  "cross(lin)", "time(quad)", "#cons(quad)", "cross(quad)", "optimum");
    os << buf << std::string(std::string(buf).size() - 1, '-') << '\n';
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%4d %4d | %10.4f %12.1f %10.2f | %10.4f %12.1f %10.2f | %8s\n", r.n, r.d, r.timeLinear,
                      r.constraintsLinear, r.crossingsLinear, r.timeQuadratic, r.constraintsQuadratic, r.crossingsQuadratic,
                      r.optimum ? detail::fmt(*r.optimum, 2).c_str() : "-");
        os << buf;
    }
    return os.str();
}

}  // namespace qgd
