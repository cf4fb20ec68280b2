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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgd/cbo.hpp"

namespace qgd {

/**
 * @brief f(x) = sum_{i <= j} Q_ij x_i x_j + offset.
 *
 * Variables [0, numOriginal) are the CBO variables of the compiled model; slack variables follow.
 */
struct QuboModel {
    int numVars = 0;
    int numOriginal = 0;
    std::map<std::pair<int, int>, std::int64_t> Q;
    std::int64_t offset = 0;
    std::int64_t penaltyWeight = 0;
    /// (dropped, kept): variables compiled out as dropped = 1 - kept
    std::vector<std::pair<int, int>> complements;

    /// Full assignment of the original variables from a QUBO assignment.
    std::vector<std::uint8_t> originalAssignment(const std::vector<std::uint8_t> &x) const {
        std::vector<std::uint8_t> out(x.begin(), x.begin() + numOriginal);
        for (auto [d, k] : complements) out[d] = !out[k];
        return out;
    }

    void addTerm(int i, int j, std::int64_t c) {
        if (c == 0) return;
        if (i > j) std::swap(i, j);
        auto &q = Q[{i, j}];
        q += c;
        if (q == 0) Q.erase({i, j});
    }

    template <class Assignment>
    std::int64_t energy(const Assignment &x) const {
        std::int64_t e = offset;
        for (const auto &[ij, c] : Q)
            if (x[ij.first] && x[ij.second]) e += c;
        return e;
    }
};

struct CompileStats {
    int slackVariables = 0;
    int penalizedConstraints = 0;
    int redundantConstraints = 0;  ///< satisfied by every assignment, no penalty emitted
};

namespace detail {

/// Adds weight * (sum a_i x_i + c0)^2 to q.
inline void addSquared(QuboModel &q, const std::vector<std::pair<int, std::int64_t>> &lin, std::int64_t c0, std::int64_t weight) {
    q.offset += weight * c0 * c0;
    for (size_t a = 0; a < lin.size(); ++a) {
        auto [i, ai] = lin[a];
        q.addTerm(i, i, weight * (ai * ai + 2 * c0 * ai));
        for (size_t b = a + 1; b < lin.size(); ++b) {
            auto [j, aj] = lin[b];
            q.addTerm(i, j, weight * 2 * ai * aj);
        }
    }
}

}  // namespace detail

/// 1 + (max - min) of the objective bounds, or 1 for feasibility models.
inline std::int64_t defaultPenaltyWeight(const CboModel &model) {
    if (!model.minimize || model.objective.terms().empty()) return 1;
    return 1 + model.objective.upperBound() - model.objective.lowerBound();
}

/**
 * @brief Penalty compilation of a linearized model.
 *
 * Constraints are normalized to g = b or g <= b (g >= b is negated, g < b becomes g <= b - 1).
 * An inequality with slack range R = b - min g > 0 gets slack bits with weights 1, 2, 4, ...
 * and a final remainder, spanning exactly [0, R]; then P (g + slack - b)^2 is added.
 */
inline QuboModel compileQubo(const CboModel &model, std::int64_t penaltyWeight, CompileStats *stats = nullptr) {
    if (model.objective.degree() > 2) throw InvalidArgument("objective has degree > 2; linearize first");
    QuboModel q;
    q.numOriginal = q.numVars = model.numVariables();
    q.penaltyWeight = penaltyWeight;
    CompileStats st;
    for (const auto &[mono, c] : model.objective.terms()) {
        if (mono.empty())
            q.offset += c;
        else if (mono.size() == 1)
            q.addTerm(mono[0], mono[0], c);
        else
            q.addTerm(mono[0], mono[1], c);
    }
    for (const auto &con : model.constraints) {
        if (con.lhs.degree() > 1) throw InvalidArgument("constraint has degree > 1; linearize first");
        std::int64_t sign = con.rel == Relation::ge ? -1 : 1;
        std::int64_t b = sign * con.bound - (con.rel == Relation::lt ? 1 : 0);
        std::vector<std::pair<int, std::int64_t>> lin;
        std::int64_t c0 = 0;
        for (const auto &[mono, c] : con.lhs.terms()) {
            if (mono.empty())
                c0 += sign * c;
            else
                lin.emplace_back(mono[0], sign * c);
        }
        std::int64_t gmin = c0, gmax = c0;
        for (auto [i, a] : lin) (a < 0 ? gmin : gmax) += a;
        if (con.rel == Relation::eq) {
            if (b < gmin || b > gmax) throw InvalidArgument("constraint '" + con.tag + "' can never hold");
            detail::addSquared(q, lin, c0 - b, penaltyWeight);
            ++st.penalizedConstraints;
            continue;
        }
        if (gmax <= b) {
            ++st.redundantConstraints;
            continue;
        }
        std::int64_t range = b - gmin;
        if (range < 0) throw InvalidArgument("constraint '" + con.tag + "' can never hold");
        for (std::int64_t w = 1, left = range; left > 0; w *= 2) {
            std::int64_t coeff = std::min(w, left);
            lin.emplace_back(q.numVars++, coeff);
            ++st.slackVariables;
            left -= coeff;
        }
        detail::addSquared(q, lin, c0 - b, penaltyWeight);
        ++st.penalizedConstraints;
    }
    if (stats) *stats = st;
    return q;
}

enum class QuboEncoding {
    slack,    ///< every constraint through compileQubo
    ordering  ///< j-before-i variables replaced by complements, 3-cycle penalty for transitivity
};

inline const char *encodingName(QuboEncoding e) { return e == QuboEncoding::slack ? "slack" : "ordering"; }

/**
 * @brief Substitutes x_{j,i} = 1 - x_{i,j} (i < j) and drops consistency and transitivity.
 *
 * The returned pairs list (dropped, kept) variables. Ordering feasibility is then expressed by
 * addOrderingPenalty, which is zero exactly on transitive tournaments.
 */
inline CboModel eliminateReverseOrder(const CboModel &model, std::vector<std::pair<int, int>> &complements) {
    std::map<int, int> dropped;
    for (const auto &[ij, var] : model.vars.order)
        if (ij.first > ij.second) dropped[var] = model.vars.order.at({ij.second, ij.first});
    auto subst = [&](const Polynomial &p) {
        Polynomial r;
        for (const auto &[mono, c] : p.terms()) {
            Polynomial t(c);
            for (int v : mono) {
                auto it = dropped.find(v);
                t = t * (it == dropped.end() ? Polynomial::var(v) : Polynomial(1) - Polynomial::var(it->second));
            }
            r += t;
        }
        return r;
    };
    CboModel out = model;
    out.objective = subst(model.objective);
    out.constraints.clear();
    for (const auto &c : model.constraints)
        if (!isOrderingTag(c.tag)) out.constraints.push_back(Constraint{subst(c.lhs), c.rel, c.bound, c.tag});
    complements.assign(dropped.begin(), dropped.end());
    return out;
}

/// Sum over i < j < k of x_ik + x_ij x_jk - x_ij x_ik - x_jk x_ik, the count of cyclic triples.
inline void addOrderingPenalty(QuboModel &q, const CboModel &model, std::int64_t weight) {
    const auto &ord = model.vars.order;
    for (const auto &[ij, a] : ord) {
        auto [i, j] = ij;
        if (i > j) continue;
        for (auto it = ord.lower_bound({j, j + 1}); it != ord.end() && it->first.first == j; ++it) {
            int k = it->first.second;
            auto ik = ord.find({i, k});
            if (k <= j || ik == ord.end()) continue;
            int b = it->second, c = ik->second;
            q.addTerm(c, c, weight);
            q.addTerm(a, b, weight);
            q.addTerm(a, c, -weight);
            q.addTerm(b, c, -weight);
        }
    }
}

/// linearize + compileQubo with the default penalty weight.
inline QuboModel compileProblem(const CboModel &model, QuboEncoding enc = QuboEncoding::slack,
                                CboModel *linearizedOut = nullptr, CompileStats *stats = nullptr) {
    if (enc == QuboEncoding::slack) {
        CboModel lin = linearize(model);
        QuboModel q = compileQubo(lin, defaultPenaltyWeight(lin), stats);
        if (linearizedOut) *linearizedOut = std::move(lin);
        return q;
    }
    std::vector<std::pair<int, int>> complements;
    CboModel lin = linearize(eliminateReverseOrder(model, complements));
    const std::int64_t P = defaultPenaltyWeight(lin);
    QuboModel q = compileQubo(lin, P, stats);
    addOrderingPenalty(q, model, P);
    q.complements = std::move(complements);
    if (linearizedOut) *linearizedOut = std::move(lin);
    return q;
}

}  // namespace qgd
