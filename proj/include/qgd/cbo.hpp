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
#include <cctype>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qgd/problem.hpp"

namespace qgd {

/// Sorted, duplicate-free variable indices; the empty monomial is the constant term.
using Monomial = std::vector<int>;

/// Multilinear polynomial over binary variables with integer coefficients.
class Polynomial {
   public:
    Polynomial() = default;
    explicit Polynomial(std::int64_t constant) { add({}, constant); }

    static Polynomial var(int v) {
        Polynomial p;
        p.add({v}, 1);
        return p;
    }

    /// Adds coeff * prod(vars); repeated variables collapse since x^2 = x.
    void add(Monomial vars, std::int64_t coeff) {
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        auto &c = terms_[vars];
        c += coeff;
        if (c == 0) terms_.erase(vars);
    }

    Polynomial &operator+=(const Polynomial &o) {
        for (const auto &[m, c] : o.terms_) add(m, c);
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o) {
        for (const auto &[m, c] : o.terms_) add(m, -c);
        return *this;
    }
    Polynomial &operator*=(std::int64_t k) {
        if (k == 0) terms_.clear();
        for (auto &[m, c] : terms_) c *= k;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, std::int64_t k) { return a *= k; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
        Polynomial r;
        for (const auto &[ma, ca] : a.terms_)
            for (const auto &[mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add(std::move(m), ca * cb);
            }
        return r;
    }

    const std::map<Monomial, std::int64_t> &terms() const { return terms_; }

    std::int64_t constant() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? 0 : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto &[m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
        return d;
    }

    template <class Assignment>
    std::int64_t evaluate(const Assignment &x) const {
        std::int64_t s = 0;
        for (const auto &[m, c] : terms_) {
            bool on = true;
            for (int v : m)
                if (!x[v]) {
                    on = false;
                    break;
                }
            if (on) s += c;
        }
        return s;
    }

    /// Bounds over all binary assignments, treating monomials as independent.
    std::int64_t lowerBound() const {
        std::int64_t s = 0;
        for (const auto &[m, c] : terms_)
            if (m.empty() || c < 0) s += c;
        return s;
    }
    std::int64_t upperBound() const {
        std::int64_t s = 0;
        for (const auto &[m, c] : terms_)
            if (m.empty() || c > 0) s += c;
        return s;
    }

    bool operator==(const Polynomial &) const = default;

   private:
    std::map<Monomial, std::int64_t> terms_;
};

enum class Relation { eq, le, ge, lt };

inline const char *relationName(Relation r) {
    switch (r) {
        case Relation::eq: return "=";
        case Relation::le: return "<=";
        case Relation::ge: return ">=";
        case Relation::lt: return "<";
    }
    return "?";
}

struct Constraint {
    Polynomial lhs;
    Relation rel = Relation::eq;
    std::int64_t bound = 0;
    std::string tag;

    template <class Assignment>
    bool holds(const Assignment &x) const {
        auto v = lhs.evaluate(x);
        switch (rel) {
            case Relation::eq: return v == bound;
            case Relation::le: return v <= bound;
            case Relation::ge: return v >= bound;
            case Relation::lt: return v < bound;
        }
        return false;
    }
};

enum class Transitivity { linear, quadratic };

inline const char *transitivityName(Transitivity t) { return t == Transitivity::linear ? "linear" : "quadratic"; }

/// Indices of the problem variables inside a model.
struct CboVariables {
    std::map<std::pair<int, int>, int> order;  ///< (i, j) -> "i precedes j", same layer / spine
    std::vector<int> removal;                  ///< s per edge (TLS, BS)
    std::vector<std::vector<int>> page;        ///< e[edge][page] (BT)
    std::vector<std::pair<int, Monomial>> aux; ///< linearization variables and their monomials
};

struct CboModel {
    std::vector<std::string> names;
    Polynomial objective;
    std::vector<Constraint> constraints;
    CboVariables vars;
    bool minimize = false;  ///< false: feasibility model, objective is 0

    int addVariable(std::string name) {
        index_.emplace(name, static_cast<int>(names.size()));
        names.push_back(std::move(name));
        return static_cast<int>(names.size()) - 1;
    }
    int variable(const std::string &name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InvalidArgument("unknown variable " + name);
        return it->second;
    }
    int numVariables() const { return static_cast<int>(names.size()); }

    void constrain(Polynomial lhs, Relation rel, std::int64_t bound, std::string tag) {
        constraints.push_back(Constraint{std::move(lhs), rel, bound, std::move(tag)});
    }

    int degree() const {
        int d = objective.degree();
        for (const auto &c : constraints) d = std::max(d, c.lhs.degree());
        return d;
    }

    size_t countTagged(const std::string &tag) const {
        return static_cast<size_t>(
            std::count_if(constraints.begin(), constraints.end(), [&](const Constraint &c) { return c.tag == tag; }));
    }

    template <class Assignment>
    std::vector<size_t> violated(const Assignment &x) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < constraints.size(); ++i)
            if (!constraints[i].holds(x)) out.push_back(i);
        return out;
    }

   private:
    std::unordered_map<std::string, int> index_;
};

namespace detail {

/// Ordering variables plus consistency and transitivity over one vertex group.
inline void addOrdering(CboModel &model, const std::vector<int> &group, const std::string &prefix, Transitivity t) {
    auto &ord = model.vars.order;
    for (int i : group)
        for (int j : group)
            if (i != j) ord[{i, j}] = model.addVariable(prefix + "_" + std::to_string(i) + "_" + std::to_string(j));
    const std::string up(1, static_cast<char>(std::toupper(static_cast<unsigned char>(prefix[0]))));
    for (size_t a = 0; a < group.size(); ++a)
        for (size_t b = a + 1; b < group.size(); ++b) {
            int i = group[a], j = group[b];
            model.constrain(Polynomial::var(ord[{i, j}]) + Polynomial::var(ord[{j, i}]), Relation::eq, 1, "C" + up);
        }
    for (int i : group)
        for (int j : group)
            for (int k : group) {
                if (i == j || j == k || i == k) continue;
                auto ij = Polynomial::var(ord[{i, j}]), jk = Polynomial::var(ord[{j, k}]), ik = Polynomial::var(ord[{i, k}]);
                if (t == Transitivity::linear) {
                    model.constrain(ij + jk - ik, Relation::ge, 0, "T" + up);
                    model.constrain(ij + jk - ik, Relation::le, 1, "T" + up);
                } else {
                    model.constrain(Polynomial(1) - ij * jk + ik, Relation::ge, 1, "TQ" + up);
                }
            }
}

inline Polynomial orderVar(const CboModel &m, int i, int j) { return Polynomial::var(m.vars.order.at({i, j})); }

/// Crossing indicator of two independent edges in a 2-level drawing.
inline Polynomial chiTwoLevel(const CboModel &m, Edge a, Edge b) {
    auto [i, k] = a;
    auto [j, l] = b;
    return orderVar(m, i, j) * orderVar(m, l, k) + orderVar(m, j, i) * orderVar(m, k, l);
}

/// Book crossing with an endpoint of a preceding both endpoints of b: four path-order monomials.
inline Polynomial chiBookDirected(const CboModel &m, Edge a, Edge b) {
    auto [i, j] = a;
    auto [l, k] = b;
    auto path = [&](int p, int q, int r, int s) { return orderVar(m, p, q) * orderVar(m, q, r) * orderVar(m, r, s); };
    return path(i, l, j, k) + path(i, k, j, l) + path(j, l, i, k) + path(j, k, i, l);
}

inline Polynomial chiBook(const CboModel &m, Edge a, Edge b) { return chiBookDirected(m, a, b) + chiBookDirected(m, b, a); }

}  // namespace detail

/**
 * @brief Constrained binary model of a problem instance.
 *
 * Crossing indicators appear expanded in the ordering variables. Symmetric relations between
 * edges (KP aside) are emitted once per unordered pair or triple; the book indicator used in
 * constraints is the sum over both edge orders.
 */
inline CboModel buildCbo(const ProblemInstance &p, Transitivity t = Transitivity::linear) {
    CboModel model;
    const int m = p.m();
    std::vector<Edge> edges;
    std::function<Polynomial(Edge, Edge)> chi;
    if (isTwoLevel(p.kind)) {
        const auto &g = p.bipartite();
        std::vector<int> u(g.sizeU), v(g.sizeV);
        std::iota(u.begin(), u.end(), 0);
        std::iota(v.begin(), v.end(), g.sizeU);
        detail::addOrdering(model, u, "u", t);
        detail::addOrdering(model, v, "v", t);
        edges = g.edges;
        chi = [&model](Edge a, Edge b) { return detail::chiTwoLevel(model, a, b); };
    } else {
        Graph g = p.plain();
        std::vector<int> all(g.n);
        std::iota(all.begin(), all.end(), 0);
        detail::addOrdering(model, all, "x", t);
        edges = g.edges;
        chi = [&model](Edge a, Edge b) { return detail::chiBook(model, a, b); };
    }
    auto independent = [&](int a, int b) { return !detail::sharesEndpoint(edges[a], edges[b]); };
    switch (p.kind) {
        case ProblemKind::TLCM:
            model.minimize = true;
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    if (independent(a, b)) model.objective += chi(edges[a], edges[b]);
            break;
        case ProblemKind::OPCM:
            model.minimize = true;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (a != b && independent(a, b)) model.objective += detail::chiBookDirected(model, edges[a], edges[b]);
            break;
        case ProblemKind::TLKP:
            for (int a = 0; a < m; ++a) {
                Polynomial s;
                for (int b = 0; b < m; ++b)
                    if (b != a && independent(a, b)) s += chi(edges[a], edges[b]);
                model.constrain(std::move(s), Relation::le, p.parameter, "KP");
            }
            break;
        case ProblemKind::TLQP:
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    for (int c = b + 1; c < m; ++c)
                        if (independent(a, b) && independent(a, c) && independent(b, c))
                            model.constrain(chi(edges[a], edges[b]) + chi(edges[b], edges[c]) + chi(edges[a], edges[c]),
                                            Relation::lt, 3, "QP");
            break;
        case ProblemKind::TLS:
        case ProblemKind::BS: {
            Polynomial cs;
            for (int a = 0; a < m; ++a) {
                model.vars.removal.push_back(model.addVariable("s_" + std::to_string(a)));
                cs += Polynomial::var(model.vars.removal.back());
            }
            model.constrain(std::move(cs), Relation::le, p.parameter, "CS");
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    if (independent(a, b))
                        model.constrain(chi(edges[a], edges[b]) - Polynomial::var(model.vars.removal[a]) -
                                            Polynomial::var(model.vars.removal[b]),
                                        Relation::lt, 1, "S");
            break;
        }
        case ProblemKind::BT: {
            const int tau = p.parameter;
            model.vars.page.assign(m, std::vector<int>(tau));
            for (int a = 0; a < m; ++a) {
                Polynomial bc;
                for (int c = 0; c < tau; ++c) {
                    model.vars.page[a][c] = model.addVariable("e_" + std::to_string(a) + "_" + std::to_string(c));
                    bc += Polynomial::var(model.vars.page[a][c]);
                }
                model.constrain(std::move(bc), Relation::eq, 1, "BC");
            }
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b) {
                    if (!independent(a, b)) continue;
                    auto x = chi(edges[a], edges[b]);
                    for (int c = 0; c < tau; ++c)
                        model.constrain(x + Polynomial::var(model.vars.page[a][c]) + Polynomial::var(model.vars.page[b][c]),
                                        Relation::lt, 3, "CC");
                }
            break;
        }
    }
    return model;
}

/**
 * @brief Replaces products by auxiliary variables.
 *
 * Constraint monomials of degree >= 2 and objective monomials of degree >= 3 each get one z,
 * shared across occurrences, with z <= x_i for every factor and z >= 1 - k + sum x_i.
 */
inline CboModel linearize(const CboModel &model) {
    CboModel out = model;
    std::map<Monomial, int> zOf;
    for (const auto &[z, mono] : model.vars.aux) zOf[mono] = z;
    auto replace = [&](const Polynomial &p, int minDegree) {
        Polynomial r;
        for (const auto &[mono, c] : p.terms()) {
            if (static_cast<int>(mono.size()) < minDegree) {
                r.add(mono, c);
                continue;
            }
            auto it = zOf.find(mono);
            if (it == zOf.end()) {
                std::string name = "z";
                for (int v : mono) name += "_" + std::to_string(v);
                int z = out.addVariable(name);
                it = zOf.emplace(mono, z).first;
                out.vars.aux.emplace_back(z, mono);
                Polynomial lower = Polynomial::var(z);
                for (int v : mono) {
                    out.constrain(Polynomial::var(z) - Polynomial::var(v), Relation::le, 0, "LIN");
                    lower -= Polynomial::var(v);
                }
                out.constrain(std::move(lower), Relation::ge, 1 - static_cast<std::int64_t>(mono.size()), "LIN");
            }
            r.add({it->second}, c);
        }
        return r;
    };
    const size_t original = model.constraints.size();
    out.objective = replace(model.objective, 3);
    for (size_t i = 0; i < original; ++i) out.constraints[i].lhs = replace(model.constraints[i].lhs, 2);
    return out;
}

/// Extends an assignment of the original variables with the products the z variables stand for.
inline std::vector<std::uint8_t> extendAssignment(const CboModel &linearized, std::vector<std::uint8_t> x) {
    x.resize(linearized.numVariables(), 0);
    for (const auto &[z, mono] : linearized.vars.aux) {
        std::uint8_t v = 1;
        for (int i : mono) v &= x[i];
        x[z] = v;
    }
    return x;
}

/// Assignment encoding a layout; variables of other kinds stay 0.
inline std::vector<std::uint8_t> encodeLayout(const CboModel &model, const ProblemInstance &p, const Solution &s) {
    std::vector<std::uint8_t> x(model.numVariables(), 0);
    std::vector<int> pos(p.n(), 0);
    if (s.twoLevel) {
        for (size_t i = 0; i < s.twoLevel->orderU.size(); ++i) pos[s.twoLevel->orderU[i]] = static_cast<int>(i);
        for (size_t i = 0; i < s.twoLevel->orderV.size(); ++i) pos[s.twoLevel->orderV[i]] = static_cast<int>(i);
    } else if (s.spine) {
        for (size_t i = 0; i < s.spine->order.size(); ++i) pos[s.spine->order[i]] = static_cast<int>(i);
    }
    for (const auto &[ij, var] : model.vars.order) x[var] = pos[ij.first] < pos[ij.second];
    if (s.removed)
        for (int e : s.removed->indices) x[model.vars.removal[e]] = 1;
    if (s.pages)
        for (size_t e = 0; e < s.pages->pages.size(); ++e) x[model.vars.page[e][s.pages->pages[e]]] = 1;
    return x;
}

/// Consistency and transitivity tags (CU, TV, TQX, ...).
inline bool isOrderingTag(const std::string &tag) {
    static const char *const tags[] = {"CU", "CV", "CX", "TU", "TV", "TX", "TQU", "TQV", "TQX"};
    return std::find(std::begin(tags), std::end(tags), tag) != std::end(tags);
}

struct DecodeReport {
    std::optional<Solution> solution;      ///< set when the ordering variables describe linear orders
    std::vector<std::string> violations;   ///< human-readable; empty iff every model constraint holds
    bool feasible() const { return violations.empty(); }
};

/**
 * @brief Layout read back from an assignment of the model variables.
 *
 * Consistency and transitivity of the ordering variables are checked first; an order is
 * recovered only when both hold. Problem constraints are then evaluated and listed by tag.
 */
inline DecodeReport decodeAssignment(const ProblemInstance &p, const CboModel &model, const std::vector<std::uint8_t> &x) {
    DecodeReport rep;
    const auto &ord = model.vars.order;
    auto groupName = [&](int v) { return isTwoLevel(p.kind) ? (p.bipartite().inU(v) ? "u" : "v") : "x"; };
    auto var = [&](int i, int j) { return x.at(ord.at({i, j})) != 0; };
    std::vector<std::vector<int>> groups;
    if (isTwoLevel(p.kind)) {
        const auto &g = p.bipartite();
        groups.resize(2);
        for (int v = 0; v < g.n(); ++v) groups[g.inU(v) ? 0 : 1].push_back(v);
    } else {
        groups.emplace_back(p.n());
        std::iota(groups[0].begin(), groups[0].end(), 0);
    }
    bool ordered = true;
    std::vector<std::vector<int>> orders;
    for (const auto &grp : groups) {
        for (size_t a = 0; a < grp.size(); ++a)
            for (size_t b = a + 1; b < grp.size(); ++b)
                if (var(grp[a], grp[b]) == var(grp[b], grp[a])) {
                    ordered = false;
                    rep.violations.push_back(std::string("consistency: ") + groupName(grp[a]) + "_" + std::to_string(grp[a]) +
                                             "_" + std::to_string(grp[b]) + " = " + groupName(grp[a]) + "_" +
                                             std::to_string(grp[b]) + "_" + std::to_string(grp[a]));
                }
        for (int i : grp)
            for (int j : grp)
                for (int k : grp)
                    if (i != j && j != k && i != k && var(i, j) && var(j, k) && !var(i, k)) {
                        ordered = false;
                        rep.violations.push_back("transitivity: " + std::to_string(i) + " < " + std::to_string(j) + " < " +
                                                 std::to_string(k) + " but not " + std::to_string(i) + " < " +
                                                 std::to_string(k));
                    }
        std::vector<int> o = grp;
        std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
            int pa = 0, pb = 0;
            for (int w : grp) {
                if (w != a) pa += var(w, a);
                if (w != b) pb += var(w, b);
            }
            return pa < pb;
        });
        orders.push_back(std::move(o));
    }
    if (ordered) {
        Solution s;
        if (isTwoLevel(p.kind))
            s.twoLevel = TwoLevelOrder{orders[0], orders[1]};
        else
            s.spine = SpineOrder{orders[0]};
        if (!model.vars.removal.empty()) {
            EdgeRemovalSet r;
            for (size_t e = 0; e < model.vars.removal.size(); ++e)
                if (x.at(model.vars.removal[e])) r.indices.push_back(static_cast<int>(e));
            // At most sigma edges are chosen; any superset keeps the drawing crossing-free.
            for (int e = 0; static_cast<int>(r.indices.size()) < p.parameter && e < p.m(); ++e)
                if (!r.contains(e)) r.indices.push_back(e);
            std::sort(r.indices.begin(), r.indices.end());
            s.removed = r;
        }
        if (!model.vars.page.empty()) {
            PageAssignment pa{std::vector<int>(p.m(), 0), p.parameter};
            bool ok = true;
            for (int e = 0; e < p.m(); ++e) {
                int chosen = -1, count = 0;
                for (int c = 0; c < p.parameter; ++c)
                    if (x.at(model.vars.page[e][c])) chosen = c, ++count;
                if (count != 1) ok = false;
                pa.pages[e] = std::max(chosen, 0);
            }
            if (ok) s.pages = pa;
        }
        if (model.vars.page.empty() || s.pages) rep.solution = s;
    }
    for (size_t i : model.violated(x)) {
        const auto &c = model.constraints[i];
        if (isOrderingTag(c.tag)) continue;
        rep.violations.push_back("constraint " + std::to_string(i) + " (" + c.tag + ")");
    }
    return rep;
}

}  // namespace qgd
