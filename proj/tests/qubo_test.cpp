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

#include "qgd/anneal.hpp"
#include "qgd/experiment.hpp"
#include "qgd/io.hpp"
#include "support/cbo_checks.hpp"

using namespace qgd;

using namespace qgd::checks;

namespace {

void expectBijection(const ProblemInstance &p, Transitivity t) { EXPECT_EQ(feasibilityBijection(p, t), ""); }
void expectLinearizationSound(const CboModel &m) { EXPECT_EQ(linearizationSound(m), ""); }
void expectPenaltySound(const CboModel &m, QuboEncoding enc) { EXPECT_EQ(penaltySound(m, enc), ""); }

}  // namespace

TEST(CboModel, K22Census) {
    auto p = ProblemInstance::make(ProblemKind::TLCM, completeBipartite(2, 2), 0);
    auto m = buildCbo(p);
    EXPECT_EQ(m.numVariables(), 4);
    for (const char *name : {"u_0_1", "u_1_0", "v_2_3", "v_3_2"}) EXPECT_NO_THROW(m.variable(name)) << name;
    EXPECT_EQ(m.constraints.size(), 2u);
    EXPECT_EQ(m.countTagged("CU"), 1u);
    EXPECT_EQ(m.countTagged("CV"), 1u);
    EXPECT_EQ(m.countTagged("TU") + m.countTagged("TV"), 0u);
    EXPECT_TRUE(m.minimize);
    // e0=(0,2) and e3=(1,3), e1=(0,3) and e2=(1,2) are the only independent pairs.
    const auto &e = p.bipartite().edges;
    EXPECT_EQ(m.objective, detail::chiTwoLevel(m, e[0], e[3]) + detail::chiTwoLevel(m, e[1], e[2]));
    EXPECT_EQ(m.degree(), 2);
}

TEST(CboModel, OrderingVariableAndConstraintCounts) {
    for (int a : {2, 3, 4, 5})
        for (int b : {1, 3, 4}) {
            auto p = ProblemInstance::make(ProblemKind::TLCM, completeBipartite(a, b), 0);
            auto lin = buildCbo(p, Transitivity::linear), quad = buildCbo(p, Transitivity::quadratic);
            EXPECT_EQ(lin.vars.order.size(), static_cast<size_t>(a * (a - 1) + b * (b - 1)));
            EXPECT_EQ(lin.countTagged("CU"), static_cast<size_t>(a * (a - 1) / 2));
            EXPECT_EQ(lin.countTagged("TU"), static_cast<size_t>(2 * a * (a - 1) * (a - 2)));
            EXPECT_EQ(quad.countTagged("TQU"), static_cast<size_t>(a * (a - 1) * (a - 2)));
            EXPECT_EQ(2 * (quad.countTagged("TQU") + quad.countTagged("TQV")), lin.countTagged("TU") + lin.countTagged("TV"));
            if (std::max(a, b) >= 3) EXPECT_LT(quad.constraints.size(), lin.constraints.size());
        }
    auto bt = buildCbo(ProblemInstance::make(ProblemKind::BT, completeGraph(5), 2));
    EXPECT_EQ(bt.vars.order.size(), 20u);
    EXPECT_EQ(bt.countTagged("BC"), 10u);
    EXPECT_EQ(bt.countTagged("CC"), 2u * 15u);  // K5 has 15 independent edge pairs
}

TEST(Linearize, Examples) {
    CboModel m;
    int x1 = m.addVariable("x1"), x2 = m.addVariable("x2"), x3 = m.addVariable("x3");
    auto X1 = Polynomial::var(x1), X2 = Polynomial::var(x2), X3 = Polynomial::var(x3);
    m.constrain(X1 * X2, Relation::le, 0, "A");
    auto l = linearize(m);
    EXPECT_EQ(l.numVariables(), 4);
    EXPECT_EQ(l.countTagged("LIN"), 3u);
    EXPECT_EQ(l.degree(), 1);

    CboModel cubic;
    for (const char *n : {"x1", "x2", "x3"}) cubic.addVariable(n);
    cubic.constrain(X1 * X2 * X3, Relation::le, 0, "A");
    EXPECT_EQ(linearize(cubic).countTagged("LIN"), 4u);

    // Shared monomials get one z; quadratic objective terms stay.
    CboModel shared;
    for (const char *n : {"x1", "x2", "x3"}) shared.addVariable(n);
    shared.minimize = true;
    shared.objective = X1 * X2 + X1 * X2 * X3;
    shared.constrain(X1 * X2 + X3, Relation::le, 1, "A");
    shared.constrain(X1 * X2 - X3, Relation::ge, 0, "B");
    auto s = linearize(shared);
    EXPECT_EQ(s.numVariables(), 5);
    EXPECT_EQ(s.objective.degree(), 2);

    CboModel linear;
    for (const char *n : {"x1", "x2"}) linear.addVariable(n);
    linear.constrain(X1 + X2, Relation::eq, 1, "A");
    auto same = linearize(linear);
    EXPECT_EQ(same.numVariables(), 2);
    EXPECT_EQ(same.constraints.size(), 1u);
}

TEST(Linearize, SoundOnSmallModels) {
    expectLinearizationSound(mixedModel());
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::TLKP, completeBipartite(2, 2), 0)));
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::TLS, completeBipartite(2, 2), 1)));
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::OPCM, completeGraph(4), 0)));
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::OPCM, completeGraph(4), 0), Transitivity::quadratic));
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::TLQP, BipartiteGraph::make(3, 3, {{0, 3}, {1, 4}, {2, 5}}), 0)));
    expectLinearizationSound(buildCbo(ProblemInstance::make(ProblemKind::BT, Graph::make(4, {{0, 2}, {1, 3}}), 1)));
}

TEST(CompileQubo, SquaredEqualityExpansion) {
    CboModel m;
    int a = m.addVariable("a"), b = m.addVariable("b");
    m.constrain(Polynomial::var(a) + Polynomial::var(b), Relation::eq, 1, "E");
    CompileStats st;
    auto q = compileQubo(m, 2, &st);
    EXPECT_EQ(q.numVars, 2);
    EXPECT_EQ(st.slackVariables, 0);
    EXPECT_EQ((q.Q.at({0, 0})), -2);
    EXPECT_EQ((q.Q.at({1, 1})), -2);
    EXPECT_EQ((q.Q.at({0, 1})), 4);
    EXPECT_EQ(q.offset, 2);
    for (int v = 0; v < 4; ++v) {
        auto x = bitsFor(v, 2);
        int s = x[0] + x[1] - 1;
        EXPECT_EQ(q.energy(x), 2 * s * s);
    }
}

TEST(CompileQubo, RedundantAndInfeasibleConstraints) {
    CboModel m;
    int a = m.addVariable("a");
    m.constrain(Polynomial::var(a), Relation::le, 1, "R");
    CompileStats st;
    auto q = compileQubo(m, 5, &st);
    EXPECT_EQ(st.redundantConstraints, 1);
    EXPECT_EQ(st.slackVariables, 0);
    EXPECT_TRUE(q.Q.empty());
    EXPECT_EQ(q.offset, 0);

    CboModel bad;
    int b = bad.addVariable("b");
    bad.constrain(Polynomial::var(b), Relation::ge, 2, "X");
    EXPECT_ANY_THROW(compileQubo(bad, 5));
}

TEST(CompileQubo, SlackSpansExactlyTheGap) {
    // x0+..+x4 <= 2 needs slack range [0, 2]; energy is zero exactly on feasible x for some slack.
    CboModel m;
    Polynomial s;
    for (int i = 0; i < 5; ++i) s += Polynomial::var(m.addVariable("x" + std::to_string(i)));
    m.constrain(s, Relation::le, 2, "K");
    CompileStats st;
    auto q = compileQubo(m, 1, &st);
    EXPECT_EQ(st.slackVariables, 2);
    for (int v = 0; v < 32; ++v) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int sl = 0; sl < 4; ++sl) {
            auto x = bitsFor(v | sl << 5, 7);
            best = std::min(best, q.energy(x));
            EXPECT_GE(q.energy(x), 0);
        }
        EXPECT_EQ(best == 0, std::popcount(static_cast<unsigned>(v)) <= 2) << v;
    }
}

TEST(CompileQubo, FeasibleLayoutsCostOnlyTheObjective) {
    for (auto enc : {QuboEncoding::slack, QuboEncoding::ordering}) {
        auto p = ProblemInstance::make(ProblemKind::TLCM, BipartiteGraph::make(2, 3, {{0, 2}, {0, 4}, {1, 3}, {1, 4}}), 0);
        auto model = buildCbo(p);
        auto q = compileProblem(model, enc);
        EXPECT_GT(q.penaltyWeight, 0);
        for (const auto &s : orders(p)) {
            auto x = encodeLayout(model, p, s);
            Bits y(q.numVars, 0);
            std::copy(x.begin(), x.end(), y.begin());
            // Slack bits minimise separately; take the best completion.
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            const int extra = q.numVars - q.numOriginal;
            if (extra > 16) continue;
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << extra); ++v) {
                for (int k = 0; k < extra; ++k) y[q.numOriginal + k] = v >> k & 1;
                best = std::min(best, q.energy(y));
            }
            EXPECT_EQ(best, countCrossings(p.bipartite(), *s.twoLevel)) << encodingName(enc);
        }
    }
}

TEST(CompileQubo, PenaltySoundness) {
    for (auto enc : {QuboEncoding::slack, QuboEncoding::ordering}) {
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::TLCM, completeBipartite(2, 2), 0)), enc);
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::TLCM, completeBipartite(2, 2), 0), Transitivity::quadratic), enc);
    }
    expectPenaltySound(mixedModel(), QuboEncoding::slack);
    for (auto t : {Transitivity::linear, Transitivity::quadratic}) {
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::TLCM, BipartiteGraph::make(2, 3, {{0, 2}, {0, 4}, {1, 3}, {1, 4}}), 0), t),
                           QuboEncoding::ordering);
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::TLKP, completeBipartite(2, 2), 1), t), QuboEncoding::ordering);
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::OPCM, completeGraph(4), 0), t), QuboEncoding::ordering);
        expectPenaltySound(buildCbo(ProblemInstance::make(ProblemKind::OPCM, cycleGraph(4), 0), t), QuboEncoding::ordering);
    }
}

TEST(CompileQubo, OrderingEncodingPenalisesCycles) {
    auto p = ProblemInstance::make(ProblemKind::OPCM, completeGraph(4), 0);
    auto model = buildCbo(p);
    auto q = compileProblem(model, QuboEncoding::ordering);
    EXPECT_EQ(q.numVars, 12);
    EXPECT_EQ(q.complements.size(), 6u);
    for (std::uint64_t v = 0; v < 4096; ++v) {
        auto y = bitsFor(v, 12);
        auto x = q.originalAssignment(y);
        bool ordered = decodeAssignment(p, model, x).solution.has_value();
        if (ordered)
            EXPECT_EQ(q.energy(y), model.objective.evaluate(x));
        else
            EXPECT_GE(q.energy(y), q.penaltyWeight);
    }
}

TEST(Feasibility, BijectionWithValidLayouts) {
    for (auto t : {Transitivity::linear, Transitivity::quadratic}) {
        expectBijection(ProblemInstance::make(ProblemKind::TLCM, completeBipartite(4, 1), 6), t);
        expectBijection(ProblemInstance::make(ProblemKind::TLCM, completeBipartite(3, 3), 9), t);
        expectBijection(ProblemInstance::make(ProblemKind::TLKP, completeBipartite(2, 2), 0), t);
        expectBijection(ProblemInstance::make(ProblemKind::TLKP, BipartiteGraph::make(3, 2, {{0, 3}, {1, 3}, {1, 4}, {2, 4}}), 1), t);
        expectBijection(ProblemInstance::make(ProblemKind::TLQP, BipartiteGraph::make(3, 3, {{0, 3}, {1, 4}, {2, 5}}), 0), t);
        expectBijection(ProblemInstance::make(ProblemKind::TLS, completeBipartite(2, 2), 1), t);
        expectBijection(ProblemInstance::make(ProblemKind::BS, cycleGraph(4), 1), t);
        expectBijection(ProblemInstance::make(ProblemKind::BT, Graph::make(4, {{0, 2}, {1, 3}}), 1), t);
        expectBijection(ProblemInstance::make(ProblemKind::BT, Graph::make(4, {{0, 2}, {1, 3}, {0, 1}}), 2), t);
    }
    // Without problem constraints the feasible set is all pairs of layer orders.
    auto m = buildCbo(ProblemInstance::make(ProblemKind::TLCM, completeBipartite(3, 3), 9));
    int count = 0;
    for (std::uint64_t v = 0; v < 4096; ++v) count += m.violated(bitsFor(v, 12)).empty();
    EXPECT_EQ(count, 36);
}

TEST(Chi, AgreesWithCrossingPredicates) {
    for (const auto &g : {completeBipartite(2, 3), BipartiteGraph::make(2, 3, {{0, 2}, {0, 4}, {1, 3}, {1, 4}}), completeBipartite(1, 4)}) {
        auto p = ProblemInstance::make(ProblemKind::TLCM, g, 0);
        auto model = buildCbo(p);
        for (const auto &s : orders(p)) {
            auto x = encodeLayout(model, p, s);
            for (int a = 0; a < g.m(); ++a)
                for (int b = a + 1; b < g.m(); ++b) {
                    if (detail::sharesEndpoint(g.edges[a], g.edges[b])) continue;
                    EXPECT_EQ(detail::chiTwoLevel(model, g.edges[a], g.edges[b]).evaluate(x), twoLevelCross(g, *s.twoLevel, a, b) ? 1 : 0);
                }
            EXPECT_EQ(model.objective.evaluate(x), countCrossings(g, *s.twoLevel));
        }
    }
    for (const auto &g : {completeGraph(5), cycleGraph(5), Graph::make(5, {{0, 3}, {1, 4}, {2, 4}, {0, 2}})}) {
        auto p = ProblemInstance::make(ProblemKind::OPCM, g, 0);
        auto model = buildCbo(p);
        for (const auto &s : orders(p)) {
            auto x = encodeLayout(model, p, s);
            for (int a = 0; a < g.m(); ++a)
                for (int b = a + 1; b < g.m(); ++b) {
                    if (detail::sharesEndpoint(g.edges[a], g.edges[b])) continue;
                    EXPECT_EQ(detail::chiBook(model, g.edges[a], g.edges[b]).evaluate(x), bookCross(g, *s.spine, a, b) ? 1 : 0);
                }
            EXPECT_EQ(model.objective.evaluate(x), countCrossings(g, *s.spine));
        }
    }
}

TEST(Decode, Examples) {
    auto p = ProblemInstance::make(ProblemKind::TLCM, completeBipartite(2, 2), 0);
    auto m = buildCbo(p);
    Bits x(4, 0);
    x[m.variable("u_0_1")] = 1;
    x[m.variable("v_3_2")] = 1;
    auto r = decodeAssignment(p, m, x);
    ASSERT_TRUE(r.solution);
    EXPECT_TRUE(r.feasible());
    EXPECT_EQ(r.solution->twoLevel->orderU, (std::vector<int>{0, 1}));
    EXPECT_EQ(r.solution->twoLevel->orderV, (std::vector<int>{3, 2}));

    x[m.variable("u_1_0")] = 1;
    r = decodeAssignment(p, m, x);
    EXPECT_FALSE(r.solution);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations[0].rfind("consistency: ", 0), 0u) << r.violations[0];

    auto op = ProblemInstance::make(ProblemKind::OPCM, Graph::make(3, {{0, 1}, {1, 2}}), 0);
    auto om = buildCbo(op);
    Bits c(6, 0);
    c[om.variable("x_0_1")] = c[om.variable("x_1_2")] = c[om.variable("x_2_0")] = 1;
    auto rc = decodeAssignment(op, om, c);
    EXPECT_FALSE(rc.solution);
    bool sawTransitivity = false;
    for (const auto &v : rc.violations) sawTransitivity |= v.rfind("transitivity: ", 0) == 0;
    EXPECT_TRUE(sawTransitivity);
}

TEST(Decode, RemovalSetIsPadded) {
    auto p = ProblemInstance::make(ProblemKind::TLS, completeBipartite(2, 2), 2);
    auto m = buildCbo(p);
    Solution s;
    s.twoLevel = TwoLevelOrder{{0, 1}, {2, 3}};
    s.removed = EdgeRemovalSet{{1}};
    auto r = decodeAssignment(p, m, encodeLayout(m, p, s));
    ASSERT_TRUE(r.solution);
    EXPECT_TRUE(r.feasible());
    EXPECT_EQ(r.solution->removed->indices.size(), 2u);
    EXPECT_TRUE(verifySolution(p, *r.solution));
}

TEST(Anneal, DiagonalQubo) {
    QuboModel q;
    q.numVars = q.numOriginal = 2;
    q.addTerm(0, 0, 1);
    q.addTerm(1, 1, 1);
    AnnealSchedule sch;
    sch.sweeps = 200;
    auto r = SimulatedAnnealer{}.solve(q, sch, 1);
    EXPECT_EQ(r.assignment, (Bits{0, 0}));
    EXPECT_EQ(r.energy, 0);
    EXPECT_EQ(r.energy, q.energy(r.assignment));
}

TEST(Anneal, SeededRunsRepeat) {
    auto p = ProblemInstance::make(ProblemKind::TLCM, completeBipartite(3, 3), 0);
    auto q = compileProblem(buildCbo(p), QuboEncoding::ordering);
    AnnealSchedule sch;
    sch.sweeps = 500;
    auto a = SimulatedAnnealer{}.solve(q, sch, 9), b = SimulatedAnnealer{}.solve(q, sch, 9);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(a.energy, q.energy(a.assignment));
}

TEST(Anneal, TlcmK22FindsOneCrossing) {
    auto p = ProblemInstance::make(ProblemKind::TLCM, completeBipartite(2, 2), 0);
    for (auto t : {Transitivity::linear, Transitivity::quadratic})
        for (auto enc : {QuboEncoding::slack, QuboEncoding::ordering}) {
            auto r = annealProblem(p, buildCbo(p, t), AnnealSchedule{}, 3, enc);
            ASSERT_TRUE(r.decoded.solution);
            EXPECT_TRUE(r.decoded.feasible());
            EXPECT_EQ(r.anneal.objectiveValue, 1);
            EXPECT_EQ(r.anneal.constraintViolations, 0);
            EXPECT_EQ(countCrossings(p.bipartite(), *r.decoded.solution->twoLevel), 1);
        }
}

TEST(Experiment, SmallRunReportsBothModes) {
    ExperimentConfig cfg;
    cfg.sizes = {4};
    cfg.densities = {50};
    cfg.instances = 2;
    cfg.seeds = 2;
    cfg.schedule.sweeps = 400;
    cfg.threads = 2;
    auto rep = experimentHarness(cfg);
    ASSERT_EQ(rep.rows.size(), 1u);
    ASSERT_EQ(rep.instances.size(), 2u);
    auto csv = rep.csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "n,d,time_linear,constraints_linear,crossings_linear,time_quadratic,constraints_quadratic,crossings_quadratic,optimum,"
              "gap_linear,gap_quadratic");
    for (const auto &ir : rep.instances) {
        if (ir.m == 0) continue;
        EXPECT_LE(ir.quadratic.constraints, ir.linear.constraints);
        ASSERT_TRUE(ir.optimum);
    }
    cfg.threads = 1;
    auto again = experimentHarness(cfg);
    EXPECT_EQ(again.instances[0].linear.perSeed, rep.instances[0].linear.perSeed);
}

TEST(QuboJson, RoundTrip) {
    auto q = compileProblem(buildCbo(ProblemInstance::make(ProblemKind::TLKP, completeBipartite(2, 2), 1)), QuboEncoding::slack);
    auto back = quboFromJson(quboToJson(q));
    EXPECT_EQ(back.numVars, q.numVars);
    EXPECT_EQ(back.Q, q.Q);
    EXPECT_EQ(back.offset, q.offset);
    EXPECT_THROW(quboFromJson(Json{{"num_vars", 2}, {"terms", Json::array({Json::array({0, 5, 1})})}, {"offset", 0}}), ParseError);
    EXPECT_THROW(quboFromJson(Json{{"terms", Json::array()}}), ParseError);
}
