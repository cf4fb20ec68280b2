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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qgd/qgd.hpp"

namespace {

using namespace qgd;

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kInput = 3, kCapacity = 4 };

struct Common {
    std::string problem;
    std::string input;
    int param = 0;
    std::uint64_t seed = 0;
};

void addInstanceOptions(CLI::App *cmd, Common &c, bool inputRequired = true) {
    cmd->add_option("--problem", c.problem, "tlcm | tlkp | tlqp | tls | opcm | bt | bs")->required();
    auto *in = cmd->add_option("--input", c.input, "graph file (text or JSON)");
    if (inputRequired) in->required();
    cmd->add_option("--param", c.param, "crossing budget, per-edge budget, removed edges or pages");
}

ProblemInstance loadInstance(const Common &c) {
    auto kind = parseProblem(c.problem);
    AnyGraph g = loadGraph(c.input);
    if (auto *b = std::get_if<BipartiteGraph>(&g); b && !isTwoLevel(kind)) g = b->asGraph();
    return ProblemInstance::make(kind, std::move(g), c.param);
}

Json instanceJson(const ProblemInstance &p) {
    return Json{{"problem", problemName(p.kind)}, {"param", p.parameter}, {"n", p.n()}, {"m", p.m()}};
}

/// Emits a solution only after it re-verifies against the graph model.
Json verifiedSolution(const ProblemInstance &p, const std::optional<Solution> &s) {
    if (!s) return "none";
    if (!verifySolution(p, *s)) throw std::logic_error("internal error: produced solution does not verify");
    Json j = solutionToJson(p, *s);
    j["verified"] = true;
    return j;
}

void print(const Json &j) { std::cout << j.dump(2) << '\n'; }

// ---- solve ----

struct SolveArgs {
    Common c;
    std::string backend = "brute";
    int shots = 1000;
    bool unknownM = false;
    std::string transitivity = "linear";
    std::string encoding = "ordering";
    int sweeps = 10000;
};

Transitivity parseTransitivity(const std::string &s) {
    if (s == "linear") return Transitivity::linear;
    if (s == "quadratic") return Transitivity::quadratic;
    throw ParseError("unknown transitivity mode: " + s);
}

QuboEncoding parseEncoding(const std::string &s) {
    if (s == "slack") return QuboEncoding::slack;
    if (s == "ordering") return QuboEncoding::ordering;
    throw ParseError("unknown QUBO encoding: " + s);
}

int runSolve(const SolveArgs &a) {
    auto p = loadInstance(a.c);
    Json out{{"instance", instanceJson(p)}, {"backend", a.backend}};
    std::optional<Solution> sol;
    if (a.backend == "brute") {
        auto r = bruteForceSolve(p);
        sol = r.witness;
        out["M"] = r.acceptingCount;
        if (r.optimum) out["optimum"] = *r.optimum;
    } else if (a.backend == "grover") {
        GroverOptions opt;
        opt.shots = a.shots;
        opt.seed = a.c.seed;
        auto r = runGrover(p, opt, !a.unknownM);
        sol = r.solution;
        const auto &o = r.outcome;
        out["ell"] = o.ell;
        out["M"] = o.M ? Json(*o.M) : Json(nullptr);
        out["r"] = o.iterations;
        out["shots"] = o.shots;
        out["successRate"] = o.successRate;
        out["predicted"] = o.predicted ? Json(*o.predicted) : Json(nullptr);
        out["exactSuccess"] = o.exactSuccess;
        out["schedule"] = groverScheduleJson(o);
    } else if (a.backend == "anneal") {
        auto model = buildCbo(p, parseTransitivity(a.transitivity));
        AnnealSchedule sch;
        sch.sweeps = a.sweeps;
        auto r = annealProblem(p, model, sch, a.c.seed, parseEncoding(a.encoding));
        if (r.decoded.solution && satisfies(p, *r.decoded.solution)) sol = r.decoded.solution;
        // Best layout reached, reported even when it misses the budget.
        if (r.decoded.solution && r.decoded.feasible()) out["best"] = solutionToJson(p, *r.decoded.solution);
        out["energy"] = r.anneal.energy;
        out["objectiveValue"] = r.anneal.objectiveValue;
        out["constraintViolations"] = r.anneal.constraintViolations;
        out["violations"] = r.decoded.violations;
        out["wallTime"] = r.anneal.wallTime;
        out["sweeps"] = r.anneal.sweeps;
    } else {
        throw ParseError("unknown backend: " + a.backend);
    }
    out["status"] = sol ? "found" : "none";
    out["solution"] = verifiedSolution(p, sol);
    print(out);
    return kOk;
}

// ---- check ----

struct CheckArgs {
    Common c;
    std::string gamma;
    bool circuit = false;
};

int runCheck(const CheckArgs &a) {
    auto p = loadInstance(a.c);
    const int ell = searchLayout(p).ell();
    if (static_cast<int>(a.gamma.size()) != ell)
        throw ParseError("gamma must have " + std::to_string(ell) + " bits (search register order, bit 0 first)");
    std::vector<std::uint8_t> bits;
    for (char ch : a.gamma) {
        if (ch != '0' && ch != '1') throw ParseError("gamma must be a 0/1 string");
        bits.push_back(ch == '1');
    }
    Json out{{"instance", instanceJson(p)}, {"ell", ell}, {"gamma", a.gamma}, {"predicate", predicate(p, bits)}};
    auto s = decodeGamma(p, bits);
    out["decoded"] = s ? solutionToJson(p, *s) : Json("degenerate");
    if (a.circuit) {
        auto b = buildPhaseInversion(p);
        std::vector<std::uint8_t> full(b.phaseInversion.numQubits(), 0);
        std::copy(bits.begin(), bits.end(), full.begin());
        auto st = runBasis(b.phaseInversion, full);
        out["circuitSign"] = st.sign;
        bool clean = std::equal(st.bits.begin() + ell, st.bits.end(), full.begin() + ell);
        out["ancillasRestored"] = clean;
    }
    print(out);
    return kOk;
}

// ---- formulate ----

struct FormulateArgs {
    Common c;
    std::string transitivity = "linear";
    std::string format = "summary";
    std::string encoding = "slack";
    std::string output;
};

int runFormulate(const FormulateArgs &a) {
    auto p = loadInstance(a.c);
    auto model = buildCbo(p, parseTransitivity(a.transitivity));
    Json out;
    if (a.format == "summary") {
        CboModel lin;
        CompileStats st;
        auto q = compileProblem(model, parseEncoding(a.encoding), &lin, &st);
        out = Json{{"instance", instanceJson(p)},
                   {"transitivity", a.transitivity},
                   {"cbo", cboSummaryJson(model)},
                   {"linearized", cboSummaryJson(lin)},
                   {"qubo", {{"encoding", a.encoding}, {"num_vars", q.numVars}, {"terms", q.Q.size()},
                             {"slack_vars", st.slackVariables}, {"penalty", q.penaltyWeight}}}};
    } else if (a.format == "cbo") {
        out = cboToJson(model);
    } else if (a.format == "linearized") {
        out = cboToJson(linearize(model));
    } else if (a.format == "qubo") {
        out = quboToJson(compileProblem(model, parseEncoding(a.encoding)));
    } else {
        throw ParseError("unknown format: " + a.format);
    }
    if (!a.output.empty()) {
        std::ofstream f(a.output);
        if (!f) throw IoError("cannot write " + a.output);
        f << out.dump() << '\n';
        print(Json{{"written", a.output}});
    } else {
        print(out);
    }
    return kOk;
}

// ---- anneal ----

struct AnnealArgs {
    std::string qubo;
    std::uint64_t seed = 0;
    int sweeps = 10000;
    double decay = 0.95;
    int restarts = 1;
};

int runAnneal(const AnnealArgs &a) {
    Json j;
    try {
        j = Json::parse(readFile(a.qubo));
    } catch (const Json::parse_error &e) {
        throw ParseError(std::string("QUBO JSON: ") + e.what());
    }
    auto q = quboFromJson(j);
    AnnealSchedule sch;
    sch.sweeps = a.sweeps;
    sch.decay = a.decay;
    sch.restarts = a.restarts;
    auto r = SimulatedAnnealer{}.solve(q, sch, a.seed);
    std::string bits;
    for (auto b : r.assignment) bits += b ? '1' : '0';
    print(Json{{"num_vars", q.numVars}, {"assignment", bits}, {"energy", r.energy}, {"wallTime", r.wallTime}, {"sweeps", r.sweeps}});
    return kOk;
}

// ---- estimate ----

struct EstimateArgs {
    Common c;
    std::string component = "detector";
    int n = 0, m = -1, t = 16, sigma = 1;
    std::string netlist;
};

const char *boundFormula(ProblemKind k, int col) {
    static const char *rows[7][3] = {
        {"O(m²)", "O(n²)", "O(m²)"},         {"O(m²)", "O(m log² m)", "O(m)"}, {"O(m⁶)", "O(m⁴)", "O(m²)"},
        {"O(m²)", "O(m)", "O(m)"},           {"O(n⁸)", "O(n⁶)", "O(m²)"},      {"O(n⁸)", "O(n⁶)", "O(m)"},
        {"O(n⁸)", "O(n⁶)", "O(m)"},
    };
    return rows[static_cast<int>(k)][col];
}

/// First m edges of K_{ceil(n/2), floor(n/2)} or K_n, in lexicographic order.
AnyGraph syntheticGraph(ProblemKind kind, int n, int m) {
    if (n < 2 || n > 16) throw CapacityError("estimate supports 2 <= n <= 16");
    AnyGraph g;
    std::vector<Edge> all;
    if (isTwoLevel(kind)) {
        auto b = completeBipartite((n + 1) / 2, n / 2);
        all = b.edges;
        if (m >= 0) {
            if (m > static_cast<int>(all.size())) throw InvalidArgument("m exceeds the complete graph");
            b.edges.resize(m);
        }
        g = b;
    } else {
        auto k = completeGraph(n);
        if (m >= 0) {
            if (m > k.m()) throw InvalidArgument("m exceeds the complete graph");
            k.edges.resize(m);
        }
        g = k;
    }
    return g;
}

int runEstimate(const EstimateArgs &a) {
    Json out;
    Circuit circ;
    if (a.component == "popcount") {
        if (a.t < 2 || a.t > 1024) throw CapacityError("popcount supports 2 <= t <= 1024");
        circ = buildPopcount(a.t);
        out = Json{{"component", "popcount"}, {"t", a.t}, {"adders", popcountAdderCount(circ)}};
    } else if (a.component == "order-transducer") {
        if (a.n < 2 || a.n > 32) throw CapacityError("order transducer supports 2 <= n <= 32");
        circ = buildOrderTransducer(a.n);
        out = Json{{"component", "order-transducer"}, {"n", a.n}, {"ancillas", orderTransducerLayout(circ).ancillas}};
    } else if (a.component == "skewness-transducer") {
        if (a.m < 2 || a.m > 256) throw CapacityError("skewness transducer supports 2 <= m <= 256");
        circ = buildSkewnessTransducer(a.m, a.sigma);
        out = Json{{"component", "skewness-transducer"}, {"m", a.m}, {"sigma", a.sigma}, {"qubits", circ.numQubits()}};
    } else if (a.component == "detector" || a.component == "phase-inversion") {
        auto kind = parseProblem(a.c.problem);
        AnyGraph g = a.c.input.empty() ? syntheticGraph(kind, a.n, a.m) : loadGraph(a.c.input);
        if (auto *b = std::get_if<BipartiteGraph>(&g); b && !isTwoLevel(kind)) g = b->asGraph();
        int param = a.c.param;
        if ((kind == ProblemKind::BT || usesTheta(kind)) && param < 1) param = kind == ProblemKind::BT ? 2 : 1;
        auto p = ProblemInstance::make(kind, g, param);
        if (p.n() > 16 || p.m() > 64) throw CapacityError("estimate supports n <= 16 and m <= 64");
        auto bundle = buildPhaseInversion(p);
        circ = a.component == "detector" ? detectorCircuit(bundle) : bundle.phaseInversion;
        out = Json{{"component", a.component},
                   {"instance", instanceJson(p)},
                   {"ell", bundle.ell},
                   {"formula", {{"complexity", boundFormula(kind, 0)}, {"depth", boundFormula(kind, 1)}, {"width", boundFormula(kind, 2)}}}};
    } else {
        throw ParseError("unknown component: " + a.component);
    }
    out["qubits"] = circ.numQubits();
    out["gates"] = circ.gates().size();
    out["measured"] = metricsToJson(metrics(circ));
    if (!a.netlist.empty()) {
        std::ofstream f(a.netlist);
        if (!f) throw IoError("cannot write " + a.netlist);
        f << toNetlist(circ);
        out["netlist"] = a.netlist;
    }
    print(out);
    return kOk;
}

// ---- experiment ----

struct ExperimentArgs {
    std::vector<int> sizes{6, 8, 10};
    std::vector<int> densities{10, 30, 50};
    int instances = 10;
    int seeds = 1;
    std::uint64_t seed = 0;
    int sweeps = 10000;
    std::string encoding = "ordering";
    std::string csv;
    unsigned threads = 0;
};

int runExperiment(const ExperimentArgs &a) {
    ExperimentConfig cfg;
    cfg.sizes = a.sizes;
    cfg.densities = a.densities;
    cfg.instances = a.instances;
    cfg.seeds = a.seeds;
    cfg.baseSeed = a.seed;
    cfg.schedule.sweeps = a.sweeps;
    cfg.encoding = parseEncoding(a.encoding);
    cfg.threads = a.threads;
    for (int n : cfg.sizes)
        if (n < 1 || n > 16) throw CapacityError("experiment supports 1 <= n <= 16 per layer");
    auto rep = experimentHarness(cfg);
    std::cout << rep.table();
    if (!a.csv.empty()) {
        std::ofstream f(a.csv);
        if (!f) throw IoError("cannot write " + a.csv);
        f << rep.csv();
    } else {
        std::cout << '\n' << rep.csv();
    }
    return kOk;
}

// ---- partition ----

int runPartition(int ground, int k) {
    if (ground < 1 || k < 1 || k > ground) throw InvalidArgument("partition needs 1 <= k <= ground");
    if (ground > 64) throw CapacityError("partition supports ground sets up to 64");
    auto part = partitionKSets(ground, k);
    print(Json{{"ground", ground},
               {"k", k},
               {"classes", part.classes},
               {"classCount", part.classes.size()},
               {"degreeBound", conflictDegreeBound(ground, k)},
               {"classBound", explicitClassBound(ground, k)}});
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qgd: quantum graph drawing oracles, Grover simulation and QUBO tools"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto *s = app.add_subcommand("solve", "search for a layout");
    addInstanceOptions(s, solve.c);
    s->add_option("--backend", solve.backend, "grover | anneal | brute")->check(CLI::IsMember({"grover", "anneal", "brute"}));
    s->add_option("--seed", solve.c.seed, "random seed");
    s->add_option("--shots", solve.shots, "Grover measurement shots");
    s->add_flag("--unknown-m", solve.unknownM, "Grover: use the exponential schedule instead of counting M");
    s->add_option("--transitivity", solve.transitivity, "anneal: linear | quadratic");
    s->add_option("--encoding", solve.encoding, "anneal: ordering | slack");
    s->add_option("--sweeps", solve.sweeps, "anneal: sweeps");

    CheckArgs check;
    auto *ck = app.add_subcommand("check", "evaluate the predicate on a search-register bitstring");
    addInstanceOptions(ck, check.c);
    ck->add_option("--gamma", check.gamma, "bitstring, bit 0 first")->required();
    ck->add_flag("--circuit", check.circuit, "also run the phase-inversion circuit on the basis state");

    FormulateArgs form;
    auto *f = app.add_subcommand("formulate", "emit the CBO / QUBO model");
    addInstanceOptions(f, form.c);
    f->add_option("--transitivity", form.transitivity, "linear | quadratic");
    f->add_option("--format", form.format, "summary | cbo | linearized | qubo");
    f->add_option("--encoding", form.encoding, "slack | ordering");
    f->add_option("--output", form.output, "write JSON here instead of stdout");

    AnnealArgs ann;
    auto *an = app.add_subcommand("anneal", "simulated annealing on a QUBO JSON file");
    an->add_option("--qubo", ann.qubo, "QUBO JSON {num_vars, terms, offset}")->required();
    an->add_option("--seed", ann.seed, "random seed");
    an->add_option("--sweeps", ann.sweeps, "sweeps");
    an->add_option("--decay", ann.decay, "geometric temperature decay");
    an->add_option("--restarts", ann.restarts, "independent restarts");

    EstimateArgs est;
    auto *e = app.add_subcommand("estimate", "circuit resource metrics");
    e->add_option("--component", est.component, "detector | phase-inversion | order-transducer | skewness-transducer | popcount");
    e->add_option("--problem", est.c.problem, "problem (detector / phase-inversion)");
    e->add_option("--input", est.c.input, "graph file; otherwise --n/--m build a complete (bipartite) graph prefix");
    e->add_option("--param", est.c.param, "problem parameter");
    e->add_option("--n", est.n, "vertices");
    e->add_option("--m", est.m, "edges");
    e->add_option("--t", est.t, "popcount inputs");
    e->add_option("--sigma", est.sigma, "removed edges (skewness transducer)");
    e->add_option("--netlist", est.netlist, "write the circuit netlist here");

    ExperimentArgs ex;
    auto *x = app.add_subcommand("experiment", "TLCM annealing experiment, CSV and table");
    x->add_option("--sizes", ex.sizes, "vertices per layer")->delimiter(',');
    x->add_option("--densities", ex.densities, "edge densities in percent")->delimiter(',');
    x->add_option("--instances", ex.instances, "instances per cell");
    x->add_option("--seeds", ex.seeds, "anneal seeds per instance");
    x->add_option("--seed", ex.seed, "base seed");
    x->add_option("--sweeps", ex.sweeps, "anneal sweeps");
    x->add_option("--encoding", ex.encoding, "ordering | slack");
    x->add_option("--csv", ex.csv, "write CSV here");
    x->add_option("--threads", ex.threads, "worker threads (0: all cores)");

    int ground = 0, k = 2;
    auto *pt = app.add_subcommand("partition", "cross-independent partition of k-subsets");
    pt->add_option("--ground", ground, "ground set size")->required();
    pt->add_option("--k", k, "subset size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        int rc = app.exit(err);
        return rc == 0 ? kOk : kUsage;
    }
    try {
        if (*s) return runSolve(solve);
        if (*ck) return runCheck(check);
        if (*f) return runFormulate(form);
        if (*an) return runAnneal(ann);
        if (*e) {
            if ((est.component == "detector" || est.component == "phase-inversion") && est.c.problem.empty())
                throw ParseError("--problem is required for this component");
            return runEstimate(est);
        }
        if (*x) return runExperiment(ex);
        if (*pt) return runPartition(ground, k);
    } catch (const IoError &err) {
        std::cerr << "error: " << err.what() << '\n';
        return kInput;
    } catch (const CapacityError &err) {
        std::cerr << "error: " << err.what() << '\n';
        return kCapacity;
    } catch (const ParseError &err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument &err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << '\n';
        return kOther;
    }
    return kOther;
}
