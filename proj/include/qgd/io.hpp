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

#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qgd/cbo.hpp"
#include "qgd/circuit.hpp"
#include "qgd/grover.hpp"
#include "qgd/metrics.hpp"
#include "qgd/qubo.hpp"

namespace qgd {

using Json = nlohmann::json;

/// Unreadable input file.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string readFile(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/**
 * @brief Graph text format.
 *
 *     # comment
 *     bipartite 2 2        (or: graph 5)
 *     edge 0 2
 *
 * Bipartite V vertices use global labels sizeU..sizeU+sizeV-1.
 */
inline AnyGraph parseGraphText(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::optional<std::pair<int, int>> bip;
    std::optional<int> plain;
    std::vector<Edge> edges;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto fail = [&](const std::string &why) { throw ParseError("line " + std::to_string(lineNo) + ": " + why); };
        auto expectEnd = [&] {
            std::string extra;
            if (ls >> extra) fail("unexpected token '" + extra + "'");
        };
        if (kw == "bipartite" || kw == "graph") {
            if (bip || plain) fail("duplicate header");
            if (kw == "bipartite") {
                int p, q;
                if (!(ls >> p >> q)) fail("expected 'bipartite p q'");
                bip = {p, q};
            } else {
                int n;
                if (!(ls >> n)) fail("expected 'graph n'");
                plain = n;
            }
            expectEnd();
        } else if (kw == "edge") {
            if (!bip && !plain) fail("edge before header");
            int a, b;
            if (!(ls >> a >> b)) fail("expected 'edge u v'");
            expectEnd();
            edges.emplace_back(a, b);
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    try {
        if (bip) return BipartiteGraph::make(bip->first, bip->second, std::move(edges));
        if (plain) return Graph::make(*plain, std::move(edges));
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
    throw ParseError("missing 'bipartite' or 'graph' header");
}

/// {"type": "bipartite", "sizeU": p, "sizeV": q, "edges": [[u, v], ...]} or {"type": "graph", "n": n, ...}.
inline AnyGraph parseGraphJson(const std::string &text) {
    try {
        Json j = Json::parse(text);
        auto edges = j.at("edges").get<std::vector<std::pair<int, int>>>();
        auto type = j.at("type").get<std::string>();
        if (type == "bipartite") return BipartiteGraph::make(j.at("sizeU").get<int>(), j.at("sizeV").get<int>(), edges);
        if (type == "graph") return Graph::make(j.at("n").get<int>(), edges);
        throw ParseError("unknown graph type '" + type + "'");
    } catch (const Json::exception &e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
}

inline AnyGraph parseGraph(const std::string &text) {
    auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{' ? parseGraphJson(text) : parseGraphText(text);
}

inline AnyGraph loadGraph(const std::string &path) { return parseGraph(readFile(path)); }

inline std::string graphToText(const AnyGraph &g) {
    std::ostringstream os;
    if (auto *b = std::get_if<BipartiteGraph>(&g)) {
        os << "bipartite " << b->sizeU << ' ' << b->sizeV << '\n';
        for (auto [u, v] : b->edges) os << "edge " << u << ' ' << v << '\n';
    } else {
        const auto &p = std::get<Graph>(g);
        os << "graph " << p.n << '\n';
        for (auto [u, v] : p.edges) os << "edge " << u << ' ' << v << '\n';
    }
    return os.str();
}

inline Json graphToJson(const AnyGraph &g) {
    if (auto *b = std::get_if<BipartiteGraph>(&g))
        return Json{{"type", "bipartite"}, {"sizeU", b->sizeU}, {"sizeV", b->sizeV}, {"edges", b->edges}};
    const auto &p = std::get<Graph>(g);
    return Json{{"type", "graph"}, {"n", p.n}, {"edges", p.edges}};
}

// ---- circuits ----

inline std::string toNetlist(const Circuit &c) {
    std::ostringstream os;
    os << "qubits " << c.numQubits() << '\n';
    for (const auto &r : c.registers()) os << "register " << r.name << ' ' << r.offset << ' ' << r.size << ' ' << roleName(r.role) << '\n';
    for (const auto &g : c.gates()) {
        switch (g.kind) {
            case GateKind::X: os << "gate X target=" << g.target << '\n'; break;
            case GateKind::H: os << "gate H target=" << g.target << '\n'; break;
            case GateKind::MCX: {
                os << "gate MCX controls=[";
                for (size_t i = 0; i < g.controls.size(); ++i)
                    os << (i ? "," : "") << '(' << g.controls[i].qubit << ',' << (g.controls[i].positive ? '+' : '-') << ')';
                os << "] target=" << g.target << '\n';
                break;
            }
        }
    }
    return os.str();
}

inline Circuit parseNetlist(const std::string &text) {
    static const std::regex gateRe(R"(gate\s+(X|H)\s+target=(\d+)\s*)");
    static const std::regex mcxRe(R"(gate\s+MCX\s+controls=\[([^\]]*)\]\s+target=(\d+)\s*)");
    static const std::regex ctlRe(R"(\((\d+),([+-])\))");
    std::istringstream in(text);
    std::string line;
    Circuit c;
    std::optional<int> declared;
    int lineNo = 0;
    try {
        while (std::getline(in, line)) {
            ++lineNo;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::istringstream ls(line);
            std::string kw;
            ls >> kw;
            std::smatch m;
            if (kw == "qubits") {
                int n;
                if (!(ls >> n)) throw ParseError("expected 'qubits N'");
                declared = n;
            } else if (kw == "register") {
                std::string name, role;
                int offset, size;
                if (!(ls >> name >> offset >> size >> role)) throw ParseError("expected 'register name offset size role'");
                if (offset != c.numQubits()) throw ParseError("register '" + name + "' offset is not contiguous");
                c.addRegister(name, size, parseRole(role));
            } else if (std::regex_match(line, m, gateRe)) {
                int t = std::stoi(m[2]);
                m[1] == "X" ? c.x(t) : c.h(t);
            } else if (std::regex_match(line, m, mcxRe)) {
                std::vector<Control> ctl;
                std::string body = m[1];
                for (std::sregex_iterator it(body.begin(), body.end(), ctlRe), end; it != end; ++it)
                    ctl.push_back({std::stoi((*it)[1]), (*it)[2] == "+"});
                c.mcx(ctl, std::stoi(m[2]));
            } else {
                throw ParseError("unrecognized line");
            }
        }
    } catch (const ParseError &e) {
        throw ParseError("netlist line " + std::to_string(lineNo) + ": " + e.what());
    } catch (const InvalidArgument &e) {
        throw ParseError("netlist line " + std::to_string(lineNo) + ": " + e.what());
    }
    if (declared && *declared != c.numQubits()) throw ParseError("declared qubit count does not match registers");
    return c;
}

inline Json circuitToJson(const Circuit &c) {
    Json regs = Json::array(), gates = Json::array();
    for (const auto &r : c.registers())
        regs.push_back({{"name", r.name}, {"offset", r.offset}, {"size", r.size}, {"role", roleName(r.role)}});
    for (const auto &g : c.gates()) {
        Json j{{"kind", g.kind == GateKind::X ? "X" : g.kind == GateKind::H ? "H" : "MCX"}, {"target", g.target}};
        if (g.kind == GateKind::MCX) {
            Json ctl = Json::array();
            for (const auto &k : g.controls) ctl.push_back({k.qubit, k.positive});
            j["controls"] = ctl;
        }
        gates.push_back(j);
    }
    return Json{{"qubits", c.numQubits()}, {"registers", regs}, {"gates", gates}};
}

inline Json metricsToJson(const ResourceMetrics &m) {
    return Json{{"complexity", m.complexity}, {"depth", m.depth}, {"width", m.width}, {"widthExact", m.widthExact}};
}

// ---- solutions ----

/// Layout fields plus the crossing count of the drawing.
inline Json solutionToJson(const ProblemInstance &p, const Solution &s) {
    Json j;
    if (s.twoLevel) {
        j["orderU"] = s.twoLevel->orderU;
        j["orderV"] = s.twoLevel->orderV;
        j["crossings"] = countCrossings(p.bipartite(), *s.twoLevel);
        if (s.removed) j["crossingsAfterRemoval"] = countCrossings(p.bipartite(), *s.twoLevel, s.removed);
    }
    if (s.spine) {
        j["spine"] = s.spine->order;
        j["crossings"] = countCrossings(p.plain(), *s.spine);
        if (s.removed) j["crossingsAfterRemoval"] = countCrossings(p.plain(), *s.spine, s.removed);
    }
    if (s.pages) j["pages"] = s.pages->pages;
    if (s.removed) {
        j["removed"] = s.removed->indices;
        Json edges = Json::array();
        const auto g = p.plain();
        for (int e : s.removed->indices) edges.push_back(g.edges[e]);
        j["removedEdges"] = edges;
    }
    return j;
}

inline Json quboToJson(const QuboModel &q) {
    Json terms = Json::array();
    for (const auto &[ij, c] : q.Q) terms.push_back({ij.first, ij.second, c});
    return Json{{"num_vars", q.numVars}, {"terms", terms}, {"offset", q.offset}};
}

inline QuboModel quboFromJson(const Json &j) {
    try {
        QuboModel q;
        q.numVars = q.numOriginal = j.at("num_vars").get<int>();
        q.offset = j.at("offset").get<std::int64_t>();
        for (const auto &t : j.at("terms")) {
            int a = t.at(0).get<int>(), b = t.at(1).get<int>();
            if (a < 0 || b < 0 || a >= q.numVars || b >= q.numVars) throw ParseError("QUBO term index out of range");
            q.addTerm(a, b, t.at(2).get<std::int64_t>());
        }
        return q;
    } catch (const Json::exception &e) {
        throw ParseError(std::string("QUBO JSON: ") + e.what());
    }
}

inline Json cboSummaryJson(const CboModel &m) {
    std::map<std::string, int> byTag;
    for (const auto &c : m.constraints) ++byTag[c.tag];
    return Json{{"variables", m.numVariables()},
                {"constraints", m.constraints.size()},
                {"constraintsByTag", byTag},
                {"degree", m.degree()},
                {"objectiveTerms", m.objective.terms().size()},
                {"minimize", m.minimize}};
}

inline Json polynomialToJson(const Polynomial &p) {
    Json terms = Json::array();
    for (const auto &[mono, c] : p.terms()) terms.push_back({{"vars", mono}, {"coeff", c}});
    return terms;
}

inline Json cboToJson(const CboModel &m) {
    Json cons = Json::array();
    for (const auto &c : m.constraints)
        cons.push_back({{"tag", c.tag}, {"lhs", polynomialToJson(c.lhs)}, {"rel", relationName(c.rel)}, {"bound", c.bound}});
    return Json{{"variables", m.names}, {"objective", polynomialToJson(m.objective)}, {"minimize", m.minimize}, {"constraints", cons}};
}

inline Json groverScheduleJson(const GroverOutcome &o) {
    Json s = Json::array();
    for (const auto &st : o.schedule)
        s.push_back({{"guessM", st.guessM}, {"iterations", st.iterations}, {"shots", st.shots}, {"accepted", st.accepted}});
    return s;
}

}  // namespace qgd
