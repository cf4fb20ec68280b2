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
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qgd/brute_force.hpp"
#include "qgd/oracles.hpp"
#include "qgd/simulate.hpp"

namespace qgd {

/// floor((pi/4) sqrt(2^ell / M)).
inline int iterationCount(int ell, std::uint64_t M) {
    if (M == 0) throw InvalidArgument("iteration count needs M >= 1");
    const double N = std::ldexp(1.0, ell);
    if (static_cast<double>(M) > N) throw InvalidArgument("M exceeds 2^ell");
    return static_cast<int>(std::floor(std::numbers::pi / 4 * std::sqrt(N / static_cast<double>(M))));
}

/// sin^2((2r+1) asin(sqrt(M / 2^ell))).
inline double predictedSuccess(int ell, std::uint64_t M, int r) {
    double theta = std::asin(std::sqrt(static_cast<double>(M) / std::ldexp(1.0, ell)));
    double s = std::sin((2 * r + 1) * theta);
    return s * s;
}

/// a <- 2 mean(a) - a.
inline void invertAboutMean(std::vector<double> &a) {
    double sum = 0;
    for (double v : a) sum += v;
    const double twoMean = 2 * sum / static_cast<double>(a.size());
    for (double &v : a) v = twoMean - v;
}

/// Diffusion on `search` as gates, with `phase` holding |->: H, a sign flip of everything but |0...0>, H.
inline void appendDiffusion(Circuit &c, const Qubits &search, int phase) {
    for (int q : search) c.h(q);
    c.x(phase);
    std::vector<Control> ctl;
    for (int q : search) ctl.push_back({q, false});
    c.mcx(ctl, phase);
    for (int q : search) c.h(q);
}

/// Phase inversion marking an explicit set of basis states; registers search (ell), phase.
inline Circuit buildMarkingCircuit(int ell, const std::vector<std::uint64_t> &marked) {
    Circuit c;
    c.addRegister("search", ell, Role::input);
    c.addRegister("phase", 1, Role::phase);
    for (auto gamma : marked) {
        std::vector<Control> ctl;
        for (int b = 0; b < ell; ++b) ctl.push_back({b, ((gamma >> b) & 1) != 0});
        c.mcx(ctl, ell);
    }
    return c;
}

/**
 * @brief Full Grover circuit for the dense backend.
 *
 * Prepares the phase qubit in |->, the first `ell` qubits in uniform superposition, then applies
 * `r` rounds of phase inversion and diffusion.
 */
inline Circuit buildGroverCircuit(const Circuit &phaseInversion, int ell, int r) {
    Circuit c;
    for (const auto &reg : phaseInversion.registers()) c.addRegister(reg.name, reg.size, reg.role);
    const int phase = c.reg("phase").offset;
    Qubits search(ell);
    for (int i = 0; i < ell; ++i) search[i] = i;
    c.x(phase);
    c.h(phase);
    for (int q : search) c.h(q);
    for (int k = 0; k < r; ++k) {
        for (const auto &g : phaseInversion.gates()) c.add(g);
        appendDiffusion(c, search, phase);
    }
    return c;
}

/// Amplitudes of the search register, with every other qubit |0> and the phase qubit |->.
inline std::vector<double> searchAmplitudes(const DenseState &s, int ell, int phaseQubit) {
    std::vector<double> a(std::size_t{1} << ell);
    const std::uint64_t pb = std::uint64_t{1} << phaseQubit;
    for (std::uint64_t g = 0; g < a.size(); ++g)
        a[g] = (s.amplitudes[g] - s.amplitudes[g | pb]).real() / std::sqrt(2.0);
    return a;
}

enum class Backend { hybrid, dense };
enum class HybridStorage { automatic, full, compressed };

struct GroverOptions {
    Backend backend = Backend::hybrid;
    HybridStorage storage = HybridStorage::automatic;
    std::optional<std::uint64_t> knownM;  ///< unset: exponential schedule over guesses of M
    std::optional<int> iterations;        ///< overrides the computed r when M is known
    int shots = 1000;
    int shotsPerStage = 16;
    std::uint64_t seed = 0;
    int fullStorageLimit = 24;
    int compressedLimit = 28;
    int denseCap = kDefaultDenseCap;
};

struct GroverStage {
    std::uint64_t guessM = 0;
    int iterations = 0;
    int shots = 0;
    int accepted = 0;
};

struct GroverOutcome {
    int ell = 0;
    std::optional<std::uint64_t> M;
    int iterations = 0;
    int shots = 0;
    std::vector<std::uint64_t> measured;
    int accepted = 0;
    double successRate = 0;
    double exactSuccess = 0;         ///< sum of squared marked amplitudes (last stage)
    std::optional<double> predicted; ///< closed form, when M is known
    std::optional<std::uint64_t> firstAccepted;
    std::vector<GroverStage> schedule;
    std::vector<double> amplitudes;  ///< final search-register amplitudes (full storage / dense only)
};

/**
 * @brief Amplitude state over the search register.
 *
 * Full storage keeps 2^ell reals. Compressed storage keeps one amplitude for marked and one for
 * unmarked states: starting from the uniform state, phase inversion and diffusion never
 * distinguish states within either class, so this is exact.
 */
class HybridState {
   public:
    HybridState(int ell, const std::vector<char> &marks, bool compressed)
        : ell_(ell), marks_(&marks), compressed_(compressed) {
        N_ = std::ldexp(1.0, ell);
        for (auto m : marks) M_ += m != 0;
        reset();
    }

    void reset() {
        const double u = 1.0 / std::sqrt(N_);
        if (compressed_)
            am_ = au_ = u;
        else
            a_.assign(marks_->size(), u);
    }

    void iterate() {
        if (compressed_) {
            am_ = -am_;
            double twoMean = 2 * (static_cast<double>(M_) * am_ + (N_ - static_cast<double>(M_)) * au_) / N_;
            am_ = twoMean - am_;
            au_ = twoMean - au_;
            return;
        }
        for (size_t g = 0; g < a_.size(); ++g)
            if ((*marks_)[g]) a_[g] = -a_[g];
        invertAboutMean(a_);
    }

    double successProbability() const {
        if (compressed_) return static_cast<double>(M_) * am_ * am_;
        double p = 0;
        for (size_t g = 0; g < a_.size(); ++g)
            if ((*marks_)[g]) p += a_[g] * a_[g];
        return p;
    }

    double norm() const {
        if (compressed_) return std::sqrt(static_cast<double>(M_) * am_ * am_ + (N_ - static_cast<double>(M_)) * au_ * au_);
        double s = 0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    const std::vector<double> &amplitudes() const { return a_; }

    std::vector<std::uint64_t> sample(int shots, std::mt19937_64 &rng) const {
        std::vector<std::uint64_t> out;
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        if (!compressed_) {
            std::vector<double> cdf(a_.size());
            double acc = 0;
            for (size_t g = 0; g < a_.size(); ++g) cdf[g] = acc += a_[g] * a_[g];
            for (int s = 0; s < shots; ++s) {
                double u = uni(rng) * acc;
                auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                out.push_back(std::min<std::uint64_t>(it - cdf.begin(), cdf.size() - 1));
            }
            return out;
        }
        std::vector<std::uint64_t> marked;
        for (size_t g = 0; g < marks_->size(); ++g)
            if ((*marks_)[g]) marked.push_back(g);
        const double pm = successProbability();
        std::uniform_int_distribution<std::uint64_t> any(0, marks_->size() - 1);
        for (int s = 0; s < shots; ++s) {
            if (!marked.empty() && (uni(rng) < pm || marked.size() == marks_->size())) {
                std::uniform_int_distribution<size_t> pick(0, marked.size() - 1);
                out.push_back(marked[pick(rng)]);
            } else {
                std::uint64_t g;
                do g = any(rng);
                while ((*marks_)[g]);
                out.push_back(g);
            }
        }
        return out;
    }

   private:
    int ell_;
    const std::vector<char> *marks_;
    bool compressed_;
    double N_ = 0;
    std::uint64_t M_ = 0;
    double am_ = 0, au_ = 0;
    std::vector<double> a_;
};

/// Marks of every basis state of an ell-bit search register.
inline std::vector<char> markTable(int ell, const std::function<bool(std::uint64_t)> &accept) {
    std::vector<char> marks(std::size_t{1} << ell);
    for (std::uint64_t g = 0; g < marks.size(); ++g) marks[g] = accept(g);
    return marks;
}

/// Marks read from the phase-inversion circuit by classical simulation of every basis input.
inline std::vector<char> markTableFromCircuit(const Circuit &phaseInversion, int ell) {
    BasisRunner run(phaseInversion);
    std::vector<char> marks(std::size_t{1} << ell);
    std::vector<std::uint8_t> bits(phaseInversion.numQubits());
    for (std::uint64_t g = 0; g < marks.size(); ++g) {
        std::fill(bits.begin(), bits.end(), 0);
        for (int b = 0; b < ell; ++b) bits[b] = (g >> b) & 1;
        int sign = 1;
        run.apply(bits, sign);
        marks[g] = sign < 0;
    }
    return marks;
}

/// Grover search over `marks` with the hybrid backend.
inline GroverOutcome runHybrid(int ell, const std::vector<char> &marks, const GroverOptions &opt) {
    if (ell > opt.compressedLimit) throw CapacityError("search register too wide for the hybrid backend");
    bool compressed = opt.storage == HybridStorage::compressed ||
                      (opt.storage == HybridStorage::automatic && ell > opt.fullStorageLimit);
    if (!compressed && ell > opt.fullStorageLimit) throw CapacityError("search register too wide for full storage");
    GroverOutcome out;
    out.ell = ell;
    std::mt19937_64 rng(opt.seed);
    HybridState st(ell, marks, compressed);
    auto record = [&](const std::vector<std::uint64_t> &shots, GroverStage &stage) {
        for (auto g : shots) {
            out.measured.push_back(g);
            if (marks[g]) {
                ++stage.accepted;
                if (!out.firstAccepted) out.firstAccepted = g;
            }
        }
        stage.shots = static_cast<int>(shots.size());
        out.accepted += stage.accepted;
        out.shots += stage.shots;
        out.schedule.push_back(stage);
    };
    if (opt.knownM) {
        out.M = opt.knownM;
        int r = opt.iterations ? *opt.iterations : (*opt.knownM ? iterationCount(ell, *opt.knownM) : 0);
        out.iterations = r;
        for (int k = 0; k < r; ++k) st.iterate();
        out.exactSuccess = st.successProbability();
        if (*opt.knownM) out.predicted = predictedSuccess(ell, *opt.knownM, r);
        GroverStage stage{*opt.knownM, r, 0, 0};
        record(st.sample(opt.shots, rng), stage);
    } else {
        for (int e = ell; e >= 0; --e) {
            std::uint64_t guess = std::uint64_t{1} << e;
            int r = iterationCount(ell, guess);
            st.reset();
            for (int k = 0; k < r; ++k) st.iterate();
            out.iterations = r;
            out.exactSuccess = st.successProbability();
            GroverStage stage{guess, r, 0, 0};
            record(st.sample(opt.shotsPerStage, rng), stage);
            if (stage.accepted) break;
        }
    }
    if (!compressed) out.amplitudes = st.amplitudes();
    out.successRate = out.shots ? static_cast<double>(out.accepted) / out.shots : 0.0;
    return out;
}

/// Grover search simulated gate by gate on the full register.
inline GroverOutcome runDenseGrover(const Circuit &phaseInversion, int ell, std::uint64_t M, const GroverOptions &opt) {
    if (phaseInversion.numQubits() > opt.denseCap) throw CapacityError("dense Grover exceeds the qubit cap");
    int r = opt.iterations ? *opt.iterations : iterationCount(ell, M);
    auto circ = buildGroverCircuit(phaseInversion, ell, r);
    auto state = runDense(circ, DenseState::basis(circ.numQubits(), 0), opt.denseCap);
    GroverOutcome out;
    out.ell = ell;
    out.M = M;
    out.iterations = r;
    out.amplitudes = searchAmplitudes(state, ell, circ.reg("phase").offset);
    out.predicted = predictedSuccess(ell, M, r);
    auto marks = markTableFromCircuit(phaseInversion, ell);
    for (size_t g = 0; g < marks.size(); ++g)
        if (marks[g]) out.exactSuccess += out.amplitudes[g] * out.amplitudes[g];
    std::mt19937_64 rng(opt.seed);
    std::vector<double> probs(out.amplitudes.size());
    for (size_t g = 0; g < probs.size(); ++g) probs[g] = out.amplitudes[g] * out.amplitudes[g];
    std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
    for (int s = 0; s < opt.shots; ++s) {
        auto g = dist(rng);
        out.measured.push_back(g);
        if (marks[g]) {
            ++out.accepted;
            if (!out.firstAccepted) out.firstAccepted = g;
        }
    }
    out.shots = opt.shots;
    out.successRate = out.shots ? static_cast<double>(out.accepted) / out.shots : 0.0;
    out.schedule.push_back(GroverStage{M, r, out.shots, out.accepted});
    return out;
}

/// Predicate over integer-encoded gamma that rejects non-permutation phi blocks without allocating.
class FastPredicate {
   public:
    explicit FastPredicate(ProblemInstance p) : p_(std::move(p)), lay_(searchLayout(p_)) {}

    bool operator()(std::uint64_t gamma) const {
        const std::uint64_t mask = (std::uint64_t{1} << lay_.phiWidth) - 1;
        std::uint64_t seen = 0;
        for (int i = 0; i < lay_.n; ++i) {
            std::uint64_t v = (gamma >> (i * lay_.phiWidth)) & mask;
            if (v >= static_cast<std::uint64_t>(lay_.n) || (seen >> v & 1)) return false;
            seen |= std::uint64_t{1} << v;
        }
        return predicate(p_, bitsOf(gamma, lay_.ell()));
    }

    const ProblemInstance &instance() const { return p_; }
    int ell() const { return lay_.ell(); }

   private:
    ProblemInstance p_;
    SearchLayout lay_;
};

struct InstanceGroverResult {
    GroverOutcome outcome;
    std::optional<Solution> solution;  ///< decoded from the first accepted shot and re-verified
};

/**
 * @brief End-to-end Grover search on a problem instance (hybrid backend).
 *
 * When `opt.knownM` is unset and `useBruteForceM` is true, M comes from the brute-force counter if
 * the instance is within its guard; otherwise the exponential schedule runs.
 */
inline InstanceGroverResult runGrover(const ProblemInstance &p, GroverOptions opt, bool useBruteForceM = true) {
    FastPredicate pred(p);
    const int ell = pred.ell();
    if (!opt.knownM && useBruteForceM) {
        try {
            opt.knownM = bruteForceSolve(p).acceptingCount;
            if (*opt.knownM == 0) opt.knownM.reset();
        } catch (const CapacityError &) {
        }
    }
    InstanceGroverResult res;
    if (opt.backend == Backend::dense) {
        auto bundle = buildPhaseInversion(p);
        if (!opt.knownM) throw InvalidArgument("dense backend needs a known M");
        res.outcome = runDenseGrover(bundle.phaseInversion, ell, *opt.knownM, opt);
    } else {
        if (ell > opt.compressedLimit) throw CapacityError("search register too wide for the hybrid backend");
        auto marks = markTable(ell, [&](std::uint64_t g) { return pred(g); });
        res.outcome = runHybrid(ell, marks, opt);
    }
    if (res.outcome.firstAccepted) {
        auto s = decodeGamma(p, bitsOf(*res.outcome.firstAccepted, ell));
        if (s && verifySolution(p, *s)) res.solution = s;
    }
    return res;
}

}  // namespace qgd
