// Copyright 2026 The wigner_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end sampling of the protocol with a possibly fallible agent.
//
// One trial: Alice's qubit is measured in {h, t}; the matching initial
// register is built; a mistake policy picks A_h0 or A_t01 (possibly the one
// keyed to the other outcome); R A is applied; Charlie measures both qubits
// in his {ok, fail} bases.
//
// Trial k draws only from SplitMix64::for_stream(seed, k), so results do not
// depend on how trials are spread over threads.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "wigner_lab/measurement.hpp"
#include "wigner_lab/protocol.hpp"
#include "wigner_lab/rng.hpp"
#include "wigner_lab/synthesis.hpp"

namespace wigner_lab::monte_carlo {

using protocol::AliceOutcome;

/// Rule for choosing which A transform the agent applies.
class MistakePolicy {
   public:
    enum class Kind { AlwaysCorrect, UniformRandom, Alternating, Biased };

    static MistakePolicy always_correct() { return MistakePolicy(Kind::AlwaysCorrect, 0.0); }
    static MistakePolicy uniform_random() { return MistakePolicy(Kind::UniformRandom, 0.5); }
    static MistakePolicy alternating() { return MistakePolicy(Kind::Alternating, 0.0); }

    /// epsilon is the probability of applying the transform that does not
    /// match Alice's outcome.
    static MistakePolicy biased(double epsilon) {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
            throw std::invalid_argument("mistake probability must lie in [0, 1], got " + std::to_string(epsilon));
        }
        return MistakePolicy(Kind::Biased, epsilon);
    }

    /// Accepts correct | uniform | alternating | biased:<eps>.
    static MistakePolicy parse(std::string_view text) {
        if (text == "correct") return always_correct();
        if (text == "uniform") return uniform_random();
        if (text == "alternating") return alternating();
        constexpr std::string_view prefix = "biased:";
        if (text.substr(0, prefix.size()) == prefix) {
            std::string rest(text.substr(prefix.size()));
            std::size_t used = 0;
            double eps = 0;
            try {
                eps = std::stod(rest, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != rest.size()) {
                throw std::invalid_argument("cannot parse mistake probability '" + rest + "'");
            }
            return biased(eps);
        }
        throw std::invalid_argument("unknown policy '" + std::string(text) +
                                    "' (expected correct, uniform, alternating or biased:<eps>)");
    }

    Kind kind() const { return kind_; }

    /// Per-trial mistake probability; empty for Alternating, which has no
    /// i.i.d. per-trial distribution.
    std::optional<double> mistake_probability() const {
        if (kind_ == Kind::Alternating) {
            return std::nullopt;
        }
        return epsilon_;
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::AlwaysCorrect:
                return "correct";
            case Kind::UniformRandom:
                return "uniform";
            case Kind::Alternating:
                return "alternating";
            case Kind::Biased:
                return "biased:" + format_epsilon();
        }
        return "";
    }

    bool operator==(const MistakePolicy &) const = default;

   private:
    MistakePolicy(Kind kind, double epsilon) : kind_(kind), epsilon_(epsilon) {}

    std::string format_epsilon() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", epsilon_);
        return buf;
    }

    Kind kind_;
    double epsilon_;
};

enum class Mode {
    CollapseProtocol,  // Alice measures, mechanism acts, Charlie measures
    AnalyticState,     // Charlie measures psi_AB directly
};

inline std::string_view to_string(Mode m) { return m == Mode::CollapseProtocol ? "collapse" : "analytic"; }

inline Mode parse_mode(std::string_view text) {
    if (text == "collapse") return Mode::CollapseProtocol;
    if (text == "analytic") return Mode::AnalyticState;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected collapse or analytic)");
}

/// Largest accepted trial count; frequencies stay exact in double below it.
inline constexpr std::uint64_t kMaxTrials = std::uint64_t{1} << 53;

struct TrialConfig {
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    MistakePolicy policy = MistakePolicy::always_correct();
    Mode mode = Mode::CollapseProtocol;
    bool record_trace = false;
    unsigned threads = 1;  // 0 means std::thread::hardware_concurrency()
};

enum class ResultantState { AB, ABht, ABth };

inline std::string_view to_string(ResultantState s) {
    switch (s) {
        case ResultantState::AB:
            return "AB";
        case ResultantState::ABht:
            return "ABht";
        case ResultantState::ABth:
            return "ABth";
    }
    return "";
}

inline constexpr std::array<std::string_view, 3> kResultantLabels{"AB", "ABht", "ABth"};
inline constexpr std::array<std::string_view, 4> kCharlieLabels{"ok_ok", "ok_fail", "fail_ok", "fail_fail"};

/// One trial. In AnalyticState mode there is no Alice outcome or transform.
struct ProtocolTrace {
    std::uint64_t trial_index = 0;
    std::optional<AliceOutcome> alice_outcome;
    std::optional<AliceOutcome> applied_transform;  // Heads = A_h0, Tails = A_t01
    ResultantState resultant_state = ResultantState::AB;
    std::array<std::string, 2> charlie_outcome;
    double target_distance = 0;  // ||post-transform state - psi_AB||

    bool operator==(const ProtocolTrace &) const = default;
};

inline std::string_view transform_name(AliceOutcome keyed_to) {
    return keyed_to == AliceOutcome::Heads ? "A_h0" : "A_t01";
}

struct RunResult {
    OutcomeDistribution resultant_states;  // labels kResultantLabels
    OutcomeDistribution charlie;           // labels kCharlieLabels
    std::vector<ProtocolTrace> trace;      // empty unless requested
};

namespace detail {

struct Counters {
    std::array<std::uint64_t, 3> resultant{};
    std::array<std::uint64_t, 4> charlie{};
};

class TrialRunner {
   public:
    explicit TrialRunner(const TrialConfig &config)
        : config_(config),
          chain_{compose(protocol::matrix_R(), protocol::matrix_A(AliceOutcome::Heads)),
                 compose(protocol::matrix_R(), protocol::matrix_A(AliceOutcome::Tails))},
          registers_{protocol::initial_register(AliceOutcome::Heads),
                     protocol::initial_register(AliceOutcome::Tails)},
          alice_qubit_(protocol::alice_first_qubit()),
          alice_basis_(protocol::alice_basis()),
          charlie_(protocol::charlie_bases()),
          target_(protocol::target_state()) {}

    void run(std::uint64_t index, Counters &counters, ProtocolTrace *trace) const {
        auto rng = SplitMix64::for_stream(config_.seed, index);
        ProtocolTrace t;
        t.trial_index = index;

        StateVector state = target_;
        if (config_.mode == Mode::CollapseProtocol) {
            auto alice = measure(alice_qubit_, alice_basis_, rng);
            AliceOutcome outcome = alice.outcome_index == 0 ? AliceOutcome::Heads : AliceOutcome::Tails;
            AliceOutcome keyed = choose_transform(outcome, index, rng);
            state = apply(chain_[keyed == AliceOutcome::Heads ? 0 : 1], registers_[outcome == AliceOutcome::Heads ? 0 : 1]);
            t.alice_outcome = outcome;
            t.applied_transform = keyed;
            if (keyed == outcome) {
                t.resultant_state = ResultantState::AB;
            } else {
                t.resultant_state = outcome == AliceOutcome::Heads ? ResultantState::ABht : ResultantState::ABth;
            }
        }
        t.target_distance = distance(state.amplitudes(), target_.amplitudes());

        auto charlie = measure(state, charlie_, rng);
        t.charlie_outcome = {charlie.labels[0], charlie.labels[1]};

        counters.resultant[static_cast<std::size_t>(t.resultant_state)]++;
        counters.charlie[charlie.outcome_index]++;
        if (trace != nullptr) {
            *trace = std::move(t);
        }
    }

   private:
    AliceOutcome choose_transform(AliceOutcome outcome, std::uint64_t index, SplitMix64 &rng) const {
        if (config_.policy.kind() == MistakePolicy::Kind::Alternating) {
            return index % 2 == 0 ? AliceOutcome::Heads : AliceOutcome::Tails;
        }
        bool mistake = uniform01(rng) < *config_.policy.mistake_probability();
        return mistake ? protocol::opposite(outcome) : outcome;
    }

    TrialConfig config_;
    std::array<SquareUnitary, 2> chain_;  // R A_h0, R A_t01
    std::array<StateVector, 2> registers_;
    StateVector alice_qubit_;
    MeasurementBasis alice_basis_;
    std::array<MeasurementBasis, 2> charlie_;
    StateVector target_;
};

template <std::size_t N>
OutcomeDistribution to_distribution(const std::array<std::string_view, N> &labels,
                                    const std::array<std::uint64_t, N> &counts) {
    return OutcomeDistribution::from_counts(std::vector<std::string>(labels.begin(), labels.end()),
                                            std::vector<std::uint64_t>(counts.begin(), counts.end()));
}

}  // namespace detail

inline RunResult run_trials(const TrialConfig &config) {
    if (config.n_trials > kMaxTrials) {
        throw std::invalid_argument("trial count " + std::to_string(config.n_trials) + " exceeds the limit of 2^53");
    }
    const detail::TrialRunner runner(config);

    RunResult result;
    if (config.record_trace) {
        result.trace.resize(config.n_trials);
    }

    unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(config.n_trials, 1)));

    std::vector<detail::Counters> partial(threads);
    auto work = [&](unsigned worker) {
        std::uint64_t begin = config.n_trials * worker / threads;
        std::uint64_t end = config.n_trials * (worker + 1) / threads;
        for (std::uint64_t k = begin; k < end; k++) {
            runner.run(k, partial[worker], config.record_trace ? &result.trace[k] : nullptr);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; w++) {
            pool.emplace_back(work, w);
        }
    }

    detail::Counters total;
    for (const auto &p : partial) {
        for (std::size_t k = 0; k < total.resultant.size(); k++) total.resultant[k] += p.resultant[k];
        for (std::size_t k = 0; k < total.charlie.size(); k++) total.charlie[k] += p.charlie[k];
    }
    result.resultant_states = detail::to_distribution(kResultantLabels, total.resultant);
    result.charlie = detail::to_distribution(kCharlieLabels, total.charlie);
    return result;
}

/// Closed form over (AB, ABht, ABth): (1 - eps, eps/3, 2 eps/3).
inline OutcomeDistribution analytic_mistake_table(const MistakePolicy &policy) {
    auto eps = policy.mistake_probability();
    if (!eps) {
        throw std::invalid_argument(
            "the alternating policy has no per-trial closed form: its transform sequence is fixed by trial index, "
            "not drawn independently");
    }
    const double p_heads = 1.0 / 3, p_tails = 2.0 / 3;
    return OutcomeDistribution::from_probabilities(std::vector<std::string>(kResultantLabels.begin(), kResultantLabels.end()),
                                                   {1.0 - *eps, *eps * p_heads, *eps * p_tails});
}

/// Analytic Charlie distribution of psi_AB over kCharlieLabels.
inline OutcomeDistribution analytic_charlie_distribution() {
    auto bases = protocol::charlie_bases();
    return born_probabilities(protocol::target_state(), bases);
}

struct LabelCheck {
    std::string label;
    double empirical;
    double expected;
    double sigma;   // sqrt(p (1 - p) / N)
    double bound;   // sigma_bound * sigma
    double margin;  // |empirical - expected|
    bool pass;
};

struct ComparisonReport {
    bool pass;
    std::uint64_t total;
    double sigma_bound;
    std::vector<LabelCheck> checks;
};

inline ComparisonReport compare_distributions(const OutcomeDistribution &empirical, const OutcomeDistribution &analytic,
                                              double sigma_bound) {
    if (empirical.total() == 0) {
        throw std::invalid_argument("cannot compare an empty empirical distribution");
    }
    if (empirical.size() != analytic.size()) {
        throw std::invalid_argument("label sets differ");
    }
    ComparisonReport report{true, empirical.total(), sigma_bound, {}};
    const double n = static_cast<double>(empirical.total());
    for (std::size_t k = 0; k < analytic.size(); k++) {
        const auto &label = analytic.labels()[k];
        auto it = std::find(empirical.labels().begin(), empirical.labels().end(), label);
        if (it == empirical.labels().end()) {
            throw std::invalid_argument("label sets differ: empirical has no '" + label + "'");
        }
        double f = empirical.frequencies()[static_cast<std::size_t>(it - empirical.labels().begin())];
        double p = analytic.frequencies()[k];
        double sigma = std::sqrt(std::max(0.0, p * (1 - p)) / n);
        LabelCheck check{label, f, p, sigma, sigma_bound * sigma, std::abs(f - p), false};
        check.pass = check.margin <= check.bound;
        report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace wigner_lab::monte_carlo
