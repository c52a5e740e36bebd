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

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wigner_lab/wigner_lab.hpp"

namespace wigner_lab::cli {

namespace {

/// Bad input from the user; maps to kExitUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, OutputFormat> kFormats{
    {"pretty", OutputFormat::PrettyTable}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};

std::string fixed4(double x) {
    if (std::abs(x) < 5e-5) {
        x = 0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

std::string fixed4(Amplitude a) {
    if (std::abs(a.imag()) < 5e-5) {
        return fixed4(a.real());
    }
    std::string im = fixed4(std::abs(a.imag()));
    return fixed4(a.real()) + (a.imag() < 0 ? " - " : " + ") + im + "i";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string lpad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    out << text;
}

Json parse_json_file(const std::string &path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::exception &e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Registry key, or otherwise a path to a state JSON file. No normalization
/// check here; callers apply their own tolerance.
std::vector<Amplitude> resolve_amplitudes(const std::string &input) {
    if (auto s = protocol::lookup_state(input)) {
        return {s->amplitudes().begin(), s->amplitudes().end()};
    }
    if (protocol::lookup_matrix(input)) {
        throw UsageError("'" + input + "' names a matrix, not a state");
    }
    std::ifstream probe(input);
    if (!probe) {
        std::string keys;
        for (auto k : protocol::kStateKeys) {
            keys += (keys.empty() ? "" : ", ") + std::string(k);
        }
        throw UsageError("unknown state '" + input + "' (registry keys: " + keys + "; or a state JSON file)");
    }
    try {
        return amplitudes_from_json(parse_json_file(input));
    } catch (const std::invalid_argument &e) {
        throw UsageError(input + ": " + e.what());
    }
}

StateVector resolve_state(const std::string &input) {
    auto amps = resolve_amplitudes(input);
    try {
        return StateVector(std::move(amps));
    } catch (const std::invalid_argument &e) {
        throw UsageError(input + ": " + e.what());
    }
}

void require_two_qubits(const StateVector &v, const std::string &what) {
    if (v.num_qubits() != 2) {
        throw UsageError(what + " needs a 2-qubit state, got " + std::to_string(v.num_qubits()) + " qubit(s)");
    }
}

Json amplitude_json(Amplitude a) { return amplitude_to_json(a); }

// ---------------------------------------------------------------- states

struct StatesOptions {
    std::string input;
    std::string basis;
    std::string frame;
};

struct View {
    std::string name;
    bool is_frame;
    ExpansionCoefficients coeffs;
};

View compute_view(const StateVector &v, const StatesOptions &opt) {
    if (!opt.basis.empty() && !opt.frame.empty()) {
        throw UsageError("--basis and --frame are mutually exclusive");
    }
    if (!opt.frame.empty()) {
        require_two_qubits(v, "a frame view");
        if (opt.frame == "bs") return {"frame:bs", true, protocol::frame_views(v, protocol::FrameView::BS)};
        if (opt.frame == "as") return {"frame:as", true, protocol::frame_views(v, protocol::FrameView::AS)};
        throw UsageError("unknown frame '" + opt.frame + "' (expected bs or as)");
    }
    std::string basis = opt.basis.empty() ? "computational" : opt.basis;
    std::vector<MeasurementBasis> bases;
    if (basis == "computational") {
        bases.assign(v.num_qubits(), MeasurementBasis::computational(2));
    } else if (basis == "charlie") {
        bases.assign(v.num_qubits(), protocol::charlie_basis(protocol::Party::A));
    } else if (basis == "alice-bob") {
        require_two_qubits(v, "the alice-bob basis");
        bases = {protocol::alice_basis(), protocol::bob_basis()};
    } else if (basis == "bs") {
        require_two_qubits(v, "the bs basis");
        bases = {protocol::charlie_basis(protocol::Party::A), protocol::bob_basis()};
    } else if (basis == "as") {
        require_two_qubits(v, "the as basis");
        bases = {protocol::alice_basis(), protocol::charlie_basis(protocol::Party::B)};
    } else {
        throw UsageError("unknown basis '" + basis + "' (expected computational, alice-bob, charlie, bs or as)");
    }
    return {"basis:" + basis, false, change_basis(v, bases)};
}

int cmd_states(const StatesOptions &opt, OutputFormat format, std::ostream &out) {
    StateVector v = resolve_state(opt.input);
    View view = compute_view(v, opt);
    const auto &c = view.coeffs;
    double physical = v.physical_norm_squared();

    switch (format) {
        case OutputFormat::Json: {
            Json coeffs = Json::object();
            for (std::size_t k = 0; k < c.size(); k++) {
                coeffs[c.labels()[k]] = amplitude_json(c[k]);
            }
            Json j = state_to_json(v);
            j.update(Json{{"state", opt.input},
                   {"view", view.name},
                   {"coefficients", std::move(coeffs)},
                   {"physical_norm", physical},
                   {"naive_norm", c.naive_norm()}});
            out << dump_json(j) << "\n";
            break;
        }
        case OutputFormat::Csv:
            out << "label,re,im\n";
            for (std::size_t k = 0; k < c.size(); k++) {
                out << c.labels()[k] << "," << format_double(c[k].real()) << "," << format_double(c[k].imag())
                    << "\n";
            }
            out << "physical_norm," << format_double(physical) << ",0\n";
            out << "naive_norm," << format_double(c.naive_norm()) << ",0\n";
            break;
        case OutputFormat::PrettyTable: {
            out << opt.input << " in " << view.name << "\n";
            std::size_t w = 5;
            for (const auto &l : c.labels()) w = std::max(w, l.size());
            out << "  " << pad("label", w) << "  coefficient\n";
            for (std::size_t k = 0; k < c.size(); k++) {
                out << "  " << pad(c.labels()[k], w) << "  " << lpad(fixed4(c[k]), 11) << "\n";
            }
            out << "  physical norm  <psi|psi> = " << fixed4(physical) << "\n";
            out << "  naive norm     sum |c|^2 = " << fixed4(c.naive_norm());
            if (view.is_frame) {
                out << "  (non-orthogonal frame)";
            }
            out << "\n";
            break;
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    double value;
    bool pass;
};

std::vector<Check> constant_checks(double tol) {
    using protocol::AliceOutcome;
    std::vector<Check> checks;
    for (auto key : protocol::kMatrixKeys) {
        double dev = is_unitary(protocol::lookup_matrix(key)->matrix(), tol).max_deviation;
        checks.push_back({"unitary:" + std::string(key), dev, dev <= tol});
    }
    const StateVector target = protocol::target_state();
    for (auto o : {AliceOutcome::Heads, AliceOutcome::Tails}) {
        auto image = apply(protocol::matrix_R(), apply(protocol::matrix_A(o), protocol::initial_register(o)));
        double d = distance(image.amplitudes(), target.amplitudes());
        std::string name = o == AliceOutcome::Heads ? "converge:R*A_h0*psi_h0" : "converge:R*A_t01*psi_t01";
        checks.push_back({name, d, d <= tol});
    }
    auto coeffs = change_basis(target, protocol::charlie_bases());
    const double s = std::sqrt(1.0 / 12);
    const std::vector<Amplitude> expected{s, -s, s, std::sqrt(9.0 / 12)};
    double d = max_abs_diff(coeffs.coefficients(), expected);
    checks.push_back({"charlie-coefficients:psi_AB", d, d <= tol});
    double p = std::norm(coeffs.at("ok_ok"));
    checks.push_back({"p(ok,ok)=1/12", std::abs(p - 1.0 / 12), std::abs(p - 1.0 / 12) <= tol});
    return checks;
}

int cmd_verify(double tol, OutputFormat format, std::ostream &out) {
    if (!(tol >= 0)) {
        throw UsageError("--tol must be non-negative");
    }
    auto checks = constant_checks(tol);
    bool all = std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
    switch (format) {
        case OutputFormat::Json: {
            Json arr = Json::array();
            for (const auto &c : checks) {
                arr.push_back(Json{{"name", c.name}, {"value", c.value}, {"pass", c.pass}});
            }
            out << dump_json(Json{{"tol", tol}, {"checks", std::move(arr)}, {"pass", all}}) << "\n";
            break;
        }
        case OutputFormat::Csv:
            out << "name,value,tol,pass\n";
            for (const auto &c : checks) {
                out << c.name << "," << format_double(c.value) << "," << format_double(tol) << ","
                    << (c.pass ? "true" : "false") << "\n";
            }
            break;
        case OutputFormat::PrettyTable: {
            char tolbuf[32];
            std::snprintf(tolbuf, sizeof(tolbuf), "%.3g", tol);
            out << "constant verification at tol " << tolbuf << "\n";
            for (const auto &c : checks) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.3e", c.value);
                out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << pad(c.name, 30) << "  " << buf << "\n";
            }
            out << (all ? "all checks passed" : "verification FAILED") << "\n";
            break;
        }
    }
    return all ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- audit

int cmd_audit(const std::string &input, double tol, OutputFormat format, std::ostream &out) {
    StateVector v = resolve_state(input);
    require_two_qubits(v, "the paradox audit");
    if (!(tol >= 0)) {
        throw UsageError("--tol must be non-negative");
    }
    auto r = protocol::paradox_audit(v, tol);
    switch (format) {
        case OutputFormat::Json:
            out << dump_json(Json{{"state", input},
                                  {"tol", tol},
                                  {"amp_h1", amplitude_json(r.amp_h1)},
                                  {"amp_0okA", amplitude_json(r.amp_0okA)},
                                  {"amp_tokB", amplitude_json(r.amp_tokB)},
                                  {"p_okok", r.p_okok},
                                  {"contradiction", r.contradiction_flag}})
                << "\n";
            break;
        case OutputFormat::Csv:
            out << "quantity,re,im\n";
            out << "amp_h1," << format_double(r.amp_h1.real()) << "," << format_double(r.amp_h1.imag()) << "\n";
            out << "amp_0okA," << format_double(r.amp_0okA.real()) << "," << format_double(r.amp_0okA.imag())
                << "\n";
            out << "amp_tokB," << format_double(r.amp_tokB.real()) << "," << format_double(r.amp_tokB.imag())
                << "\n";
            out << "p_okok," << format_double(r.p_okok) << ",0\n";
            out << "contradiction," << (r.contradiction_flag ? 1 : 0) << ",0\n";
            break;
        case OutputFormat::PrettyTable:
            out << "paradox audit of " << input << "\n";
            out << "  <h 1|psi>                  " << lpad(fixed4(r.amp_h1), 8) << "\n";
            out << "  |0>|ok>_A coefficient      " << lpad(fixed4(r.amp_0okA), 8) << "\n";
            out << "  |t>|ok>_B coefficient      " << lpad(fixed4(r.amp_tokB), 8) << "\n";
            {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.5f", r.p_okok);
                out << "  P(ok_A, ok_B)              " << lpad(buf, 8) << "\n";
            }
            out << "  contradiction              " << (r.contradiction_flag ? "true" : "false") << "\n";
            break;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- synth

constexpr double kSynthInputTol = 1e-8;

int cmd_synth(const std::string &input, bool to_e0, bool from_e0, const std::string &out_path, OutputFormat format,
              std::ostream &out) {
    if (to_e0 == from_e0) {
        throw UsageError("give exactly one of --to-e0 or --from-e0");
    }
    auto amps = resolve_amplitudes(input);
    double norm = std::sqrt(squared_norm(amps));
    if (!std::isfinite(norm) || std::abs(norm - 1) > kSynthInputTol) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", norm);
        throw UsageError("input is not a unit vector: measured norm " + std::string(buf));
    }
    for (auto &a : amps) {
        a /= norm;
    }
    SynthesisResult r = to_e0 ? synthesize_to_e0(amps) : synthesize_from_e0(amps);
    const char *direction = to_e0 ? "to-e0" : "from-e0";
    Json matrix = matrix_to_json(r.matrix.matrix());
    if (!out_path.empty()) {
        write_file(out_path, dump_json(matrix) + "\n");
    }
    double dev = is_unitary(r.matrix.matrix(), 1.0).max_deviation;
    switch (format) {
        case OutputFormat::Json: {
            Json j{{"input", input}, {"direction", direction}, {"residual", r.residual}, {"unitarity_deviation", dev}};
            if (out_path.empty()) {
                j["matrix"] = matrix;
            } else {
                j["out"] = out_path;
            }
            out << dump_json(j) << "\n";
            break;
        }
        case OutputFormat::Csv:
            out << "row,col,re,im\n";
            for (std::size_t i = 0; i < r.matrix.dim(); i++) {
                for (std::size_t k = 0; k < r.matrix.dim(); k++) {
                    out << i << "," << k << "," << format_double(r.matrix(i, k).real()) << ","
                        << format_double(r.matrix(i, k).imag()) << "\n";
                }
            }
            break;
        case OutputFormat::PrettyTable: {
            char buf[64];
            out << "synthesized " << direction << " unitary for " << input << " (dim " << r.matrix.dim() << ")\n";
            for (std::size_t i = 0; i < r.matrix.dim(); i++) {
                out << "  ";
                for (std::size_t k = 0; k < r.matrix.dim(); k++) {
                    out << lpad(fixed4(r.matrix(i, k)), 9) << (k + 1 < r.matrix.dim() ? " " : "");
                }
                out << "\n";
            }
            std::snprintf(buf, sizeof(buf), "%.3e", r.residual);
            out << "  residual             " << buf << "\n";
            std::snprintf(buf, sizeof(buf), "%.3e", dev);
            out << "  unitarity deviation  " << buf << "\n";
            if (!out_path.empty()) {
                out << "  written to " << out_path << "\n";
            }
            break;
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::string policy = "correct";
    std::string mode = "collapse";
    std::string trace_path;
    bool check = false;
    unsigned threads = 1;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("WIGNER_LAB_SEED"); env != nullptr && *env != '\0') {
        std::string text(env);
        if (text.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("WIGNER_LAB_SEED must be an unsigned integer, got '" + text + "'");
        }
        try {
            return std::stoull(text);
        } catch (const std::exception &) {
            throw UsageError("WIGNER_LAB_SEED out of range: '" + text + "'");
        }
    }
    return 0;
}

Json distribution_json(const OutcomeDistribution &d) {
    Json j = Json::object();
    for (std::size_t k = 0; k < d.size(); k++) {
        j[d.labels()[k]] = Json{{"count", d.counts()[k]}, {"freq", d.frequencies()[k]}};
    }
    return j;
}

Json report_json(const monte_carlo::ComparisonReport &r) {
    Json labels = Json::object();
    for (const auto &c : r.checks) {
        labels[c.label] = Json{{"empirical", c.empirical}, {"expected", c.expected}, {"margin", c.margin},
                               {"bound", c.bound},         {"pass", c.pass}};
    }
    return Json{{"pass", r.pass}, {"labels", std::move(labels)}};
}

/// Analytic Charlie distribution for a policy with a closed form: the mixture
/// of Born distributions of AB, ABht and ABth weighted by the mistake table.
OutcomeDistribution analytic_charlie(const OutcomeDistribution &table) {
    auto bases = protocol::charlie_bases();
    std::vector<StateVector> states{protocol::target_state(), protocol::wrong_state(protocol::WrongStateLabel::ABht),
                                    protocol::wrong_state(protocol::WrongStateLabel::ABth)};
    std::vector<double> probs(monte_carlo::kCharlieLabels.size(), 0.0);
    for (std::size_t s = 0; s < states.size(); s++) {
        auto born = born_probabilities(states[s], bases);
        for (std::size_t k = 0; k < probs.size(); k++) {
            probs[k] += table.frequencies()[s] * born.frequencies()[k];
        }
    }
    return OutcomeDistribution::from_probabilities(
        std::vector<std::string>(monte_carlo::kCharlieLabels.begin(), monte_carlo::kCharlieLabels.end()),
        std::move(probs));
}

void write_trace_csv(const std::string &path, const std::vector<monte_carlo::ProtocolTrace> &trace) {
    std::ostringstream ss;
    ss << "trial,alice_outcome,transform,state,charlie_a,charlie_b\n";
    for (const auto &t : trace) {
        ss << t.trial_index << "," << (t.alice_outcome ? protocol::to_string(*t.alice_outcome) : "") << ","
           << (t.applied_transform ? monte_carlo::transform_name(*t.applied_transform) : "") << ","
           << monte_carlo::to_string(t.resultant_state) << "," << t.charlie_outcome[0] << "," << t.charlie_outcome[1]
           << "\n";
    }
    write_file(path, ss.str());
}

int cmd_simulate(const SimulateOptions &opt, OutputFormat format, std::ostream &out) {
    monte_carlo::TrialConfig config;
    try {
        config.policy = monte_carlo::MistakePolicy::parse(opt.policy);
        config.mode = monte_carlo::parse_mode(opt.mode);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (opt.trials > monte_carlo::kMaxTrials) {
        throw UsageError("--trials exceeds the limit of 2^53");
    }
    config.n_trials = opt.trials;
    config.seed = resolve_seed(opt.seed);
    config.record_trace = !opt.trace_path.empty();
    config.threads = opt.threads;

    std::optional<OutcomeDistribution> expected_states;
    if (opt.check) {
        if (config.n_trials == 0) {
            throw UsageError("--check needs at least one trial");
        }
        if (config.mode == monte_carlo::Mode::AnalyticState) {
            expected_states = monte_carlo::analytic_mistake_table(monte_carlo::MistakePolicy::always_correct());
        } else if (!config.policy.mistake_probability()) {
            throw UsageError("--check is unavailable for the alternating policy: it has no closed-form distribution");
        } else {
            expected_states = monte_carlo::analytic_mistake_table(config.policy);
        }
    }

    auto result = monte_carlo::run_trials(config);
    if (config.record_trace) {
        write_trace_csv(opt.trace_path, result.trace);
    }

    std::optional<monte_carlo::ComparisonReport> state_check, charlie_check;
    if (expected_states) {
        constexpr double kSigmaBound = 4.0;
        state_check = monte_carlo::compare_distributions(result.resultant_states, *expected_states, kSigmaBound);
        charlie_check =
            monte_carlo::compare_distributions(result.charlie, analytic_charlie(*expected_states), kSigmaBound);
    }
    bool pass = !state_check || (state_check->pass && charlie_check->pass);

    switch (format) {
        case OutputFormat::Json: {
            Json j{{"config",
                    Json{{"trials", config.n_trials},
                         {"seed", config.seed},
                         {"policy", config.policy.to_string()},
                         {"mode", std::string(monte_carlo::to_string(config.mode))}}},
                   {"resultant_states", distribution_json(result.resultant_states)},
                   {"charlie", distribution_json(result.charlie)},
                   {"seed", config.seed}};
            if (state_check) {
                j["check"] = Json{{"sigma_bound", state_check->sigma_bound},
                                  {"resultant_states", report_json(*state_check)},
                                  {"charlie", report_json(*charlie_check)},
                                  {"pass", pass}};
            }
            out << dump_json(j) << "\n";
            break;
        }
        case OutputFormat::Csv: {
            out << "group,label,count,freq\n";
            auto rows = [&](const char *group, const OutcomeDistribution &d) {
                for (std::size_t k = 0; k < d.size(); k++) {
                    out << group << "," << d.labels()[k] << "," << d.counts()[k] << ","
                        << format_double(d.frequencies()[k]) << "\n";
                }
            };
            rows("resultant_states", result.resultant_states);
            rows("charlie", result.charlie);
            break;
        }
        case OutputFormat::PrettyTable: {
            out << "simulated " << config.n_trials << " trials, seed " << config.seed << ", policy "
                << config.policy.to_string() << ", mode " << monte_carlo::to_string(config.mode) << "\n";
            auto table = [&](const char *title, const OutcomeDistribution &d,
                             const std::optional<monte_carlo::ComparisonReport> &check) {
                out << title << "\n";
                for (std::size_t k = 0; k < d.size(); k++) {
                    out << "  " << pad(d.labels()[k], 10) << lpad(std::to_string(d.counts()[k]), 12) << "  "
                        << fixed4(d.frequencies()[k]);
                    if (check) {
                        const auto &c = check->checks[k];
                        out << "  expected " << fixed4(c.expected) << "  " << (c.pass ? "ok" : "OUTSIDE 4 sigma");
                    }
                    out << "\n";
                }
            };
            table("resultant states", result.resultant_states, state_check);
            table("charlie outcomes", result.charlie, charlie_check);
            if (state_check) {
                out << (pass ? "check passed" : "check FAILED") << "\n";
            }
            break;
        }
    }
    return pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- table

int cmd_table(const std::string &policy_text, OutputFormat format, std::ostream &out) {
    monte_carlo::MistakePolicy policy = monte_carlo::MistakePolicy::always_correct();
    try {
        policy = monte_carlo::MistakePolicy::parse(policy_text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    auto eps = policy.mistake_probability();
    if (!eps) {
        throw UsageError(
            "the alternating policy has no analytic table: its transform sequence is fixed by trial index, not drawn "
            "independently per trial");
    }
    auto summary = monte_carlo::analytic_mistake_table(policy);

    struct Row {
        const char *initial;
        double p_initial;
        const char *transform;
        double p_transform;
        const char *result;
    };
    const double e = *eps;
    const Row rows[] = {
        {"psi_h0", 1.0 / 3, "R*A_h0", 1 - e, "AB"},
        {"psi_h0", 1.0 / 3, "R*A_t01", e, "ABht"},
        {"psi_t01", 2.0 / 3, "R*A_h0", e, "ABth"},
        {"psi_t01", 2.0 / 3, "R*A_t01", 1 - e, "AB"},
    };

    switch (format) {
        case OutputFormat::Json: {
            Json arr = Json::array();
            for (const auto &r : rows) {
                arr.push_back(Json{{"initial_state", r.initial},
                                   {"initial_probability", r.p_initial},
                                   {"transform", r.transform},
                                   {"transform_probability", r.p_transform},
                                   {"resultant_state", r.result},
                                   {"resultant_probability", r.p_initial * r.p_transform}});
            }
            Json totals = Json::object();
            for (std::size_t k = 0; k < summary.size(); k++) {
                totals[summary.labels()[k]] = summary.frequencies()[k];
            }
            out << dump_json(Json{{"policy", policy.to_string()}, {"rows", std::move(arr)}, {"totals", totals}})
                << "\n";
            break;
        }
        case OutputFormat::Csv:
            out << "initial_state,initial_probability,transform,transform_probability,resultant_state,"
                   "resultant_probability\n";
            for (const auto &r : rows) {
                out << r.initial << "," << format_double(r.p_initial) << "," << r.transform << ","
                    << format_double(r.p_transform) << "," << r.result << ","
                    << format_double(r.p_initial * r.p_transform) << "\n";
            }
            break;
        case OutputFormat::PrettyTable:
            out << "analytic mistake table, policy " << policy.to_string() << "\n";
            out << "  initial   P(init)  transform  P(transform)  result  P(result)\n";
            for (const auto &r : rows) {
                out << "  " << pad(r.initial, 8) << "  " << fixed4(r.p_initial) << "   " << pad(r.transform, 9)
                    << "  " << lpad(fixed4(r.p_transform), 12) << "  " << pad(r.result, 6) << "  "
                    << fixed4(r.p_initial * r.p_transform) << "\n";
            }
            out << "totals\n";
            for (std::size_t k = 0; k < summary.size(); k++) {
                out << "  " << pad(summary.labels()[k], 6) << "  " << fixed4(summary.frequencies()[k]) << "\n";
            }
            break;
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Statevector toolkit for the extended Wigner's friend protocol", "wigner-lab"};
    app.require_subcommand(1);

    std::string format_text = "pretty";
    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"pretty", "json", "csv"}));
    };

    StatesOptions states_opt;
    auto *states = app.add_subcommand("states", "Print a named or loaded state's coefficients in a basis or frame");
    states->add_option("name", states_opt.input, "Registry key or state JSON path")->required();
    states->add_option("--basis", states_opt.basis, "computational | alice-bob | charlie | bs | as");
    states->add_option("--frame", states_opt.frame, "Non-orthogonal view: bs | as");
    add_format(states);

    double verify_tol = kTolUnitary;
    auto *verify = app.add_subcommand("verify", "Verify the protocol's published constants");
    verify->add_option("--tol", verify_tol, "Tolerance for every check");
    add_format(verify);

    std::string audit_input;
    double audit_tol = protocol::kAuditTol;
    auto *audit = app.add_subcommand("audit", "Compute the four-condition paradox audit of a 2-qubit state");
    audit->add_option("name", audit_input, "Registry key or state JSON path")->required();
    audit->add_option("--tol", audit_tol, "Threshold for 'amplitude is zero'");
    add_format(audit);

    std::string synth_input, synth_out;
    bool to_e0 = false, from_e0 = false;
    auto *synth = app.add_subcommand("synth", "Synthesize a unitary mapping a vector to |0...0> or back");
    synth->add_option("input", synth_input, "Registry key or state JSON path")->required();
    synth->add_flag("--to-e0", to_e0, "U v = e0");
    synth->add_flag("--from-e0", from_e0, "U e0 = v");
    synth->add_option("--out", synth_out, "Write the matrix JSON here");
    add_format(synth);

    SimulateOptions sim_opt;
    std::uint64_t sim_seed = 0;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo run of the protocol under a mistake policy");
    simulate->add_option("-n,--trials", sim_opt.trials, "Number of trials");
    auto *seed_opt = simulate->add_option("--seed", sim_seed, "Master seed (falls back to $WIGNER_LAB_SEED)");
    simulate->add_option("--policy", sim_opt.policy, "correct | uniform | alternating | biased:<eps>");
    simulate->add_option("--mode", sim_opt.mode, "collapse | analytic");
    simulate->add_option("--trace", sim_opt.trace_path, "Write a per-trial CSV trace here");
    simulate->add_flag("--check", sim_opt.check, "Compare against the analytic distribution at 4 sigma");
    simulate->add_option("--threads", sim_opt.threads, "Worker threads (0 = all cores); output is unaffected");
    add_format(simulate);

    std::string table_policy = "uniform";
    auto *table = app.add_subcommand("table", "Print the analytic mistake table for a policy");
    table->add_option("--policy", table_policy, "correct | uniform | biased:<eps>");
    add_format(table);

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    OutputFormat format = kFormats.at(format_text);
    try {
        if (*states) return cmd_states(states_opt, format, out);
        if (*verify) return cmd_verify(verify_tol, format, out);
        if (*audit) return cmd_audit(audit_input, audit_tol, format, out);
        if (*synth) return cmd_synth(synth_input, to_e0, from_e0, synth_out, format, out);
        if (*simulate) {
            if (seed_opt->count() > 0) {
                sim_opt.seed = sim_seed;
            }
            return cmd_simulate(sim_opt, format, out);
        }
        if (*table) return cmd_table(table_policy, format, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace wigner_lab::cli
