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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "wigner_lab/json_io.hpp"
#include "wigner_lab/protocol.hpp"
#include "wigner_lab/synthesis.hpp"

using namespace wigner_lab;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "wigner-lab");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return Json::parse(r.out);
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("wigner_lab_cli_test_" + name);
}

std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(cli, usage_errors) {
    EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"states", "nope"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"states", "psi_AB", "--frame", "xx"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"states", "psi_AB", "--format", "yaml"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"simulate", "-n", "abc"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"simulate", "--policy", "biased:2"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST(cli, states_registry_values) {
    auto j = run_json({"states", "psi_AB"});
    auto v = state_from_json(j);
    EXPECT_EQ(v, protocol::target_state());
    EXPECT_NEAR(j["physical_norm"].get<double>(), 1.0, 1e-15);

    auto c = run_json({"states", "psi_AB", "--basis", "charlie"});
    const double r = std::sqrt(1.0 / 12);
    EXPECT_NEAR(c["coefficients"]["ok_ok"][0].get<double>(), r, 1e-15);
    EXPECT_NEAR(c["coefficients"]["ok_fail"][0].get<double>(), -r, 1e-15);
    EXPECT_NEAR(c["coefficients"]["fail_fail"][0].get<double>(), 3 * r, 1e-15);

    auto f = run_json({"states", "psi_ABht", "--frame", "bs"});
    EXPECT_NEAR(f["coefficients"]["fail_0"][0].get<double>(), 1.1980, 1e-4);
    EXPECT_NEAR(f["naive_norm"].get<double>(), 1.5649, 1e-3);

    auto pretty = run_cli({"states", "psi_AB"});
    EXPECT_EQ(pretty.code, 0);
    EXPECT_NE(pretty.out.find("0.5774"), std::string::npos);
}

TEST(cli, states_from_file) {
    auto path = temp_path("state.json");
    std::ofstream(path) << dump_json(state_to_json(protocol::wrong_state(protocol::WrongStateLabel::ABth)));
    auto j = run_json({"states", path.string(), "--frame", "as"});
    EXPECT_NEAR(j["coefficients"]["h_0"][0].get<double>(), 0.9161, 1e-4);
    std::filesystem::remove(path);
}

TEST(cli, verify) {
    auto ok = run_cli({"verify"});
    EXPECT_EQ(ok.code, cli::kExitOk) << ok.out;
    EXPECT_EQ(run_cli({"verify", "--tol", "1e-30"}).code, cli::kExitCheckFailed);
    auto j = run_json({"verify"});
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_GE(j["checks"].size(), 6u);
}

TEST(cli, audit) {
    auto j = run_json({"audit", "psi_AB"});
    EXPECT_TRUE(j["contradiction"].get<bool>());
    EXPECT_NEAR(j["p_okok"].get<double>(), 1.0 / 12, 1e-12);
    EXPECT_FALSE(run_json({"audit", "psi_h0"})["contradiction"].get<bool>());
    EXPECT_FALSE(run_json({"audit", "psi_ABht"})["contradiction"].get<bool>());
    EXPECT_EQ(run_cli({"audit", "psi_nope"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"audit", "psi_A"}).code, cli::kExitUsage);
}

TEST(cli, synth_writes_a_matrix_that_round_trips) {
    auto path = temp_path("synth.json");
    auto r = run_cli({"synth", "psi_AB", "--from-e0", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto m = matrix_from_json(Json::parse(read_text(path)));
    auto t = protocol::target_state();
    EXPECT_LE(max_abs_diff(m.column(0), t.amplitudes()), 1e-12);
    std::filesystem::remove(path);

    auto j = run_json({"synth", "psi_h0", "--to-e0"});
    EXPECT_LE(j["residual"].get<double>(), 1e-10);
}

TEST(cli, synth_rejects_non_unit_input) {
    auto path = temp_path("half.json");
    std::ofstream(path) << R"({"num_qubits": 1, "amplitudes": [[0.5, 0], [0, 0]]})";
    auto r = run_cli({"synth", path.string(), "--to-e0"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("0.5"), std::string::npos) << r.err;
    std::filesystem::remove(path);
    EXPECT_EQ(run_cli({"synth", "psi_AB", "--to-e0", "--from-e0"}).code, cli::kExitUsage);
}

TEST(cli, simulate_check_and_zero_trials) {
    auto r = run_cli({"simulate", "-n", "100000", "--seed", "7", "--policy", "uniform", "--check"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out;
    auto j = run_json({"simulate", "-n", "0"});
    EXPECT_EQ(j["resultant_states"]["AB"]["count"], 0);
    EXPECT_EQ(run_cli({"simulate", "-n", "0", "--check"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"simulate", "-n", "10", "--policy", "alternating", "--check"}).code, cli::kExitUsage);
}

TEST(cli, simulate_is_byte_identical) {
    std::vector<std::string> args{"simulate", "-n", "20000", "--seed", "5", "--policy", "biased:0.2", "--format",
                                  "json"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    args.insert(args.end(), {"--threads", "4"});
    auto c = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(cli, simulate_seed_from_environment) {
    ::setenv("WIGNER_LAB_SEED", "123", 1);
    auto from_env = run_cli({"simulate", "-n", "5000", "--format", "json"});
    auto flag_wins = run_cli({"simulate", "-n", "5000", "--seed", "9", "--format", "json"});
    ::unsetenv("WIGNER_LAB_SEED");
    auto explicit_seed = run_cli({"simulate", "-n", "5000", "--seed", "123", "--format", "json"});
    EXPECT_EQ(from_env.out, explicit_seed.out);
    EXPECT_EQ(Json::parse(flag_wins.out)["seed"], 9);
}

TEST(cli, simulate_trace) {
    auto path = temp_path("trace.csv");
    auto r = run_cli({"simulate", "-n", "10", "--seed", "1", "--policy", "uniform", "--trace", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto text = read_text(path);
    EXPECT_EQ(text.substr(0, text.find('\n')), "trial,alice_outcome,transform,state,charlie_a,charlie_b");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 11);
    std::filesystem::remove(path);
}

TEST(cli, table) {
    auto j = run_json({"table", "--policy", "biased:0.3"});
    EXPECT_NEAR(j["totals"]["AB"].get<double>(), 0.7, 1e-15);
    EXPECT_NEAR(j["totals"]["ABht"].get<double>(), 0.1, 1e-15);
    EXPECT_NEAR(j["totals"]["ABth"].get<double>(), 0.2, 1e-15);
    auto u = run_json({"table", "--policy", "uniform"});
    ASSERT_EQ(u["rows"].size(), 4u);
    EXPECT_NEAR(u["totals"]["AB"].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(run_json({"table", "--policy", "correct"})["totals"]["AB"].get<double>(), 1.0, 0);
    auto alt = run_cli({"table", "--policy", "alternating"});
    EXPECT_EQ(alt.code, cli::kExitUsage);
    EXPECT_FALSE(alt.err.empty());
}
