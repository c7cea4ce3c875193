// Copyright 2026 The mgmagic Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <mgmagic/io.hpp>
#include <mgmagic/mgmagic.hpp>

namespace {

namespace fs = std::filesystem;
using mgmagic::io::Json;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + MGMAGIC_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    CliResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t k = 0;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, k);
    }
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(MGMAGIC_SAMPLES_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("mgmagic_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(Cli, ClassifyExamples) {
    CliResult r = run("classify " + sample("psi_0.json"));
    ASSERT_EQ(r.code, 0);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["gaussian"], true);
    EXPECT_NEAR(j["phi"].get<double>(), 0.0, 1e-9);

    r = run("classify " + sample("ghz4.json"));
    ASSERT_EQ(r.code, 0);
    j = Json::parse(r.out);
    EXPECT_EQ(j["gaussian"], false);
    EXPECT_NEAR(j["phi"].get<double>(), mgmagic::kPi, 1e-9);

    r = run("classify " + sample("plus.json"));
    ASSERT_EQ(r.code, 0);
    j = Json::parse(r.out);
    EXPECT_EQ(j["parity"], "indefinite");
    EXPECT_TRUE(j["gaussian"].is_null());

    r = run("classify " + sample("ghz6.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["case"]["case"], "case2a");
}

TEST_F(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run("classify " + sample("malformed.json")).code, 2);
    EXPECT_EQ(run("classify " + tmp("missing.json")).code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("gadget --gadget teleport").code, 2);
    EXPECT_EQ(run("gadget --gadget swap --trials 0").code, 2);
    EXPECT_EQ(run("gadget --gadget swap --j 2 " + sample("pair01.json")).code, 2);
}

TEST_F(Cli, CanonicalizeWritesPsiPhi) {
    const CliResult r = run("canonicalize " + sample("magic_m.json") + " -o " + tmp("c.json"));
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_NEAR(j["phi"].get<double>(), mgmagic::kPi, 1e-9);
    EXPECT_LE(j["depth"].get<int>(), 3);
    const mgmagic::QubitState s = mgmagic::io::read_state(tmp("c.json"));
    EXPECT_GT(mgmagic::fidelity(s, mgmagic::psi_phi(mgmagic::kPi)), 1.0 - 1e-9);
    const mgmagic::MatchgateCircuit c = mgmagic::io::circuit_from_json(j["circuit"]);
    EXPECT_EQ(c.num_lines(), 4);
}

TEST_F(Cli, ReduceEmbeddedPsiPi) {
    const CliResult r = run("reduce " + sample("psi_pi_embedded5.json") + " -o " + tmp("r.json"));
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["success"], true);
    EXPECT_NEAR(j["phi"].get<double>(), mgmagic::kPi, 1e-9);
    const mgmagic::QubitState s = mgmagic::io::read_state(tmp("r.json"));
    EXPECT_EQ(s.num_qubits(), 4);
    EXPECT_NEAR(mgmagic::canonical_phi(s), mgmagic::kPi, 1e-9);
}

TEST_F(Cli, ReduceGaussianExitsThree) {
    EXPECT_EQ(run("reduce " + sample("gaussian5.json")).code, 3);
    // too few lines for a reduction step
    EXPECT_EQ(run("reduce " + sample("plus.json")).code, 2);
}

TEST_F(Cli, ReduceIsDeterministicPerSeed) {
    const std::string args = "reduce " + sample("ghz6.json") + " --mode sample --seed 42 --transcript ";
    ASSERT_EQ(run(args + tmp("a.json")).code, 0);
    ASSERT_EQ(run(args + tmp("b.json")).code, 0);
    EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
    EXPECT_FALSE(slurp(tmp("a.json")).empty());
    // environment fallback
    ASSERT_EQ(run("reduce " + sample("ghz6.json") + " --mode sample --transcript " + tmp("c.json"), "MGMAGIC_SEED=42").code, 0);
    EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("c.json")));
}

TEST_F(Cli, SwapGadgetIsDeterministic) {
    const CliResult r = run("gadget --gadget swap --trials 1000 --seed 7");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["success_frequency"].get<double>(), 1.0);
    EXPECT_GT(j["min_fidelity_on_success"].get<double>(), 1.0 - 1e-9);
    EXPECT_EQ(j["consumed_mean"].get<double>(), 1.0);
}

TEST_F(Cli, CphiPiUsesOneCopy) {
    const CliResult r = run("gadget --gadget cphi --phi 3.141592653589793 --epsilon 0.1 --trials 500 --seed 3");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["success_frequency"].get<double>(), 1.0);
    EXPECT_EQ(j["consumed_max"].get<double>(), 1.0);
}

TEST_F(Cli, CphiZeroIsRejected) {
    EXPECT_EQ(run("gadget --gadget cphi --phi 0 --trials 10").code, 3);
}

TEST_F(Cli, CphiMeanConsumed) {
    const CliResult r = run("gadget --gadget cphi --phi 1.0471975511965976 --L 4 --supply 100000 --trials 5000 --seed 11");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_NEAR(j["consumed_mean"].get<double>(), 15.0, 0.75);
    EXPECT_NEAR(j["success_frequency"].get<double>(), 1.0 - 1.0 / 16.0, 0.01);
    EXPECT_NEAR(j["round_plus_frequency"].get<double>(), 0.5, 0.02);
}

TEST_F(Cli, GadgetOutputIndependentOfThreadCount) {
    const std::string args = "gadget --gadget cphi --L 3 --trials 300 --seed 5 --threads ";
    const CliResult a = run(args + "1");
    const CliResult b = run(args + "3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, GadgetTranscriptFile) {
    ASSERT_EQ(run("gadget --gadget cphi --L 3 --trials 5 --seed 5 --with-gates --transcript " + tmp("t.json")).code, 0);
    const Json t = mgmagic::io::read_json_file(tmp("t.json"));
    EXPECT_EQ(t["kind"], "gadget_transcript");
    EXPECT_GE(t["consumed"].get<long>(), 1);
    EXPECT_FALSE(t["gates"].empty());
}

TEST_F(Cli, MakeStateRoundTrips) {
    ASSERT_EQ(run("make-state --kind psi --phi 1.5 -o " + tmp("p.json")).code, 0);
    const mgmagic::QubitState p = mgmagic::io::read_state(tmp("p.json"));
    EXPECT_GT(mgmagic::fidelity(p, mgmagic::psi_phi(1.5)), 1.0 - 1e-15);

    ASSERT_EQ(run("make-state --kind random --n 5 --parity odd --seed 9 -o " + tmp("r1.json")).code, 0);
    ASSERT_EQ(run("make-state --kind random --n 5 --parity odd --seed 9 -o " + tmp("r2.json")).code, 0);
    EXPECT_EQ(slurp(tmp("r1.json")), slurp(tmp("r2.json")));
    EXPECT_EQ(mgmagic::parity(mgmagic::io::read_state(tmp("r1.json"))), mgmagic::Parity::kOdd);

    ASSERT_EQ(run("make-state --kind ghz4 -o " + tmp("g.json")).code, 0);
    const CliResult c = run("classify " + tmp("g.json"));
    EXPECT_EQ(Json::parse(c.out)["gaussian"], false);

    // write-then-read identity
    const mgmagic::QubitState back = mgmagic::io::read_state(tmp("g.json"));
    mgmagic::io::write_json_file(tmp("g2.json"), mgmagic::io::state_to_json(back));
    EXPECT_EQ(slurp(tmp("g.json")), slurp(tmp("g2.json")));

    EXPECT_EQ(run("make-state --kind nonsense").code, 2);
}

}  // namespace
