// Copyright 2026 The ectqst Authors
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
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>

#include "commands.hpp"
#include "ectqst/error.hpp"
#include "ectqst/io.hpp"

namespace fs = std::filesystem;
using namespace ectqst;
using namespace ectqst::cli;

namespace {

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ectqst_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    TomographyPlan plan_for(const std::string &state, const std::string &threshold) {
        PlanArgs args;
        args.state = state;
        args.threshold = threshold;
        args.out = path("plan.json");
        EXPECT_EQ(cmd_plan(args, log_), kExitOk);
        return plan_from_json(read_json_file(args.out));
    }

    static int run(const std::string &arguments) {
        const int status = std::system((std::string(ECTQST_CLI_BINARY) + " " + arguments + " > /dev/null 2>&1").c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    fs::path dir_;
    std::ostringstream log_;
};

std::vector<std::string> csv_fields(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        else if (c == ',' && !quoted) out.push_back(std::exchange(field, {}));
        else field += c;
    }
    out.push_back(field);
    return out;
}

std::string csv_value(const std::string &csv, const std::string &column) {
    std::stringstream ss(csv);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    const auto names = csv_fields(header);
    const auto values = csv_fields(row);
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == column) return values.at(k);
    ADD_FAILURE() << "no column " << column;
    return {};
}

}  // namespace

TEST_F(CliTest, GhzPlanHasThreeSettings) {
    const TomographyPlan plan = plan_for("ghz:2,5", "fixed:0.1");
    EXPECT_EQ(plan.size(), 3U);
    EXPECT_TRUE(plan.settings[0].setting.is_diagonal());
    EXPECT_EQ(plan.targets.size(), 2U);
}

TEST_F(CliTest, WPlanCardinality) {
    const TomographyPlan plan = plan_for("w:4", "fixed:0.1");
    EXPECT_EQ(plan.size() - 1, 12U);
}

TEST_F(CliTest, PlanFromDiagonalFile) {
    PlanArgs args;
    args.diagonal = std::string(ECTQST_TEST_DATA_DIR) + "/psi_diag.json";
    args.d = 3;
    args.n = 2;
    args.threshold = "fixed:0.05";
    args.out = path("plan.json");
    ASSERT_EQ(cmd_plan(args, log_), kExitOk);
    const TomographyPlan plan = plan_from_json(read_json_file(args.out));
    EXPECT_EQ(plan.targets.size(), 12U);
    EXPECT_EQ(plan.candidate_count, 12U);
    EXPECT_EQ(plan.size() - 1, 10U);
}

TEST_F(CliTest, PlanIsByteDeterministic) {
    plan_for("w:4", "gini");
    const std::string first = read_text_file(path("plan.json"));
    plan_for("w:4", "gini");
    EXPECT_EQ(read_text_file(path("plan.json")), first);
}

TEST_F(CliTest, PlanArgumentErrors) {
    PlanArgs both;
    both.state = "w:3";
    both.diagonal = "x.json";
    both.threshold = "gini";
    both.out = path("p.json");
    EXPECT_THROW(cmd_plan(both, log_), Error);
    PlanArgs none;
    none.threshold = "gini";
    none.out = path("p.json");
    EXPECT_THROW(cmd_plan(none, log_), Error);
    PlanArgs mismatch;
    mismatch.state = "w:3";
    mismatch.n = 4;
    mismatch.threshold = "gini";
    mismatch.out = path("p.json");
    EXPECT_THROW(cmd_plan(mismatch, log_), Error);
    EXPECT_FALSE(fs::exists(path("p.json")));
}

TEST_F(CliTest, ThresholdParsing) {
    EXPECT_THROW(parse_threshold("fixed:abc", 2), Error);
    EXPECT_THROW(parse_threshold("fixed:1.5", 2), Error);
    EXPECT_THROW(parse_threshold("bogus", 2), Error);
    EXPECT_NO_THROW(parse_threshold("fixed:0.2", 2));
    EXPECT_NO_THROW(parse_threshold("gini", 2));
    EXPECT_NO_THROW(parse_threshold("min-nonzero", 2));
}

TEST_F(CliTest, ExactGhzDiagonalCounts) {
    plan_for("ghz:2,2", "fixed:0.1");
    SimulateArgs args;
    args.state = "ghz:2,2";
    args.plan = path("plan.json");
    args.mode = "exact";
    args.out = path("counts.json");
    ASSERT_EQ(cmd_simulate(args, log_), kExitOk);
    const CountsFile counts = counts_from_json(read_json_file(args.out));
    ASSERT_EQ(counts.records.size(), 3U);
    ASSERT_TRUE(counts.records[0].setting.is_diagonal());
    const std::vector<double> expected{5000, 0, 0, 5000};
    ASSERT_EQ(counts.records[0].counts.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(counts.records[0].counts[k], expected[k], 1e-9);
}

TEST_F(CliTest, SampledCountsAreDeterministicAndNoiseZeroIsNoiseless) {
    plan_for("w:3", "fixed:0.1");
    SimulateArgs args;
    args.state = "w:3";
    args.plan = path("plan.json");
    args.seed = 11;
    args.out = path("a.json");
    ASSERT_EQ(cmd_simulate(args, log_), kExitOk);
    args.out = path("b.json");
    ASSERT_EQ(cmd_simulate(args, log_), kExitOk);
    EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("b.json")));
    args.noise = 0.0;
    args.out = path("c.json");
    ASSERT_EQ(cmd_simulate(args, log_), kExitOk);
    EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("c.json")));
    args.noise = 0.05;
    args.out = path("d.json");
    ASSERT_EQ(cmd_simulate(args, log_), kExitOk);
    EXPECT_NE(read_text_file(path("a.json")), read_text_file(path("d.json")));
}

TEST_F(CliTest, SimulateRejectsMismatchedState) {
    plan_for("w:3", "fixed:0.1");
    SimulateArgs args;
    args.state = "w:4";
    args.plan = path("plan.json");
    args.out = path("counts.json");
    EXPECT_THROW(cmd_simulate(args, log_), Error);
}

TEST_F(CliTest, GhzPipelineReachesHighFidelity) {
    plan_for("ghz:2,4", "fixed:0.1");
    SimulateArgs sim;
    sim.state = "ghz:2,4";
    sim.plan = path("plan.json");
    sim.shots = 1e5;
    sim.seed = 3;
    sim.out = path("counts.json");
    ASSERT_EQ(cmd_simulate(sim, log_), kExitOk);
    ReconstructArgs rec;
    rec.counts = sim.out;
    rec.plan = sim.plan;
    rec.target = "ghz:2,4";
    rec.out = path("report.json");
    ASSERT_EQ(cmd_reconstruct(rec, log_), kExitOk);
    const ReportFile report = report_from_json(read_json_file(rec.out));
    ASSERT_TRUE(report.fidelity_target.has_value());
    EXPECT_GE(*report.fidelity_target, 0.999);
    EXPECT_TRUE(report.converged);
    ASSERT_TRUE(report.cost.has_value());
    EXPECT_EQ(report.cost->ect.settings, 3.0);
}

TEST_F(CliTest, ProgressiveWritesCurve) {
    plan_for("w:4", "fixed:0.1");
    SimulateArgs sim;
    sim.state = "w:4";
    sim.plan = path("plan.json");
    sim.mode = "exact";
    sim.out = path("counts.json");
    ASSERT_EQ(cmd_simulate(sim, log_), kExitOk);
    ReconstructArgs rec;
    rec.counts = sim.out;
    rec.plan = sim.plan;
    rec.progressive = true;
    rec.target = "w:4";
    rec.out = path("report.json");
    rec.curve = path("curve.csv");
    ASSERT_EQ(cmd_reconstruct(rec, log_), kExitOk);
    const ReportFile report = report_from_json(read_json_file(rec.out));
    EXPECT_EQ(report.curve.size(), 12U);
    ASSERT_TRUE(report.stop_l.has_value());
    ASSERT_TRUE(report.fidelity_full_plan.has_value());
    EXPECT_GE(*report.fidelity_full_plan, 0.95);
    const std::string csv = read_text_file(*rec.curve);
    EXPECT_EQ(csv.rfind("l,fidelity_prev,fidelity_target\n", 0), 0U);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST_F(CliTest, ProgressiveAcceptsMeasuredPrefix) {
    plan_for("w:4", "fixed:0.1");
    SimulateArgs sim;
    sim.state = "w:4";
    sim.plan = path("plan.json");
    sim.mode = "exact";
    sim.out = path("counts.json");
    ASSERT_EQ(cmd_simulate(sim, log_), kExitOk);
    CountsFile counts = counts_from_json(read_json_file(sim.out));
    counts.records.resize(6);
    write_file_atomic(sim.out, canonical_dump(counts_to_json(counts)));

    ReconstructArgs rec;
    rec.counts = sim.out;
    rec.plan = sim.plan;
    rec.out = path("report.json");
    EXPECT_THROW(cmd_reconstruct(rec, log_), Error);
    rec.progressive = true;
    ASSERT_EQ(cmd_reconstruct(rec, log_), kExitOk);
    const ReportFile report = report_from_json(read_json_file(rec.out));
    EXPECT_EQ(report.curve.size(), 5U);
    ASSERT_TRUE(report.cost.has_value());
    EXPECT_EQ(report.cost->ect.settings, 13.0);
}

TEST_F(CliTest, CompareRandomState) {
    CompareArgs args;
    args.state = "random:4,3,17";
    args.threshold = "min-nonzero";
    args.out = path("cmp.csv");
    ASSERT_EQ(cmd_compare(args, log_), kExitOk);
    const std::string csv = read_text_file(args.out);
    EXPECT_EQ(csv_value(csv, "fqst_M"), "1296");
    const double settings = std::stod(csv_value(csv, "ect_settings"));
    EXPECT_EQ(std::stod(csv_value(csv, "ect_M")), settings * 16);
    EXPECT_GE(std::stod(csv_value(csv, "ect_fidelity")), 0.999);
}

TEST_F(CliTest, CompareCosts) {
    CompareArgs args;
    args.state = "ghz:2,4";
    args.threshold = "fixed:0.1";
    args.out = path("cmp.csv");
    ASSERT_EQ(cmd_compare(args, log_), kExitOk);
    std::string csv = read_text_file(args.out);
    EXPECT_EQ(csv_value(csv, "fqst_settings"), "81");
    EXPECT_EQ(csv_value(csv, "fqst_M"), "1296");
    EXPECT_EQ(csv_value(csv, "ect_settings"), "3");
    EXPECT_GE(std::stod(csv_value(csv, "ect_fidelity")), 0.999);
    EXPECT_GE(std::stod(csv_value(csv, "fqst_fidelity")), 0.999);

    args.state = "ghz:2,7";
    ASSERT_EQ(cmd_compare(args, log_), kExitOk);
    csv = read_text_file(args.out);
    EXPECT_EQ(csv_value(csv, "ect_M"), "384");
    EXPECT_EQ(csv_value(csv, "fqst_fidelity"), "");

    args.state = "w:5";
    ASSERT_EQ(cmd_compare(args, log_), kExitOk);
    csv = read_text_file(args.out);
    EXPECT_EQ(csv_value(csv, "ect_settings"), "21");
    EXPECT_EQ(csv_value(csv, "ect_M"), std::to_string(21 * 32));
}

TEST_F(CliTest, BinaryExitCodes) {
    EXPECT_EQ(run("plan --state ghz:2,3 --threshold fixed:0.1 --out " + path("p.json")), 0);
    EXPECT_TRUE(fs::exists(path("p.json")));
    EXPECT_EQ(run("plan --state ghz:2,3 --threshold nonsense --out " + path("q.json")), 2);
    EXPECT_EQ(run("plan --threshold gini --out " + path("q.json")), 2);
    EXPECT_EQ(run("plan --state ghz:2,3 --threshold gini --out " + path("q.json") + " --unknown"), 2);
    EXPECT_EQ(run("simulate --state ghz:2,3 --plan " + path("missing.json") + " --out " + path("c.json")), 2);
    EXPECT_EQ(run("--help"), 0);
}
