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
#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "ectqst/error.hpp"

namespace {

using namespace ectqst::cli;

template <typename T>
void optional_option(CLI::App *app, const std::string &name, std::optional<T> &target, const std::string &help) {
    app->add_option_function<T>(name, [&target](const T &value) { target = value; }, help);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Enhanced compressive threshold quantum state tomography"};
    app.require_subcommand(1);

    PlanArgs plan;
    auto *plan_cmd = app.add_subcommand("plan", "Build a measurement plan from a state or a measured diagonal");
    optional_option(plan_cmd, "--state", plan.state, "State spec: ghz:d,N | w:N | wtree:N | random:N,depth,seed | file:path");
    optional_option(plan_cmd, "--diagonal", plan.diagonal, "Diagonal counts JSON");
    optional_option(plan_cmd, "--d", plan.d, "Qudit dimension");
    optional_option(plan_cmd, "--n", plan.n, "Number of qudits");
    plan_cmd->add_option("--threshold", plan.threshold, "fixed:v | gini | min-nonzero | noise:calibration.json")->required();
    plan_cmd->add_flag("--skip-imaginary", plan.skip_imaginary, "Only target real parts");
    plan_cmd->add_option("--mas", plan.mas, "identity | first-generator")->capture_default_str();
    plan_cmd->add_option("--seed", plan.seed, "Recorded in the plan");
    plan_cmd->add_option("--out", plan.out, "Output plan JSON")->required();

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Simulate counts for every setting of a plan");
    sim_cmd->add_option("--state", sim.state, "State spec")->required();
    sim_cmd->add_option("--plan", sim.plan, "Plan JSON")->required();
    sim_cmd->add_option("--shots", sim.shots, "Shots per setting")->capture_default_str();
    sim_cmd->add_option("--mode", sim.mode, "sampled | exact")->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Sampling seed");
    sim_cmd->add_option("--noise", sim.noise, "Per-qudit readout error probability");
    sim_cmd->add_option("--out", sim.out, "Output counts JSON")->required();

    ReconstructArgs rec;
    auto *rec_cmd = app.add_subcommand("reconstruct", "Maximum-likelihood reconstruction from counts");
    rec_cmd->add_option("--counts", rec.counts, "Counts JSON")->required();
    rec_cmd->add_option("--plan", rec.plan, "Plan JSON")->required();
    rec_cmd->add_option("--rank", rec.rank, "Initial factor rank (default N)");
    rec_cmd->add_flag("--progressive", rec.progressive, "Refit with growing setting prefixes");
    rec_cmd->add_flag("--early-stop", rec.early_stop, "Stop once the fidelity criterion holds");
    rec_cmd->add_option("--stop-fidelity", rec.stop_fidelity, "Fidelity level for the stop rule")->capture_default_str();
    rec_cmd->add_option("--stability", rec.stability, "Extra settings the level must hold for")->capture_default_str();
    optional_option(rec_cmd, "--target", rec.target, "State spec to compare against");
    rec_cmd->add_option("--seed", rec.seed, "Initialisation seed");
    rec_cmd->add_option("--floor", rec.floor, "Denominator floor in counts")->capture_default_str();
    rec_cmd->add_option("--out", rec.out, "Output report JSON")->required();
    optional_option(rec_cmd, "--curve", rec.curve, "Output fidelity curve CSV");

    CompareArgs cmp;
    auto *cmp_cmd = app.add_subcommand("compare", "Measurement cost of full, threshold and ECT tomography");
    cmp_cmd->add_option("--state", cmp.state, "State spec")->required();
    cmp_cmd->add_option("--threshold", cmp.threshold, "Threshold policy")->required();
    cmp_cmd->add_option("--mas", cmp.mas, "identity | first-generator")->capture_default_str();
    cmp_cmd->add_option("--out", cmp.out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*plan_cmd) return cmd_plan(plan, std::cout);
        if (*sim_cmd) return cmd_simulate(sim, std::cout);
        if (*rec_cmd) return cmd_reconstruct(rec, std::cout);
        if (*cmp_cmd) return cmd_compare(cmp, std::cout);
    } catch (const ectqst::Error &e) {
        std::cerr << "error [" << ectqst::to_string(e.code()) << "]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
