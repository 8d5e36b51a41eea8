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
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "ectqst/error.hpp"
#include "ectqst/io.hpp"
#include "ectqst/measurement_sim.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/reconstruction.hpp"
#include "ectqst/state_spec.hpp"
#include "ectqst/tqst_bridge.hpp"

namespace ectqst::cli {

namespace {

// Computed from the sparse amplitudes, so no d^N x d^N matrix is formed.
DiagonalMeasurement exact_diagonal(const SparseStateVector &psi) {
    std::vector<double> p(psi.dimension(), 0.0);
    for (const auto &[index, amplitude] : psi.amplitudes()) p[index] = std::norm(amplitude);
    return DiagonalMeasurement::from_probabilities(psi.d(), psi.n(), p);
}

std::string policy_label(const std::string &text) {
    const std::size_t colon = text.find(':');
    return colon == std::string::npos ? text : text.substr(0, colon);
}

void check_dimensions(std::optional<int> expected_d, std::optional<int> expected_n, int d, int n) {
    if ((expected_d && *expected_d != d) || (expected_n && *expected_n != n))
        fail(ErrorCode::dimension_mismatch, "--d/--n disagree with the state");
}

std::string format_number(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.10g", v);
    return buffer;
}

// All 3^N Pauli products, the qubit full-tomography baseline.
std::vector<Setting> pauli_settings(int n) {
    std::vector<Setting> out;
    const std::size_t count = checked_power(3, n);
    for (std::size_t k = 0; k < count; ++k) out.push_back(Setting{to_digits(k, 3, n)});
    return out;
}

// Number of leading plan settings that have a counts record.
std::size_t measured_prefix(const TomographyPlan &plan, const std::vector<CountsRecord> &records) {
    std::size_t k = 0;
    while (k < plan.size() && std::any_of(records.begin(), records.end(), [&](const CountsRecord &r) {
               return r.setting == plan.settings[k].setting;
           }))
        ++k;
    return std::max<std::size_t>(k, 1);
}

}  // namespace

ThresholdPolicy parse_threshold(const std::string &text, int n_qudits) {
    if (text == "gini") return ThresholdPolicy::gini();
    if (text == "min-nonzero") return ThresholdPolicy::min_nonzero();
    if (text.rfind("fixed:", 0) == 0) {
        const std::string value = text.substr(6);
        std::size_t used = 0;
        double t = 0.0;
        try {
            t = std::stod(value, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != value.size()) fail(ErrorCode::parse, "bad threshold value '" + value + "'");
        if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::invalid_argument, "threshold must lie in [0, 1]");
        return ThresholdPolicy::fixed(t);
    }
    if (text.rfind("noise:", 0) == 0)
        return ThresholdPolicy::noise(calibration_from_json(read_json_file(text.substr(6)), n_qudits));
    fail(ErrorCode::parse, "unknown threshold policy '" + text + "'");
}

int cmd_plan(const PlanArgs &args, std::ostream &log) {
    if (args.state.has_value() == args.diagonal.has_value())
        fail(ErrorCode::invalid_argument, "give exactly one of --state or --diagonal");
    DiagonalMeasurement diag;
    if (args.state) {
        const SparseStateVector psi = make_state(*args.state);
        check_dimensions(args.d, args.n, psi.d(), psi.n());
        diag = exact_diagonal(psi);
    } else {
        diag = diagonal_from_json(read_json_file(*args.diagonal), args.d, args.n);
    }
    const ObservableCatalog catalog = build_catalog(diag.d, mas_mode_from_string(args.mas));
    const ThresholdPolicy policy = parse_threshold(args.threshold, diag.n);
    const double t = policy.resolve(diag);
    PlanOptions options;
    options.skip_imaginary = args.skip_imaginary;
    options.policy = policy_label(args.threshold);
    options.seed = args.seed;
    const TomographyPlan plan = build_plan(catalog, diag, t, options);
    write_file_atomic(args.out, canonical_dump(plan_to_json(plan)));
    log << "threshold " << format_number(t) << ", " << plan.targets.size() << " targets, " << plan.candidate_count
        << " candidate settings, " << plan.size() << " planned settings including the diagonal\n";
    return kExitOk;
}

int cmd_simulate(const SimulateArgs &args, std::ostream &log) {
    const TomographyPlan plan = plan_from_json(read_json_file(args.plan));
    const SparseStateVector psi = make_state(args.state);
    if (psi.d() != plan.d || psi.n() != plan.n) fail(ErrorCode::dimension_mismatch, "state and plan dimensions differ");
    const ObservableCatalog catalog = build_catalog(plan.d, plan.mas);
    const DensityMatrix rho = to_density(psi);
    const CountsMode mode = counts_mode_from_string(args.mode);
    const ReadoutNoiseModel noise{args.noise, {}};
    noise.validate(plan.d);

    CountsFile file;
    file.d = plan.d;
    file.n = plan.n;
    file.shots = args.shots;
    file.mode = mode;
    file.noise = noise.describe();
    file.seed = args.seed;
    for (const PlannedSetting &planned : plan.settings)
        file.records.push_back(sample_counts(rho, catalog, planned.setting, args.shots, args.seed, mode,
                                             args.noise > 0.0 ? &noise : nullptr));
    write_file_atomic(args.out, canonical_dump(counts_to_json(file)));
    log << file.records.size() << " settings simulated (" << to_string(mode) << ", " << format_number(args.shots)
        << " shots)\n";
    return kExitOk;
}

int cmd_reconstruct(const ReconstructArgs &args, std::ostream &log) {
    const TomographyPlan plan = plan_from_json(read_json_file(args.plan));
    const CountsFile counts = counts_from_json(read_json_file(args.counts));
    if (counts.d != plan.d || counts.n != plan.n) fail(ErrorCode::dimension_mismatch, "counts and plan dimensions differ");
    const ObservableCatalog catalog = build_catalog(plan.d, plan.mas);
    // A progressive run may start before the whole plan has been measured.
    TomographyPlan measured = plan;
    if (args.progressive) measured.settings.resize(measured_prefix(plan, counts.records));
    const LikelihoodProblem problem = LikelihoodProblem::from_plan(catalog, measured, counts.records, args.floor);

    std::optional<DensityMatrix> target;
    if (args.target) {
        const SparseStateVector psi = make_state(*args.target);
        if (psi.d() != plan.d || psi.n() != plan.n) fail(ErrorCode::dimension_mismatch, "target and plan dimensions differ");
        target = to_density(psi);
    }

    FitConfig config;
    config.initial_rank = args.rank;
    config.seed = args.seed;

    ReportFile report;
    report.d = plan.d;
    report.n = plan.n;
    report.cost = cost_report(catalog, plan);

    std::optional<FitReport> final_fit;
    if (args.progressive) {
        ProgressiveOptions options;
        options.threshold = args.stop_fidelity;
        options.stability = args.stability;
        options.early_stop = args.early_stop;
        ProgressiveResult result = progressive_fit(problem, config, options, target ? &*target : nullptr);
        for (const ProgressivePoint &p : result.curve) report.curve.push_back({p.l, p.fidelity_prev, p.fidelity_target});
        report.stop_l = result.stop_l;
        if (result.curve.empty()) {
            final_fit = fit(problem, config);
        } else {
            final_fit = result.curve.back().report;
        }
        if (result.stop_l) {
            const FitReport &at_stop = result.curve[*result.stop_l - 1].report;
            const FitReport full = result.curve.size() == measured.size() - 1 ? result.curve.back().report : fit(problem, config);
            report.fidelity_full_plan = fidelity(at_stop.rho, full.rho);
        }
    } else {
        final_fit = fit(problem, config);
    }

    report.rho = final_fit->rho.matrix();
    report.objective = final_fit->objective;
    report.iterations = final_fit->iterations;
    report.rank_history = final_fit->rank_history;
    report.purity = final_fit->purity;
    report.converged = final_fit->converged;
    if (target) report.fidelity_target = fidelity(final_fit->rho, *target);

    write_file_atomic(args.out, canonical_dump(report_to_json(report)));
    if (args.curve) write_file_atomic(*args.curve, curve_to_csv(report.curve));

    log << "objective " << format_number(report.objective) << ", purity " << format_number(report.purity);
    if (report.fidelity_target) log << ", fidelity vs target " << format_number(*report.fidelity_target);
    if (report.stop_l) log << ", stop at l=" << *report.stop_l;
    log << "\n";
    if (!report.converged) {
        log << "warning: the fit did not converge\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

int cmd_compare(const CompareArgs &args, std::ostream &log) {
    const SparseStateVector psi = make_state(args.state);
    if (psi.d() > 3) fail(ErrorCode::size_guard, "compare supports qubits and qutrits only");
    checked_power(psi.d(), psi.n(), 4096);
    const DiagonalMeasurement diag = exact_diagonal(psi);
    const ObservableCatalog catalog = build_catalog(psi.d(), mas_mode_from_string(args.mas));
    const ThresholdPolicy policy = parse_threshold(args.threshold, psi.n());
    PlanOptions options;
    options.policy = policy_label(args.threshold);
    const TomographyPlan plan = build_plan(catalog, diag, policy.resolve(diag), options);
    const CostReport cost = cost_report(catalog, plan);

    const DensityMatrix rho = to_density(psi);
    std::vector<CountsRecord> records;
    for (const PlannedSetting &p : plan.settings) records.push_back(sample_counts(rho, catalog, p.setting, 1e4, 0, CountsMode::exact));
    const double ect_fidelity = fidelity(fit(LikelihoodProblem::from_plan(catalog, plan, records)).rho, rho);

    std::string full_fidelity;
    if (psi.d() == 2 && psi.n() <= 5) {
        std::vector<CountsRecord> full;
        for (const Setting &s : pauli_settings(psi.n())) full.push_back(sample_counts(rho, catalog, s, 1e4, 0, CountsMode::exact));
        full_fidelity = format_number(fidelity(fit(LikelihoodProblem(catalog, psi.n(), full)).rho, rho));
    }

    std::string csv =
        "state,d,N,fqst_settings,fqst_M,fqst_is_bound,tqst_settings,tqst_M,ect_candidates,ect_settings,ect_M,"
        "ect_fidelity,fqst_fidelity\n";
    csv += "\"" + args.state + "\"," + std::to_string(psi.d()) + "," + std::to_string(psi.n()) + "," +
           format_number(cost.full.settings) + "," + format_number(cost.full.projectors) + "," +
           (cost.full_is_bound ? "1" : "0") + "," + format_number(cost.threshold.settings) + "," +
           format_number(cost.threshold.projectors) + "," + std::to_string(plan.candidate_count) + "," +
           format_number(cost.ect.settings) + "," + format_number(cost.ect.projectors) + "," +
           format_number(ect_fidelity) + "," + full_fidelity + "\n";
    write_file_atomic(args.out, csv);
    log << "ECT " << format_number(cost.ect.settings) << " settings (M=" << format_number(cost.ect.projectors)
        << "), tQST M=" << format_number(cost.threshold.projectors) << ", fQST M=" << format_number(cost.full.projectors)
        << "\n";
    return kExitOk;
}

}  // namespace ectqst::cli
