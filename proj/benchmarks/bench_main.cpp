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
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ectqst/measurement_sim.hpp"
#include "ectqst/planner.hpp"
#include "ectqst/reconstruction.hpp"
#include "ectqst/states.hpp"
#include "ectqst/target_selection.hpp"

using namespace ectqst;

namespace {

DiagonalMeasurement diagonal_of(const DensityMatrix &rho) {
    const Eigen::VectorXd p = rho.diagonal();
    return DiagonalMeasurement::from_probabilities(rho.d(), rho.n(), std::vector<double>(p.begin(), p.end()));
}

std::vector<CountsRecord> exact_records(const DensityMatrix &rho, const ObservableCatalog &catalog, const TomographyPlan &plan) {
    std::vector<CountsRecord> out;
    for (const auto &p : plan.settings) out.push_back(sample_counts(rho, catalog, p.setting, 1e4, 0, CountsMode::exact));
    return out;
}

void BM_BuildPlanW(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto catalog = build_catalog(2);
    const auto diag = diagonal_of(to_density(w_state_direct(n)));
    for (auto _ : state) benchmark::DoNotOptimize(build_plan(catalog, diag, 0.05));
}
BENCHMARK(BM_BuildPlanW)->DenseRange(4, 10, 2);

void BM_Probabilities(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto catalog = build_catalog(2);
    const DensityMatrix rho = to_density(w_state_direct(n));
    const Setting setting{std::vector<int>(static_cast<std::size_t>(n), 1)};
    for (auto _ : state) benchmark::DoNotOptimize(probabilities(rho, catalog, setting));
}
BENCHMARK(BM_Probabilities)->DenseRange(3, 9, 2);

void BM_LikelihoodGradient(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto catalog = build_catalog(2);
    const DensityMatrix rho = to_density(w_state_direct(n));
    const TomographyPlan plan = build_plan(catalog, diagonal_of(rho), 0.05);
    const auto records = exact_records(rho, catalog, plan);
    const LikelihoodProblem problem = LikelihoodProblem::from_plan(catalog, plan, records);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(problem.dimension()), n);
    for (Eigen::Index k = 0; k < m.size(); ++k) m(k) = Complex(g(rng), g(rng));
    Eigen::MatrixXcd grad;
    for (auto _ : state) benchmark::DoNotOptimize(problem.value_and_gradient(m, grad));
}
BENCHMARK(BM_LikelihoodGradient)->DenseRange(3, 7, 2);

void BM_Fidelity(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const DensityMatrix a = to_density(w_state_direct(n));
    const DensityMatrix b = to_density(ghz_state(2, n));
    const DensityMatrix mixed = mix(std::vector<DensityMatrix>{a, b}, std::vector<double>{0.5, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(fidelity(a, mixed));
}
BENCHMARK(BM_Fidelity)->DenseRange(3, 7, 2);

void BM_FitW(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto catalog = build_catalog(2);
    const DensityMatrix rho = to_density(w_state_direct(n));
    const TomographyPlan plan = build_plan(catalog, diagonal_of(rho), 0.05);
    const auto records = exact_records(rho, catalog, plan);
    const LikelihoodProblem problem = LikelihoodProblem::from_plan(catalog, plan, records);
    for (auto _ : state) benchmark::DoNotOptimize(fit(problem));
}
BENCHMARK(BM_FitW)->DenseRange(3, 6, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
