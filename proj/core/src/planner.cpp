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
#include "ectqst/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "ectqst/error.hpp"

namespace ectqst {

namespace {

// Overlaps below this are structural zeros polluted by round-off.
constexpr double kZeroOverlap = 1e-12;

// Per (observable k, digit x, digit y): a = sum_n w_n^2 and b = sum_n |w_n|^2
// with w_n = conj(V(x, n)) V(y, n). C_sm factorises over qudits into these.
class OverlapKernel {
   public:
    explicit OverlapKernel(const ObservableCatalog &catalog) : d_(catalog.dimension()) {
        const std::size_t cells = static_cast<std::size_t>(catalog.size() * d_ * d_);
        a_.resize(cells);
        b_.resize(cells);
        for (int k = 0; k < catalog.size(); ++k) {
            const Eigen::MatrixXcd &v = catalog.eigenbasis(k);
            for (int x = 0; x < d_; ++x) {
                for (int y = 0; y < d_; ++y) {
                    Complex a = 0.0;
                    double b = 0.0;
                    for (int n = 0; n < d_; ++n) {
                        const Complex w = std::conj(v(x, n)) * v(y, n);
                        a += w * w;
                        b += std::norm(w);
                    }
                    a_[cell(k, x, y)] = a;
                    b_[cell(k, x, y)] = b;
                }
            }
        }
    }

    double overlap(const std::vector<int> &setting, const std::vector<int> &i_digits,
                   const std::vector<int> &j_digits, Part part) const {
        Complex a = 1.0;
        double b = 1.0;
        for (std::size_t r = 0; r < setting.size(); ++r) {
            const std::size_t c = cell(setting[r], i_digits[r], j_digits[r]);
            if (b_[c] == 0.0) return 0.0;
            a *= a_[c];
            b *= b_[c];
        }
        const double value = part == Part::re ? 0.5 * (b + a.real()) : 0.5 * (b - a.real());
        return value < kZeroOverlap ? 0.0 : value;
    }

   private:
    std::size_t cell(int k, int x, int y) const {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(x)) *
                   static_cast<std::size_t>(d_) +
               static_cast<std::size_t>(y);
    }

    int d_;
    std::vector<Complex> a_;
    std::vector<double> b_;
};

void check_setting(const ObservableCatalog &catalog, const Setting &setting) {
    for (int k : setting.indices) {
        if (k < 0 || k >= catalog.size()) {
            fail(ErrorCode::index_out_of_range, "setting " + setting.label() + " has an invalid observable index");
        }
    }
}

void check_target(const TargetElement &target, std::size_t dim) {
    if (target.i == target.j) {
        fail(ErrorCode::diagonal_element, "diagonal elements are measured by the diagonal setting");
    }
    if (target.i > target.j || target.j >= dim) {
        fail(ErrorCode::index_out_of_range, "target (" + std::to_string(target.i) + ", " +
                                                std::to_string(target.j) + ") must satisfy i < j < d^N");
    }
}

}  // namespace

bool Setting::is_diagonal() const {
    return std::all_of(indices.begin(), indices.end(), [](int k) { return k == 0; });
}

std::string Setting::label() const {
    const bool dotted = std::any_of(indices.begin(), indices.end(), [](int k) { return k > 9; });
    std::string text = "s(";
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (dotted && r > 0) text += '.';
        text += std::to_string(indices[r]);
    }
    return text + ")";
}

Setting diagonal_setting(int n_qudits) { return Setting{std::vector<int>(static_cast<std::size_t>(n_qudits), 0)}; }

Setting setting_for_element(const ObservableCatalog &catalog, const TargetElement &target, int n_qudits) {
    const int d = catalog.dimension();
    check_target(target, checked_power(d, n_qudits));
    const std::vector<int> i_digits = to_digits(target.i, d, n_qudits);
    const std::vector<int> j_digits = to_digits(target.j, d, n_qudits);
    Setting setting{std::vector<int>(static_cast<std::size_t>(n_qudits), 0)};
    bool first = true;
    for (std::size_t r = 0; r < setting.indices.size(); ++r) {
        if (i_digits[r] == j_digits[r]) continue;
        int k = catalog.real_index(i_digits[r], j_digits[r]);
        if (first && target.part == Part::im) k = catalog.imaginary_partner(k);
        first = false;
        setting.indices[r] = k;
    }
    return setting;
}

Complex element_contribution(const ObservableCatalog &catalog, const Setting &setting, std::size_t i,
                             std::size_t j) {
    check_setting(catalog, setting);
    const int d = catalog.dimension();
    const int n = static_cast<int>(setting.qudits());
    const std::vector<int> i_digits = to_digits(i, d, n);
    const std::vector<int> j_digits = to_digits(j, d, n);
    Complex value = 1.0;
    for (std::size_t r = 0; r < setting.indices.size(); ++r) {
        value *= catalog.matrix(setting.indices[r])(i_digits[r], j_digits[r]);
        if (value == 0.0) break;
    }
    return value;
}

std::vector<double> overlap_amplitudes(const ObservableCatalog &catalog, const Setting &setting,
                                       const TargetElement &target) {
    check_setting(catalog, setting);
    const int d = catalog.dimension();
    const int n = static_cast<int>(setting.qudits());
    const std::size_t dim = checked_power(d, n);
    check_target(target, dim);
    const std::vector<int> i_digits = to_digits(target.i, d, n);
    const std::vector<int> j_digits = to_digits(target.j, d, n);
    std::vector<double> amplitudes(dim, 0.0);
    for (std::size_t outcome = 0; outcome < dim; ++outcome) {
        const std::vector<int> slots = to_digits(outcome, d, n);
        Complex z = 1.0;
        for (std::size_t r = 0; r < slots.size(); ++r) {
            const Eigen::MatrixXcd &v = catalog.eigenbasis(setting.indices[r]);
            z *= std::conj(v(i_digits[r], slots[r])) * v(j_digits[r], slots[r]);
        }
        amplitudes[outcome] = target.part == Part::re ? z.real() : -z.imag();
    }
    return amplitudes;
}

double overlap(const ObservableCatalog &catalog, const Setting &setting, const TargetElement &target) {
    check_setting(catalog, setting);
    const int d = catalog.dimension();
    const int n = static_cast<int>(setting.qudits());
    check_target(target, checked_power(d, n));
    const OverlapKernel kernel(catalog);
    return kernel.overlap(setting.indices, to_digits(target.i, d, n), to_digits(target.j, d, n), target.part);
}

OverlapMatrix OverlapMatrix::build(const ObservableCatalog &catalog, int n_qudits, std::vector<Setting> settings,
                                   std::vector<TargetElement> targets) {
    const int d = catalog.dimension();
    const std::size_t dim = checked_power(d, n_qudits);
    for (const Setting &s : settings) {
        check_setting(catalog, s);
        if (static_cast<int>(s.qudits()) != n_qudits) fail(ErrorCode::dimension_mismatch, "setting length mismatch");
    }
    std::vector<std::vector<int>> i_digits;
    std::vector<std::vector<int>> j_digits;
    i_digits.reserve(targets.size());
    j_digits.reserve(targets.size());
    for (const TargetElement &t : targets) {
        check_target(t, dim);
        i_digits.push_back(to_digits(t.i, d, n_qudits));
        j_digits.push_back(to_digits(t.j, d, n_qudits));
    }

    const OverlapKernel kernel(catalog);
    OverlapMatrix matrix;
    matrix.rows_.resize(settings.size());
    matrix.beta_.assign(targets.size(), 0.0);
    for (std::size_t s = 0; s < settings.size(); ++s) {
        auto &row = matrix.rows_[s];
        for (std::size_t m = 0; m < targets.size(); ++m) {
            const double c = kernel.overlap(settings[s].indices, i_digits[m], j_digits[m], targets[m].part);
            if (c == 0.0) continue;
            row.push_back({m, c});
            matrix.beta_[m] = std::max(matrix.beta_[m], c);
        }
    }
    matrix.settings_ = std::move(settings);
    matrix.targets_ = std::move(targets);
    return matrix;
}

std::span<const OverlapMatrix::Entry> OverlapMatrix::row(std::size_t s) const {
    if (s >= rows_.size()) fail(ErrorCode::index_out_of_range, "overlap row out of range");
    return rows_[s];
}

double OverlapMatrix::at(std::size_t s, std::size_t m) const {
    for (const Entry &e : row(s))
        if (e.column == m) return e.value;
    return 0.0;
}

Eigen::MatrixXd OverlapMatrix::dense() const {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
    for (std::size_t s = 0; s < rows_.size(); ++s)
        for (const Entry &e : rows_[s]) c(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e.column)) = e.value;
    return c;
}

std::vector<double> OverlapMatrix::column_sums(std::span<const std::size_t> rows) const {
    std::vector<double> sums(cols(), 0.0);
    for (std::size_t s : rows)
        for (const Entry &e : row(s)) sums[e.column] += e.value;
    return sums;
}

std::vector<Setting> candidate_settings(const ObservableCatalog &catalog, std::span<const TargetElement> targets,
                                        int n_qudits) {
    std::vector<Setting> settings;
    std::set<Setting> seen;
    for (const TargetElement &t : targets) {
        Setting s = setting_for_element(catalog, t, n_qudits);
        if (seen.insert(s).second) settings.push_back(std::move(s));
    }
    return settings;
}

std::vector<std::size_t> prune(const OverlapMatrix &overlap) {
    const std::size_t rows = overlap.rows();
    const std::size_t cols = overlap.cols();
    const std::vector<double> &beta = overlap.beta();
    for (std::size_t m = 0; m < cols; ++m) {
        if (!(beta[m] > 0.0)) {
            const TargetElement &t = overlap.targets()[m];
            fail(ErrorCode::planning, "target (" + std::to_string(t.i) + ", " + std::to_string(t.j) + ", " +
                                          to_string(t.part) + ") has no informative setting");
        }
    }

    // Lexicographic rank of each row, used to break ties.
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return overlap.settings()[a] < overlap.settings()[b];
    });
    std::vector<std::size_t> lex_rank(rows);
    for (std::size_t r = 0; r < rows; ++r) lex_rank[order[r]] = r;

    std::vector<std::vector<std::size_t>> column_rows(cols);
    std::vector<std::size_t> live(rows, 0);  // non-zeros on uncovered columns
    for (std::size_t s = 0; s < rows; ++s) {
        for (const auto &e : overlap.row(s)) column_rows[e.column].push_back(s);
        live[s] = overlap.row(s).size();
    }

    std::vector<double> sums(cols, 0.0);
    std::vector<double> best_single(cols, 0.0);
    std::vector<bool> covered(cols, false);
    std::vector<bool> taken(rows, false);
    std::size_t uncovered = cols;
    std::vector<std::size_t> selected;

    while (uncovered > 0) {
        std::size_t pick = rows;
        for (std::size_t s = 0; s < rows; ++s) {
            if (taken[s] || live[s] == 0) continue;
            if (pick == rows || live[s] > live[pick] || (live[s] == live[pick] && lex_rank[s] < lex_rank[pick])) {
                pick = s;
            }
        }
        if (pick == rows) fail(ErrorCode::planning, "pruning ran out of informative settings");
        taken[pick] = true;
        selected.push_back(pick);
        for (const auto &e : overlap.row(pick)) {
            const std::size_t m = e.column;
            sums[m] += e.value;
            best_single[m] = std::max(best_single[m], e.value);
            if (covered[m]) continue;
            if (best_single[m] >= beta[m] - kCoverageTolerance || sums[m] > beta[m] + kCoverageTolerance) {
                covered[m] = true;
                --uncovered;
                for (std::size_t s : column_rows[m]) --live[s];
            }
        }
    }

    const std::vector<double> total = overlap.column_sums(selected);
    for (std::size_t m = 0; m < cols; ++m) {
        if (total[m] < beta[m] - kCoverageTolerance) fail(ErrorCode::planning, "pruning left a column uncovered");
    }
    return selected;
}

std::vector<PlannedSetting> sort_by_weight(const OverlapMatrix &overlap, std::span<const std::size_t> selected) {
    std::vector<PlannedSetting> planned;
    planned.reserve(selected.size());
    for (std::size_t s : selected) {
        PlannedSetting p;
        p.setting = overlap.settings().at(s);
        for (const auto &e : overlap.row(s)) {
            p.weight += e.value * overlap.targets()[e.column].bound;
            p.informs.push_back(e.column);
        }
        planned.push_back(std::move(p));
    }
    std::stable_sort(planned.begin(), planned.end(), [](const PlannedSetting &a, const PlannedSetting &b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.setting < b.setting;
    });
    return planned;
}

std::vector<Setting> TomographyPlan::setting_list() const {
    std::vector<Setting> list;
    list.reserve(settings.size());
    for (const auto &p : settings) list.push_back(p.setting);
    return list;
}

TomographyPlan build_plan(const ObservableCatalog &catalog, const DiagonalMeasurement &diag, double threshold,
                          const PlanOptions &options) {
    if (diag.d != catalog.dimension()) fail(ErrorCode::dimension_mismatch, "catalog and diagonal disagree on d");
    TomographyPlan plan;
    plan.d = diag.d;
    plan.n = diag.n;
    plan.mas = catalog.mas();
    plan.threshold = threshold;
    plan.policy = options.policy;
    plan.seed = options.seed;
    plan.targets = select_targets(diag, threshold, options.skip_imaginary);

    std::vector<Setting> candidates = candidate_settings(catalog, plan.targets, diag.n);
    plan.candidate_count = candidates.size();
    const OverlapMatrix overlap = OverlapMatrix::build(catalog, diag.n, std::move(candidates), plan.targets);
    plan.beta = overlap.beta();

    plan.settings.push_back(PlannedSetting{diagonal_setting(diag.n), 0.0, {}});
    const std::vector<std::size_t> selected = prune(overlap);
    for (auto &p : sort_by_weight(overlap, selected)) plan.settings.push_back(std::move(p));
    return plan;
}

TomographyPlan full_qst_plan(const ObservableCatalog &catalog, int n_qudits) {
    const std::size_t dim = checked_power(catalog.dimension(), n_qudits, 4096);
    const std::vector<double> uniform(dim, 1.0 / static_cast<double>(dim));
    const DiagonalMeasurement diag = DiagonalMeasurement::from_probabilities(catalog.dimension(), n_qudits, uniform);
    PlanOptions options;
    options.policy = "full";
    return build_plan(catalog, diag, 0.0, options);
}

}  // namespace ectqst
