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
#include "ectqst/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ectqst/error.hpp"

namespace ectqst {

using nlohmann::json;

namespace {

void dump_into(const json &value, int depth, std::string &out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (value.type()) {
        case json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = value.begin(); it != value.end(); ++it) {  // std::map keeps keys sorted
                if (!first) out += ",\n";
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                dump_into(it.value(), depth + 1, out);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < value.size(); ++k) {
                if (k) out += ",\n";
                out += pad;
                dump_into(value[k], depth + 1, out);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double v = value.get<double>();
            if (!std::isfinite(v)) fail(ErrorCode::io, "cannot serialise a non-finite number");
            char buffer[40];
            std::snprintf(buffer, sizeof buffer, "%.17g", v == 0.0 ? 0.0 : v);
            out += buffer;
            return;
        }
        default:
            out += value.dump();
    }
}

template <typename T>
T require(const json &value, const char *key) {
    if (!value.is_object() || !value.contains(key)) fail(ErrorCode::parse, std::string("missing field '") + key + "'");
    try {
        return value.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(ErrorCode::parse, std::string("bad field '") + key + "': " + e.what());
    }
}

void check_version(const json &value) {
    const int version = require<int>(value, "version");
    if (version != kFileVersion) fail(ErrorCode::parse, "unsupported file version " + std::to_string(version));
}

json target_to_json(const TargetElement &t) {
    return json{{"i", t.i}, {"j", t.j}, {"part", to_string(t.part)}, {"bound", t.bound}};
}

TargetElement target_from_json(const json &value) {
    return TargetElement{require<std::size_t>(value, "i"), require<std::size_t>(value, "j"),
                         part_from_string(require<std::string>(value, "part")), require<double>(value, "bound")};
}

std::string format6(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

}  // namespace

std::string canonical_dump(const json &value) {
    std::string out;
    dump_into(value, 0, out);
    out += "\n";
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json read_json_file(const std::filesystem::path &path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        fail(ErrorCode::parse, path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::io, "cannot write " + temp.string());
        out << content;
        out.flush();
        if (!out) fail(ErrorCode::io, "write failed for " + temp.string());
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        fail(ErrorCode::io, "cannot move output into " + path.string());
    }
}

json setting_to_json(const Setting &setting) { return json(setting.indices); }

Setting setting_from_json(const json &value) {
    if (!value.is_array() || value.empty()) fail(ErrorCode::parse, "setting must be a non-empty index array");
    Setting setting;
    for (const json &k : value) {
        if (!k.is_number_integer()) fail(ErrorCode::parse, "setting indices must be integers");
        setting.indices.push_back(k.get<int>());
    }
    return setting;
}

json plan_to_json(const TomographyPlan &plan) {
    json targets = json::array();
    for (const TargetElement &t : plan.targets) targets.push_back(target_to_json(t));
    json settings = json::array();
    for (const PlannedSetting &s : plan.settings)
        settings.push_back(json{{"K", setting_to_json(s.setting)}, {"weight", s.weight}, {"informs", s.informs}});
    return json{{"version", kFileVersion},
                {"d", plan.d},
                {"N", plan.n},
                {"mas", to_string(plan.mas)},
                {"threshold", json{{"mode", plan.policy}, {"value", plan.threshold}}},
                {"seed", plan.seed},
                {"targets", targets},
                {"beta", plan.beta},
                {"candidates", plan.candidate_count},
                {"settings", settings}};
}

TomographyPlan plan_from_json(const json &value) {
    check_version(value);
    TomographyPlan plan;
    plan.d = require<int>(value, "d");
    plan.n = require<int>(value, "N");
    if (plan.d < 2 || plan.n < 1) fail(ErrorCode::invalid_dimension, "plan needs d >= 2 and N >= 1");
    plan.mas = mas_mode_from_string(require<std::string>(value, "mas"));
    const json threshold = require<json>(value, "threshold");
    plan.policy = require<std::string>(threshold, "mode");
    plan.threshold = require<double>(threshold, "value");
    plan.seed = require<std::uint64_t>(value, "seed");
    for (const json &t : require<json>(value, "targets")) plan.targets.push_back(target_from_json(t));
    plan.beta = require<std::vector<double>>(value, "beta");
    plan.candidate_count = require<std::size_t>(value, "candidates");
    for (const json &s : require<json>(value, "settings")) {
        PlannedSetting planned{setting_from_json(require<json>(s, "K")), require<double>(s, "weight"),
                               require<std::vector<std::size_t>>(s, "informs")};
        if (static_cast<int>(planned.setting.qudits()) != plan.n)
            fail(ErrorCode::parse, "setting " + planned.setting.label() + " has the wrong length");
        for (std::size_t m : planned.informs)
            if (m >= plan.targets.size()) fail(ErrorCode::parse, "informs index out of range");
        plan.settings.push_back(std::move(planned));
    }
    if (plan.beta.size() != plan.targets.size()) fail(ErrorCode::parse, "beta and targets differ in length");
    if (plan.settings.empty() || !plan.settings.front().setting.is_diagonal())
        fail(ErrorCode::parse, "first plan setting must be the diagonal");
    return plan;
}

json counts_to_json(const CountsFile &file) {
    json records = json::array();
    for (const CountsRecord &r : file.records) records.push_back(json{{"K", setting_to_json(r.setting)}, {"counts", r.counts}});
    return json{{"version", kFileVersion}, {"d", file.d},         {"N", file.n},
                {"shots", file.shots},     {"mode", to_string(file.mode)}, {"noise", file.noise},
                {"seed", file.seed},       {"records", records}};
}

CountsFile counts_from_json(const json &value) {
    check_version(value);
    CountsFile file;
    file.d = require<int>(value, "d");
    file.n = require<int>(value, "N");
    file.shots = require<double>(value, "shots");
    file.mode = counts_mode_from_string(require<std::string>(value, "mode"));
    file.noise = require<std::string>(value, "noise");
    file.seed = require<std::uint64_t>(value, "seed");
    if (file.d < 2 || file.n < 1) fail(ErrorCode::invalid_dimension, "counts need d >= 2 and N >= 1");
    if (!(file.shots > 0.0)) fail(ErrorCode::parse, "shots must be > 0");
    const std::size_t dim = checked_power(file.d, file.n);
    for (const json &r : require<json>(value, "records")) {
        CountsRecord record;
        record.setting = setting_from_json(require<json>(r, "K"));
        record.counts = require<std::vector<double>>(r, "counts");
        record.shots = file.shots;
        record.mode = file.mode;
        record.noise = file.noise;
        record.seed = file.seed;
        if (static_cast<int>(record.setting.qudits()) != file.n || record.counts.size() != dim)
            fail(ErrorCode::parse, "record " + record.setting.label() + " does not match d and N");
        if (file.mode == CountsMode::sampled) {
            double total = 0.0;
            for (double c : record.counts) total += c;
            if (std::abs(total - file.shots) > 1e-6 * file.shots)
                fail(ErrorCode::parse, "sampled record " + record.setting.label() + " does not sum to shots");
        }
        file.records.push_back(std::move(record));
    }
    return file;
}

DiagonalMeasurement diagonal_from_json(const json &value, std::optional<int> d, std::optional<int> n) {
    DiagonalMeasurement diag;
    if (value.contains("d")) diag.d = require<int>(value, "d");
    else if (d) diag.d = *d;
    else fail(ErrorCode::parse, "diagonal file needs d");
    if (value.contains("n")) diag.n = require<int>(value, "n");
    else if (value.contains("N")) diag.n = require<int>(value, "N");
    else if (n) diag.n = *n;
    else fail(ErrorCode::parse, "diagonal file needs n");
    if ((d && *d != diag.d) || (n && *n != diag.n)) fail(ErrorCode::dimension_mismatch, "diagonal file disagrees with --d/--n");
    diag.counts = require<std::vector<double>>(value, "counts");
    diag.shots = require<double>(value, "shots");
    if (value.contains("lost_shots")) diag.lost_shots = require<bool>(value, "lost_shots");
    diag.validate();
    return diag;
}

NoiseCalibration calibration_from_json(const json &value, std::optional<int> n) {
    NoiseCalibration calibration;
    calibration.noiseless = require<std::vector<double>>(value, "noiseless");
    calibration.noisy_runs = require<std::vector<std::vector<double>>>(value, "noisy_runs");
    calibration.shots = require<double>(value, "shots");
    if (value.contains("n")) calibration.n_qudits = require<int>(value, "n");
    else if (n) calibration.n_qudits = *n;
    else fail(ErrorCode::parse, "calibration file needs n");
    return calibration;
}

json matrix_to_json(const Eigen::MatrixXcd &matrix) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(json::array({matrix(r, c).real(), matrix(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json &value) {
    if (!value.is_array() || value.empty()) fail(ErrorCode::parse, "matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(value.size());
    const auto cols = static_cast<Eigen::Index>(value[0].size());
    Eigen::MatrixXcd matrix(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json &row = value[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail(ErrorCode::parse, "ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json &z = row[static_cast<std::size_t>(c)];
            if (!z.is_array() || z.size() != 2) fail(ErrorCode::parse, "matrix entries are [re, im] pairs");
            matrix(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return matrix;
}

json cost_to_json(const CostReport &cost) {
    auto method = [](const MethodCost &m) { return json{{"settings", m.settings}, {"projectors", m.projectors}}; };
    return json{{"d", cost.d},
                {"N", cost.n},
                {"fqst", method(cost.full)},
                {"fqst_is_bound", cost.full_is_bound},
                {"tqst", method(cost.threshold)},
                {"ect", method(cost.ect)}};
}

CostReport cost_from_json(const json &value) {
    auto method = [](const json &m) { return MethodCost{require<double>(m, "settings"), require<double>(m, "projectors")}; };
    CostReport cost;
    cost.d = require<int>(value, "d");
    cost.n = require<int>(value, "N");
    cost.full = method(require<json>(value, "fqst"));
    cost.full_is_bound = require<bool>(value, "fqst_is_bound");
    cost.threshold = method(require<json>(value, "tqst"));
    cost.ect = method(require<json>(value, "ect"));
    return cost;
}

json report_to_json(const ReportFile &report) {
    json curve = json::array();
    for (const CurvePoint &p : report.curve) {
        json point{{"l", p.l}, {"fidelity_prev", p.fidelity_prev}};
        if (p.fidelity_target) point["fidelity_target"] = *p.fidelity_target;
        curve.push_back(std::move(point));
    }
    json fidelities = json::object();
    if (report.fidelity_target) fidelities["vs_target"] = *report.fidelity_target;
    if (report.fidelity_full_plan) fidelities["vs_full_plan"] = *report.fidelity_full_plan;
    json out{{"version", kFileVersion},
             {"d", report.d},
             {"N", report.n},
             {"rho", matrix_to_json(report.rho)},
             {"fidelities", fidelities},
             {"curve", curve},
             {"fit",
              json{{"objective", report.objective},
                   {"iterations", report.iterations},
                   {"rank_history", report.rank_history},
                   {"purity", report.purity},
                   {"converged", report.converged}}}};
    if (report.cost) out["cost"] = cost_to_json(*report.cost);
    if (report.stop_l) out["stop_l"] = *report.stop_l;
    return out;
}

ReportFile report_from_json(const json &value) {
    check_version(value);
    ReportFile report;
    report.d = require<int>(value, "d");
    report.n = require<int>(value, "N");
    report.rho = matrix_from_json(require<json>(value, "rho"));
    const json fidelities = require<json>(value, "fidelities");
    if (fidelities.contains("vs_target")) report.fidelity_target = require<double>(fidelities, "vs_target");
    if (fidelities.contains("vs_full_plan")) report.fidelity_full_plan = require<double>(fidelities, "vs_full_plan");
    for (const json &p : require<json>(value, "curve")) {
        CurvePoint point{require<std::size_t>(p, "l"), require<double>(p, "fidelity_prev"), std::nullopt};
        if (p.contains("fidelity_target")) point.fidelity_target = require<double>(p, "fidelity_target");
        report.curve.push_back(point);
    }
    if (value.contains("cost")) report.cost = cost_from_json(require<json>(value, "cost"));
    if (value.contains("stop_l")) report.stop_l = require<std::size_t>(value, "stop_l");
    const json fit = require<json>(value, "fit");
    report.objective = require<double>(fit, "objective");
    report.iterations = require<int>(fit, "iterations");
    report.rank_history = require<std::vector<int>>(fit, "rank_history");
    report.purity = require<double>(fit, "purity");
    report.converged = require<bool>(fit, "converged");
    return report;
}

std::string curve_to_csv(const std::vector<CurvePoint> &curve) {
    std::string out = "l,fidelity_prev,fidelity_target\n";
    for (const CurvePoint &p : curve) {
        out += std::to_string(p.l) + "," + format6(p.fidelity_prev) + ",";
        if (p.fidelity_target) out += format6(*p.fidelity_target);
        out += "\n";
    }
    return out;
}

}  // namespace ectqst
