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
#include "lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace ectqst::detail {

namespace {

struct Pair {
    Eigen::VectorXd s;
    Eigen::VectorXd y;
    double rho;
};

Eigen::VectorXd two_loop(const std::deque<Pair> &history, const Eigen::VectorXd &g) {
    Eigen::VectorXd q = g;
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
        alpha[k] = history[k].rho * history[k].s.dot(q);
        q -= alpha[k] * history[k].y;
    }
    if (!history.empty()) {
        const Pair &last = history.back();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
        const double beta = history[k].rho * history[k].y.dot(q);
        q += (alpha[k] - beta) * history[k].s;
    }
    return -q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective &f, Eigen::VectorXd &x, const LbfgsOptions &options) {
    constexpr double kArmijo = 1e-4;
    constexpr int kMaxBacktracks = 60;

    LbfgsResult result;
    Eigen::VectorXd g(x.size());
    double fx = f(x, g);
    std::deque<Pair> history;
    int small_steps = 0;
    bool restarted = false;

    Eigen::VectorXd x_new(x.size());
    Eigen::VectorXd g_new(x.size());
    for (result.iterations = 0; result.iterations < options.max_iter; ++result.iterations) {
        result.gradient_norm = g.norm();
        if (result.gradient_norm < options.grad_tol) {
            result.converged = true;
            break;
        }
        Eigen::VectorXd direction = two_loop(history, g);
        double slope = direction.dot(g);
        if (!(slope < 0.0)) {
            history.clear();
            direction = -g;
            slope = -g.squaredNorm();
        }
        double step = history.empty() ? std::min(1.0, 1.0 / result.gradient_norm) : 1.0;

        bool accepted = false;
        double f_new = fx;
        for (int k = 0; k < kMaxBacktracks; ++k) {
            x_new = x + step * direction;
            f_new = f(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= fx + kArmijo * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // A failed steepest-descent search means no representable decrease is left.
            if (history.empty() || restarted) {
                result.converged = true;
                break;
            }
            history.clear();
            restarted = true;
            continue;
        }
        restarted = false;

        Pair pair{x_new - x, g_new - g, 0.0};
        const double sy = pair.s.dot(pair.y);
        if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
            pair.rho = 1.0 / sy;
            history.push_back(std::move(pair));
            if (static_cast<int>(history.size()) > options.memory) history.pop_front();
        }

        const double change = std::abs(fx - f_new);
        const double scale = std::max({std::abs(fx), std::abs(f_new), 1.0});
        x = x_new;
        g = g_new;
        fx = f_new;
        small_steps = change <= options.rel_tol * scale ? small_steps + 1 : 0;
        if (small_steps >= 3) {
            ++result.iterations;
            result.converged = true;
            break;
        }
    }
    result.value = fx;
    result.gradient_norm = g.norm();
    return result;
}

}  // namespace ectqst::detail
