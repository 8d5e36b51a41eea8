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
#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ectqst::detail {

struct LbfgsOptions {
    int memory = 12;
    int max_iter = 5000;
    /// Stop when |f_k - f_{k+1}| <= rel_tol * max(|f_k|, |f_{k+1}|, 1) holds
    /// for three consecutive iterations.
    double rel_tol = 1e-10;
    double grad_tol = 1e-8;
};

struct LbfgsResult {
    double value = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
};

/// f(x, g) returns the objective and writes the gradient into g.
using Objective = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd &)>;

LbfgsResult minimize_lbfgs(const Objective &f, Eigen::VectorXd &x, const LbfgsOptions &options);

}  // namespace ectqst::detail
