// Copyright 2026 The qgpr developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qgpr {

struct NelderMeadOptions {
    int max_evals = 150;        // total objective evaluations, counting the initial simplex
    double initial_step = 0.1;  // vertex i starts at x0 + initial_step * e_i
    double f_tol = 1e-12;       // stop once the simplex f-spread falls below this

    // When non-empty, overrides initial_step with a signed per-dimension step.
    Eigen::VectorXd initial_steps;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    std::vector<double> history;  // best-so-far objective after every evaluation
    int evals = 0;
};

/// Derivative-free simplex minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Non-finite objective values are treated
/// as +infinity. The first evaluation is always x0 itself.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

}  // namespace qgpr
