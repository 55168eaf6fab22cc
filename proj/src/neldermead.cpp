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

#include "qgpr/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qgpr {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
    if (options.max_evals < 1) throw std::invalid_argument("nelder_mead: max_evals must be >= 1");
    if (x0.size() < 1) throw std::invalid_argument("nelder_mead: empty start point");

    const int n = static_cast<int>(x0.size());
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;
    const double inf = std::numeric_limits<double>::infinity();

    NelderMeadResult result;
    result.x = x0;
    result.fx = inf;

    auto eval = [&](const Eigen::VectorXd& x) {
        double v = f(x);
        if (!std::isfinite(v)) v = inf;
        ++result.evals;
        if (v < result.fx) {
            result.fx = v;
            result.x = x;
        }
        result.history.push_back(result.fx);
        return v;
    };
    auto budget_left = [&]() { return result.evals < options.max_evals; };

    std::vector<Eigen::VectorXd> verts;
    std::vector<double> fv;
    verts.reserve(n + 1);
    fv.reserve(n + 1);

    verts.push_back(x0);
    fv.push_back(eval(x0));
    for (int i = 0; i < n && budget_left(); ++i) {
        Eigen::VectorXd v = x0;
        v[i] += options.initial_step;
        verts.push_back(v);
        fv.push_back(eval(v));
    }
    // Budget may run out before the simplex is complete; the best point so
    // far is still returned.
    const int nv = static_cast<int>(verts.size());
    if (nv < n + 1) return result;

    std::vector<int> order(nv);
    while (budget_left()) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order.front();
        const int worst = order.back();
        const int second_worst = order[nv - 2];

        if (std::isfinite(fv[worst]) && fv[worst] - fv[best] < options.f_tol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int k = 0; k + 1 < nv; ++k) centroid += verts[order[k]];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + kReflect * (centroid - verts[worst]);
        const double f_r = eval(reflected);

        if (f_r < fv[best]) {
            if (!budget_left()) {
                verts[worst] = reflected;
                fv[worst] = f_r;
                break;
            }
            const Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
            const double f_e = eval(expanded);
            if (f_e < f_r) {
                verts[worst] = expanded;
                fv[worst] = f_e;
            } else {
                verts[worst] = reflected;
                fv[worst] = f_r;
            }
        } else if (f_r < fv[second_worst]) {
            verts[worst] = reflected;
            fv[worst] = f_r;
        } else {
            if (!budget_left()) break;
            const bool outside = f_r < fv[worst];
            const Eigen::VectorXd base = outside ? reflected : verts[worst];
            const Eigen::VectorXd contracted = centroid + kContract * (base - centroid);
            const double f_c = eval(contracted);
            if (f_c < std::min(f_r, fv[worst])) {
                verts[worst] = contracted;
                fv[worst] = f_c;
            } else {
                for (int k = 1; k < nv && budget_left(); ++k) {
                    const int idx = order[k];
                    verts[idx] = verts[best] + kShrink * (verts[idx] - verts[best]);
                    fv[idx] = eval(verts[idx]);
                }
            }
        }
    }
    return result;
}

}  // namespace qgpr
