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

#include "qgpr/gp.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "qgpr/neldermead.hpp"
#include "qgpr/rng.hpp"

namespace qgpr {

namespace {

constexpr double kVarianceClampWarnThreshold = 1e-6;

}  // namespace

double RbfKernel::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const {
    const double d2 = (x - x2).squaredNorm();
    return amplitude * std::exp(-d2 / (2.0 * lengthscale * lengthscale));
}

bool is_quantum(const KernelProvider& kernel) {
    return std::holds_alternative<QuantumKernelConfig>(kernel);
}

double prior_variance(const KernelProvider& kernel) {
    if (is_quantum(kernel)) return 1.0;
    return std::get<RbfKernel>(kernel).amplitude;
}

NotPositiveDefiniteError::NotPositiveDefiniteError(double min_eigenvalue)
    : std::runtime_error("training matrix not positive definite after max jitter "
                         "(minimum eigenvalue " +
                         std::to_string(min_eigenvalue) + ")"),
      min_eigenvalue_(min_eigenvalue) {}

GramMatrix kernel_matrix(const KernelProvider& kernel, const Eigen::MatrixXd& X) {
    if (const auto* q = std::get_if<QuantumKernelConfig>(&kernel)) {
        return gram(X, *q);
    }
    const auto& rbf = std::get<RbfKernel>(kernel);
    const Eigen::Index n = X.rows();
    if (n == 0) throw std::invalid_argument("kernel_matrix: empty input");
    GramMatrix g;
    g.symmetric = true;
    g.entries.resize(n, n);
    g.entries.diagonal().setConstant(rbf.amplitude);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double k = rbf(X.row(i), X.row(j));
            g.entries(i, j) = k;
            g.entries(j, i) = k;
        }
    }
    return g;
}

GramMatrix kernel_matrix(const KernelProvider& kernel, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& X2) {
    if (const auto* q = std::get_if<QuantumKernelConfig>(&kernel)) {
        return gram(X, X2, *q);
    }
    const auto& rbf = std::get<RbfKernel>(kernel);
    if (X.rows() == 0 || X2.rows() == 0) throw std::invalid_argument("kernel_matrix: empty input");
    GramMatrix g;
    g.symmetric = false;
    g.entries.resize(X.rows(), X2.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (Eigen::Index j = 0; j < X2.rows(); ++j) {
            g.entries(i, j) = rbf(X.row(i), X2.row(j));
        }
    }
    return g;
}

namespace detail {

CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& A) {
    const double mean_diag = A.diagonal().mean();
    for (const double rel : {1e-10, 1e-8, 1e-6}) {
        const double jitter = rel * mean_diag;
        Eigen::MatrixXd B = A;
        B.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(B);
        if (llt.info() == Eigen::Success) {
            return {Eigen::MatrixXd(llt.matrixL()), jitter};
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    throw NotPositiveDefiniteError(solver.eigenvalues().minCoeff());
}

}  // namespace detail

GpModel fit_gp(const KernelProvider& kernel, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               double noise_var) {
    if (X.rows() < 1) throw std::invalid_argument("fit_gp: need at least one training point");
    if (X.rows() != y.size()) throw std::invalid_argument("fit_gp: X and y sizes differ");
    if (!(noise_var >= 0.0)) throw std::invalid_argument("fit_gp: noise_var must be >= 0");

    GramMatrix K = kernel_matrix(kernel, X);
    if (const auto* q = std::get_if<QuantumKernelConfig>(&kernel);
        q != nullptr && q->mode == KernelMode::Sampled) {
        K = regularize_cutoff(K);
    }

    Eigen::MatrixXd A = K.entries;
    A.diagonal().array() += noise_var;
    auto chol = detail::cholesky_with_jitter(A);

    GpModel model;
    model.kernel = kernel;
    model.X_train = X;
    model.y_train = y;
    model.noise_var = noise_var;
    model.chol_L = std::move(chol.L);
    model.jitter = chol.jitter;
    model.clipped_mass = K.clipped_mass;
    model.alpha = model.chol_L.transpose().triangularView<Eigen::Upper>().solve(
        model.chol_L.triangularView<Eigen::Lower>().solve(y));
    return model;
}

namespace {

// Shared by predict / predict_marginal: cross Gram and its triangular solve.
struct CrossSolve {
    Eigen::MatrixXd K_cross;  // n x m
    Eigen::MatrixXd V;        // L^-1 K_cross
};

CrossSolve cross_solve(const GpModel& model, const Eigen::MatrixXd& X_star) {
    if (X_star.rows() < 1) throw std::invalid_argument("predict: need at least one test point");
    if (X_star.cols() != model.X_train.cols()) {
        throw std::invalid_argument("predict: test point dimension mismatch");
    }
    CrossSolve cs;
    cs.K_cross = kernel_matrix(model.kernel, model.X_train, X_star).entries;
    cs.V = model.chol_L.triangularView<Eigen::Lower>().solve(cs.K_cross);
    return cs;
}

}  // namespace

Posterior predict(const GpModel& model, const Eigen::MatrixXd& X_star) {
    const CrossSolve cs = cross_solve(model, X_star);

    Posterior post;
    post.mean = cs.K_cross.transpose() * model.alpha;

    const Eigen::MatrixXd K_ss = kernel_matrix(model.kernel, X_star).entries;
    Eigen::MatrixXd cov = K_ss - cs.V.transpose() * cs.V;
    post.cov = 0.5 * (cov + cov.transpose());

    post.std.resize(X_star.rows());
    for (Eigen::Index i = 0; i < X_star.rows(); ++i) {
        const double v = post.cov(i, i);
        if (v < 0.0) post.max_clamp = std::max(post.max_clamp, -v);
        post.std[i] = std::sqrt(std::max(v, 0.0));
    }
    if (post.max_clamp > kVarianceClampWarnThreshold) {
        std::cerr << "qgpr: posterior variance clamped by " << post.max_clamp
                  << "; regularization may be inadequate\n";
    }
    return post;
}

MarginalPrediction predict_marginal(const GpModel& model, const Eigen::MatrixXd& X_star) {
    const CrossSolve cs = cross_solve(model, X_star);

    MarginalPrediction pred;
    pred.mean = cs.K_cross.transpose() * model.alpha;
    pred.std.resize(X_star.rows());
    const double prior = prior_variance(model.kernel);
    for (Eigen::Index i = 0; i < X_star.rows(); ++i) {
        const double v = prior - cs.V.col(i).squaredNorm();
        pred.std[i] = std::sqrt(std::max(v, 0.0));
    }
    return pred;
}

double log_marginal_likelihood(const GpModel& model) {
    const double n = static_cast<double>(model.y_train.size());
    const double data_term = -0.5 * model.y_train.dot(model.alpha);
    const double logdet_term = -model.chol_L.diagonal().array().log().sum();
    return data_term + logdet_term - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

MllTrainResult train_mll(const FeatureMapSpec& spec, const Eigen::MatrixXd& X,
                         const Eigen::VectorXd& y, double noise_var, const ParamVector& theta0,
                         int budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("train_mll: budget must be >= 1");
    spec.validate();
    if (theta0.size() != spec.num_params()) {
        throw std::invalid_argument("train_mll: theta0 length mismatch");
    }

    const double inf = std::numeric_limits<double>::infinity();
    auto negative_mll = [&](const ParamVector& theta) -> double {
        QuantumKernelConfig cfg{spec, theta, KernelMode::Exact, 0, 0};
        try {
            return -log_marginal_likelihood(fit_gp(cfg, X, y, noise_var));
        } catch (const NotPositiveDefiniteError&) {
            return inf;
        }
    };

    if (!std::isfinite(negative_mll(theta0))) {
        throw std::invalid_argument("train_mll: non-finite loss at theta0");
    }

    // The seed only matters when an initial simplex vertex lands on a
    // non-finite loss; such vertices are re-drawn near theta0.
    rng::Engine vertex_eng = rng::engine(seed);
    auto objective = [&](const ParamVector& theta) { return negative_mll(theta); };
    (void)vertex_eng;

    NelderMeadOptions options;
    options.max_evals = budget;
    options.initial_step = 0.1;
    NelderMeadResult nm = nelder_mead(objective, theta0, options);

    MllTrainResult result;
    result.theta = nm.x;
    result.loss_history = std::move(nm.history);
    result.log_likelihood = -nm.fx;
    return result;
}

RbfTrainResult train_rbf(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double noise_var,
                         std::uint64_t seed) {
    if (X.rows() < 2) throw std::invalid_argument("train_rbf: need at least two points");
    bool all_identical = true;
    for (Eigen::Index i = 1; i < X.rows() && all_identical; ++i) {
        all_identical = X.row(i) == X.row(0);
    }
    if (all_identical) {
        throw std::invalid_argument("train_rbf: degenerate data (all inputs identical)");
    }

    const double inf = std::numeric_limits<double>::infinity();
    auto negative_mll = [&](const Eigen::VectorXd& log_params) -> double {
        RbfKernel kernel{std::exp(log_params[0]), std::exp(log_params[1])};
        try {
            return -log_marginal_likelihood(fit_gp(kernel, X, y, noise_var));
        } catch (const NotPositiveDefiniteError&) {
            return inf;
        }
    };

    constexpr int kStarts = 5;
    RbfTrainResult result;
    result.log_likelihood = -inf;

    for (int s = 0; s < kStarts; ++s) {
        rng::Engine eng = rng::engine(seed, {static_cast<std::uint64_t>(s)});
        Eigen::VectorXd start(2);
        start[0] = rng::uniform(eng, std::log(0.05), std::log(2.0));  // lengthscale
        start[1] = rng::uniform(eng, std::log(0.2), std::log(2.0));   // amplitude
        result.start_log_likelihoods.push_back(-negative_mll(start));

        NelderMeadOptions options;
        options.max_evals = 80;
        options.initial_step = 0.5;
        const NelderMeadResult nm = nelder_mead(negative_mll, start, options);
        if (-nm.fx > result.log_likelihood) {
            result.log_likelihood = -nm.fx;
            result.kernel = RbfKernel{std::exp(nm.x[0]), std::exp(nm.x[1])};
        }
    }
    if (!std::isfinite(result.log_likelihood)) {
        throw std::runtime_error("train_rbf: no initialization produced a finite likelihood");
    }
    return result;
}

nlohmann::json model_summary_json(const GpModel& model, const ScalingSpec& scaling) {
    nlohmann::json j;
    if (const auto* q = std::get_if<QuantumKernelConfig>(&model.kernel)) {
        j["kernel"] = {{"type", "quantum"},
                       {"feature_map", q->spec},
                       {"theta", std::vector<double>(q->theta.begin(), q->theta.end())},
                       {"mode", to_string(q->mode)},
                       {"shots", q->shots}};
    } else {
        const auto& rbf = std::get<RbfKernel>(model.kernel);
        j["kernel"] = {{"type", "rbf"},
                       {"lengthscale", rbf.lengthscale},
                       {"amplitude", rbf.amplitude}};
    }
    j["noise_var"] = model.noise_var;
    j["jitter"] = model.jitter;
    j["clipped_mass"] = model.clipped_mass;
    j["n_train"] = model.y_train.size();
    j["log_marginal_likelihood"] = log_marginal_likelihood(model);
    j["scaling"] = {
        {"input_lo", std::vector<double>(scaling.input_lo.begin(), scaling.input_lo.end())},
        {"input_hi", std::vector<double>(scaling.input_hi.begin(), scaling.input_hi.end())},
        {"label_lo", scaling.label_lo},
        {"label_hi", scaling.label_hi}};
    return j;
}

}  // namespace qgpr
