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

/// Gaussian process regression with either a quantum fidelity kernel or a
/// classical RBF kernel. Training data are expected in scaled coordinates
/// (inputs in [-1, 1]^d, labels in [-1, 1]); callers own the scaling.
///
/// The posterior follows the standard equations
///   mu*    = k_XX*^T (k_XX + sigma^2 I)^-1 y
///   Sigma* = k_X*X* - k_XX*^T (k_XX + sigma^2 I)^-1 k_XX*
/// solved through a Cholesky factor of the (jittered) training matrix.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qgpr/qkernel.hpp"

namespace qgpr {

struct RbfKernel {
    double lengthscale = 1.0;
    double amplitude = 1.0;

    double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const;
};

using KernelProvider = std::variant<QuantumKernelConfig, RbfKernel>;

bool is_quantum(const KernelProvider& kernel);

/// Prior variance k(x, x): 1 for the fidelity kernel, amplitude for RBF.
double prior_variance(const KernelProvider& kernel);

class NotPositiveDefiniteError : public std::runtime_error {
  public:
    explicit NotPositiveDefiniteError(double min_eigenvalue);
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    double min_eigenvalue_;
};

struct GpModel {
    KernelProvider kernel;
    Eigen::MatrixXd X_train;  // n x d, scaled
    Eigen::VectorXd y_train;  // n, scaled
    double noise_var = 0.0;
    Eigen::MatrixXd chol_L;   // lower triangular, L L^T = K_reg + noise_var I + jitter I
    Eigen::VectorXd alpha;    // (K + noise_var I)^-1 y
    double jitter = 0.0;
    double clipped_mass = 0.0;  // from cutoff regularization of the training Gram
};

struct Posterior {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    Eigen::VectorXd std;       // sqrt of the clamped covariance diagonal
    double max_clamp = 0.0;    // largest negative diagonal magnitude clamped away
};

/// Mean and pointwise std only; skips the m x m test Gram, which makes it
/// the right call for large candidate batches.
struct MarginalPrediction {
    Eigen::VectorXd mean;
    Eigen::VectorXd std;
};

GramMatrix kernel_matrix(const KernelProvider& kernel, const Eigen::MatrixXd& X);
GramMatrix kernel_matrix(const KernelProvider& kernel, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& X2);

/// Fits the GP: assembles the training Gram (cutoff-regularized for sampled
/// quantum kernels), adds noise_var to the diagonal and factorizes with an
/// escalating jitter of {1e-10, 1e-8, 1e-6} x mean diagonal. Throws
/// NotPositiveDefiniteError when all three attempts fail.
GpModel fit_gp(const KernelProvider& kernel, const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               double noise_var);

Posterior predict(const GpModel& model, const Eigen::MatrixXd& X_star);
MarginalPrediction predict_marginal(const GpModel& model, const Eigen::MatrixXd& X_star);

/// log p(y | X) = -1/2 y^T alpha - sum_i log L_ii - n/2 log(2 pi).
/// The 2 pi constant is kept even though it never moves the argmax.
double log_marginal_likelihood(const GpModel& model);

struct MllTrainResult {
    ParamVector theta;
    std::vector<double> loss_history;  // best-so-far negative log-likelihood per evaluation
    double log_likelihood = 0.0;
};

/// Trains feature-map angles by maximizing the marginal likelihood with
/// Nelder-Mead (exact kernel evaluations; `budget` objective evaluations).
/// Throws std::invalid_argument when the loss at theta0 is non-finite.
MllTrainResult train_mll(const FeatureMapSpec& spec, const Eigen::MatrixXd& X,
                         const Eigen::VectorXd& y, double noise_var, const ParamVector& theta0,
                         int budget, std::uint64_t seed);

struct RbfTrainResult {
    RbfKernel kernel;
    double log_likelihood = 0.0;
    std::vector<double> start_log_likelihoods;  // one per multistart initialization
};

/// Maximum-likelihood RBF hyperparameters over (log lengthscale,
/// log amplitude), multi-started from 5 seeded initializations.
RbfTrainResult train_rbf(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double noise_var,
                         std::uint64_t seed);

/// Reproducibility record: kernel parameters, noise, scaling, likelihood.
nlohmann::json model_summary_json(const GpModel& model, const ScalingSpec& scaling);

namespace detail {

struct CholeskyResult {
    Eigen::MatrixXd L;
    double jitter = 0.0;
};

/// Factorizes A + jitter I for the escalating jitter schedule; reports the
/// minimum eigenvalue of A on failure.
CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& A);

}  // namespace detail

}  // namespace qgpr
