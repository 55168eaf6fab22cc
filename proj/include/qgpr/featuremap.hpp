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

/// Parameterized data-encoding circuits and input/label scaling.
///
/// Two circuit families are provided. ChebyshevHwe interleaves trainable RY
/// rotations, arccos data rotations and a linear CNOT chain, closing with a
/// final trainable RY layer; it has q*(l+1) trainable angles. HweAlt is a
/// generic rotation ladder (trainable RY+RZ per qubit, data injected as RY
/// rotations scaled by pi/2, ring of CNOTs) with 2*q*l trainable angles.
/// Inputs are assigned to qubits round-robin: qubit j encodes feature
/// j mod d, so every feature lands on at least floor(q/d) qubits.

#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "qgpr/simulator.hpp"

namespace qgpr {

enum class FeatureMapFamily { ChebyshevHwe, HweAlt };

const char* to_string(FeatureMapFamily family);
FeatureMapFamily feature_map_family_from_string(const std::string& name);

/// Trainable angles, radians. All entries must be finite.
using ParamVector = Eigen::VectorXd;

struct FeatureMapSpec {
    FeatureMapFamily family = FeatureMapFamily::ChebyshevHwe;
    int num_qubits = 4;
    int num_layers = 2;
    int input_dim = 1;

    int num_params() const;
    void validate() const;

    bool operator==(const FeatureMapSpec&) const = default;
};

void to_json(nlohmann::json& j, const FeatureMapSpec& spec);
void from_json(const nlohmann::json& j, FeatureMapSpec& spec);

/// Affine scaling between raw data coordinates and the model's working
/// ranges: inputs to [-1, 1]^d (the arccos domain), labels to [-1, 1].
struct ScalingSpec {
    Eigen::VectorXd input_lo;
    Eigen::VectorXd input_hi;
    double label_lo = -1.0;
    double label_hi = 1.0;

    void validate_inputs() const;
    void validate_labels() const;

    /// Input bounds from explicit per-dimension ranges, label bounds from
    /// the observed training labels. Degenerate ranges throw.
    static ScalingSpec from_data(const Eigen::VectorXd& input_lo, const Eigen::VectorXd& input_hi,
                                 const Eigen::VectorXd& labels);
};

/// Binds a scaled data point and trainable angles into a concrete circuit.
/// `x` must already live in [-1, 1]^d; values outside by more than 1e-12
/// raise std::domain_error, closer ones are clamped onto the boundary.
Circuit build_feature_map(const FeatureMapSpec& spec, const ParamVector& theta,
                          const Eigen::VectorXd& x);

/// Raw point -> [-1, 1]^d. Out-of-bounds input raises std::domain_error;
/// there is no silent clamping.
Eigen::VectorXd scale_input(const Eigen::VectorXd& x_raw, const ScalingSpec& scaling);
Eigen::VectorXd unscale_input(const Eigen::VectorXd& x_scaled, const ScalingSpec& scaling);

/// Row-wise variants for n x d matrices of points.
Eigen::MatrixXd scale_inputs(const Eigen::MatrixXd& X_raw, const ScalingSpec& scaling);

Eigen::VectorXd scale_labels(const Eigen::VectorXd& y_raw, const ScalingSpec& scaling);
Eigen::VectorXd unscale_labels(const Eigen::VectorXd& y_scaled, const ScalingSpec& scaling);

/// Standard deviations transform without the offset.
double unscale_std(double std_scaled, const ScalingSpec& scaling);
Eigen::VectorXd unscale_std(const Eigen::VectorXd& std_scaled, const ScalingSpec& scaling);

/// Label-difference quantities (noise std, acquisition margins) map with
/// the pure scale factor 2 / (label_hi - label_lo).
double label_scale_factor(const ScalingSpec& scaling);

}  // namespace qgpr
