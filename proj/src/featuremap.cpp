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

#include "qgpr/featuremap.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace qgpr {

namespace {

constexpr double kClampTol = 1e-12;

double clamp_to_unit_interval(double v, int dim_index) {
    if (v < -1.0 - kClampTol || v > 1.0 + kClampTol) {
        throw std::domain_error("feature map input out of [-1, 1] at dimension " +
                                std::to_string(dim_index) + ": " + std::to_string(v));
    }
    return std::clamp(v, -1.0, 1.0);
}

void check_theta(const FeatureMapSpec& spec, const ParamVector& theta) {
    if (theta.size() != spec.num_params()) {
        throw std::invalid_argument("feature map expects " + std::to_string(spec.num_params()) +
                                    " parameters, got " + std::to_string(theta.size()));
    }
    if (!theta.allFinite()) {
        throw std::invalid_argument("feature map parameters must be finite");
    }
}

}  // namespace

const char* to_string(FeatureMapFamily family) {
    switch (family) {
        case FeatureMapFamily::ChebyshevHwe: return "chebyshev-hwe";
        case FeatureMapFamily::HweAlt: return "hwe-alt";
    }
    return "unknown";
}

FeatureMapFamily feature_map_family_from_string(const std::string& name) {
    if (name == "chebyshev-hwe") return FeatureMapFamily::ChebyshevHwe;
    if (name == "hwe-alt") return FeatureMapFamily::HweAlt;
    throw std::invalid_argument("unknown feature map family: " + name);
}

int FeatureMapSpec::num_params() const {
    switch (family) {
        case FeatureMapFamily::ChebyshevHwe: return num_qubits * (num_layers + 1);
        case FeatureMapFamily::HweAlt: return 2 * num_qubits * num_layers;
    }
    return 0;
}

void FeatureMapSpec::validate() const {
    if (num_qubits < 1) throw std::invalid_argument("feature map needs num_qubits >= 1");
    if (num_layers < 1) throw std::invalid_argument("feature map needs num_layers >= 1");
    if (input_dim < 1) throw std::invalid_argument("feature map needs input_dim >= 1");
}

void to_json(nlohmann::json& j, const FeatureMapSpec& spec) {
    j = nlohmann::json{{"family", to_string(spec.family)},
                       {"num_qubits", spec.num_qubits},
                       {"num_layers", spec.num_layers},
                       {"input_dim", spec.input_dim}};
}

void from_json(const nlohmann::json& j, FeatureMapSpec& spec) {
    spec.family = feature_map_family_from_string(j.at("family").get<std::string>());
    spec.num_qubits = j.at("num_qubits").get<int>();
    spec.num_layers = j.at("num_layers").get<int>();
    spec.input_dim = j.at("input_dim").get<int>();
    spec.validate();
}

Circuit build_feature_map(const FeatureMapSpec& spec, const ParamVector& theta,
                          const Eigen::VectorXd& x) {
    spec.validate();
    check_theta(spec, theta);
    if (x.size() != spec.input_dim) {
        throw std::invalid_argument("feature map expects input of dimension " +
                                    std::to_string(spec.input_dim) + ", got " +
                                    std::to_string(x.size()));
    }

    const int q = spec.num_qubits;
    const int d = spec.input_dim;
    Eigen::VectorXd xc(d);
    for (int k = 0; k < d; ++k) xc[k] = clamp_to_unit_interval(x[k], k);

    Circuit circuit;
    circuit.num_qubits = q;
    int p = 0;

    if (spec.family == FeatureMapFamily::ChebyshevHwe) {
        circuit.ops.reserve(static_cast<std::size_t>(spec.num_layers) * (3 * q - 1) + q);
        for (int layer = 0; layer < spec.num_layers; ++layer) {
            for (int j = 0; j < q; ++j) {
                circuit.ops.push_back({GateKind::RY, j, -1, theta[p++]});
            }
            for (int j = 0; j < q; ++j) {
                circuit.ops.push_back({GateKind::RY, j, -1, std::acos(xc[j % d])});
            }
            for (int j = 0; j + 1 < q; ++j) {
                circuit.ops.push_back({GateKind::CNOT, j + 1, j, 0.0});
            }
        }
        for (int j = 0; j < q; ++j) {
            circuit.ops.push_back({GateKind::RY, j, -1, theta[p++]});
        }
    } else {  // HweAlt
        constexpr double data_scale = std::numbers::pi / 2.0;
        circuit.ops.reserve(static_cast<std::size_t>(spec.num_layers) * 4 * q);
        for (int layer = 0; layer < spec.num_layers; ++layer) {
            for (int j = 0; j < q; ++j) {
                circuit.ops.push_back({GateKind::RY, j, -1, theta[p++]});
            }
            for (int j = 0; j < q; ++j) {
                circuit.ops.push_back({GateKind::RZ, j, -1, theta[p++]});
            }
            for (int j = 0; j < q; ++j) {
                circuit.ops.push_back({GateKind::RY, j, -1, data_scale * xc[j % d]});
            }
            if (q >= 2) {
                for (int j = 0; j < q; ++j) {
                    circuit.ops.push_back({GateKind::CNOT, (j + 1) % q, j, 0.0});
                }
            }
        }
    }
    return circuit;
}

void ScalingSpec::validate_inputs() const {
    if (input_lo.size() != input_hi.size() || input_lo.size() == 0) {
        throw std::domain_error("input scaling bounds malformed");
    }
    for (Eigen::Index k = 0; k < input_lo.size(); ++k) {
        if (!(input_lo[k] < input_hi[k])) {
            throw std::domain_error("input scaling requires lo < hi per dimension");
        }
    }
}

void ScalingSpec::validate_labels() const {
    if (!(label_lo < label_hi)) {
        throw std::domain_error("label scaling requires lo < hi (degenerate label range)");
    }
}

ScalingSpec ScalingSpec::from_data(const Eigen::VectorXd& input_lo,
                                   const Eigen::VectorXd& input_hi,
                                   const Eigen::VectorXd& labels) {
    ScalingSpec s;
    s.input_lo = input_lo;
    s.input_hi = input_hi;
    if (labels.size() == 0) throw std::domain_error("label scaling needs at least one label");
    s.label_lo = labels.minCoeff();
    s.label_hi = labels.maxCoeff();
    s.validate_inputs();
    s.validate_labels();
    return s;
}

Eigen::VectorXd scale_input(const Eigen::VectorXd& x_raw, const ScalingSpec& scaling) {
    scaling.validate_inputs();
    if (x_raw.size() != scaling.input_lo.size()) {
        throw std::invalid_argument("scale_input: dimension mismatch");
    }
    Eigen::VectorXd out(x_raw.size());
    for (Eigen::Index k = 0; k < x_raw.size(); ++k) {
        const double lo = scaling.input_lo[k];
        const double hi = scaling.input_hi[k];
        if (x_raw[k] < lo || x_raw[k] > hi) {
            throw std::domain_error("input outside scaling bounds at dimension " +
                                    std::to_string(k));
        }
        out[k] = 2.0 * (x_raw[k] - lo) / (hi - lo) - 1.0;
    }
    return out;
}

Eigen::VectorXd unscale_input(const Eigen::VectorXd& x_scaled, const ScalingSpec& scaling) {
    scaling.validate_inputs();
    if (x_scaled.size() != scaling.input_lo.size()) {
        throw std::invalid_argument("unscale_input: dimension mismatch");
    }
    Eigen::VectorXd out(x_scaled.size());
    for (Eigen::Index k = 0; k < x_scaled.size(); ++k) {
        const double lo = scaling.input_lo[k];
        const double hi = scaling.input_hi[k];
        out[k] = lo + 0.5 * (x_scaled[k] + 1.0) * (hi - lo);
    }
    return out;
}

Eigen::MatrixXd scale_inputs(const Eigen::MatrixXd& X_raw, const ScalingSpec& scaling) {
    Eigen::MatrixXd out(X_raw.rows(), X_raw.cols());
    for (Eigen::Index i = 0; i < X_raw.rows(); ++i) {
        out.row(i) = scale_input(X_raw.row(i), scaling).transpose();
    }
    return out;
}

Eigen::VectorXd scale_labels(const Eigen::VectorXd& y_raw, const ScalingSpec& scaling) {
    scaling.validate_labels();
    const double span = scaling.label_hi - scaling.label_lo;
    return (2.0 * (y_raw.array() - scaling.label_lo) / span - 1.0).matrix();
}

Eigen::VectorXd unscale_labels(const Eigen::VectorXd& y_scaled, const ScalingSpec& scaling) {
    scaling.validate_labels();
    const double span = scaling.label_hi - scaling.label_lo;
    return (scaling.label_lo + 0.5 * (y_scaled.array() + 1.0) * span).matrix();
}

double label_scale_factor(const ScalingSpec& scaling) {
    scaling.validate_labels();
    return 2.0 / (scaling.label_hi - scaling.label_lo);
}

double unscale_std(double std_scaled, const ScalingSpec& scaling) {
    return std_scaled / label_scale_factor(scaling);
}

Eigen::VectorXd unscale_std(const Eigen::VectorXd& std_scaled, const ScalingSpec& scaling) {
    return std_scaled / label_scale_factor(scaling);
}

}  // namespace qgpr
