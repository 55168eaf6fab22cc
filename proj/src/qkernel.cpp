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

#include "qgpr/qkernel.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qgpr/io.hpp"
#include "qgpr/rng.hpp"

namespace qgpr {

namespace {

constexpr double kEigZeroTol = 1e-10;

std::vector<StateVector> embed_all(const QuantumKernelConfig& cfg, const Eigen::MatrixXd& X) {
    std::vector<StateVector> states;
    states.reserve(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        states.push_back(run_circuit(build_feature_map(cfg.spec, cfg.theta, X.row(i))));
    }
    return states;
}

}  // namespace

const char* to_string(KernelMode mode) {
    return mode == KernelMode::Exact ? "EXACT" : "SAMPLED";
}

KernelMode kernel_mode_from_string(const std::string& name) {
    if (name == "EXACT" || name == "exact") return KernelMode::Exact;
    if (name == "SAMPLED" || name == "sampled") return KernelMode::Sampled;
    throw std::invalid_argument("unknown kernel mode: " + name);
}

void QuantumKernelConfig::validate() const {
    spec.validate();
    if (theta.size() != spec.num_params()) {
        throw std::invalid_argument("kernel config: theta has " + std::to_string(theta.size()) +
                                    " entries, feature map needs " +
                                    std::to_string(spec.num_params()));
    }
    if (mode == KernelMode::Sampled && shots < 1) {
        throw std::invalid_argument("kernel config: sampled mode requires shots >= 1");
    }
}

StateVector embed(const QuantumKernelConfig& cfg, const Eigen::VectorXd& x) {
    return run_circuit(build_feature_map(cfg.spec, cfg.theta, x));
}

double kernel_exact(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                    const QuantumKernelConfig& cfg) {
    cfg.validate();
    if (cfg.mode != KernelMode::Exact) {
        throw std::invalid_argument("kernel_exact requires Exact mode config");
    }
    return std::norm(inner_product(embed(cfg, x2), embed(cfg, x)));
}

double kernel_sampled(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                      const QuantumKernelConfig& cfg, std::uint64_t entry_seed) {
    cfg.validate();
    if (cfg.mode != KernelMode::Sampled) {
        throw std::invalid_argument("kernel_sampled requires Sampled mode config");
    }
    Circuit composed = build_feature_map(cfg.spec, cfg.theta, x);
    const Circuit undo = inverse(build_feature_map(cfg.spec, cfg.theta, x2));
    composed.ops.insert(composed.ops.end(), undo.ops.begin(), undo.ops.end());
    const StateVector state = run_circuit(composed);
    return sample_ground_state_prob(state, cfg.shots,
                                    rng::mix(cfg.master_seed, {entry_seed}));
}

std::uint64_t gram_entry_seed(bool cross, Eigen::Index i, Eigen::Index j) {
    return rng::mix(cross ? 0x63726f7373ull : 0x73796d6dull,
                    {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
}

GramMatrix gram(const Eigen::MatrixXd& X, const QuantumKernelConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = X.rows();
    if (n == 0) throw std::invalid_argument("gram: empty input");

    GramMatrix g;
    g.symmetric = true;
    g.entries.resize(n, n);
    g.entries.diagonal().setOnes();  // fidelity of a state with itself

    if (cfg.mode == KernelMode::Exact) {
        const auto states = embed_all(cfg, X);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double k = std::norm(inner_product(states[j], states[i]));
                g.entries(i, j) = k;
                g.entries(j, i) = k;
            }
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double k =
                    kernel_sampled(X.row(i), X.row(j), cfg, gram_entry_seed(false, i, j));
                g.entries(i, j) = k;
                g.entries(j, i) = k;
            }
        }
    }
    return g;
}

GramMatrix gram(const Eigen::MatrixXd& X, const Eigen::MatrixXd& X2,
                const QuantumKernelConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = X.rows();
    const Eigen::Index m = X2.rows();
    if (n == 0 || m == 0) throw std::invalid_argument("gram: empty input");

    GramMatrix g;
    g.symmetric = false;
    g.entries.resize(n, m);

    if (cfg.mode == KernelMode::Exact) {
        const auto left = embed_all(cfg, X);
        const auto right = embed_all(cfg, X2);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                g.entries(i, j) = std::norm(inner_product(right[j], left[i]));
            }
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                g.entries(i, j) =
                    kernel_sampled(X.row(i), X2.row(j), cfg, gram_entry_seed(true, i, j));
            }
        }
    }
    return g;
}

GramMatrix regularize_cutoff(const GramMatrix& g) {
    if (!g.symmetric) {
        throw std::invalid_argument("regularize_cutoff: matrix not flagged symmetric");
    }
    if (g.entries.rows() != g.entries.cols()) {
        throw std::invalid_argument("regularize_cutoff: matrix not square");
    }
    if (g.entries != g.entries.transpose().eval()) {
        throw std::invalid_argument("regularize_cutoff: entries are not symmetric");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("regularize_cutoff: eigendecomposition failed");
    }

    Eigen::VectorXd lambda = solver.eigenvalues();
    double clipped = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < 0.0) {
            if (lambda[i] < -kEigZeroTol) clipped += -lambda[i];
            lambda[i] = 0.0;
        }
    }

    GramMatrix out;
    Eigen::MatrixXd rec =
        solver.eigenvectors() * lambda.asDiagonal() * solver.eigenvectors().transpose();
    out.entries = 0.5 * (rec + rec.transpose());
    out.symmetric = true;
    out.regularized = true;
    out.clipped_mass = g.clipped_mass + clipped;
    return out;
}

void write_gram_csv(std::ostream& os, const GramMatrix& g, KernelMode mode, long long shots) {
    os << "n,m,mode,shots,clipped_mass\n";
    os << g.entries.rows() << ',' << g.entries.cols() << ',' << to_string(mode) << ',' << shots
       << ',' << io::fmt(g.clipped_mass) << '\n';
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.entries.cols(); ++j) {
            if (j) os << ',';
            os << io::fmt(g.entries(i, j));
        }
        os << '\n';
    }
}

GramCsv read_gram_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("gram csv: missing header");
    if (!std::getline(is, line)) throw std::invalid_argument("gram csv: missing metadata row");

    std::stringstream meta(line);
    std::string field;
    auto next = [&]() {
        if (!std::getline(meta, field, ',')) {
            throw std::invalid_argument("gram csv: truncated metadata row");
        }
        return field;
    };
    const Eigen::Index n = std::stoll(next());
    const Eigen::Index m = std::stoll(next());
    GramCsv out;
    out.mode = kernel_mode_from_string(next());
    out.shots = std::stoll(next());
    out.gram.clipped_mass = std::stod(next());
    out.gram.regularized = out.gram.clipped_mass > 0.0;
    out.gram.symmetric = n == m;  // refined below

    out.gram.entries.resize(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("gram csv: truncated matrix");
        std::stringstream row(line);
        for (Eigen::Index j = 0; j < m; ++j) {
            if (!std::getline(row, field, ',')) {
                throw std::invalid_argument("gram csv: short row");
            }
            out.gram.entries(i, j) = std::stod(field);
        }
    }
    if (n == m && out.gram.entries != out.gram.entries.transpose().eval()) {
        out.gram.symmetric = false;
    }
    return out;
}

}  // namespace qgpr
