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

/// Fidelity quantum kernels k(x, x') = |<phi(x')|phi(x)>|^2, evaluated
/// either exactly from statevectors or from simulated measurement shots,
/// plus Gram matrix assembly and eigenvalue-cutoff regularization.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "qgpr/featuremap.hpp"
#include "qgpr/simulator.hpp"

namespace qgpr {

enum class KernelMode { Exact, Sampled };

const char* to_string(KernelMode mode);
KernelMode kernel_mode_from_string(const std::string& name);

struct QuantumKernelConfig {
    FeatureMapSpec spec;
    ParamVector theta;
    KernelMode mode = KernelMode::Exact;
    long long shots = 0;           // Sampled only
    std::uint64_t master_seed = 0; // Sampled only

    void validate() const;
};

struct GramMatrix {
    Eigen::MatrixXd entries;
    bool symmetric = false;
    bool regularized = false;
    double clipped_mass = 0.0;  // total |negative eigenvalue| removed by the cutoff
};

/// |phi(x; theta)> for a scaled point.
StateVector embed(const QuantumKernelConfig& cfg, const Eigen::VectorXd& x);

/// Exact fidelity kernel. Requires cfg.mode == Exact.
double kernel_exact(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                    const QuantumKernelConfig& cfg);

/// Shot-based estimate: runs U(x'){dagger} U(x) on |0...0> and measures the
/// all-zeros frequency with cfg.shots shots. The per-entry stream is seeded
/// from (cfg.master_seed, entry_seed). Requires cfg.mode == Sampled.
double kernel_sampled(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                      const QuantumKernelConfig& cfg, std::uint64_t entry_seed);

/// Entry seed used by gram() for element (i, j); `cross` distinguishes
/// train/train from train/test assemblies so seeds never collide.
std::uint64_t gram_entry_seed(bool cross, Eigen::Index i, Eigen::Index j);

/// Symmetric Gram over the rows of X. Only the upper triangle is evaluated
/// and mirrored; the diagonal is the analytic fidelity 1.
GramMatrix gram(const Eigen::MatrixXd& X, const QuantumKernelConfig& cfg);

/// Rectangular Gram between rows of X (n) and rows of X2 (m).
GramMatrix gram(const Eigen::MatrixXd& X, const Eigen::MatrixXd& X2,
                const QuantumKernelConfig& cfg);

/// Projects a symmetric matrix onto the PSD cone by zeroing negative
/// eigenvalues (the Frobenius-nearest PSD matrix). Eigenvalues in
/// (-1e-10, 0) count as numerical zeros and do not add to clipped_mass.
GramMatrix regularize_cutoff(const GramMatrix& g);

/// CSV persistence: a two-line header (column names, then n, m, mode,
/// shots, clipped_mass) followed by the row-major entries.
void write_gram_csv(std::ostream& os, const GramMatrix& g, KernelMode mode, long long shots);

struct GramCsv {
    GramMatrix gram;
    KernelMode mode = KernelMode::Exact;
    long long shots = 0;
};
GramCsv read_gram_csv(std::istream& is);

}  // namespace qgpr
