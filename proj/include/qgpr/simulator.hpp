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

/// Dense statevector simulation of small parameterized circuits.
///
/// Basis states are indexed little-endian: qubit 0 is the least significant
/// bit of the amplitude index. The gate set {RX, RY, RZ, H, CNOT} is enough
/// to express the feature maps used elsewhere in the library.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qgpr {

enum class GateKind { RX, RY, RZ, H, CNOT };

struct GateOp {
    GateKind kind = GateKind::RY;
    int target = 0;
    int control = -1;     // CNOT only
    double angle = 0.0;   // rotation gates only

    bool operator==(const GateOp&) const = default;
};

struct Circuit {
    int num_qubits = 1;
    std::vector<GateOp> ops;

    bool operator==(const Circuit&) const = default;
};

class StateVector {
  public:
    /// Initializes |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    std::complex<double>& operator[](std::size_t i) { return amps_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return amps_[i]; }

    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }

    double norm_sq() const;

  private:
    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

/// Throws std::invalid_argument if the gate indices or angle are unusable
/// on a register of `num_qubits` qubits.
void validate_gate(const GateOp& op, int num_qubits);
void validate_circuit(const Circuit& circuit);

/// In-place single gate application; the norm is preserved to ~1e-15.
void apply_gate_in_place(StateVector& state, const GateOp& op);

StateVector apply_gate(const StateVector& state, const GateOp& op);

/// Runs `circuit` on |0...0>.
StateVector run_circuit(const Circuit& circuit);

/// Inverse of a gate / circuit: rotations negate their angle, H and CNOT
/// are self-inverse, and the op order reverses.
GateOp inverse(const GateOp& op);
Circuit inverse(const Circuit& circuit);

/// <a|b>, conjugate-linear in `a`. Throws on qubit-count mismatch.
std::complex<double> inner_product(const StateVector& a, const StateVector& b);

/// Draws `shots` basis-state samples from |amplitudes|^2 with a generator
/// seeded by `seed` and returns the observed frequency of the all-zeros
/// outcome. Throws std::invalid_argument for shots < 1.
double sample_ground_state_prob(const StateVector& state, long long shots, std::uint64_t seed);

}  // namespace qgpr
