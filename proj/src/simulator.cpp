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

#include "qgpr/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgpr/rng.hpp"

namespace qgpr {

namespace {

constexpr int kMaxQubits = 20;

struct Mat2 {
    std::complex<double> u00, u01, u10, u11;
};

Mat2 single_qubit_matrix(const GateOp& op) {
    using namespace std::complex_literals;
    switch (op.kind) {
        case GateKind::RX: {
            const double c = std::cos(0.5 * op.angle);
            const double s = std::sin(0.5 * op.angle);
            return {c, -1i * s, -1i * s, c};
        }
        case GateKind::RY: {
            const double c = std::cos(0.5 * op.angle);
            const double s = std::sin(0.5 * op.angle);
            return {c, -s, s, c};
        }
        case GateKind::RZ: {
            const std::complex<double> e = std::exp(-0.5i * op.angle);
            return {e, 0.0, 0.0, std::conj(e)};
        }
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        default:
            throw std::logic_error("single_qubit_matrix: not a single-qubit gate");
    }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: num_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double StateVector::norm_sq() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

void validate_gate(const GateOp& op, int num_qubits) {
    if (op.target < 0 || op.target >= num_qubits) {
        throw std::invalid_argument("invalid gate: target " + std::to_string(op.target) +
                                    " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    if (op.kind == GateKind::CNOT) {
        if (op.control < 0 || op.control >= num_qubits) {
            throw std::invalid_argument("invalid gate: control " + std::to_string(op.control) +
                                        " out of range for " + std::to_string(num_qubits) +
                                        " qubits");
        }
        if (op.control == op.target) {
            throw std::invalid_argument("invalid gate: CNOT control equals target");
        }
    } else if (op.kind == GateKind::RX || op.kind == GateKind::RY || op.kind == GateKind::RZ) {
        if (!std::isfinite(op.angle)) {
            throw std::invalid_argument("invalid gate: non-finite rotation angle");
        }
    }
}

void validate_circuit(const Circuit& circuit) {
    if (circuit.num_qubits < 1 || circuit.num_qubits > kMaxQubits) {
        throw std::invalid_argument("invalid circuit: num_qubits out of range");
    }
    for (const auto& op : circuit.ops) validate_gate(op, circuit.num_qubits);
}

void apply_gate_in_place(StateVector& state, const GateOp& op) {
    validate_gate(op, state.num_qubits());
    auto& amps = state.amplitudes();
    const std::size_t dim = amps.size();

    if (op.kind == GateKind::CNOT) {
        const std::size_t cbit = std::size_t{1} << op.control;
        const std::size_t tbit = std::size_t{1} << op.target;
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cbit) != 0 && (i & tbit) == 0) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
        return;
    }

    const Mat2 m = single_qubit_matrix(op);
    const std::size_t step = std::size_t{1} << op.target;
    for (std::size_t base = 0; base < dim; base += 2 * step) {
        for (std::size_t i = base; i < base + step; ++i) {
            const std::complex<double> a0 = amps[i];
            const std::complex<double> a1 = amps[i + step];
            amps[i] = m.u00 * a0 + m.u01 * a1;
            amps[i + step] = m.u10 * a0 + m.u11 * a1;
        }
    }
}

StateVector apply_gate(const StateVector& state, const GateOp& op) {
    StateVector out = state;
    apply_gate_in_place(out, op);
    return out;
}

StateVector run_circuit(const Circuit& circuit) {
    validate_circuit(circuit);
    StateVector state(circuit.num_qubits);
    for (const auto& op : circuit.ops) apply_gate_in_place(state, op);
    return state;
}

GateOp inverse(const GateOp& op) {
    GateOp inv = op;
    if (op.kind == GateKind::RX || op.kind == GateKind::RY || op.kind == GateKind::RZ) {
        inv.angle = -op.angle;
    }
    return inv;
}

Circuit inverse(const Circuit& circuit) {
    Circuit inv;
    inv.num_qubits = circuit.num_qubits;
    inv.ops.reserve(circuit.ops.size());
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        inv.ops.push_back(inverse(*it));
    }
    return inv;
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner_product: qubit count mismatch");
    }
    std::complex<double> acc{0.0, 0.0};
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) acc += std::conj(av[i]) * bv[i];
    return acc;
}

double sample_ground_state_prob(const StateVector& state, long long shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("sample_ground_state_prob: shots must be >= 1");
    }
    // Inverse-CDF sampling in basis order puts the all-zeros outcome on
    // [0, p0), so tallying it only needs the uniform draw, not the full walk.
    const double p0 = std::norm(state[0]);
    rng::Engine eng = rng::engine(seed);
    long long zeros = 0;
    for (long long s = 0; s < shots; ++s) {
        zeros += rng::uniform01(eng) < p0 ? 1 : 0;
    }
    return static_cast<double>(zeros) / static_cast<double>(shots);
}

}  // namespace qgpr
