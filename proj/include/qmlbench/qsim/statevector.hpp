// Copyright 2026 The qmlbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense statevector simulator for the small gate set used by the feature
// map and the variational ansatz.
//
// Qubit ordering is little-endian: bit q of a basis index is the value of
// qubit q, so |q1 q0> = |10> is index 2. Bitstrings returned by
// sample_counts are printed most-significant qubit first ("q_{n-1}...q_0").

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qmlbench::qsim {

using cplx = std::complex<double>;

inline constexpr unsigned kMaxQubits = 24;

enum class GateKind { H, RY, P, CX };

struct Gate {
    GateKind kind;
    unsigned target = 0;
    unsigned control = 0; // CX only
    double angle = 0.0;   // radians; RY and P only

    static Gate h(unsigned q) { return {GateKind::H, q, 0, 0.0}; }
    static Gate ry(unsigned q, double theta) { return {GateKind::RY, q, 0, theta}; }
    static Gate p(unsigned q, double phi) { return {GateKind::P, q, 0, phi}; }
    static Gate cx(unsigned control, unsigned target) { return {GateKind::CX, target, control, 0.0}; }
};

class Statevector {
public:
    /// |0...0> on n qubits; 1 <= n <= kMaxQubits.
    explicit Statevector(unsigned n_qubits);

    /// Takes explicit amplitudes. Length must be 2^n and the norm 1 (1e-10).
    static Statevector from_amplitudes(std::vector<cplx> amplitudes);

    unsigned num_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    void apply(const Gate& gate);
    void apply(std::span<const Gate> gates);

    double norm_squared() const;

    /// Probability that the basis index has odd popcount.
    double odd_parity_probability() const;

private:
    Statevector(unsigned n_qubits, std::vector<cplx> amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {}

    unsigned n_qubits_;
    std::vector<cplx> amps_;
};

Statevector init_state(unsigned n_qubits);

/// Applies a gate to a copy of `state`.
Statevector apply_gate(Statevector state, const Gate& gate);

cplx inner_product(const Statevector& a, const Statevector& b);

/// Multinomial draw of `shots` measurements in the computational basis.
/// Deterministic for a given seed; counts always sum to shots.
std::map<std::string, std::uint64_t> sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

std::string bitstring(std::size_t index, unsigned n_qubits);

} // namespace qmlbench::qsim
