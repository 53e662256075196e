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

#include "qmlbench/qsim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qmlbench/common.hpp"
#include "qmlbench/qsim/simd.hpp"

namespace qmlbench::qsim {

namespace {

void check_qubit_count(unsigned n)
{
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
}

void check_index(unsigned q, unsigned n)
{
    if (q >= n)
        throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
}

} // namespace

Statevector::Statevector(unsigned n_qubits) : n_qubits_(n_qubits)
{
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes)
{
    const std::size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n))
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    const unsigned qubits = static_cast<unsigned>(std::countr_zero(n));
    check_qubit_count(qubits);
    double norm = 0.0;
    for (const cplx& z : amplitudes)
        norm += std::norm(z);
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("amplitudes are not normalized");
    return Statevector(qubits, std::move(amplitudes));
}

void Statevector::apply(const Gate& gate)
{
    const auto& k = simd::active();
    check_index(gate.target, n_qubits_);
    switch (gate.kind) {
    case GateKind::H: {
        const double s = 1.0 / std::sqrt(2.0);
        const cplx m[4] = {s, s, s, -s};
        k.apply_1q(amps_, gate.target, m);
        break;
    }
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        const cplx m[4] = {c, -s, s, c};
        k.apply_1q(amps_, gate.target, m);
        break;
    }
    case GateKind::P:
        k.apply_phase(amps_, gate.target, std::polar(1.0, gate.angle));
        break;
    case GateKind::CX:
        check_index(gate.control, n_qubits_);
        if (gate.control == gate.target)
            throw std::invalid_argument("CX control and target must differ");
        k.apply_cx(amps_, gate.control, gate.target);
        break;
    }
}

void Statevector::apply(std::span<const Gate> gates)
{
    for (const Gate& g : gates)
        apply(g);
}

double Statevector::norm_squared() const { return simd::active().norm_squared(amps_); }

double Statevector::odd_parity_probability() const
{
    double odd = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (std::popcount(i) & 1)
            odd += std::norm(amps_[i]);
    return odd;
}

Statevector init_state(unsigned n_qubits) { return Statevector(n_qubits); }

Statevector apply_gate(Statevector state, const Gate& gate)
{
    state.apply(gate);
    return state;
}

cplx inner_product(const Statevector& a, const Statevector& b)
{
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner_product: states have different qubit counts");
    return simd::active().inner_product(a.amplitudes(), b.amplitudes());
}

std::string bitstring(std::size_t index, unsigned n_qubits)
{
    std::string s(n_qubits, '0');
    for (unsigned q = 0; q < n_qubits; ++q)
        if ((index >> q) & 1)
            s[n_qubits - 1 - q] = '1';
    return s;
}

std::map<std::string, std::uint64_t> sample_counts(const Statevector& state, std::uint64_t shots, std::uint64_t seed)
{
    if (shots == 0)
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    const auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        total += std::norm(amps[i]);
        cumulative[i] = total;
    }

    std::vector<std::uint64_t> hits(amps.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), amps.size() - 1);
        ++hits[idx];
    }

    std::map<std::string, std::uint64_t> counts;
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i] > 0)
            counts.emplace(bitstring(i, state.num_qubits()), hits[i]);
    return counts;
}

} // namespace qmlbench::qsim
