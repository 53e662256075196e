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

#include "qmlbench/qsim/simd.hpp"

#include <algorithm>
#include <utility>

namespace qmlbench::qsim::simd {

namespace {

using detail::insert_zero;

void apply_1q(std::span<cplx> amps, unsigned q, const cplx* m)
{
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, q);
        const std::size_t i1 = i0 | stride;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_phase(std::span<cplx> amps, unsigned q, cplx phase)
{
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k)
        amps[insert_zero(k, q) | stride] *= phase;
}

void apply_cx(std::span<cplx> amps, unsigned control, unsigned target)
{
    const unsigned lo = std::min(control, target);
    const unsigned hi = std::max(control, target);
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t quarter = amps.size() / 4;
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t i = insert_zero(insert_zero(k, lo), hi) | cbit;
        std::swap(amps[i], amps[i | tbit]);
    }
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b)
{
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm_squared(std::span<const cplx> a)
{
    double acc = 0.0;
    for (const cplx& z : a)
        acc += std::norm(z);
    return acc;
}

} // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{Isa::Scalar, apply_1q, apply_phase, apply_cx, inner_product, norm_squared};
    return table;
}

} // namespace qmlbench::qsim::simd
