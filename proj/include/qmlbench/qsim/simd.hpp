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

// Statevector inner loops. Every kernel exists as a scalar reference and,
// where the target supports it, an AVX2+FMA variant. The active table is
// chosen once at startup from CPUID; QMLBENCH_SIMD=scalar|avx2 overrides.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qmlbench::qsim::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
    Isa isa;
    /// amps[i], amps[i + 2^q] <- m * (amps[i], amps[i + 2^q]) for every pair;
    /// m is row-major {m00, m01, m10, m11}.
    void (*apply_1q)(std::span<cplx> amps, unsigned q, const cplx* m);
    /// Multiplies every amplitude whose bit q is set by `phase`.
    void (*apply_phase)(std::span<cplx> amps, unsigned q, cplx phase);
    /// Swaps target-bit pairs wherever the control bit is set.
    void (*apply_cx)(std::span<cplx> amps, unsigned control, unsigned target);
    /// sum_i conj(a_i) * b_i
    cplx (*inner_product)(std::span<const cplx> a, std::span<const cplx> b);
    double (*norm_squared)(std::span<const cplx> a);
};

const KernelTable& scalar_kernels();

/// Null when the AVX2 kernels were not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);

const KernelTable& active();
Isa active_isa();

/// Forces a kernel set; throws std::invalid_argument if unsupported here.
void select(Isa isa);

/// Scoped override, mainly for equivalence tests and benchmarks.
class ScopedIsa {
public:
    explicit ScopedIsa(Isa isa) : previous_(active_isa()) { select(isa); }
    ~ScopedIsa() { select(previous_); }
    ScopedIsa(const ScopedIsa&) = delete;
    ScopedIsa& operator=(const ScopedIsa&) = delete;

private:
    Isa previous_;
};

namespace detail {
/// Inserts a zero bit at position `bit`, shifting higher bits up.
constexpr std::size_t insert_zero(std::size_t k, unsigned bit)
{
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}
} // namespace detail

} // namespace qmlbench::qsim::simd
