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

// Compiled with -mavx2 -mfma. Only raw double pointers and intrinsics are
// used in here so no AVX-encoded copy of a shared inline function can leak
// into the scalar path through COMDAT folding.

#include "qmlbench/qsim/simd.hpp"

#include <immintrin.h>

namespace qmlbench::qsim::simd {

namespace {

using detail::insert_zero;

// One __m256d holds two complex doubles laid out as [re0, im0, re1, im1].

inline __m256d broadcast(double re, double im) { return _mm256_setr_pd(re, im, re, im); }

inline __m256d cmul(__m256d x, __m256d y)
{
    const __m256d yr = _mm256_movedup_pd(y);
    const __m256d yi = _mm256_permute_pd(y, 0xF);
    const __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

void apply_1q_raw(double* amps, std::size_t n, unsigned q, const double* m)
{
    if (q == 0) {
        // Both members of a pair share one register: v = [a0, a1].
        const __m256d diag = _mm256_setr_pd(m[0], m[1], m[6], m[7]);
        const __m256d off = _mm256_setr_pd(m[2], m[3], m[4], m[5]);
        for (std::size_t i = 0; i < n; i += 2) {
            const __m256d v = _mm256_loadu_pd(amps + 2 * i);
            const __m256d s = _mm256_permute2f128_pd(v, v, 0x01);
            _mm256_storeu_pd(amps + 2 * i, _mm256_add_pd(cmul(diag, v), cmul(off, s)));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << q;
    const __m256d m00 = broadcast(m[0], m[1]);
    const __m256d m01 = broadcast(m[2], m[3]);
    const __m256d m10 = broadcast(m[4], m[5]);
    const __m256d m11 = broadcast(m[6], m[7]);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; k += 2) {
        const std::size_t i0 = insert_zero(k, q);
        double* p0 = amps + 2 * i0;
        double* p1 = amps + 2 * (i0 + stride);
        const __m256d a0 = _mm256_loadu_pd(p0);
        const __m256d a1 = _mm256_loadu_pd(p1);
        _mm256_storeu_pd(p0, _mm256_add_pd(cmul(m00, a0), cmul(m01, a1)));
        _mm256_storeu_pd(p1, _mm256_add_pd(cmul(m10, a0), cmul(m11, a1)));
    }
}

void apply_phase_raw(double* amps, std::size_t n, unsigned q, double re, double im)
{
    if (q == 0) {
        const __m256d factor = _mm256_setr_pd(1.0, 0.0, re, im);
        for (std::size_t i = 0; i < n; i += 2) {
            const __m256d v = _mm256_loadu_pd(amps + 2 * i);
            _mm256_storeu_pd(amps + 2 * i, cmul(v, factor));
        }
        return;
    }
    const std::size_t stride = std::size_t{1} << q;
    const __m256d factor = broadcast(re, im);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; k += 2) {
        double* p = amps + 2 * (insert_zero(k, q) | stride);
        _mm256_storeu_pd(p, cmul(_mm256_loadu_pd(p), factor));
    }
}

void apply_cx_raw(double* amps, std::size_t n, unsigned control, unsigned target)
{
    const unsigned lo = control < target ? control : target;
    const unsigned hi = control < target ? target : control;
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t quarter = n / 4;
    if (lo == 0) {
        // Partners are not contiguous in pairs; 128-bit moves per amplitude.
        for (std::size_t k = 0; k < quarter; ++k) {
            const std::size_t i = insert_zero(insert_zero(k, lo), hi) | cbit;
            double* p = amps + 2 * i;
            double* r = amps + 2 * (i | tbit);
            const __m128d a = _mm_loadu_pd(p);
            const __m128d b = _mm_loadu_pd(r);
            _mm_storeu_pd(p, b);
            _mm_storeu_pd(r, a);
        }
        return;
    }
    for (std::size_t k = 0; k < quarter; k += 2) {
        const std::size_t i = insert_zero(insert_zero(k, lo), hi) | cbit;
        double* p = amps + 2 * i;
        double* r = amps + 2 * (i | tbit);
        const __m256d a = _mm256_loadu_pd(p);
        const __m256d b = _mm256_loadu_pd(r);
        _mm256_storeu_pd(p, b);
        _mm256_storeu_pd(r, a);
    }
}

void inner_product_raw(const double* a, const double* b, std::size_t n, double* out)
{
    // re += ar*br + ai*bi, im += ar*bi - ai*br
    __m256d same = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * i);
        const __m256d vb = _mm256_loadu_pd(b + 2 * i);
        same = _mm256_fmadd_pd(va, vb, same);
        cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), cross);
    }
    alignas(32) double s[4];
    alignas(32) double c[4];
    _mm256_store_pd(s, same);
    _mm256_store_pd(c, cross);
    out[0] = (s[0] + s[1]) + (s[2] + s[3]);
    out[1] = (c[0] - c[1]) + (c[2] - c[3]);
}

double norm_squared_raw(const double* a, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; i += 2) {
        const __m256d v = _mm256_loadu_pd(a + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    return (s[0] + s[1]) + (s[2] + s[3]);
}

// Statevectors always hold at least two amplitudes, so the pairwise loops
// above never see an odd length.

void apply_1q(std::span<cplx> amps, unsigned q, const cplx* m)
{
    apply_1q_raw(reinterpret_cast<double*>(amps.data()), amps.size(), q, reinterpret_cast<const double*>(m));
}

void apply_phase(std::span<cplx> amps, unsigned q, cplx phase)
{
    const double* ph = reinterpret_cast<const double*>(&phase);
    apply_phase_raw(reinterpret_cast<double*>(amps.data()), amps.size(), q, ph[0], ph[1]);
}

void apply_cx(std::span<cplx> amps, unsigned control, unsigned target)
{
    apply_cx_raw(reinterpret_cast<double*>(amps.data()), amps.size(), control, target);
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b)
{
    cplx out;
    inner_product_raw(reinterpret_cast<const double*>(a.data()), reinterpret_cast<const double*>(b.data()), a.size(),
                      reinterpret_cast<double*>(&out));
    return out;
}

double norm_squared(std::span<const cplx> a)
{
    return norm_squared_raw(reinterpret_cast<const double*>(a.data()), a.size());
}

} // namespace

namespace detail {
const KernelTable& avx2_table()
{
    static const KernelTable table{Isa::Avx2, apply_1q, apply_phase, apply_cx, inner_product, norm_squared};
    return table;
}
} // namespace detail

} // namespace qmlbench::qsim::simd
