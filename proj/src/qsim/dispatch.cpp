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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qmlbench::qsim::simd {

#ifdef QMLBENCH_HAVE_AVX2
namespace detail {
const KernelTable& avx2_table();
}
#endif

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

bool cpu_supports(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(QMLBENCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable* avx2_kernels()
{
#ifdef QMLBENCH_HAVE_AVX2
    if (cpu_supports(Isa::Avx2))
        return &detail::avx2_table();
#endif
    return nullptr;
}

namespace {

const KernelTable* table_for(Isa isa)
{
    return isa == Isa::Avx2 ? avx2_kernels() : &scalar_kernels();
}

const KernelTable* initial_table()
{
    if (const char* env = std::getenv("QMLBENCH_SIMD")) {
        const std::string choice{env};
        if (choice == "scalar")
            return &scalar_kernels();
        if (choice == "avx2" && avx2_kernels())
            return avx2_kernels();
    }
    if (const KernelTable* t = avx2_kernels())
        return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& current()
{
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

} // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Isa active_isa() { return active().isa; }

void select(Isa isa)
{
    const KernelTable* t = table_for(isa);
    if (!t)
        throw std::invalid_argument("kernel set '" + std::string(isa_name(isa)) + "' is not available on this CPU");
    current().store(t, std::memory_order_release);
}

} // namespace qmlbench::qsim::simd
