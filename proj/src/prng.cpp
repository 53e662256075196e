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

#include "qmlbench/prng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qmlbench::data {

namespace {

std::int64_t mulmod(std::int64_t x, std::int64_t y, std::int64_t m)
{
    const __int128 r = static_cast<__int128>(x) * y % m;
    return static_cast<std::int64_t>(r < 0 ? r + m : r);
}

std::int64_t posmod(std::int64_t x, std::int64_t m)
{
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

bool is_power_of_ten(std::int64_t k)
{
    if (k < 1)
        return false;
    while (k % 10 == 0)
        k /= 10;
    return k == 1;
}

} // namespace

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::int64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m)
{
    if (m < 2)
        throw std::invalid_argument("mod_inverse: modulus must be >= 2");
    if (std::gcd(a, m) != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " has no inverse mod " + std::to_string(m));
    const std::int64_t ar = posmod(a, m);
    for (std::int64_t c = 1; c < m; ++c)
        if (mulmod(ar, c, m) == 1)
            return c;
    throw std::logic_error("mod_inverse: no inverse found");
}

PRNGParams PRNGParams::make(std::int64_t a, std::int64_t b, std::int64_t m)
{
    if (!is_prime(a) || !is_prime(m))
        throw std::invalid_argument("PRNG a and m must be prime (a=" + std::to_string(a) + ", m=" + std::to_string(m) + ")");
    if (a >= m)
        throw std::invalid_argument("PRNG requires a < m");
    PRNGParams p;
    p.a = a;
    p.b = b;
    p.m = m;
    p.a_inv = mod_inverse(a, m);
    return p;
}

std::int64_t PRNGParams::forward(std::int64_t x) const
{
    return 1 + posmod(mulmod(a, x, m) + posmod(b, m), m);
}

std::int64_t PRNGParams::inverse(std::int64_t y) const
{
    return mulmod(a_inv, posmod(y - 1 - posmod(b, m), m), m);
}

Dataset prng_apply(const Dataset& ds, const PRNGParams& params, PrngDirection direction, std::int64_t scale)
{
    if (!is_power_of_ten(scale))
        throw std::invalid_argument("PRNG quantization scale must be a power of ten");
    if (params.a_inv == 0 || params.a_inv >= params.m || mulmod(params.a, params.a_inv, params.m) != 1)
        throw std::invalid_argument("PRNG parameters carry an invalid modular inverse");

    Dataset out = ds;
    const double k = static_cast<double>(scale);
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i)
        for (Eigen::Index j = 0; j < ds.features.cols(); ++j) {
            const double v = ds.features(i, j);
            const auto q = static_cast<std::int64_t>(std::llround(v * k));
            std::int64_t r;
            if (direction == PrngDirection::Forward) {
                if (q < 0 || q >= params.m)
                    throw std::invalid_argument("value " + format_number(v) + " quantizes to " + std::to_string(q) +
                                                ", outside [0, m=" + std::to_string(params.m) + ")");
                r = params.forward(q);
            } else {
                if (q < 1 || q > params.m)
                    throw std::invalid_argument("value " + format_number(v) + " is not a forward PRNG output");
                r = params.inverse(q);
            }
            out.features(i, j) = static_cast<double>(r) / k;
        }
    out.metadata["prng_a"] = std::to_string(params.a);
    out.metadata["prng_b"] = std::to_string(params.b);
    out.metadata["prng_m"] = std::to_string(params.m);
    out.metadata["prng_scale"] = std::to_string(scale);
    out.metadata["prng_direction"] = direction == PrngDirection::Forward ? "forward" : "inverse";
    return out;
}

} // namespace qmlbench::data
