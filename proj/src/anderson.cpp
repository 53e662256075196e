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

#include "qmlbench/anderson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qmlbench/common.hpp"

namespace qmlbench::anderson {

namespace {

void check_size(unsigned L)
{
    if (L < 1)
        throw std::invalid_argument("lattice side length must be >= 1");
}

struct Singular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CMatrix invert(const CMatrix& A)
{
    Eigen::PartialPivLU<CMatrix> lu(A);
    if (!(lu.rcond() > 1e-14))
        throw Singular("singular slice block");
    CMatrix inv = lu.inverse();
    if (!inv.allFinite())
        throw Singular("singular slice block");
    return inv;
}

LeadSelfEnergy self_energy_from_modes(const TransverseModes& modes, cplx energy)
{
    const auto m = modes.energies.size();
    Eigen::VectorXcd g(m);
    std::size_t open = 0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const double e = energy.real() - modes.energies(k);
        g(k) = surface_green(e);
        if (std::abs(e) < 2.0)
            ++open;
    }
    LeadSelfEnergy out;
    const CMatrix U = modes.vectors.cast<cplx>();
    out.sigma = U * g.asDiagonal() * U.transpose();
    out.gamma = cplx{0.0, 1.0} * (out.sigma - out.sigma.adjoint());
    out.open_channels = open;
    return out;
}

double sweep(cplx z, unsigned L, std::span<const double> potential, const LatticeOptions& options,
             SweepDirection direction)
{
    const auto N = static_cast<Eigen::Index>(L) * L;
    const TransverseModes modes = transverse_modes(L, options);
    const LeadSelfEnergy lead = self_energy_from_modes(modes, z);
    const Eigen::MatrixXd h_perp = slice_hamiltonian(L, options);

    auto block = [&](unsigned slice) {
        CMatrix A = -h_perp.cast<cplx>();
        A.diagonal().array() += z;
        for (Eigen::Index s = 0; s < N; ++s)
            A(s, s) -= potential[static_cast<std::size_t>(slice) * N + s];
        return A;
    };

    // Both leads are identical, so Sigma_L = Sigma_R = lead.sigma. Sweeping
    // right-to-left visits slices in reverse order and yields G_{L1}.
    auto slice_at = [&](unsigned step) { return direction == SweepDirection::LeftToRight ? step : L - 1 - step; };

    CMatrix A = block(slice_at(0)) - lead.sigma;
    if (L == 1)
        A -= lead.sigma;
    CMatrix G_nn = invert(A);
    CMatrix G_1n = G_nn;
    for (unsigned step = 1; step < L; ++step) {
        // Inter-slice hopping V = -I, so V^T G V = G and G_1n = -G_1,n-1 G_nn.
        A = block(slice_at(step)) - G_nn;
        if (step == L - 1)
            A -= lead.sigma;
        G_nn = invert(A);
        G_1n = -G_1n * G_nn;
    }
    const cplx t = (lead.gamma * G_1n * lead.gamma * G_1n.adjoint()).trace();
    return t.real();
}

} // namespace

TransverseModes transverse_modes(unsigned L, const LatticeOptions& options)
{
    check_size(L);
    const auto N = static_cast<Eigen::Index>(L) * L;
    TransverseModes out;
    if (options.boundary == TransverseBoundary::Open) {
        out.vectors.resize(N, N);
        out.energies.resize(N);
        const double k = std::numbers::pi / (L + 1.0);
        const double norm = 2.0 / (L + 1.0);
        Eigen::Index col = 0;
        for (unsigned m = 1; m <= L; ++m)
            for (unsigned n = 1; n <= L; ++n, ++col) {
                out.energies(col) = -2.0 * (std::cos(m * k) + std::cos(n * k));
                for (unsigned y = 0; y < L; ++y)
                    for (unsigned x = 0; x < L; ++x)
                        out.vectors(x + static_cast<Eigen::Index>(L) * y, col) =
                            norm * std::sin(m * k * (x + 1.0)) * std::sin(n * k * (y + 1.0));
            }
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(slice_hamiltonian(L, options));
    out.vectors = eig.eigenvectors();
    out.energies = eig.eigenvalues();
    return out;
}

Eigen::MatrixXd slice_hamiltonian(unsigned L, const LatticeOptions& options)
{
    check_size(L);
    const auto N = static_cast<Eigen::Index>(L) * L;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
    const bool periodic = options.boundary == TransverseBoundary::Periodic;
    auto link = [&](unsigned x0, unsigned y0, unsigned x1, unsigned y1) {
        const Eigen::Index a = x0 + static_cast<Eigen::Index>(L) * y0;
        const Eigen::Index b = x1 + static_cast<Eigen::Index>(L) * y1;
        if (a == b)
            return;
        H(a, b) -= 1.0;
        H(b, a) -= 1.0;
    };
    for (unsigned y = 0; y < L; ++y)
        for (unsigned x = 0; x < L; ++x) {
            if (x + 1 < L)
                link(x, y, x + 1, y);
            else if (periodic && L > 2)
                link(x, y, 0, y);
            if (y + 1 < L)
                link(x, y, x, y + 1);
            else if (periodic && L > 2)
                link(x, y, x, 0);
        }
    return H;
}

cplx surface_green(double e)
{
    if (std::abs(e) <= 2.0)
        return {e / 2.0, -std::sqrt(4.0 - e * e) / 2.0};
    const double s = e > 0 ? 1.0 : -1.0;
    return {(e - s * std::sqrt(e * e - 4.0)) / 2.0, 0.0};
}

LeadSelfEnergy lead_self_energy(double energy, unsigned L, const LatticeOptions& options)
{
    return self_energy_from_modes(transverse_modes(L, options), energy);
}

std::size_t open_channels(double energy, unsigned L, const LatticeOptions& options)
{
    const auto modes = transverse_modes(L, options);
    std::size_t open = 0;
    for (Eigen::Index k = 0; k < modes.energies.size(); ++k)
        if (std::abs(energy - modes.energies(k)) < 2.0)
            ++open;
    return open;
}

std::vector<double> disorder_potential(double disorder, unsigned L, std::uint64_t config_seed)
{
    check_size(L);
    if (disorder < 0)
        throw std::invalid_argument("disorder strength must be >= 0");
    const std::size_t count = static_cast<std::size_t>(L) * L * L;
    std::vector<double> v(count, 0.0);
    if (disorder == 0.0)
        return v;
    Rng rng(config_seed);
    for (double& e : v)
        e = rng.uniform(-disorder / 2.0, disorder / 2.0);
    return v;
}

double transmission_for_potential(double energy, unsigned L, std::span<const double> potential,
                                  const LatticeOptions& options, SweepDirection direction)
{
    check_size(L);
    if (potential.size() != static_cast<std::size_t>(L) * L * L)
        throw std::invalid_argument("potential must have L^3 entries");
    try {
        return sweep({energy, 0.0}, L, potential, options, direction);
    } catch (const Singular&) {
        return sweep({energy, 1e-9}, L, potential, options, direction);
    }
}

double transmission(double energy, double disorder, unsigned L, std::uint64_t config_seed,
                    const LatticeOptions& options, SweepDirection direction)
{
    const auto potential = disorder_potential(disorder, L, config_seed);
    return transmission_for_potential(energy, L, potential, options, direction);
}

std::uint64_t config_seed(std::uint64_t seed, std::size_t config_index) { return derive_seed(seed, config_index); }

double log_avg_transmission(double energy, double disorder, unsigned L, unsigned n_configs, std::uint64_t seed,
                            const LatticeOptions& options, unsigned jobs)
{
    if (n_configs < 1)
        throw std::invalid_argument("n_configs must be >= 1");
    std::vector<double> ts(n_configs);
    parallel_for(n_configs, jobs, [&](std::size_t c) {
        ts[c] = transmission(energy, disorder, L, config_seed(seed, c), options);
    });
    // Identical samples (one config, or no disorder) return the sample itself, not exp(log(T)).
    if (std::all_of(ts.begin(), ts.end(), [&](double t) { return t == ts.front(); }))
        return ts.front();
    double sum = 0.0;
    for (double t : ts)
        sum += std::log(std::max(t, 1e-300));
    return std::exp(sum / n_configs);
}

std::string phase_name(Phase p)
{
    switch (p) {
    case Phase::Conductor:
        return "conductor";
    case Phase::Insulator:
        return "insulator";
    case Phase::Excluded:
        return "excluded";
    }
    return "unknown";
}

Phase classify_slope(double slope)
{
    if (slope > kSlopeThreshold)
        return Phase::Conductor;
    if (slope < -kSlopeThreshold)
        return Phase::Insulator;
    return Phase::Excluded;
}

double ols_slope(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("ols_slope: length mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("ols_slope: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("ols_slope: x values are all equal");
    return sxy / sxx;
}

ScalingPoint scaling_point(double energy, double disorder, std::span<const unsigned> sizes, std::span<const double> gbar)
{
    if (sizes.size() < 2)
        throw std::invalid_argument("finite-size scaling needs at least two sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("sizes must be strictly increasing");
    ScalingPoint p;
    p.energy = energy;
    p.disorder = disorder;
    p.sizes.assign(sizes.begin(), sizes.end());
    p.gbar.assign(gbar.begin(), gbar.end());
    std::vector<double> xs(sizes.begin(), sizes.end());
    std::vector<double> logs;
    for (double g : gbar)
        logs.push_back(std::log(std::max(g, 1e-300)));
    p.slope = ols_slope(xs, gbar);
    p.log_slope = ols_slope(xs, logs);
    p.phase = classify_slope(p.slope);
    return p;
}

ScalingPoint scaling_slope(double energy, double disorder, std::span<const unsigned> sizes, unsigned n_configs,
                           std::uint64_t seed, const LatticeOptions& options, unsigned jobs)
{
    if (sizes.size() < 2)
        throw std::invalid_argument("finite-size scaling needs at least two sizes");
    std::vector<double> gbar;
    for (unsigned L : sizes)
        gbar.push_back(log_avg_transmission(energy, disorder, L, n_configs, seed, options, jobs));
    return scaling_point(energy, disorder, sizes, gbar);
}

PhaseMap generate_phase_map(std::span<const double> energies, std::span<const double> disorders,
                            std::span<const unsigned> sizes, unsigned n_configs, std::uint64_t seed,
                            const LatticeOptions& options, unsigned jobs)
{
    if (energies.empty() || disorders.empty())
        throw std::invalid_argument("phase map grids must be non-empty");
    const std::size_t total = energies.size() * disorders.size();
    std::vector<ScalingPoint> points(total);
    parallel_for(total, jobs, [&](std::size_t idx) {
        const double E = energies[idx / disorders.size()];
        const double Va = disorders[idx % disorders.size()];
        points[idx] = scaling_slope(E, Va, sizes, n_configs, seed, options, 1);
    });

    PhaseMap map;
    map.points = std::move(points);
    std::vector<double> feats;
    std::vector<int> labels;
    for (const auto& p : map.points) {
        if (p.phase == Phase::Excluded) {
            ++map.excluded;
            continue;
        }
        feats.push_back(p.energy);
        feats.push_back(p.disorder);
        labels.push_back(p.phase == Phase::Conductor ? 1 : 0);
    }
    Matrix X(static_cast<Eigen::Index>(labels.size()), 2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        X(static_cast<Eigen::Index>(i), 0) = feats[2 * i];
        X(static_cast<Eigen::Index>(i), 1) = feats[2 * i + 1];
    }
    map.dataset = data::Dataset::make("anderson", std::move(X), std::move(labels), {"E", "Va"});
    map.dataset.metadata["excluded"] = std::to_string(map.excluded);
    map.dataset.metadata["n_configs"] = std::to_string(n_configs);
    map.dataset.metadata["seed"] = std::to_string(seed);
    return map;
}

double raw_map_value(double slope)
{
    if (slope == 0.0)
        return 0.0;
    const double s = slope > 0 ? 1.0 : -1.0;
    return s * std::abs(std::log10(std::abs(slope)));
}

void write_raw_csv(std::ostream& out, const PhaseMap& map)
{
    out << "E,Va,slope";
    if (!map.points.empty())
        for (unsigned L : map.points.front().sizes)
            out << ",Gbar_L" << L;
    out << ",log_slope,raw_value,phase\n";
    for (const auto& p : map.points) {
        out << data::format_number(p.energy) << ',' << data::format_number(p.disorder) << ','
            << data::format_number(p.slope);
        for (double g : p.gbar)
            out << ',' << data::format_number(g);
        out << ',' << data::format_number(p.log_slope) << ',' << data::format_number(raw_map_value(p.slope)) << ','
            << phase_name(p.phase) << '\n';
    }
}

std::vector<double> grid(double lo, double hi, double step)
{
    if (!(step > 0))
        throw std::invalid_argument("grid step must be positive");
    std::vector<double> out;
    for (std::size_t i = 0;; ++i) {
        const double v = lo + step * static_cast<double>(i);
        if (v > hi + 1e-9)
            break;
        out.push_back(v);
    }
    return out;
}

} // namespace qmlbench::anderson
