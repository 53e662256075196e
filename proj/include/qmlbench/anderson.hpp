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

// Anderson metal-insulator data: Landauer transmission through a disordered
// L x L x L simple-cubic cube between clean semi-infinite leads of the same
// cross-section, averaged over disorder and classified by the sign of the
// size dependence of the log-averaged conductance.
//
// Units: hopping t = 1 (matrix element -1). On-site energies are uniform on
// [-Va/2, Va/2]. Sites within a slice are indexed x + L*y.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/dataset.hpp"

namespace qmlbench::anderson {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class TransverseBoundary { Open, Periodic };

struct LatticeOptions {
    TransverseBoundary boundary = TransverseBoundary::Open;
};

struct TransverseModes {
    Eigen::MatrixXd vectors; // columns are modes, L^2 x L^2
    Eigen::VectorXd energies;
};

/// Eigenmodes of one clean slice. Open boundaries use the closed form
/// eps_mn = -2 (cos(m pi/(L+1)) + cos(n pi/(L+1))).
TransverseModes transverse_modes(unsigned L, const LatticeOptions& options = {});

/// Surface Green's function of a semi-infinite 1D chain (hopping 1) at
/// energy e; retarded branch inside the band, decaying branch outside.
cplx surface_green(double e);

/// Retarded lead self-energy Sigma and broadening Gamma = i (Sigma - Sigma^dagger).
struct LeadSelfEnergy {
    CMatrix sigma;
    CMatrix gamma;
    std::size_t open_channels = 0;
};

LeadSelfEnergy lead_self_energy(double energy, unsigned L, const LatticeOptions& options = {});

std::size_t open_channels(double energy, unsigned L, const LatticeOptions& options = {});

/// Slice Hamiltonian of the clean lattice (transverse hopping only).
Eigen::MatrixXd slice_hamiltonian(unsigned L, const LatticeOptions& options = {});

/// On-site energies for one disorder configuration, slice-major (L^3 values).
std::vector<double> disorder_potential(double disorder, unsigned L, std::uint64_t config_seed);

enum class SweepDirection { LeftToRight, RightToLeft };

/// T = Tr[Gamma_L G_1L Gamma_R G_1L^dagger] from the recursive slice sweep.
/// A singular block retries once with energy + 1e-9 i.
double transmission(double energy, double disorder, unsigned L, std::uint64_t config_seed,
                    const LatticeOptions& options = {}, SweepDirection direction = SweepDirection::LeftToRight);

/// Same sweep for an explicit potential (L^3 values, slice-major).
double transmission_for_potential(double energy, unsigned L, std::span<const double> potential,
                                  const LatticeOptions& options = {},
                                  SweepDirection direction = SweepDirection::LeftToRight);

/// Seed of configuration c for a base seed.
std::uint64_t config_seed(std::uint64_t seed, std::size_t config_index);

/// exp(mean_c ln max(T_c, 1e-300)).
double log_avg_transmission(double energy, double disorder, unsigned L, unsigned n_configs, std::uint64_t seed,
                            const LatticeOptions& options = {}, unsigned jobs = 0);

enum class Phase { Conductor, Insulator, Excluded };

std::string phase_name(Phase p);

inline constexpr double kSlopeThreshold = 1e-6;

Phase classify_slope(double slope);

struct ScalingPoint {
    double energy = 0.0;
    double disorder = 0.0;
    std::vector<unsigned> sizes;
    std::vector<double> gbar;
    double slope = 0.0;     // d Gbar / d L, least squares
    double log_slope = 0.0; // d ln Gbar / d L, reported alongside
    Phase phase = Phase::Excluded;
};

/// Ordinary least-squares slope of ys against xs.
double ols_slope(std::span<const double> xs, std::span<const double> ys);

ScalingPoint scaling_point(double energy, double disorder, std::span<const unsigned> sizes, std::span<const double> gbar);

ScalingPoint scaling_slope(double energy, double disorder, std::span<const unsigned> sizes, unsigned n_configs,
                           std::uint64_t seed, const LatticeOptions& options = {}, unsigned jobs = 0);

struct PhaseMap {
    data::Dataset dataset; // features (E, Va); 1 = conductor, 0 = insulator
    std::vector<ScalingPoint> points; // every grid point, including excluded ones
    std::size_t excluded = 0;
};

PhaseMap generate_phase_map(std::span<const double> energies, std::span<const double> disorders,
                            std::span<const unsigned> sizes, unsigned n_configs, std::uint64_t seed,
                            const LatticeOptions& options = {}, unsigned jobs = 0);

/// sgn(slope) * |log10|slope||, the colour scale of the raw phase map.
double raw_map_value(double slope);

/// `E,Va,slope,Gbar_L<..>...,log_slope,raw_value,phase`
void write_raw_csv(std::ostream& out, const PhaseMap& map);

/// Inclusive arithmetic range lo, lo+step, ..., <= hi (+1e-9).
std::vector<double> grid(double lo, double hi, double step);

} // namespace qmlbench::anderson
