// Copyright 2026 The msgate Authors
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

#pragma once

#include "msgate/phase_space.hpp"

namespace msgate {

struct FidelityConfig {
    double nbar = 0.0;
    ErrorConfig err;
    /// Number-basis truncation used by the oracle only.
    int fock_cutoff = 60;
};

struct FidelityBreakdown {
    /// exp(-|alpha|^2 (2 nbar + 1) / 4): coherence left between spin branches
    /// that differ by one unit of S_x.
    double motional_coherence = 1.0;
    /// Geometric phase minus its ideal value +-pi/2.
    double phase_error = 0.0;
    /// Oracle only: RK4 steps of the accepted run, thermal weight kept, and
    /// largest population seen in the top number state.
    long steps = 0;
    double thermal_weight = 1.0;
    double cutoff_population = 0.0;
};

struct FidelityReport {
    double fidelity = 0.0;
    /// |alpha(tau)| = sqrt(q^2 + p^2) at the gate end.
    double residual_displacement = 0.0;
    /// Phase Phi of the S_x^2 interaction, -1/2 int (p dq - q dp).
    double geometric_phase = 0.0;
    FidelityBreakdown breakdown;
};

/// Bell-state overlap from the exact spin-dependent displacement solution,
/// starting in |00> with a thermal motional state. The target is
/// (|00> + i s |11>) / sqrt 2 with s = -orientation of the drive.
FidelityReport analytic_fidelity(const Drive& drive, const FidelityConfig& config);
FidelityReport analytic_fidelity(const PulseEnvelope& pulse, const FidelityConfig& config);

/// Same quantity by RK4 integration of the two-qubit plus truncated-oscillator
/// Schroedinger equation, halving the step until the fidelity moves by less
/// than 1e-8. Throws SolverError if population reaches the cutoff.
FidelityReport fock_oracle_fidelity(const Drive& drive, const FidelityConfig& config);
FidelityReport fock_oracle_fidelity(const PulseEnvelope& pulse, const FidelityConfig& config);

struct GateComparison {
    GateParameters params;
    SquareReference square;
    FidelityReport optimized_report;
    FidelityReport square_report;
};

/// Optimized gate for (loops, peak gate Rabi rate) and the square gate with the
/// same (loops, tau, delta), both under `config`.
GateComparison compare_square_vs_optimized(int loops, double omega_max,
                                           const FidelityConfig& config,
                                           const OptimizationConfig& opt = {});

}  // namespace msgate
