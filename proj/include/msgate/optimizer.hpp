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

#include "msgate/kernels.hpp"

namespace msgate {

struct OptimizationConfig {
    int loops = 1;
    double c = 1.0;
    int n = 256;
    double area_target = kPi / 2.0;
    int quad_order = 6;
};

/// Throws std::invalid_argument when the config cannot be solved.
void validate(const OptimizationConfig& config);

struct OptimizationResult {
    PulseEnvelope pulse;
    /// Largest-magnitude eigenvalue of the reduced pencil on normalized time.
    double lambda_max = 0.0;
    /// Signed area int p dq of the pulse.
    double area = 0.0;
    /// Dissipated energy int Omega^2 dt (no derivative term).
    double energy = 0.0;
    /// Unit 2-norm coefficients of the unscaled eigenvector.
    Vector shape_vector;
    /// True when the two leading eigenvalues coincide to 1e-10 relative.
    bool degenerate = false;
};

/// Top eigenpair of the constrained pencil on the unit interval (tau = 1 s,
/// delta = 2 pi loops), normalized to unit peak amplitude.
OptimizationResult solve_shape(const OptimizationConfig& config);

/// Full spectrum of the reduced pencil, descending by magnitude.
Vector pencil_spectrum(const OptimizationConfig& config);

/// Multiplies the amplitudes by sqrt(target / |area|).
OptimizationResult scale_to_area(const OptimizationResult& result, double area_target);

struct GateParameters {
    double tau = 0.0;        ///< s
    double delta = 0.0;      ///< rad/s, exactly 2 pi loops / tau
    double omega_max = 0.0;  ///< peak gate Rabi rate Omega_MS, rad/s
    int loops = 1;
};

struct GateSolution {
    GateParameters params;
    /// Physical-unit result: pulse on [0, tau], area = target, energy in rad^2/s.
    OptimizationResult result;
};

/// Gate time for a peak gate Rabi rate: tau = peak / (sqrt(2) Omega_MS) where
/// `peak` is the maximum of the unit-time, target-area shape.
GateSolution solve_gate_parameters(int loops, double omega_max, OptimizationConfig config);

/// Same as above, reusing an already solved unit-time shape.
GateSolution gate_from_shape(const OptimizationResult& unit_shape, double omega_max,
                             double area_target);

/// Constant-amplitude gate closing `loops` circles with total area pi/2.
struct SquareReference {
    int loops = 1;
    double tau = 0.0;
    double delta = 0.0;
    double omega = 0.0;   ///< drive rate delta / sqrt(2 loops), rad/s
    double energy = 0.0;  ///< omega^2 tau = 2 pi^2 loops / tau
};

SquareReference square_pulse_reference(int loops, double tau);

/// Square gate whose constant gate Rabi rate equals `omega_max`.
SquareReference square_gate_for_rabi(int loops, double omega_max);

/// E_opt / E_sq for gates with the same loop count driven at the same peak
/// gate Rabi rate. Throws when loops or peak amplitudes differ.
double energy_ratio(const OptimizationResult& optimized, const SquareReference& square);

}  // namespace msgate
