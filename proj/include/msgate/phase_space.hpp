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

#include <span>
#include <vector>

#include "msgate/optimizer.hpp"

namespace msgate {

/// Piecewise-linear drive with explicit values at every node, endpoints
/// included. Hat-basis pulses vanish at both ends; square pulses do not.
struct Drive {
    std::vector<double> times;
    std::vector<double> values;  ///< rad/s
    double delta = 0.0;          ///< nominal detuning, rad/s
    int orientation = 1;

    double tau() const { return times.back(); }
    double peak() const;
};

Drive to_drive(const PulseEnvelope& pulse);

/// Constant drive of a square gate. segments = 0 picks 32 per loop.
Drive square_drive(const SquareReference& square, int segments = 0);

double evaluate(const Drive& drive, double t);

/// Coherent detuning errors: delta(t) = delta + offset + 2 pi r min(t, T) with
/// r the chirp rate in Hz/us and T the chirp duration.
struct ErrorConfig {
    double detuning_offset = 0.0;       ///< rad/s
    double chirp_rate_hz_per_us = 0.0;  ///< Hz/us
    double chirp_duration = 1000e-6;    ///< s

    bool chirped() const { return chirp_rate_hz_per_us != 0.0 && chirp_duration > 0.0; }
    /// Ramp slope in rad/s^2.
    double chirp_slope() const { return kTwoPi * chirp_rate_hz_per_us * 1e6; }
};

/// theta(t) = int_0^t delta(s) ds.
double accumulated_phase(double delta, const ErrorConfig& err, double t);

struct PhasePoint {
    double t = 0.0;
    double q = 0.0;
    double p = 0.0;
};

struct Trajectory {
    std::vector<PhasePoint> samples;
    double end_q = 0.0;
    double end_p = 0.0;
    /// sqrt(q(tau)^2 + p(tau)^2) from exact endpoint integrals.
    double closure_residual = 0.0;
    /// int p dq along the path, by per-segment quadrature.
    double area = 0.0;
    /// 1/2 int (p dq - q dp); equals `area` for closed loops.
    double symmetric_area = 0.0;
    /// Polyline estimate from `samples`.
    double area_shoelace = 0.0;
};

/// Phase-space path q + i p = int_0^t Omega(s) e^{i theta(s)} ds. Unchirped
/// segments integrate in closed form; chirped ones by Gauss-Legendre.
Trajectory integrate_trajectory(const Drive& drive, const ErrorConfig& err = {},
                                int samples_per_segment = 20);
Trajectory integrate_trajectory(const PulseEnvelope& pulse, const ErrorConfig& err = {},
                                int samples_per_segment = 20);

/// Trapezoidal int p dq over a sampled path; reversing the samples flips
/// the sign.
double shoelace_area(std::span<const PhasePoint> samples);
double shoelace_area(const Trajectory& traj);

struct SweepPoint {
    double offset = 0.0;  ///< rad/s
    double closure_residual = 0.0;
    double area = 0.0;
};

/// One trajectory per offset (added to `base.detuning_offset`), in input order.
std::vector<SweepPoint> detuning_sweep(const Drive& drive, std::span<const double> offsets,
                                       const ErrorConfig& base = {});

struct ChirpResponse {
    double closure_residual = 0.0;
    double area = 0.0;
};

ChirpResponse chirp_response(const Drive& drive, double rate_hz_per_us,
                             double duration = 1000e-6);

}  // namespace msgate
