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

#include <array>
#include <span>
#include <vector>

#include "msgate/types.hpp"

namespace msgate {

/// Cut points 0 = t_0 < t_1 < ... < t_{n+1} = tau of the gate interval.
/// The n interior nodes carry the hat-basis degrees of freedom.
class TimeGrid {
  public:
    /// Unit interval without interior nodes.
    TimeGrid() : nodes_{0.0, 1.0} {}
    explicit TimeGrid(std::vector<double> nodes);

    static TimeGrid uniform(double tau, int interior);

    double tau() const { return nodes_.back(); }
    int interior_count() const { return static_cast<int>(nodes_.size()) - 2; }
    int segment_count() const { return static_cast<int>(nodes_.size()) - 1; }
    std::span<const double> nodes() const { return nodes_; }
    double node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
    double segment_length(int e) const { return node(e + 1) - node(e); }

    /// Index e of the segment [t_e, t_{e+1}] containing t (right-closed except
    /// for t = 0).
    int locate(double t) const;

    bool operator==(const TimeGrid&) const = default;

  private:
    std::vector<double> nodes_;
};

/// Uniform grid with `interior` hat functions; rejects tau <= 0 and
/// interior < 4 (fewer unknowns than closure constraints).
TimeGrid make_uniform_grid(double tau, int interior);

/// Tent function chi_k, k = 1..n, evaluated at t.
double hat(const TimeGrid& grid, int k, double t);

/// Amplitude-modulated envelope Omega(t) = sum_k omega_k chi_k(t) together
/// with the gate detuning and loop count it was synthesized for.
///
/// Amplitudes are drive rates in rad/s in the convention of the phase-space
/// integrals q = int cos(theta) Omega, p = int sin(theta) Omega.
struct PulseEnvelope {
    TimeGrid grid;
    Vector omega;
    double delta = 0.0;
    int loops = 1;
    double c = 1.0;
    /// Sign of the enclosed area int p dq of the nominal trajectory.
    int orientation = 1;

    double tau() const { return grid.tau(); }
    double peak() const { return omega.size() ? omega.cwiseAbs().maxCoeff() : 0.0; }
    /// Node values including the implied zeros at t = 0 and t = tau.
    std::vector<double> node_values() const;
};

/// Validating constructor: omega size must match the grid and
/// delta * tau = 2 pi loops must hold to 1e-12 relative.
PulseEnvelope make_pulse(TimeGrid grid, Vector omega, double delta, int loops, double c,
                         int orientation = 1);

/// Omega(t) by linear interpolation; t must lie in [0, tau].
double evaluate_pulse(const PulseEnvelope& pulse, double t);

struct TrigMoments {
    double sin = 0.0;  ///< int_a^b t^m sin(delta t) dt
    double cos = 0.0;  ///< int_a^b t^m cos(delta t) dt
};

/// Closed-form moments of order 0 or 1 on [a, b]. Stable for any delta,
/// including delta = 0.
TrigMoments segment_trig_moments(double a, double b, double delta, int order);

/// int_a^b P(t - m) e^{i w t} dt for a polynomial P of degree <= 2 in the
/// offset from the segment midpoint m = (a + b) / 2; coefficients are
/// {P_0, P_1, P_2}.
Complex segment_poly_exp(double a, double b, double w, const std::array<double, 3>& coeffs);

/// int_a^b t^m e^{i w t} dt for m in {0, 1, 2}.
Complex segment_power_exp(double a, double b, double w, int order);

/// Integrals of e^{i w t} against the two linear shape functions of [a, b]:
/// `first` falls from 1 at a to 0 at b, `second` rises from 0 to 1.
struct ShapeIntegrals {
    Complex first;
    Complex second;
};
ShapeIntegrals segment_shape_exp(double a, double b, double w);

}  // namespace msgate
