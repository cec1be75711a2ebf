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

#include "msgate/grid_basis.hpp"

#include <algorithm>
#include <cmath>

namespace msgate {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes))
{
    if (nodes_.size() < 2)
        throw std::invalid_argument("TimeGrid: need at least two nodes");
    if (nodes_.front() != 0.0)
        throw std::invalid_argument("TimeGrid: first node must be 0");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > nodes_[i - 1]) || !std::isfinite(nodes_[i]))
            throw std::invalid_argument("TimeGrid: nodes must be finite and strictly increasing");
    }
}

TimeGrid TimeGrid::uniform(double tau, int interior)
{
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("TimeGrid::uniform: tau must be positive");
    if (interior < 0)
        throw std::invalid_argument("TimeGrid::uniform: negative node count");
    const int segments = interior + 1;
    std::vector<double> nodes(static_cast<std::size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k)
        nodes[static_cast<std::size_t>(k)] = tau * static_cast<double>(k) / segments;
    nodes.back() = tau;
    return TimeGrid(std::move(nodes));
}

int TimeGrid::locate(double t) const
{
    if (t <= nodes_.front())
        return 0;
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::clamp(e, 0, segment_count() - 1);
}

TimeGrid make_uniform_grid(double tau, int interior)
{
    if (interior < 4)
        throw std::invalid_argument("make_uniform_grid: need at least 4 interior nodes");
    return TimeGrid::uniform(tau, interior);
}

double hat(const TimeGrid& grid, int k, double t)
{
    if (k < 1 || k > grid.interior_count())
        throw std::out_of_range("hat: index outside 1..n");
    const double left = grid.node(k - 1);
    const double mid = grid.node(k);
    const double right = grid.node(k + 1);
    if (t > left && t <= mid)
        return (t - left) / (mid - left);
    if (t > mid && t <= right)
        return (right - t) / (right - mid);
    return 0.0;
}

std::vector<double> PulseEnvelope::node_values() const
{
    std::vector<double> v(static_cast<std::size_t>(omega.size()) + 2, 0.0);
    for (Index k = 0; k < omega.size(); ++k)
        v[static_cast<std::size_t>(k) + 1] = omega(k);
    return v;
}

PulseEnvelope make_pulse(TimeGrid grid, Vector omega, double delta, int loops, double c,
                         int orientation)
{
    if (omega.size() != grid.interior_count())
        throw std::invalid_argument("make_pulse: amplitude count does not match grid");
    if (loops < 1)
        throw std::invalid_argument("make_pulse: loops must be >= 1");
    const double target = kTwoPi * loops;
    if (std::abs(delta * grid.tau() - target) > 1e-12 * target)
        throw std::invalid_argument("make_pulse: delta * tau must equal 2 pi loops");
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("make_pulse: orientation must be +1 or -1");
    return PulseEnvelope{std::move(grid), std::move(omega), delta, loops, c, orientation};
}

double evaluate_pulse(const PulseEnvelope& pulse, double t)
{
    const TimeGrid& g = pulse.grid;
    if (!(t >= 0.0 && t <= g.tau()))
        throw std::out_of_range("evaluate_pulse: t outside [0, tau]");
    const int e = g.locate(t);
    auto value = [&](int k) {
        return (k == 0 || k == g.segment_count()) ? 0.0 : pulse.omega(k - 1);
    };
    const double a = g.node(e);
    const double b = g.node(e + 1);
    if (t == a)
        return value(e);
    if (t == b)
        return value(e + 1);
    const double x = (t - a) / (b - a);
    return (1.0 - x) * value(e) + x * value(e + 1);
}

namespace {

// F_j(z) = int_{-1}^{1} x^j e^{i z x} dx for j = 0, 1, 2.
std::array<Complex, 3> unit_moments(double z)
{
    std::array<Complex, 3> f{};
    if (std::abs(z) < 1.5) {
        // Taylor series in (i z); only even total powers survive.
        Complex term(1.0, 0.0);  // (i z)^k / k!
        for (int k = 0; k < 40; ++k) {
            for (int j = 0; j < 3; ++j) {
                if ((j + k) % 2 == 0)
                    f[static_cast<std::size_t>(j)] += term * (2.0 / (j + k + 1));
            }
            term *= Complex(0.0, z) / static_cast<double>(k + 1);
            if (std::abs(term) < 1e-18)
                break;
        }
        return f;
    }
    const double s = std::sin(z);
    const double c = std::cos(z);
    f[0] = 2.0 * s / z;
    f[1] = Complex(0.0, 2.0 * (s - z * c) / (z * z));
    f[2] = 2.0 * ((z * z - 2.0) * s + 2.0 * z * c) / (z * z * z);
    return f;
}

}  // namespace

Complex segment_poly_exp(double a, double b, double w, const std::array<double, 3>& coeffs)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (half == 0.0)
        return {0.0, 0.0};
    const auto f = unit_moments(w * half);
    Complex sum = coeffs[0] * half * f[0] + coeffs[1] * half * half * f[1]
                  + coeffs[2] * half * half * half * f[2];
    return std::polar(1.0, w * mid) * sum;
}

Complex segment_power_exp(double a, double b, double w, int order)
{
    const double mid = 0.5 * (a + b);
    switch (order) {
    case 0:
        return segment_poly_exp(a, b, w, {1.0, 0.0, 0.0});
    case 1:
        return segment_poly_exp(a, b, w, {mid, 1.0, 0.0});
    case 2:
        return segment_poly_exp(a, b, w, {mid * mid, 2.0 * mid, 1.0});
    default:
        throw std::invalid_argument("segment_power_exp: order must be 0, 1 or 2");
    }
}

TrigMoments segment_trig_moments(double a, double b, double delta, int order)
{
    if (order != 0 && order != 1)
        throw std::invalid_argument("segment_trig_moments: order must be 0 or 1");
    if (!(a <= b))
        throw std::invalid_argument("segment_trig_moments: need a <= b");
    const Complex m = segment_power_exp(a, b, delta, order);
    return {m.imag(), m.real()};
}

ShapeIntegrals segment_shape_exp(double a, double b, double w)
{
    const double half = 0.5 * (b - a);
    if (half == 0.0)
        return {};
    const double slope = 0.5 / half;
    return {segment_poly_exp(a, b, w, {0.5, -slope, 0.0}),
            segment_poly_exp(a, b, w, {0.5, slope, 0.0})};
}

}  // namespace msgate
