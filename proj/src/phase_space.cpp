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

#include "msgate/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include "msgate/parallel.hpp"
#include "msgate/quadrature.hpp"

namespace msgate {

double Drive::peak() const
{
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

Drive to_drive(const PulseEnvelope& pulse)
{
    const auto nodes = pulse.grid.nodes();
    return Drive{{nodes.begin(), nodes.end()}, pulse.node_values(), pulse.delta,
                 pulse.orientation};
}

Drive square_drive(const SquareReference& square, int segments)
{
    if (segments <= 0)
        segments = 32 * square.loops;
    const TimeGrid grid = TimeGrid::uniform(square.tau, segments - 1);
    const auto nodes = grid.nodes();
    // A constant positive drive circles with negative int p dq.
    return Drive{{nodes.begin(), nodes.end()},
                 std::vector<double>(nodes.size(), square.omega), square.delta, -1};
}

double evaluate(const Drive& drive, double t)
{
    const auto& ts = drive.times;
    if (!(t >= ts.front() && t <= ts.back()))
        throw std::out_of_range("evaluate: t outside drive interval");
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.end())
        return drive.values.back();
    const auto i = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double x = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return (1.0 - x) * drive.values[i] + x * drive.values[i + 1];
}

double accumulated_phase(double delta, const ErrorConfig& err, double t)
{
    const double base = (delta + err.detuning_offset) * t;
    if (!err.chirped())
        return base;
    const double k = err.chirp_slope();
    const double end = err.chirp_duration;
    if (t <= end)
        return base + 0.5 * k * t * t;
    return base + k * end * (t - 0.5 * end);
}

namespace {

void validate_drive(const Drive& drive)
{
    if (drive.times.size() < 2 || drive.times.size() != drive.values.size())
        throw std::invalid_argument("drive: need matching times and values (>= 2)");
    if (drive.times.front() != 0.0)
        throw std::invalid_argument("drive: must start at t = 0");
    for (std::size_t i = 1; i < drive.times.size(); ++i)
        if (!(drive.times[i] > drive.times[i - 1]))
            throw std::invalid_argument("drive: times must increase strictly");
}

class PathIntegrator {
  public:
    PathIntegrator(const Drive& drive, const ErrorConfig& err)
        : drive_(drive), err_(err), rule_(gauss_legendre(12)),
          rate_(std::abs(drive.delta + err.detuning_offset)
                + (err.chirped() ? std::abs(err.chirp_slope()) * err.chirp_duration : 0.0))
    {
    }

    /// int_a^b Omega e^{i theta} for Omega linear from va at a to vb at b.
    Complex increment(double a, double b, double va, double vb) const
    {
        if (b <= a)
            return {0.0, 0.0};
        if (!err_.chirped()) {
            const ShapeIntegrals s =
                segment_shape_exp(a, b, drive_.delta + err_.detuning_offset);
            return va * s.first + vb * s.second;
        }
        const double end = err_.chirp_duration;
        if (a < end && end < b) {
            const double vm = va + (vb - va) * (end - a) / (b - a);
            return increment(a, end, va, vm) + increment(end, b, vm, vb);
        }
        const int pieces = piece_count(b - a);
        const double len = (b - a) / pieces;
        Complex sum{0.0, 0.0};
        for (int j = 0; j < pieces; ++j) {
            const double lo = a + j * len;
            const double hi = (j + 1 == pieces) ? b : lo + len;
            sum += rule_.integrate(lo, hi, [&](double t) {
                const double x = (t - a) / (b - a);
                return ((1.0 - x) * va + x * vb)
                       * std::polar(1.0, accumulated_phase(drive_.delta, err_, t));
            });
        }
        return sum;
    }

    /// int_a^b Omega cos(theta) p dt given alpha at a.
    double area_increment(double a, double b, double va, double vb, Complex start) const
    {
        std::vector<double> cuts{a};
        const double end = err_.chirp_duration;
        if (err_.chirped() && a < end && end < b)
            cuts.push_back(end);
        cuts.push_back(b);
        double sum = 0.0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const int pieces = piece_count(cuts[c + 1] - cuts[c]);
            const double len = (cuts[c + 1] - cuts[c]) / pieces;
            for (int j = 0; j < pieces; ++j) {
                const double lo = cuts[c] + j * len;
                const double hi = (j + 1 == pieces) ? cuts[c + 1] : lo + len;
                sum += rule_.integrate(lo, hi, [&](double t) {
                    const double x = (t - a) / (b - a);
                    const double v = (1.0 - x) * va + x * vb;
                    const double p = (start + increment(a, t, va, v)).imag();
                    return v * std::cos(accumulated_phase(drive_.delta, err_, t)) * p;
                });
            }
        }
        return sum;
    }

  private:
    int piece_count(double len) const
    {
        return std::max(1, static_cast<int>(std::ceil(rate_ * len / 0.5)));
    }

    const Drive& drive_;
    const ErrorConfig& err_;
    GaussRule rule_;
    double rate_;
};

}  // namespace

Trajectory integrate_trajectory(const Drive& drive, const ErrorConfig& err,
                                int samples_per_segment)
{
    validate_drive(drive);
    if (samples_per_segment < 1)
        throw std::invalid_argument("integrate_trajectory: samples_per_segment must be >= 1");
    if (!(err.chirp_duration >= 0.0))
        throw std::invalid_argument("integrate_trajectory: chirp duration must be >= 0");

    const PathIntegrator path(drive, err);
    Trajectory traj;
    const std::size_t segments = drive.times.size() - 1;
    traj.samples.reserve(segments * static_cast<std::size_t>(samples_per_segment) + 1);
    traj.samples.push_back({0.0, 0.0, 0.0});

    Complex alpha{0.0, 0.0};
    double area = 0.0;
    for (std::size_t e = 0; e < segments; ++e) {
        const double a = drive.times[e];
        const double b = drive.times[e + 1];
        const double va = drive.values[e];
        const double vb = drive.values[e + 1];
        for (int j = 1; j < samples_per_segment; ++j) {
            const double x = static_cast<double>(j) / samples_per_segment;
            const double t = a + x * (b - a);
            const Complex z = alpha + path.increment(a, t, va, (1.0 - x) * va + x * vb);
            traj.samples.push_back({t, z.real(), z.imag()});
        }
        area += path.area_increment(a, b, va, vb, alpha);
        alpha += path.increment(a, b, va, vb);
        traj.samples.push_back({b, alpha.real(), alpha.imag()});
    }
    traj.end_q = alpha.real();
    traj.end_p = alpha.imag();
    traj.closure_residual = std::abs(alpha);
    traj.area = area;
    traj.symmetric_area = area - 0.5 * traj.end_q * traj.end_p;
    traj.area_shoelace = shoelace_area(traj.samples);
    return traj;
}

Trajectory integrate_trajectory(const PulseEnvelope& pulse, const ErrorConfig& err,
                                int samples_per_segment)
{
    return integrate_trajectory(to_drive(pulse), err, samples_per_segment);
}

double shoelace_area(std::span<const PhasePoint> samples)
{
    if (samples.size() < 3)
        throw std::invalid_argument("shoelace_area: need at least 3 samples");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        sum += 0.5 * (samples[i].p + samples[i + 1].p) * (samples[i + 1].q - samples[i].q);
    return sum;
}

double shoelace_area(const Trajectory& traj) { return shoelace_area(traj.samples); }

std::vector<SweepPoint> detuning_sweep(const Drive& drive, std::span<const double> offsets,
                                       const ErrorConfig& base)
{
    for (double o : offsets)
        if (!std::isfinite(o))
            throw std::invalid_argument("detuning_sweep: offsets must be finite");
    std::vector<SweepPoint> out(offsets.size());
    parallel_for(offsets.size(), [&](std::size_t i) {
        ErrorConfig err = base;
        err.detuning_offset = base.detuning_offset + offsets[i];
        const Trajectory t = integrate_trajectory(drive, err, 1);
        out[i] = {offsets[i], t.closure_residual, t.area};
    });
    return out;
}

ChirpResponse chirp_response(const Drive& drive, double rate_hz_per_us, double duration)
{
    if (!std::isfinite(rate_hz_per_us))
        throw std::invalid_argument("chirp_response: rate must be finite");
    ErrorConfig err;
    err.chirp_rate_hz_per_us = rate_hz_per_us;
    err.chirp_duration = duration;
    const Trajectory t = integrate_trajectory(drive, err, 1);
    return {t.closure_residual, t.area};
}

}  // namespace msgate
