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

#include "msgate/fidelity.hpp"

#include <array>
#include <cmath>

#include "msgate/parallel.hpp"

namespace msgate {

namespace {

using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

void validate(const FidelityConfig& config)
{
    if (!(config.nbar >= 0.0) || !std::isfinite(config.nbar))
        throw std::invalid_argument("fidelity: nbar must be non-negative");
    if (!(config.err.chirp_duration >= 0.0))
        throw std::invalid_argument("fidelity: chirp duration must be non-negative");
}

// Computational basis index 2 b1 + b2.
Vector4c bell_target(int orientation)
{
    const double r = 1.0 / std::sqrt(2.0);
    Vector4c b = Vector4c::Zero();
    b(0) = r;
    b(3) = Complex(0.0, -orientation * r);
    return b;
}

// Columns: X eigenstates |x1 x2>, x = +1 first.
Eigen::Matrix4d x_basis()
{
    Eigen::Matrix2d h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    Eigen::Matrix4d h2;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            h2.block<2, 2>(2 * i, 2 * j) = h(i, j) * h;
    return h2;
}

constexpr std::array<double, 4> kCollectiveSpin{1.0, 0.0, 0.0, -1.0};

double clamp_unit(double f)
{
    if (f < -1e-12 || f > 1.0 + 1e-12 || !std::isfinite(f))
        throw SolverError("fidelity left [0, 1]: " + std::to_string(f));
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace

FidelityReport analytic_fidelity(const Drive& drive, const FidelityConfig& config)
{
    validate(config);
    const Trajectory traj = integrate_trajectory(drive, config.err, 1);
    const double alpha_sq = traj.end_q * traj.end_q + traj.end_p * traj.end_p;
    const double phase = -traj.symmetric_area;
    const double thermal = 2.0 * config.nbar + 1.0;

    const Eigen::Matrix4d h2 = x_basis();
    Vector4c initial = Vector4c::Zero();
    initial(0) = 1.0;
    const Vector4c c = h2.transpose().cast<Complex>() * initial;
    const Vector4c target = h2.transpose().cast<Complex>() * bell_target(drive.orientation);

    Complex f{0.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double mi = kCollectiveSpin[static_cast<std::size_t>(i)];
            const double mj = kCollectiveSpin[static_cast<std::size_t>(j)];
            const double dm = mi - mj;
            const Complex rho = c(i) * std::conj(c(j)) * std::polar(1.0, phase * (mi * mi - mj * mj))
                                * std::exp(-dm * dm * alpha_sq * thermal / 4.0);
            f += std::conj(target(i)) * rho * target(j);
        }
    }

    FidelityReport r;
    r.fidelity = clamp_unit(f.real());
    r.residual_displacement = std::sqrt(alpha_sq);
    r.geometric_phase = phase;
    r.breakdown.motional_coherence = std::exp(-alpha_sq * thermal / 4.0);
    r.breakdown.phase_error = phase - (-drive.orientation) * kPi / 2.0;
    return r;
}

FidelityReport analytic_fidelity(const PulseEnvelope& pulse, const FidelityConfig& config)
{
    return analytic_fidelity(to_drive(pulse), config);
}

namespace {

std::vector<double> thermal_weights(double nbar, int cutoff)
{
    std::vector<double> w;
    if (nbar == 0.0)
        return {1.0};
    const double ratio = nbar / (nbar + 1.0);
    double weight = 1.0 / (nbar + 1.0);
    double total = 0.0;
    while (total < 1.0 - 1e-10 && static_cast<int>(w.size()) < cutoff) {
        w.push_back(weight);
        total += weight;
        weight *= ratio;
    }
    return w;
}

struct OracleRun {
    double fidelity = 0.0;
    double cutoff_population = 0.0;
};

// RK4 on the (spin x Fock) state for the given initial number states.
class FockPropagator {
  public:
    FockPropagator(const Drive& drive, const ErrorConfig& err, int cutoff)
        : drive_(drive), err_(err), cutoff_(cutoff), sqrt_n_(cutoff)
    {
        for (int n = 0; n < cutoff; ++n)
            sqrt_n_(n) = std::sqrt(static_cast<double>(n));
    }

    OracleRun run(const std::vector<int>& initial, const std::vector<double>& weights,
                  const Vector4c& target, long steps_per_segment) const
    {
        const int dim = 4 * cutoff_;
        const auto cols = static_cast<Index>(initial.size());
        MatrixXc psi = MatrixXc::Zero(dim, cols);
        for (Index j = 0; j < cols; ++j)
            psi(initial[static_cast<std::size_t>(j)], j) = 1.0;  // spin |00>

        MatrixXc k1(dim, cols), k2(dim, cols), k3(dim, cols), k4(dim, cols), tmp(dim, cols);
        double top = 0.0;
        const std::size_t segments = drive_.times.size() - 1;
        for (std::size_t e = 0; e < segments; ++e) {
            const double a = drive_.times[e];
            const double dt = (drive_.times[e + 1] - a) / static_cast<double>(steps_per_segment);
            for (long s = 0; s < steps_per_segment; ++s) {
                const double t = a + s * dt;
                derivative(t, psi, k1);
                tmp = psi + (0.5 * dt) * k1;
                derivative(t + 0.5 * dt, tmp, k2);
                tmp = psi + (0.5 * dt) * k2;
                derivative(t + 0.5 * dt, tmp, k3);
                tmp = psi + dt * k3;
                derivative(t + dt, tmp, k4);
                psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                for (Index j = 0; j < cols; ++j) {
                    double pop = 0.0;
                    for (int sp = 0; sp < 4; ++sp)
                        pop += std::norm(psi(sp * cutoff_ + cutoff_ - 1, j));
                    top = std::max(top, pop);
                }
            }
        }

        OracleRun out;
        out.cutoff_population = top;
        for (Index j = 0; j < cols; ++j) {
            double overlap = 0.0;
            for (int n = 0; n < cutoff_; ++n) {
                Complex amp{0.0, 0.0};
                for (int sp = 0; sp < 4; ++sp)
                    amp += std::conj(target(sp)) * psi(sp * cutoff_ + n, j);
                overlap += std::norm(amp);
            }
            out.fidelity += weights[static_cast<std::size_t>(j)] * overlap;
        }
        return out;
    }

  private:
    // d psi / dt = (Omega / sqrt 2) S_x (e^{i theta} a^dag - e^{-i theta} a) psi
    void derivative(double t, const MatrixXc& psi, MatrixXc& out) const
    {
        const double t_clamped = std::min(t, drive_.tau());
        const double drive = evaluate(drive_, t_clamped) / std::sqrt(2.0);
        const Complex phase = std::polar(1.0, accumulated_phase(drive_.delta, err_, t));
        const int n = cutoff_;
        const auto cols = psi.cols();
        std::array<MatrixXc, 4> moved;
        for (int s = 0; s < 4; ++s) {
            const auto block = psi.middleRows(s * n, n);
            MatrixXc m = MatrixXc::Zero(n, cols);
            m.bottomRows(n - 1) = phase * (sqrt_n_.tail(n - 1).asDiagonal() * block.topRows(n - 1));
            m.topRows(n - 1) -=
                std::conj(phase) * (sqrt_n_.tail(n - 1).asDiagonal() * block.bottomRows(n - 1));
            moved[static_cast<std::size_t>(s)] = std::move(m);
        }
        // S_x = (X (x) 1 + 1 (x) X) / 2 flips bit 1 or bit 0 of the spin index.
        for (int s = 0; s < 4; ++s)
            out.middleRows(s * n, n) =
                (0.5 * drive) * (moved[static_cast<std::size_t>(s ^ 2)]
                                 + moved[static_cast<std::size_t>(s ^ 1)]);
    }

    const Drive& drive_;
    const ErrorConfig& err_;
    int cutoff_;
    Vector sqrt_n_;
};

}  // namespace

FidelityReport fock_oracle_fidelity(const Drive& drive, const FidelityConfig& config)
{
    validate(config);
    if (config.fock_cutoff < 20.0 * (config.nbar + 1.0))
        throw std::invalid_argument("fock_oracle_fidelity: cutoff below 20 (nbar + 1)");

    std::vector<double> weights = thermal_weights(config.nbar, config.fock_cutoff);
    double kept = 0.0;
    for (double w : weights)
        kept += w;
    for (double& w : weights)
        w /= kept;

    const Vector4c target = bell_target(drive.orientation);
    const FockPropagator prop(drive, config.err, config.fock_cutoff);

    // Initial resolution: about 0.05 rad of the fastest phase per step.
    const double rate = std::abs(drive.delta + config.err.detuning_offset)
                        + (config.err.chirped()
                               ? std::abs(config.err.chirp_slope()) * config.err.chirp_duration
                               : 0.0)
                        + drive.peak() * std::sqrt(static_cast<double>(config.fock_cutoff));
    const double longest = [&] {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < drive.times.size(); ++i)
            m = std::max(m, drive.times[i + 1] - drive.times[i]);
        return m;
    }();
    long per_segment = std::max(1L, static_cast<long>(std::ceil(rate * longest / 0.2)));

    auto evaluate_at = [&](long steps) {
        // Independent thermal components, split over workers, summed in order.
        const std::size_t parts = std::min<std::size_t>(
            weights.size(), static_cast<std::size_t>(std::max(1, worker_count())));
        std::vector<OracleRun> runs(parts);
        parallel_for(parts, [&](std::size_t p) {
            std::vector<int> init;
            std::vector<double> w;
            for (std::size_t j = p; j < weights.size(); j += parts) {
                init.push_back(static_cast<int>(j));
                w.push_back(weights[j]);
            }
            runs[p] = prop.run(init, w, target, steps);
        });
        OracleRun total;
        for (const auto& r : runs) {
            total.fidelity += r.fidelity;
            total.cutoff_population = std::max(total.cutoff_population, r.cutoff_population);
        }
        return total;
    };

    OracleRun previous = evaluate_at(per_segment);
    OracleRun current;
    constexpr long kMaxStepsPerSegment = 1L << 16;
    for (;;) {
        if (per_segment > kMaxStepsPerSegment)
            throw SolverError("fock_oracle_fidelity: step refinement did not converge");
        per_segment *= 2;
        current = evaluate_at(per_segment);
        if (std::abs(current.fidelity - previous.fidelity) < 1e-8)
            break;
        previous = current;
    }
    if (current.cutoff_population >= 1e-8)
        throw SolverError("fock_oracle_fidelity: population reached the number cutoff");

    const Trajectory traj = integrate_trajectory(drive, config.err, 1);
    FidelityReport r;
    r.fidelity = clamp_unit(current.fidelity);
    r.residual_displacement = traj.closure_residual;
    r.geometric_phase = -traj.symmetric_area;
    r.breakdown.motional_coherence =
        std::exp(-traj.closure_residual * traj.closure_residual * (2.0 * config.nbar + 1.0) / 4.0);
    r.breakdown.phase_error = r.geometric_phase - (-drive.orientation) * kPi / 2.0;
    r.breakdown.steps = per_segment * static_cast<long>(drive.times.size() - 1);
    r.breakdown.thermal_weight = kept;
    r.breakdown.cutoff_population = current.cutoff_population;
    return r;
}

FidelityReport fock_oracle_fidelity(const PulseEnvelope& pulse, const FidelityConfig& config)
{
    return fock_oracle_fidelity(to_drive(pulse), config);
}

GateComparison compare_square_vs_optimized(int loops, double omega_max,
                                           const FidelityConfig& config,
                                           const OptimizationConfig& opt)
{
    const GateSolution gate = solve_gate_parameters(loops, omega_max, opt);
    GateComparison cmp;
    cmp.params = gate.params;
    cmp.square = square_pulse_reference(loops, gate.params.tau);
    cmp.optimized_report = analytic_fidelity(gate.result.pulse, config);
    cmp.square_report = analytic_fidelity(square_drive(cmp.square), config);
    return cmp;
}

}  // namespace msgate
