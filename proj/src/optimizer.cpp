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

#include "msgate/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace msgate {

void validate(const OptimizationConfig& config)
{
    if (config.loops < 1)
        throw std::invalid_argument("loops must be >= 1");
    if (!(config.area_target > 0.0))
        throw std::invalid_argument("area target must be positive");
    if (!(config.c >= 0.0) || !std::isfinite(config.c))
        throw std::invalid_argument("Sobolev weight c must be non-negative");
    if (config.n < 4 || config.n < 8 * config.loops)
        throw std::invalid_argument("grid too coarse: need n >= max(4, 8 * loops)");
    if (config.quad_order < 1 || config.quad_order > 64)
        throw std::invalid_argument("quadrature order must be in [1, 64]");
}

namespace {

struct ReducedPencil {
    TimeGrid grid;
    QuadraticKernel area;
    QuadraticKernel energy;
    Matrix basis;     ///< n x (n - 4), orthonormal complement of the constraints
    Matrix cholesky;  ///< lower factor of the reduced energy form
    Eigen::SelfAdjointEigenSolver<Matrix> eig;
};

ReducedPencil reduce(const OptimizationConfig& config)
{
    validate(config);
    const double delta = kTwoPi * config.loops;
    TimeGrid grid = make_uniform_grid(1.0, config.n);
    ReducedPencil rp{grid, build_area_kernel(grid, delta, config.quad_order),
                     build_energy_kernel(grid, config.c), {}, {}, {}};
    const ConstraintSet cs = build_constraints(grid, delta);

    const int n = config.n;
    Eigen::HouseholderQR<Matrix> qr(cs.vectors);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    rp.basis = q.rightCols(n - 4);

    Matrix ar = rp.basis.transpose() * rp.area.matrix * rp.basis;
    Matrix er = rp.basis.transpose() * rp.energy.matrix * rp.basis;
    ar = 0.5 * (ar + ar.transpose()).eval();
    er = 0.5 * (er + er.transpose()).eval();

    Eigen::LLT<Matrix> llt(er);
    if (llt.info() != Eigen::Success)
        throw SolverError("reduced energy kernel is not positive definite");
    rp.cholesky = llt.matrixL();
    // C = L^{-1} Ar L^{-T}
    Matrix tmp = llt.matrixL().solve(ar);
    Matrix c = llt.matrixL().solve(tmp.transpose());
    c = 0.5 * (c + c.transpose()).eval();
    rp.eig.compute(c);
    if (rp.eig.info() != Eigen::Success)
        throw SolverError("eigenvalue solver did not converge");
    return rp;
}

std::vector<Index> order_by_magnitude(const Vector& values)
{
    std::vector<Index> idx(static_cast<std::size_t>(values.size()));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
        return std::abs(values(a)) > std::abs(values(b));
    });
    return idx;
}

}  // namespace

Vector pencil_spectrum(const OptimizationConfig& config)
{
    const ReducedPencil rp = reduce(config);
    const Vector& ev = rp.eig.eigenvalues();
    Vector out(ev.size());
    const auto idx = order_by_magnitude(ev);
    for (std::size_t i = 0; i < idx.size(); ++i)
        out(static_cast<Index>(i)) = ev(idx[i]);
    return out;
}

OptimizationResult solve_shape(const OptimizationConfig& config)
{
    const ReducedPencil rp = reduce(config);
    const Vector& ev = rp.eig.eigenvalues();
    const auto idx = order_by_magnitude(ev);

    auto full_vector = [&](Index col) -> Vector {
        const Vector z = rp.eig.eigenvectors().col(col);
        const Vector y = rp.cholesky.transpose().triangularView<Eigen::Upper>().solve(z);
        return rp.basis * y;
    };

    Index best = idx[0];
    bool degenerate = false;
    if (idx.size() > 1) {
        const double lead = std::abs(ev(idx[0]));
        const double next = std::abs(ev(idx[1]));
        if (lead - next <= 1e-10 * lead) {
            degenerate = true;
            const Matrix stiff = stiffness_matrix(rp.grid);
            auto stiffness_norm = [&](Index col) {
                Vector v = full_vector(col);
                v /= v.norm();
                return v.dot(stiff * v);
            };
            if (stiffness_norm(idx[1]) < stiffness_norm(idx[0]))
                best = idx[1];
        }
    }

    Vector omega = full_vector(best);
    Index peak_at = 0;
    omega.cwiseAbs().maxCoeff(&peak_at);
    omega /= omega(peak_at);

    OptimizationResult r;
    r.lambda_max = ev(best);
    r.area = quadratic_form(rp.area, omega);
    r.energy = omega.dot(mass_matrix(rp.grid) * omega);
    r.shape_vector = omega / omega.norm();
    r.degenerate = degenerate;
    r.pulse = make_pulse(rp.grid, std::move(omega), kTwoPi * config.loops, config.loops,
                         config.c, r.area < 0.0 ? -1 : 1);
    return r;
}

OptimizationResult scale_to_area(const OptimizationResult& result, double area_target)
{
    if (!(area_target > 0.0))
        throw std::invalid_argument("scale_to_area: target must be positive");
    if (!(std::abs(result.area) > 0.0) || !std::isfinite(result.area))
        throw std::invalid_argument("scale_to_area: shape encloses no area");
    const double s = std::sqrt(area_target / std::abs(result.area));
    OptimizationResult out = result;
    out.pulse.omega *= s;
    out.area = result.area * s * s;
    out.energy = result.energy * s * s;
    return out;
}

GateSolution gate_from_shape(const OptimizationResult& unit_shape, double omega_max,
                             double area_target)
{
    if (!(omega_max > 0.0) || !std::isfinite(omega_max))
        throw std::invalid_argument("peak gate Rabi rate must be positive");
    if (unit_shape.pulse.tau() != 1.0)
        throw std::invalid_argument("gate_from_shape: expected a unit-time shape");
    const OptimizationResult scaled = scale_to_area(unit_shape, area_target);
    const int loops = scaled.pulse.loops;
    const double tau = scaled.pulse.peak() / (kDrivePerGateRabi * omega_max);
    const double delta = kTwoPi * loops / tau;

    GateSolution g;
    g.params = {tau, delta, omega_max, loops};
    g.result = scaled;
    g.result.pulse = make_pulse(make_uniform_grid(tau, scaled.pulse.grid.interior_count()),
                                scaled.pulse.omega / tau, delta, loops, scaled.pulse.c,
                                scaled.pulse.orientation);
    g.result.energy = scaled.energy / tau;
    return g;
}

GateSolution solve_gate_parameters(int loops, double omega_max, OptimizationConfig config)
{
    if (!(omega_max > 0.0) || !std::isfinite(omega_max))
        throw std::invalid_argument("peak gate Rabi rate must be positive");
    config.loops = loops;
    return gate_from_shape(solve_shape(config), omega_max, config.area_target);
}

SquareReference square_pulse_reference(int loops, double tau)
{
    if (loops < 1)
        throw std::invalid_argument("square_pulse_reference: loops must be >= 1");
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw std::invalid_argument("square_pulse_reference: tau must be positive");
    SquareReference s;
    s.loops = loops;
    s.tau = tau;
    s.delta = kTwoPi * loops / tau;
    s.omega = s.delta / std::sqrt(2.0 * loops);
    s.energy = 2.0 * kPi * kPi * loops / tau;
    return s;
}

SquareReference square_gate_for_rabi(int loops, double omega_max)
{
    if (loops < 1)
        throw std::invalid_argument("square_gate_for_rabi: loops must be >= 1");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max))
        throw std::invalid_argument("square_gate_for_rabi: rate must be positive");
    // omega = delta / sqrt(2K) with delta = 2 pi K / tau
    const double drive = kDrivePerGateRabi * omega_max;
    const double tau = kTwoPi * loops / (drive * std::sqrt(2.0 * loops));
    SquareReference s = square_pulse_reference(loops, tau);
    s.omega = drive;
    return s;
}

double energy_ratio(const OptimizationResult& optimized, const SquareReference& square)
{
    if (optimized.pulse.loops != square.loops)
        throw std::invalid_argument("energy_ratio: loop counts differ");
    const double peak = optimized.pulse.peak();
    if (std::abs(peak - square.omega) > 1e-9 * square.omega)
        throw std::invalid_argument("energy_ratio: peak drive rates differ");
    return optimized.energy / square.energy;
}

}  // namespace msgate
