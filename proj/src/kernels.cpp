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

#include "msgate/kernels.hpp"

#include <cmath>
#include <iostream>

#include "msgate/quadrature.hpp"

namespace msgate {

QuadraticKernel build_area_kernel(const TimeGrid& grid, double delta, int quad_order)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("build_area_kernel: delta must be positive");
    const GaussRule rule = gauss_legendre(quad_order);
    const int n = grid.interior_count();
    const int segments = grid.segment_count();

    // Per segment e: integrals of the falling/rising shape against cos and sin.
    // Column 0 belongs to node e, column 1 to node e + 1.
    std::vector<Eigen::Vector2d> cos_part(static_cast<std::size_t>(segments));
    std::vector<Eigen::Vector2d> sin_part(static_cast<std::size_t>(segments));
    // Triangle t > s inside one segment: D(a, b) = int int_{s<t} N_a(t) cos N_b(s) sin.
    std::vector<Eigen::Matrix2d> diag_part(static_cast<std::size_t>(segments));

    for (int e = 0; e < segments; ++e) {
        const double a = grid.node(e);
        const double b = grid.node(e + 1);
        const double len = b - a;
        auto shapes = [&](double t) {
            const double x = (t - a) / len;
            return Eigen::Vector2d(1.0 - x, x);
        };
        cos_part[e] = rule.integrate(a, b, [&](double t) -> Eigen::Vector2d {
            return shapes(t) * std::cos(delta * t);
        });
        sin_part[e] = rule.integrate(a, b, [&](double t) -> Eigen::Vector2d {
            return shapes(t) * std::sin(delta * t);
        });
        diag_part[e] = rule.integrate(a, b, [&](double t) -> Eigen::Matrix2d {
            const Eigen::Vector2d inner = rule.integrate(a, t, [&](double s) -> Eigen::Vector2d {
                return shapes(s) * std::sin(delta * s);
            });
            return (shapes(t) * std::cos(delta * t)) * inner.transpose();
        });
    }

    // P_ij = int int_{s<t} chi_i(t) cos(delta t) chi_j(s) sin(delta s);
    // the symmetric kernel is (P + P^T) / 2.
    Matrix full = Matrix::Zero(segments + 1, segments + 1);
    Eigen::VectorXd sin_before = Eigen::VectorXd::Zero(segments + 1);
    for (int e = 0; e < segments; ++e) {
        for (int a = 0; a < 2; ++a) {
            full.row(e + a) += cos_part[e](a) * sin_before.transpose();
            for (int b = 0; b < 2; ++b)
                full(e + a, e + b) += diag_part[e](a, b);
        }
        sin_before(e) += sin_part[e](0);
        sin_before(e + 1) += sin_part[e](1);
    }
    Matrix p = full.block(1, 1, n, n);
    QuadraticKernel k;
    k.matrix = 0.5 * (p + p.transpose());
    k.kind = KernelKind::Area;
    k.grid = grid;
    k.delta = delta;
    return k;
}

Matrix mass_matrix(const TimeGrid& grid)
{
    const int n = grid.interior_count();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double left = grid.segment_length(i);
        const double right = grid.segment_length(i + 1);
        m(i, i) = (left + right) / 3.0;
        if (i + 1 < n)
            m(i, i + 1) = m(i + 1, i) = right / 6.0;
    }
    return m;
}

Matrix stiffness_matrix(const TimeGrid& grid)
{
    const int n = grid.interior_count();
    Matrix s = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double left = grid.segment_length(i);
        const double right = grid.segment_length(i + 1);
        s(i, i) = 1.0 / left + 1.0 / right;
        if (i + 1 < n)
            s(i, i + 1) = s(i + 1, i) = -1.0 / right;
    }
    return s;
}

QuadraticKernel build_energy_kernel(const TimeGrid& grid, double c)
{
    if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("build_energy_kernel: c must be non-negative");
    QuadraticKernel k;
    const double tau = grid.tau();
    k.matrix = mass_matrix(grid);
    if (c > 0.0)
        k.matrix += (c * tau * tau) * stiffness_matrix(grid);
    k.kind = KernelKind::Energy;
    k.grid = grid;
    k.c = c;
    return k;
}

Eigen::Matrix4d constraint_gram(double tau, double delta)
{
    // Products of the constraint functions reduce to t^m (1 +- cos 2dt) / 2 and
    // t^m sin(2dt) / 2.
    const double w = 2.0 * delta;
    Complex osc[3];
    double poly[3];
    for (int m = 0; m < 3; ++m) {
        osc[m] = segment_power_exp(0.0, tau, w, m);
        poly[m] = std::pow(tau, m + 1) / (m + 1);
    }
    auto cos_sq = [&](int m) { return 0.5 * (poly[m] + osc[m].real()); };
    auto sin_sq = [&](int m) { return 0.5 * (poly[m] - osc[m].real()); };
    auto sin_cos = [&](int m) { return 0.5 * osc[m].imag(); };

    // phi1 = cos, phi2 = sin, phi3 = t sin, phi4 = t cos
    Eigen::Matrix4d g;
    g(0, 0) = cos_sq(0);
    g(1, 1) = sin_sq(0);
    g(0, 1) = sin_cos(0);
    g(0, 2) = sin_cos(1);
    g(0, 3) = cos_sq(1);
    g(1, 2) = sin_sq(1);
    g(1, 3) = sin_cos(1);
    g(2, 2) = sin_sq(2);
    g(3, 3) = cos_sq(2);
    g(2, 3) = sin_cos(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            g(i, j) = g(j, i);
    return g;
}

ConstraintSet build_constraints(const TimeGrid& grid, double delta)
{
    const int n = grid.interior_count();
    if (n < 4)
        throw std::invalid_argument("build_constraints: need at least 4 interior nodes");
    ConstraintSet cs;
    cs.grid = grid;
    cs.delta = delta;
    cs.gram = constraint_gram(grid.tau(), delta);

    const double loops = delta * grid.tau() / kTwoPi;
    cs.commensurate = loops >= 0.5 && std::abs(loops - std::round(loops)) <= 1e-9 * loops;
    if (!cs.commensurate)
        std::clog << "warning: delta * tau = " << delta * grid.tau()
                  << " is not a whole number of loops; the loop will not close\n";

    // Normalized Gram spectrum detects linear dependence of the four functions.
    const Eigen::Vector4d scale = cs.gram.diagonal().cwiseSqrt();
    if ((scale.array() <= 0.0).any())
        throw std::invalid_argument("build_constraints: degenerate constraint functions");
    const Eigen::Matrix4d unit = scale.cwiseInverse().asDiagonal() * cs.gram
                                 * scale.cwiseInverse().asDiagonal();
    const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(unit).eigenvalues();
    if (!(ev.minCoeff() > 1e-12 * ev.maxCoeff()))
        throw std::invalid_argument("build_constraints: singular Gram matrix (delta too small)");

    cs.vectors.resize(n, 4);
    cs.vectors.setZero();
    for (int e = 0; e < grid.segment_count(); ++e) {
        const double a = grid.node(e);
        const double b = grid.node(e + 1);
        const double mid = 0.5 * (a + b);
        const double slope = 1.0 / (b - a);
        // Falling and rising shapes in the midpoint offset u: (1/2 -+ u/len),
        // multiplied by t = mid + u for the t-weighted constraints.
        const std::array<std::array<double, 3>, 2> plain{{{0.5, -slope, 0.0}, {0.5, slope, 0.0}}};
        for (int side = 0; side < 2; ++side) {
            const int k = e + side;  // global node index
            if (k == 0 || k == grid.segment_count())
                continue;
            const auto& c = plain[static_cast<std::size_t>(side)];
            const std::array<double, 3> weighted{mid * c[0], c[0] + mid * c[1], c[1]};
            const Complex zero = segment_poly_exp(a, b, delta, c);
            const Complex one = segment_poly_exp(a, b, delta, weighted);
            cs.vectors(k - 1, 0) += zero.real();
            cs.vectors(k - 1, 1) += zero.imag();
            cs.vectors(k - 1, 2) += one.imag();
            cs.vectors(k - 1, 3) += one.real();
        }
    }

    const Eigen::Matrix4d discrete_gram = cs.vectors.transpose() * cs.vectors;
    Eigen::LDLT<Eigen::Matrix4d> ldlt(discrete_gram);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::invalid_argument("build_constraints: singular discrete constraint Gram");
    cs.projector = Matrix::Identity(n, n)
                   - cs.vectors * ldlt.solve(cs.vectors.transpose());
    cs.projector = 0.5 * (cs.projector + cs.projector.transpose()).eval();
    return cs;
}

QuadraticKernel project_kernel(const QuadraticKernel& kernel, const ConstraintSet& constraints)
{
    if (!(kernel.grid == constraints.grid))
        throw std::invalid_argument("project_kernel: kernel and constraints use different grids");
    QuadraticKernel out = kernel;
    const Matrix& p = constraints.projector;
    out.matrix = p.transpose() * kernel.matrix * p;
    out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
    return out;
}

}  // namespace msgate
