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

#include "msgate/grid_basis.hpp"

namespace msgate {

enum class KernelKind { Area, Energy };

/// Symmetric matrix of a quadratic functional over the hat basis:
/// F(Omega) = omega^T matrix omega.
struct QuadraticKernel {
    Matrix matrix;
    KernelKind kind = KernelKind::Area;
    TimeGrid grid;
    double delta = 0.0;  ///< Area kernels only.
    double c = 0.0;      ///< Energy kernels only.
};

template <class Derived>
double quadratic_form(const QuadraticKernel& kernel, const Eigen::MatrixBase<Derived>& omega)
{
    return omega.dot(kernel.matrix * omega);
}

/// Area form A = 1/2 int int Omega(t) cos(delta max(t,s)) sin(delta min(t,s)) Omega(s),
/// element pairs integrated by Gauss-Legendre of `quad_order` points per axis;
/// diagonal pairs are split along t = s.
QuadraticKernel build_area_kernel(const TimeGrid& grid, double delta, int quad_order = 6);

/// Hat-basis mass matrix <chi_i, chi_j> (tridiagonal).
Matrix mass_matrix(const TimeGrid& grid);
/// Hat-basis stiffness matrix <chi_i', chi_j'> (tridiagonal).
Matrix stiffness_matrix(const TimeGrid& grid);

/// Sobolev energy M + c tau^2 S. The tau^2 makes c dimensionless: it is the
/// derivative weight on the normalized time t / tau, so shapes synthesized
/// for a given (loops, c) do not depend on the gate time.
QuadraticKernel build_energy_kernel(const TimeGrid& grid, double c);

/// Closure constraints cos(dt), sin(dt), t sin(dt), t cos(dt) discretized
/// against the hats, with the projector onto their orthogonal complement.
struct ConstraintSet {
    TimeGrid grid;
    double delta = 0.0;
    /// n x 4, column i holds b^i_k = int phi^i chi_k.
    Matrix vectors;
    /// Continuum Gram matrix <phi^i, phi^j> on [0, tau].
    Eigen::Matrix4d gram;
    /// I - B (B^T B)^{-1} B^T, the coefficient-space projector.
    Matrix projector;
    /// False when delta * tau is not a whole number of loops.
    bool commensurate = true;
};

/// Closed-form Gram matrix of the four constraint functions on [0, tau].
Eigen::Matrix4d constraint_gram(double tau, double delta);

/// Rejects a (numerically) singular Gram matrix, which happens as delta -> 0.
ConstraintSet build_constraints(const TimeGrid& grid, double delta);

/// p^T K p, resymmetrized. The projected energy kernel is singular.
QuadraticKernel project_kernel(const QuadraticKernel& kernel, const ConstraintSet& constraints);

}  // namespace msgate
