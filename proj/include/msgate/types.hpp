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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace msgate {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Ratio between the drive rate entering the phase-space integrals and the
/// gate Rabi rate Omega_MS of the two-ion interaction
/// H = Omega_MS(t) S_x (a^dag e^{i theta} + h.c.) with S_x = (X1 + X2) / 2.
/// With this factor an enclosed phase-space area of pi/2 is exactly the
/// maximally entangling geometric phase.
inline constexpr double kDrivePerGateRabi = std::numbers::sqrt2;

/// Raised when a numerical solve breaks down (non-definite pencil,
/// eigensolver failure, oracle cutoff leakage).
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace msgate
