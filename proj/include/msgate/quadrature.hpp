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

#include <type_traits>
#include <vector>

namespace msgate {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const { return static_cast<int>(nodes.size()); }

    /// Integrate f over [a, b] with the rule mapped affinely.
    template <class F>
    auto integrate(double a, double b, F&& f) const
    {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        // First term seeds the sum so Eigen fixed-size results start initialized.
        using Result = std::decay_t<decltype(f(mid))>;
        Result sum = Result(weights[0] * f(mid + half * nodes[0]));
        for (std::size_t i = 1; i < nodes.size(); ++i)
            sum += weights[i] * f(mid + half * nodes[i]);
        return Result(sum * half);
    }
};

/// Nodes and weights by Newton iteration on P_order; order in [1, 64].
GaussRule gauss_legendre(int order);

}  // namespace msgate
