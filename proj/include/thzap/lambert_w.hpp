// SPDX-License-Identifier: Apache-2.0
//
// thzap - indoor terahertz access-point placement simulator
// Copyright (C) 2026 The thzap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace thzap
{

// Principal branch of the Lambert W function, the inverse of w -> w*exp(w) for w >= -1.
// Halley iteration from a branch-aware starting point; converges in a handful of steps
// over the whole real domain [-1/e, inf).
template <typename Scalar>
Scalar lambert_w0(Scalar x)
{
    using std::abs;
    using std::exp;
    using std::log;
    using std::log1p;
    using std::sqrt;

    constexpr Scalar e = std::numbers::e_v<Scalar>;
    constexpr Scalar branch = -1 / e;
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    constexpr int max_iterations = 50;

    if (std::isnan(x) || x < branch)
        throw std::domain_error("lambert_w0: argument below -1/e");
    if (x == Scalar(0))
        return Scalar(0);
    if (std::isinf(x))
        return x;

    // Distance to the branch point, computed as 1 + e*x with the constant split to keep digits.
    const Scalar q = e * x + Scalar(1);
    if (q <= 4 * eps)
        return Scalar(-1);

    Scalar w;
    if (x < Scalar(-0.25))
    {
        const Scalar p = sqrt(2 * q);
        w = -1 + p * (1 + p * (Scalar(-1) / 3 + p * Scalar(11) / 72));
    }
    else if (x < Scalar(3))
    {
        const Scalar l = log1p(x);
        w = l * (1 - log1p(l) / (2 + l));
    }
    else
    {
        const Scalar l1 = log(x);
        const Scalar l2 = log(l1);
        w = l1 - l2 + l2 / l1;
    }

    for (int it = 0; it < max_iterations; ++it)
    {
        const Scalar ew = exp(w);
        const Scalar f = w * ew - x;
        const Scalar wp1 = w + 1;
        if (wp1 == Scalar(0))
            break;
        const Scalar step = f / (ew * wp1 - (w + 2) * f / (2 * wp1));
        w -= step;
        if (w < Scalar(-1))
            w = Scalar(-1);
        if (abs(step) <= 2 * eps * (abs(w) + eps))
            break;
    }
    return w;
}

} // namespace thzap
