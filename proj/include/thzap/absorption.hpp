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

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace thzap
{

// Frequency-indexed molecular absorption coefficients at a reference humidity.
//
// Text format: comma-separated rows `frequency_hz,tau_per_m,reference_humidity`,
// one header row with exactly those names, '#' starts a comment line. Rows must be
// sorted by strictly increasing frequency. Temperature is not modelled; the table is
// valid for the conditions it was generated at.
class AbsorptionTable
{
public:
    struct Row
    {
        double frequency_hz;
        double tau_per_m;
        double reference_humidity;
    };

    AbsorptionTable() = default;
    explicit AbsorptionTable(std::vector<Row> rows);

    static AbsorptionTable parse(std::string_view text, std::string_view source = "<memory>");
    static AbsorptionTable load(const std::filesystem::path &path);

    // Table generated from the ITU-R P.676 line-by-line model, compiled into the library.
    static const AbsorptionTable &builtin();

    // Linear interpolation in frequency, then linear scaling in humidity relative to the
    // row's reference humidity. Throws std::domain_error outside the tabulated range.
    double tau(double frequency_hz, double humidity) const;

    double min_frequency_hz() const;
    double max_frequency_hz() const;
    std::span<const Row> rows() const { return rows_; }

private:
    std::vector<Row> rows_;
};

} // namespace thzap
