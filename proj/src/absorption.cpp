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

#include "thzap/absorption.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace thzap
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view s, std::string_view source, int line)
{
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string(source) + ":" + std::to_string(line) + ": bad number '" +
                                    std::string(s) + "'");
    return v;
}

} // namespace

AbsorptionTable::AbsorptionTable(std::vector<Row> rows) : rows_(std::move(rows))
{
    if (rows_.empty())
        throw std::invalid_argument("AbsorptionTable: no rows");
    for (std::size_t i = 0; i < rows_.size(); ++i)
    {
        const Row &r = rows_[i];
        if (!(r.frequency_hz > 0) || !(r.tau_per_m >= 0) || !(r.reference_humidity > 0 && r.reference_humidity <= 1))
            throw std::invalid_argument("AbsorptionTable: invalid row " + std::to_string(i));
        if (i > 0 && !(r.frequency_hz > rows_[i - 1].frequency_hz))
            throw std::invalid_argument("AbsorptionTable: frequencies must be strictly increasing");
    }
}

AbsorptionTable AbsorptionTable::parse(std::string_view text, std::string_view source)
{
    std::vector<Row> rows;
    bool header_seen = false;
    int line_no = 0;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen)
        {
            if (line != "frequency_hz,tau_per_m,reference_humidity")
                throw std::invalid_argument(std::string(source) + ": expected header "
                                            "'frequency_hz,tau_per_m,reference_humidity'");
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos)
            throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) + ": expected 3 columns");
        rows.push_back({to_double(line.substr(0, c1), source, line_no),
                        to_double(line.substr(c1 + 1, c2 - c1 - 1), source, line_no),
                        to_double(line.substr(c2 + 1), source, line_no)});
    }
    return AbsorptionTable(std::move(rows));
}

AbsorptionTable AbsorptionTable::load(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open absorption table " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

double AbsorptionTable::min_frequency_hz() const { return rows_.front().frequency_hz; }
double AbsorptionTable::max_frequency_hz() const { return rows_.back().frequency_hz; }

double AbsorptionTable::tau(double frequency_hz, double humidity) const
{
    if (rows_.empty())
        throw std::domain_error("absorption table is empty");
    if (!(frequency_hz >= min_frequency_hz() && frequency_hz <= max_frequency_hz()))
        throw std::domain_error("carrier frequency " + std::to_string(frequency_hz) +
                                " Hz is outside the absorption table range");
    const auto hi = std::lower_bound(rows_.begin(), rows_.end(), frequency_hz,
                                     [](const Row &r, double f) { return r.frequency_hz < f; });
    auto scaled = [humidity](const Row &r)
    { return humidity == r.reference_humidity ? r.tau_per_m : r.tau_per_m * (humidity / r.reference_humidity); };
    if (hi->frequency_hz == frequency_hz)
        return scaled(*hi);
    const auto lo = hi - 1;
    const double w = (frequency_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
    return (1.0 - w) * scaled(*lo) + w * scaled(*hi);
}

} // namespace thzap
