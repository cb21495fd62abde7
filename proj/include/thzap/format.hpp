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

#include <string>
#include <string_view>

namespace thzap
{

// Shortest decimal that round-trips to the same double (std::to_chars).
std::string format_number(double v);

// Strict inverse of format_number; throws std::invalid_argument on trailing garbage.
double parse_number(std::string_view text);

} // namespace thzap
