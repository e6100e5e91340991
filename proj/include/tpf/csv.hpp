// Copyright 2026 The tpfollow Authors
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

#ifndef TPF_CSV_HPP_
#define TPF_CSV_HPP_

#include <string>

#include "tpf/analysis.hpp"
#include "tpf/sim.hpp"

namespace tpf {

// Locale-independent %.17g rendering: '.' decimal separator, round-trip safe.
std::string fmt_double(double v);

std::string trace_to_csv(const Trace& trace);
std::string monitors_to_csv(const MonitorReport& report);
std::string certificate_to_csv(const GainCertificate& cert);
std::string sweep_to_csv(const std::string& axis,
                         const std::vector<SweepRow>& rows);

// Writes with '\n' line endings regardless of platform.
void write_file(const std::string& path, const std::string& content);

}  // namespace tpf

#endif  // TPF_CSV_HPP_
