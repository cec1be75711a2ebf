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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "msgate/grid_basis.hpp"

namespace msgate {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Self-describing JSON pulse document. Doubles are written in shortest
/// round-trip form, so write -> read -> write reproduces the same bytes.
struct PulseFile {
    static constexpr int kFormatVersion = 1;

    int format_version = kFormatVersion;
    int loops = 1;
    double tau_s = 0.0;
    double delta_rad_per_s = 0.0;
    double c = 1.0;
    int n = 0;
    std::vector<double> omega_rad_per_s;
    int orientation = 1;
    nlohmann::json provenance = nlohmann::json::object();
};

PulseFile to_pulse_file(const PulseEnvelope& pulse, nlohmann::json provenance = {});

/// Rebuilds the envelope on a uniform grid; validates delta * tau = 2 pi K.
PulseEnvelope to_pulse(const PulseFile& file);

std::string serialize(const PulseFile& file);
/// Throws IoError on malformed documents or unsupported versions.
PulseFile parse_pulse_file(std::string_view text);

PulseFile read_pulse_file(const std::filesystem::path& path);
void write_pulse_file(const std::filesystem::path& path, const PulseFile& file);

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace msgate
