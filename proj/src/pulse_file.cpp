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

#include "msgate/pulse_file.hpp"

#include <fstream>
#include <sstream>

namespace msgate {

using nlohmann::json;

PulseFile to_pulse_file(const PulseEnvelope& pulse, json provenance)
{
    PulseFile f;
    f.loops = pulse.loops;
    f.tau_s = pulse.tau();
    f.delta_rad_per_s = pulse.delta;
    f.c = pulse.c;
    f.n = pulse.grid.interior_count();
    f.omega_rad_per_s.assign(pulse.omega.data(), pulse.omega.data() + pulse.omega.size());
    f.orientation = pulse.orientation;
    f.provenance = provenance.is_null() ? json::object() : std::move(provenance);
    return f;
}

PulseEnvelope to_pulse(const PulseFile& file)
{
    if (static_cast<int>(file.omega_rad_per_s.size()) != file.n)
        throw IoError("pulse file: amplitude count does not match n");
    try {
        Vector omega = Eigen::Map<const Vector>(file.omega_rad_per_s.data(), file.n);
        return make_pulse(make_uniform_grid(file.tau_s, file.n), std::move(omega),
                          file.delta_rad_per_s, file.loops, file.c, file.orientation);
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("pulse file: ") + e.what());
    }
}

std::string serialize(const PulseFile& file)
{
    json j;
    j["format_version"] = file.format_version;
    j["loops"] = file.loops;
    j["tau_s"] = file.tau_s;
    j["delta_rad_per_s"] = file.delta_rad_per_s;
    j["c"] = file.c;
    j["n"] = file.n;
    j["omega_rad_per_s"] = file.omega_rad_per_s;
    j["orientation"] = file.orientation;
    j["provenance"] = file.provenance;
    return j.dump(2) + "\n";
}

PulseFile parse_pulse_file(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("pulse file: ") + e.what());
    }
    PulseFile f;
    try {
        f.format_version = j.at("format_version").get<int>();
        if (f.format_version != PulseFile::kFormatVersion)
            throw IoError("pulse file: unsupported format_version "
                          + std::to_string(f.format_version));
        f.loops = j.at("loops").get<int>();
        f.tau_s = j.at("tau_s").get<double>();
        f.delta_rad_per_s = j.at("delta_rad_per_s").get<double>();
        f.c = j.at("c").get<double>();
        f.n = j.at("n").get<int>();
        f.omega_rad_per_s = j.at("omega_rad_per_s").get<std::vector<double>>();
        f.orientation = j.at("orientation").get<int>();
        f.provenance = j.value("provenance", json::object());
    } catch (const json::exception& e) {
        throw IoError(std::string("pulse file: ") + e.what());
    }
    return f;
}

PulseFile read_pulse_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_pulse_file(ss.str());
}

void write_pulse_file(const std::filesystem::path& path, const PulseFile& file)
{
    write_file_atomic(path, serialize(file));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out)
            throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename into " + path.string());
    }
}

}  // namespace msgate
