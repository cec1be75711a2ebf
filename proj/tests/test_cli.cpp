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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>

#include "msgate/cli.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/pulse_file.hpp"

using namespace msgate;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::map<std::string, double> summary(const std::string& text)
{
    std::map<std::string, double> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto colon = line.find(':');
        if (colon != std::string::npos)
            kv[line.substr(0, colon)] = std::stod(line.substr(colon + 1));
    }
    return kv;
}

std::vector<std::vector<std::string>> csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() / ("msgate_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("optimize prints the gate summary")
{
    const Run r = run({"optimize", "--loops", "3", "--rabi-max-hz", "1180"});
    REQUIRE(r.code == kExitOk);
    const auto kv = summary(r.out);
    CHECK(kv.at("loops") == 3);
    CHECK(kv.at("tau_us") == doctest::Approx(1000.0).epsilon(0.05));
    CHECK(kv.at("delta_over_2pi_khz") == doctest::Approx(3e-3 / (kv.at("tau_us") * 1e-6)).epsilon(1e-12));
    CHECK(kv.at("delta_over_2pi_khz") == doctest::Approx(2.998).epsilon(0.01));
    CHECK(kv.at("peak_rabi_khz") == doctest::Approx(1.18).epsilon(1e-12));
    CHECK(kv.at("energy_ratio_vs_square") >= 0.65);
    CHECK(kv.at("energy_ratio_vs_square") <= 0.85);
    CHECK(std::abs(kv.at("area")) == doctest::Approx(kPi / 2).epsilon(1e-12));

    const Run fast = run({"optimize", "--loops", "3", "--rabi-max-hz", "2360"});
    CHECK(summary(fast.out).at("tau_us") == doctest::Approx(0.5 * kv.at("tau_us")).epsilon(1e-14));

    const Run listing = run({"optimize", "--loops", "2", "--rabi-max-hz", "1000", "--n", "32", "--spectrum"});
    CHECK(listing.code == kExitOk);
    CHECK(listing.out.find("spectrum") != std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(run({"optimize", "--loops", "0", "--rabi-max-hz", "1180"}).code == kExitUsage);
    CHECK(run({"optimize", "--loops", "3"}).code == kExitUsage);
    CHECK(run({"optimize", "--loops", "3", "--rabi-max-hz", "-5"}).code == kExitUsage);
    CHECK(run({"optimize", "--loops", "3", "--rabi-max-hz", "1180", "--n", "8"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"sweep", "--offsets-hz", "0:10:5"}).code == kExitUsage);
    CHECK(run({"sweep", "--square", "--loops", "3", "--tau-us", "1000", "--offsets-hz", "0:10"}).code == kExitUsage);
    const Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("optimize") != std::string::npos);
}

TEST_CASE("pulse files round trip byte for byte")
{
    TempDir tmp;
    const fs::path file = tmp.path / "gate.json";
    REQUIRE(run({"optimize", "--loops", "3", "--rabi-max-hz", "1180", "--out", file.string()}).code == kExitOk);
    const std::string text = slurp(file);
    const PulseFile pf = parse_pulse_file(text);
    CHECK(pf.loops == 3);
    CHECK(pf.n == 256);
    CHECK(pf.omega_rad_per_s.size() == 256);
    CHECK(serialize(pf) == text);
    CHECK(serialize(to_pulse_file(to_pulse(pf), pf.provenance)) == text);
    CHECK(!fs::exists(tmp.path / "gate.json.tmp"));

    const PulseEnvelope pulse = to_pulse(pf);
    CHECK(pulse.peak() == doctest::Approx(kDrivePerGateRabi * kTwoPi * 1180.0).epsilon(1e-14));

    std::ofstream(tmp.path / "broken.json") << "{\"format_version\": 1, \"loops\": 3";
    CHECK_THROWS_AS(read_pulse_file(tmp.path / "broken.json"), IoError);
    std::ofstream(tmp.path / "future.json") << "{\"format_version\": 99}";
    CHECK_THROWS_AS(read_pulse_file(tmp.path / "future.json"), IoError);
    CHECK_THROWS_AS(read_pulse_file(tmp.path / "absent.json"), IoError);
}

TEST_CASE("sweep subcommand")
{
    TempDir tmp;
    const fs::path file = tmp.path / "gate.json";
    REQUIRE(run({"optimize", "--loops", "3", "--rabi-max-hz", "1180", "--out", file.string()}).code == kExitOk);

    const Run r = run({"sweep", "--pulse", file.string(), "--offsets-hz=-20:20:5"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == std::vector<std::string>{"offset_hz", "closure_residual", "area", "fidelity"});
    std::size_t best = 1;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (std::stod(rows[i][1]) < std::stod(rows[best][1]))
            best = i;
    CHECK(std::stod(rows[best][0]) == 0.0);
    CHECK(std::stod(rows[best][3]) == doctest::Approx(1.0).epsilon(1e-9));

    const fs::path out = tmp.path / "sweep.csv";
    REQUIRE(run({"sweep", "--pulse", file.string(), "--offsets-hz=-20:20:5", "--out", out.string()}).code == kExitOk);
    CHECK(slurp(out) == r.out);

    const Run sq = run({"sweep", "--square", "--loops", "3", "--tau-us", "1000", "--offsets-hz", "0:10:5"});
    REQUIRE(sq.code == kExitOk);
    const auto sqrows = csv(sq.out);
    REQUIRE(sqrows.size() == 4);
    CHECK(std::stod(sqrows[1][1]) < 1e-12);
    CHECK(std::stod(sqrows[2][1]) > std::stod(rows[7][1]));

    const Run chirp = run({"sweep", "--pulse", file.string(), "--offsets-hz", "0:0:1", "--chirp-hz-per-us", "0.3"});
    REQUIRE(chirp.code == kExitOk);
    CHECK(std::stod(csv(chirp.out)[1][3]) < 0.9999);

    CHECK(run({"sweep", "--pulse", (tmp.path / "missing.json").string(), "--offsets-hz", "0:1:1"}).code == kExitIo);
    CHECK(run({"sweep", "--pulse", file.string(), "--offsets-hz", "0:1:1", "--out",
               (tmp.path / "no" / "such" / "dir.csv").string()}).code == kExitIo);
}

TEST_CASE("compare subcommand")
{
    const Run r = run({"compare", "--rabi-max-hz", "1180"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0][0] == "K");
    const double expected_dtp[] = {6, 10, 18, 24, 36};
    double max_norm = 0.0;
    std::size_t max_row = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][1]) == doctest::Approx(expected_dtp[i - 1]).epsilon(1e-12));
        const double ratio = std::stod(rows[i][6]);
        CHECK(ratio == doctest::Approx(0.75).epsilon(0.10 / 0.75));
        for (std::size_t col : {7u, 8u})
            if (std::stod(rows[i][col]) > max_norm) {
                max_norm = std::stod(rows[i][col]);
                max_row = i * 10 + col;
            }
    }
    CHECK(max_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_row == 5 * 10 + 7);

    const Run sub = run({"compare", "--rabi-max-hz", "1180", "--loops-list", "2,4", "--n", "64"});
    REQUIRE(sub.code == kExitOk);
    CHECK(csv(sub.out).size() == 3);
    CHECK(run({"compare", "--rabi-max-hz", "1180", "--loops-list", "0"}).code == kExitUsage);
}

TEST_CASE("trajectory subcommand")
{
    TempDir tmp;
    const fs::path file = tmp.path / "gate.json";
    REQUIRE(run({"optimize", "--loops", "3", "--rabi-max-hz", "1180", "--out", file.string()}).code == kExitOk);
    const Run r = run({"trajectory", "--pulse", file.string(), "--samples-per-segment", "50"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv(r.out);
    REQUIRE(rows.size() == 257 * 50 + 2);
    CHECK(rows[0] == std::vector<std::string>{"t_us", "omega_hz", "q", "p"});
    CHECK(std::stod(rows[1][0]) == 0.0);
    CHECK(std::stod(rows[1][1]) == 0.0);
    CHECK(std::stod(rows[1][2]) == 0.0);
    CHECK(std::stod(rows[1][3]) == 0.0);
    CHECK(std::stod(rows.back()[1]) == 0.0);

    double peak = 0.0;
    std::vector<PhasePoint> pts;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        peak = std::max(peak, std::stod(rows[i][1]));
        pts.push_back({std::stod(rows[i][0]), std::stod(rows[i][2]), std::stod(rows[i][3])});
    }
    CHECK(peak == doctest::Approx(1180.0).epsilon(1e-9));
    CHECK(std::abs(shoelace_area(pts)) == doctest::Approx(kPi / 2).epsilon(1e-6));

    CHECK(run({"trajectory"}).code == kExitUsage);
    CHECK(run({"trajectory", "--pulse", (tmp.path / "absent.json").string()}).code == kExitIo);
}

TEST_CASE("parse_range")
{
    CHECK(parse_range("-20:20:5") == std::vector<double>{-20, -15, -10, -5, 0, 5, 10, 15, 20});
    CHECK(parse_range("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(parse_range("3:3:1") == std::vector<double>{3});
    CHECK(parse_range("0:0.3:0.1").size() == 4);
    CHECK_THROWS(parse_range("0:10"));
    CHECK_THROWS(parse_range("0:10:0"));
    CHECK_THROWS(parse_range("10:0:1"));
    CHECK_THROWS(parse_range("a:b:c"));
}

TEST_CASE("installed binary maps errors to exit codes")
{
    const std::string exe = MSGATE_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("--help") == kExitOk);
    CHECK(status("optimize --loops 0 --rabi-max-hz 1180") == kExitUsage);
    CHECK(status("sweep --pulse /nonexistent/gate.json --offsets-hz 0:1:1") == kExitIo);
    CHECK(status("optimize --loops 1 --rabi-max-hz 1000 --n 16") == kExitOk);
}
