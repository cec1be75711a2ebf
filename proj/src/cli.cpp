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

#include "msgate/cli.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "msgate/fidelity.hpp"
#include "msgate/pulse_file.hpp"

#ifndef MSGATE_VERSION
#define MSGATE_VERSION "dev"
#endif

namespace msgate {

namespace {

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

std::string num(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double hz_to_rad(double hz) { return kTwoPi * hz; }
double rad_to_hz(double rad) { return rad / kTwoPi; }

/// CSV table with one header line; written atomically or to stdout.
class Table {
  public:
    explicit Table(std::vector<std::string> header) : width_(header.size())
    {
        add_row(header);
    }

    void add(std::vector<double> row)
    {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (double v : row)
            cells.push_back(num(v));
        add_row(cells);
    }

    void emit(const std::string& path, std::ostream& out) const
    {
        if (path.empty() || path == "-")
            out << text_.str();
        else
            write_file_atomic(path, text_.str());
    }

  private:
    void add_row(const std::vector<std::string>& cells)
    {
        if (cells.size() != width_)
            throw std::logic_error("Table: row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i)
            text_ << (i ? "," : "") << cells[i];
        text_ << '\n';
    }

    std::size_t width_;
    std::ostringstream text_;
};

struct OptimizeArgs {
    int loops = 0;
    double rabi_max_hz = 0.0;
    double c = 1.0;
    int n = 256;
    int quad_order = 6;
    std::string out;
    bool spectrum = false;
};

struct SweepArgs {
    std::string pulse;
    bool square = false;
    int loops = 0;
    double tau_us = 0.0;
    std::string offsets;
    double chirp = 0.0;
    double chirp_duration_us = 1000.0;
    double nbar = 0.4;
    std::string out;
};

struct CompareArgs {
    std::vector<int> loops{3, 5, 9, 12, 18};
    double rabi_max_hz = 0.0;
    double c = 1.0;
    int n = 256;
    std::string out;
};

struct TrajectoryArgs {
    std::string pulse;
    int samples = 20;
    std::string out;
};

OptimizationConfig make_config(int loops, double c, int n, int quad_order = 6)
{
    OptimizationConfig cfg;
    cfg.loops = loops;
    cfg.c = c;
    cfg.n = n;
    cfg.quad_order = quad_order;
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out)
{
    const OptimizationConfig cfg = make_config(a.loops, a.c, a.n, a.quad_order);
    const double rabi = hz_to_rad(a.rabi_max_hz);
    const GateSolution gate = solve_gate_parameters(a.loops, rabi, cfg);
    const SquareReference square = square_gate_for_rabi(a.loops, rabi);
    const double ratio = energy_ratio(gate.result, square);

    if (!a.out.empty()) {
        nlohmann::json prov = {
            {"generator", "msgate"},
            {"version", MSGATE_VERSION},
            {"solver", "reduced symmetric-definite generalized eigenproblem"},
            {"quad_order", cfg.quad_order},
            {"area_target", cfg.area_target},
            {"rabi_max_hz", a.rabi_max_hz},
            {"lambda_max", gate.result.lambda_max},
        };
        write_pulse_file(a.out, to_pulse_file(gate.result.pulse, prov));
    }

    out << "loops: " << a.loops << '\n'
        << "tau_us: " << num(gate.params.tau * 1e6) << '\n'
        << "delta_over_2pi_khz: " << num(rad_to_hz(gate.params.delta) / 1e3) << '\n'
        << "peak_rabi_khz: " << num(rad_to_hz(gate.params.omega_max) / 1e3) << '\n'
        << "energy_rad2_per_s: " << num(gate.result.energy) << '\n'
        << "square_energy_rad2_per_s: " << num(square.energy) << '\n'
        << "energy_ratio_vs_square: " << num(ratio) << '\n'
        << "lambda_max: " << num(gate.result.lambda_max) << '\n'
        << "area: " << num(gate.result.area) << '\n'
        << "orientation: " << gate.result.pulse.orientation << '\n';
    if (gate.result.degenerate)
        out << "warning: leading eigenvalue is degenerate\n";
    if (a.spectrum) {
        const Vector ev = pencil_spectrum(cfg);
        out << "spectrum:";
        for (Index i = 0; i < std::min<Index>(ev.size(), 8); ++i)
            out << ' ' << num(ev(i));
        out << '\n';
    }
    return kExitOk;
}

Drive sweep_drive(const SweepArgs& a)
{
    if (a.square) {
        if (!a.pulse.empty())
            throw UsageError("--square and --pulse are exclusive");
        if (a.loops < 1 || !(a.tau_us > 0.0))
            throw UsageError("--square needs --loops >= 1 and --tau-us > 0");
        return square_drive(square_pulse_reference(a.loops, a.tau_us * 1e-6));
    }
    if (a.pulse.empty())
        throw UsageError("need --pulse FILE or --square");
    return to_drive(to_pulse(read_pulse_file(a.pulse)));
}

int cmd_sweep(const SweepArgs& a, std::ostream& out)
{
    if (!(a.nbar >= 0.0))
        throw UsageError("--nbar must be non-negative");
    if (!(a.chirp_duration_us >= 0.0))
        throw UsageError("--chirp-duration-us must be non-negative");
    std::vector<double> offsets_hz;
    try {
        offsets_hz = parse_range(a.offsets);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Drive drive = sweep_drive(a);

    FidelityConfig fc;
    fc.nbar = a.nbar;
    fc.err.chirp_rate_hz_per_us = a.chirp;
    fc.err.chirp_duration = a.chirp_duration_us * 1e-6;

    std::vector<double> offsets;
    for (double hz : offsets_hz)
        offsets.push_back(hz_to_rad(hz));
    const auto sweep = detuning_sweep(drive, offsets, fc.err);

    Table table({"offset_hz", "closure_residual", "area", "fidelity"});
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        FidelityConfig point = fc;
        point.err.detuning_offset = offsets[i];
        const FidelityReport r = analytic_fidelity(drive, point);
        table.add({offsets_hz[i], sweep[i].closure_residual, sweep[i].area, r.fidelity});
    }
    table.emit(a.out, out);
    return kExitOk;
}

int cmd_compare(const CompareArgs& a, std::ostream& out)
{
    if (a.loops.empty())
        throw UsageError("--loops-list is empty");
    const double rabi = hz_to_rad(a.rabi_max_hz);
    struct Row {
        int loops;
        double tau, tau_square, e_square, e_opt;
    };
    std::vector<Row> rows;
    for (int k : a.loops) {
        const OptimizationConfig cfg = make_config(k, a.c, a.n);
        const GateSolution gate = solve_gate_parameters(k, rabi, cfg);
        const SquareReference sq = square_gate_for_rabi(k, rabi);
        rows.push_back({k, gate.params.tau, sq.tau, sq.energy, gate.result.energy});
    }
    double largest = 0.0;
    for (const Row& r : rows)
        largest = std::max({largest, r.e_square, r.e_opt});

    Table table({"K", "delta_tau_over_pi", "tau_us", "tau_square_us", "E_square", "E_optimized",
                 "ratio", "E_square_normalized", "E_optimized_normalized"});
    for (const Row& r : rows)
        table.add({static_cast<double>(r.loops), 2.0 * r.loops, r.tau * 1e6, r.tau_square * 1e6,
                   r.e_square, r.e_opt, r.e_opt / r.e_square, r.e_square / largest,
                   r.e_opt / largest});
    table.emit(a.out, out);
    return kExitOk;
}

int cmd_trajectory(const TrajectoryArgs& a, std::ostream& out)
{
    if (a.samples < 1)
        throw UsageError("--samples-per-segment must be >= 1");
    const PulseEnvelope pulse = to_pulse(read_pulse_file(a.pulse));
    const Trajectory traj = integrate_trajectory(pulse, {}, a.samples);
    Table table({"t_us", "omega_hz", "q", "p"});
    for (const PhasePoint& s : traj.samples) {
        const double gate_rabi = evaluate_pulse(pulse, std::min(s.t, pulse.tau()))
                                 / kDrivePerGateRabi;
        table.add({s.t * 1e6, rad_to_hz(gate_rabi), s.q, s.p});
    }
    table.emit(a.out, out);
    return kExitOk;
}

}  // namespace

std::vector<double> parse_range(const std::string& range)
{
    std::vector<double> parts;
    std::stringstream ss(range);
    std::string item;
    while (std::getline(ss, item, ':')) {
        double v = 0.0;
        const char* first = item.data();
        const char* last = first + item.size();
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last)
            throw std::invalid_argument("bad number '" + item + "' in range " + range);
        parts.push_back(v);
    }
    if (parts.size() != 3)
        throw std::invalid_argument("range must be START:STOP:STEP");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || stop < start)
        throw std::invalid_argument("range needs STEP > 0 and STOP >= START");
    const double span = (stop - start) / step;
    const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    if (count > 1000000)
        throw std::invalid_argument("range has too many points");
    std::vector<double> out;
    for (long i = 0; i < count; ++i)
        out.push_back(start + static_cast<double>(i) * step);
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Amplitude-modulated Moelmer-Soerensen pulse synthesis", "msgate"};
    app.require_subcommand(1);

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Synthesize an optimized gate pulse");
    optimize->add_option("--loops", opt.loops, "Number of phase-space loops K")
        ->required()->check(CLI::Range(1, 100000));
    optimize->add_option("--rabi-max-hz", opt.rabi_max_hz, "Peak gate Rabi rate Omega_MS/2pi [Hz]")
        ->required()->check(CLI::PositiveNumber);
    optimize->add_option("--c", opt.c, "Sobolev derivative weight (normalized time)")
        ->check(CLI::NonNegativeNumber);
    optimize->add_option("--n", opt.n, "Interior grid nodes");
    optimize->add_option("--quad-order", opt.quad_order, "Gauss-Legendre points per axis");
    optimize->add_option("--out", opt.out, "Pulse file to write");
    optimize->add_flag("--spectrum", opt.spectrum, "Print the leading pencil eigenvalues");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Detuning-offset sweep of a pulse");
    sweep->add_option("--pulse", sw.pulse, "Pulse file");
    sweep->add_flag("--square", sw.square, "Use the square reference gate instead");
    sweep->add_option("--loops", sw.loops, "Loops of the square gate");
    sweep->add_option("--tau-us", sw.tau_us, "Gate time of the square gate [us]");
    sweep->add_option("--offsets-hz", sw.offsets, "START:STOP:STEP [Hz]")->required();
    sweep->add_option("--chirp-hz-per-us", sw.chirp, "Linear detuning ramp [Hz/us]");
    sweep->add_option("--chirp-duration-us", sw.chirp_duration_us, "Ramp duration [us]");
    sweep->add_option("--nbar", sw.nbar, "Mean thermal occupation");
    sweep->add_option("--out", sw.out, "CSV output (stdout if omitted)");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Energy of square vs optimized gates");
    compare->add_option("--loops-list", cmp.loops, "Comma-separated loop counts")
        ->delimiter(',')->check(CLI::Range(1, 100000));
    compare->add_option("--rabi-max-hz", cmp.rabi_max_hz, "Peak gate Rabi rate [Hz]")
        ->required()->check(CLI::PositiveNumber);
    compare->add_option("--c", cmp.c, "Sobolev derivative weight")->check(CLI::NonNegativeNumber);
    compare->add_option("--n", cmp.n, "Interior grid nodes");
    compare->add_option("--out", cmp.out, "CSV output (stdout if omitted)");

    TrajectoryArgs tr;
    auto* trajectory = app.add_subcommand("trajectory", "Pulse shape and phase-space path");
    trajectory->add_option("--pulse", tr.pulse, "Pulse file")->required();
    trajectory->add_option("--samples-per-segment", tr.samples, "Samples per grid segment");
    trajectory->add_option("--out", tr.out, "CSV output (stdout if omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "msgate: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (optimize->parsed())
            return cmd_optimize(opt, out);
        if (sweep->parsed())
            return cmd_sweep(sw, out);
        if (compare->parsed())
            return cmd_compare(cmp, out);
        if (trajectory->parsed())
            return cmd_trajectory(tr, out);
    } catch (const UsageError& e) {
        err << "msgate: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "msgate: " << e.what() << '\n';
        return kExitIo;
    } catch (const SolverError& e) {
        err << "msgate: solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        err << "msgate: solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitUsage;
}

}  // namespace msgate
