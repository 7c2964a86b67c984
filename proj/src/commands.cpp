#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "kp2stab/config.hpp"
#include "kp2stab/csv.hpp"
#include "kp2stab/diagnostics.hpp"
#include "kp2stab/error.hpp"
#include "kp2stab/spectrum.hpp"

namespace fs = std::filesystem;

namespace kp2stab {

namespace {

fs::path prepare_out(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory " + c.out + ": " + ec.message());
    return fs::path(c.out);
}

void write_energy_trace(const fs::path& path, const std::string& header, const EnergyTrace& tr) {
    CsvWriter w(path, header, {"t", "E", "I_ux0", "I_top", "I_nloc", "dEdt", "rhs", "residual"});
    for (std::size_t k = 0; k < tr.size(); ++k) {
        w.cell(tr.t[k]).cell(tr.E[k]).cell(tr.I_ux0[k]).cell(tr.I_top[k]).cell(tr.I_nloc[k]);
        w.cell(tr.dEdt[k]).cell(tr.rhs[k]).cell(tr.residual[k]);
        w.end_row();
    }
}

void cmd_simulate(const RunConfig& c, std::ostream& log) {
    const fs::path dir = prepare_out(c);
    const std::string header = config_echo(c);
    const Grid2D g = build_grid(c.L, c.Nx, c.Ny);
    const StateField u0 = initial_condition(parse_preset(c.ic), g, c.seed);
    const SimulationRun run = simulate(u0, c.scheme(), c.feedback(), c.stride);
    write_energy_trace(dir / "energy_trace.csv", header, run.trace);

    CsvWriter w(dir / "snapshots.csv", header, {"t", "x", "y", "u"});
    const std::size_t last = run.snapshots.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool keep = k == 0 || k == last || (c.snapshot_every > 0 && k % c.snapshot_every == 0);
        if (!keep) continue;
        const StateField& u = run.snapshots[k];
        for (int j = 0; j <= g.Ny; ++j)
            for (int i = 0; i <= g.Nx; ++i) {
                w.cell(run.snapshot_times[k]).cell(g.x(i)).cell(g.y(j)).cell(u.at(i, j));
                w.end_row();
            }
    }
    log << "simulate: " << run.trace.size() << " records, E(0)=" << run.trace.E.front()
        << " E(T)=" << run.trace.E.back() << ", " << run.wall_seconds << " s\n";
}

void cmd_identities(const RunConfig& c, std::ostream& log) {
    const fs::path dir = prepare_out(c);
    const std::string header = config_echo(c);
    CsvWriter ids(dir / "identity_report.csv", header, {"identity", "Nx", "dt", "lhs", "rhs", "residual"});
    CsvWriter bounds(dir / "bound_report.csv", header, {"bound", "Nx", "lhs", "bound_value", "holds"});
    for (int N : c.refinements) {
        // dt is proportional to h, anchored at the configured Nx.
        RunConfig rc = c;
        rc.Nx = rc.Ny = N;
        rc.dt = c.dt * c.Nx / N;
        const Grid2D g = build_grid(rc.L, N, N);
        const StateField u0 = initial_condition(parse_preset(rc.ic), g, rc.seed);
        const SimulationRun run = simulate(u0, rc.scheme(), rc.feedback(), 1);
        const IdentityReport rows[] = {check_dissipation_identity(run).worst, morawetz_identity_check(run),
                                       trazos_identity_check(run)};
        for (const IdentityReport& r : rows) {
            ids.cell(r.name).cell(N).cell(rc.dt).cell(r.lhs).cell(r.rhs).cell(r.residual);
            ids.end_row();
            log << "identities: N=" << N << " " << r.name << " residual " << r.residual << "\n";
        }
        for (const BoundCheck& b : {kato_bound_check(run), trace_corollary_check(run)}) {
            bounds.cell(b.name).cell(N).cell(b.lhs).cell(b.bound).cell(b.holds ? 1 : 0);
            bounds.end_row();
        }
    }
}

void cmd_spectrum(const RunConfig& c, std::ostream& log) {
    const fs::path dir = prepare_out(c);
    const std::string header = config_echo(c);
    const Grid2D g = build_grid(c.L, c.Nx, c.Ny);
    const FeedbackConfig f = c.feedback();
    const GeneratorMatrix A = assemble_generator(g, f);
    const SpectrumReport rep = compute_spectrum(A);
    const AdjointnessStats adj = adjointness_check(A, assemble_adjoint(g, f), 8, c.seed);

    CsvWriter w(dir / "spectrum.csv", header, {"k", "re", "im", "residual", "certified", "visibility"});
    double vmin = INFINITY;
    for (std::size_t k = 0; k < rep.pairs.size(); ++k) {
        const EigenPair& p = rep.pairs[k];
        const double v = eigen_visibility(p, g, f).visibility;
        if (p.certified) vmin = std::min(vmin, v);
        w.cell(static_cast<long long>(k)).cell(p.lambda.real()).cell(p.lambda.imag()).cell(p.residual);
        w.cell(p.certified ? 1 : 0).cell(v);
        w.end_row();
    }
    CsvWriter s(dir / "spectrum_summary.csv", header, {"key", "value"});
    auto kv = [&](const char* k, double v) {
        s.cell(std::string(k)).cell(v);
        s.end_row();
    };
    kv("sigma", rep.sigma);
    kv("tau", rep.tau);
    kv("norm", rep.norm);
    kv("all_certified", rep.all_certified ? 1.0 : 0.0);
    kv("min_visibility", vmin);
    kv("adjoint_interior", adj.interior);
    kv("adjoint_manifold", adj.manifold);
    log << "spectrum: sigma=" << rep.sigma << " tau=" << rep.tau << " min V=" << vmin << "\n";
}

void cmd_observability(const RunConfig& c, std::ostream& log) {
    const fs::path dir = prepare_out(c);
    const std::string header = config_echo(c);
    const Grid2D g = build_grid(c.L, c.Nx, c.Ny);
    const SolverHandle h = factorize(assemble_generator(g, c.feedback()), c.scheme());
    std::vector<NamedState> samples;
    for (int k = 0; k < c.samples; ++k) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(k);
        samples.push_back({"random-smooth-" + std::to_string(seed), initial_condition(InitialPreset::random_smooth, g, seed)});
    }
    const ObservabilityReport rep = estimate_observability(samples, h);
    CsvWriter w(dir / "observability.csv", header, {"sample", "seed", "ratio", "envelope"});
    for (std::size_t k = 0; k < rep.ratios.size(); ++k) {
        w.cell(rep.names[k]).cell(static_cast<long long>(c.seed + k)).cell(rep.ratios[k]).cell(rep.envelope[k]);
        w.end_row();
    }
    CsvWriter s(dir / "observability_summary.csv", header, {"key", "value"});
    const double rmin = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    const std::pair<const char*, double> rows[] = {
        {"min_ratio", rmin},         {"C_obs", rep.constants.C_obs}, {"gamma", rep.constants.gamma},
        {"theta", rep.constants.theta}, {"kappa", rep.constants.kappa}, {"T", rep.T},
        {"envelope_holds", rep.envelope_holds ? 1.0 : 0.0}};
    for (const auto& [k, v] : rows) {
        s.cell(std::string(k)).cell(v);
        s.end_row();
    }
    log << "observability: min R=" << rmin << " C=" << rep.constants.C_obs << " gamma=" << rep.constants.gamma
        << " theta=" << rep.constants.theta << "\n";
}

void cmd_scan(const RunConfig& c, std::ostream& log) {
    const fs::path dir = prepare_out(c);
    CsvWriter w(dir / "scan.csv", config_echo(c), {"L", "drift", "sigma", "min_visibility", "certified", "total"});
    for (bool drift : {true, false}) {
        FeedbackConfig f = c.feedback();
        f.drift = drift;
        for (const ScanRow& r : critical_length_scan(c.L_values, f, c.Nx)) {
            w.cell(r.L).cell(r.drift ? 1 : 0).cell(r.sigma).cell(r.min_visibility).cell(r.certified).cell(r.total);
            w.end_row();
            log << "scan: L=" << r.L << " drift=" << r.drift << " sigma=" << r.sigma << " min V=" << r.min_visibility
                << "\n";
        }
    }
}

int exit_code(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::dimension: return 3;
    case ErrorCategory::solver: return 4;
    case ErrorCategory::diagnostic: return 5;
    case ErrorCategory::io: return 6;
    }
    return 1;
}

const char* usage =
    "usage: kp2stab <simulate|identities|spectrum|observability|scan> [--config FILE]\n"
    "       [--L --Nx --Ny --alpha --beta --drift --T --dt --theta --ic --seed --out DIR\n"
    "        --stride --snapshot-every --fit-t0 --fit-t1 --samples --L-values --refinements]\n";

}  // namespace

void run_command(const RunConfig& c, std::ostream& log) {
    validate(c);
    if (c.command == "simulate") cmd_simulate(c, log);
    else if (c.command == "identities") cmd_identities(c, log);
    else if (c.command == "spectrum") cmd_spectrum(c, log);
    else if (c.command == "observability") cmd_observability(c, log);
    else if (c.command == "scan") cmd_scan(c, log);
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" ||
        std::find(args.begin(), args.end(), "--help") != args.end()) {
        std::cout << usage;
        return args.empty() ? 2 : 0;
    }
    try {
        const RunConfig c = parse_config(args, std::getenv("KP2STAB_OUT"));
        run_command(c, std::cout);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error[" << category_name(e.category()) << "]: " << e.what() << "\n";
        return exit_code(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kp2stab
