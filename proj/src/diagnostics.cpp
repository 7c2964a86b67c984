#include "kp2stab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kp2stab/error.hpp"

namespace kp2stab {

double time_integral(const std::vector<double>& t, const std::vector<double>& v, bool remaining_weight) {
    if (t.size() != v.size()) throw DimensionError("time integral over columns of different length");
    if (t.size() < 2) return 0.0;
    const double tend = t.back();
    double s = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        double a = v[k - 1], b = v[k];
        if (remaining_weight) {
            a *= tend - t[k - 1];
            b *= tend - t[k];
        }
        s += 0.5 * (t[k] - t[k - 1]) * (a + b);
    }
    return s;
}

namespace {

void require_full_run(const SimulationRun& run, const char* what) {
    const EnergyTrace& tr = run.trace;
    if (tr.size() < 2 || run.snapshots.size() < 2) {
        std::ostringstream m;
        m << what << ": run has fewer than two recorded states";
        throw DiagnosticError(m.str());
    }
    const double tend = run.scheme.steps() * run.scheme.dt;
    if (std::abs(run.snapshot_times.back() - tend) > 1e-9 * std::max(1.0, tend) ||
        run.snapshot_times.front() != 0.0) {
        std::ostringstream m;
        m << what << ": missing snapshots (need t = 0 and the final step, last recorded t="
          << run.snapshot_times.back() << ", final t=" << tend << ")";
        throw DiagnosticError(m.str());
    }
}

}  // namespace

DissipationCheck check_dissipation_identity(const SimulationRun& run) {
    if (run.stride != 1) {
        std::ostringstream m;
        m << "dissipation identity needs every step recorded, run has stride " << run.stride;
        throw DiagnosticError(m.str());
    }
    const EnergyTrace& tr = run.trace;
    if (tr.size() < 2) throw DiagnosticError("dissipation identity needs at least one step");
    DissipationCheck out;
    out.worst.name = "dissipation";
    out.worst.residual = -1.0;
    for (std::size_t k = 1; k < tr.size(); ++k) {
        IdentityReport r;
        r.name = "dissipation";
        r.lhs = tr.dEdt[k];
        r.rhs = tr.rhs[k];
        r.residual = relative_residual(r.lhs, r.rhs);
        r.Nx = run.grid.Nx;
        r.dt = run.scheme.dt;
        r.t = tr.t[k];
        if (r.residual > out.worst.residual) out.worst = r;
        out.steps.push_back(r);
    }
    return out;
}

IdentityReport morawetz_identity_check(const SimulationRun& run) {
    require_full_run(run, "morawetz identity");
    const EnergyTrace& tr = run.trace;
    const FeedbackConfig& c = run.config;
    const double L = run.grid.L;
    IdentityReport r;
    r.name = "morawetz";
    r.lhs = 1.5 * time_integral(tr.t, tr.ux_sq) + 0.5 * time_integral(tr.t, tr.nloc_sq);
    r.rhs = 0.5 * (tr.xu_sq.front() - tr.xu_sq.back()) + 0.5 * time_integral(tr.t, tr.l2_sq) +
            0.5 * L * c.alpha * c.alpha * time_integral(tr.t, tr.I_ux0) -
            c.beta * time_integral(tr.t, tr.x_top_sq);
    r.residual = relative_residual(r.lhs, r.rhs);
    r.Nx = run.grid.Nx;
    r.dt = run.scheme.dt;
    r.t = tr.t.back();
    return r;
}

IdentityReport trazos_identity_check(const SimulationRun& run) {
    require_full_run(run, "trace identity");
    const EnergyTrace& tr = run.trace;
    const FeedbackConfig& c = run.config;
    IdentityReport r;
    r.name = "trazos";
    r.t = tr.t.back();
    r.lhs = r.t * tr.l2_sq.front();
    r.rhs = time_integral(tr.t, tr.l2_sq) + 2.0 * c.beta * time_integral(tr.t, tr.I_top, true) +
            (1.0 - c.alpha * c.alpha) * time_integral(tr.t, tr.I_ux0, true) +
            time_integral(tr.t, tr.I_nloc, true);
    r.residual = relative_residual(r.lhs, r.rhs);
    r.Nx = run.grid.Nx;
    r.dt = run.scheme.dt;
    return r;
}

BoundCheck kato_bound_check(const SimulationRun& run) {
    require_full_run(run, "kato bound");
    const EnergyTrace& tr = run.trace;
    const FeedbackConfig& c = run.config;
    const double T = tr.t.back();
    const double L = run.grid.L;
    const double C = dissipation_constant(c);
    const double k = T + (2.0 / 3.0) * (L + T + std::max(c.alpha * c.alpha, 2.0 * c.beta) * L / (2.0 * C));
    BoundCheck b;
    b.name = "kato";
    b.lhs = time_integral(tr.t, tr.l2_sq) + time_integral(tr.t, tr.ux_sq);
    b.bound = k * tr.l2_sq.front();
    b.holds = b.lhs <= b.bound;
    return b;
}

BoundCheck trace_corollary_check(const SimulationRun& run) {
    require_full_run(run, "trace corollary");
    const EnergyTrace& tr = run.trace;
    BoundCheck b;
    b.name = "l2_in_time";
    b.lhs = time_integral(tr.t, tr.l2_sq);
    b.bound = tr.t.back() * tr.l2_sq.front();
    b.holds = b.lhs <= b.bound * (1.0 + 1e-12);
    return b;
}

DecayFit fit_decay(const EnergyTrace& trace, double t0, double t1) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    int n = 0;
    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double t = trace.t[k];
        if (t < t0 || t > t1) continue;
        if (!(trace.E[k] > 0.0)) {
            std::ostringstream m;
            m << "decay fit: nonpositive energy " << trace.E[k] << " at t=" << t;
            throw DiagnosticError(m.str());
        }
        ts.push_back(t);
        ys.push_back(std::log(trace.E[k]));
    }
    n = static_cast<int>(ts.size());
    if (n < 3) {
        std::ostringstream m;
        m << "decay fit: window [" << t0 << ", " << t1 << "] holds " << n << " samples, need 3";
        throw DiagnosticError(m.str());
    }
    for (int k = 0; k < n; ++k) {
        st += ts[k];
        sy += ys[k];
    }
    const double tm = st / n, ym = sy / n;
    for (int k = 0; k < n; ++k) {
        stt += (ts[k] - tm) * (ts[k] - tm);
        sty += (ts[k] - tm) * (ys[k] - ym);
    }
    const double slope = sty / stt;
    const double intercept = ym - slope * tm;
    double ss_res = 0.0, ss_tot = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = ys[k] - (intercept + slope * ts[k]);
        ss_res += e * e;
        ss_tot += (ys[k] - ym) * (ys[k] - ym);
    }
    DecayFit f;
    f.rate = -slope;
    f.kappa_fit = std::exp(intercept) / trace.E.front();
    f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    f.t0 = t0;
    f.t1 = t1;
    f.samples = n;
    return f;
}

DecayFit fit_decay(const EnergyTrace& trace) {
    if (trace.size() < 2) throw DiagnosticError("decay fit: empty trace");
    const double tend = trace.t.back();
    return fit_decay(trace, 0.5 * tend, tend);
}

double observability_ratio(const StateField& u0, const SolverHandle& h) {
    const double n0 = inner_product(u0, u0);
    if (!(n0 > 0.0)) throw DiagnosticError("observability ratio of the zero state is undefined");
    const SimulationRun run = simulate(u0, h, 1);
    const EnergyTrace& tr = run.trace;
    std::vector<double> sum(tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) sum[k] = tr.I_ux0[k] + tr.I_top[k] + tr.I_nloc[k];
    return time_integral(tr.t, sum) / n0;
}

double observability_ratio(const StateField& u0, const TimeScheme& scheme, const FeedbackConfig& cfg) {
    return observability_ratio(u0, factorize(assemble_generator(u0.grid(), cfg), scheme));
}

DecayConstants decay_constants(double C_obs, double T) {
    DecayConstants d;
    d.C_obs = C_obs;
    d.gamma = C_obs / (1.0 + C_obs);
    d.theta = std::log(1.0 + 1.0 / C_obs) / T;
    d.kappa = 1.0 / d.gamma;
    return d;
}

double envelope_ratio(const EnergyTrace& trace, double kappa, double theta) {
    const double E0 = trace.E.front();
    if (E0 == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < trace.size(); ++k)
        worst = std::max(worst, trace.E[k] / (kappa * std::exp(-theta * trace.t[k]) * E0));
    return worst;
}

ObservabilityReport estimate_observability(const std::vector<NamedState>& samples, const SolverHandle& h) {
    if (samples.empty()) throw DiagnosticError("observability estimate needs at least one sample");
    ObservabilityReport rep;
    rep.T = h.scheme.steps() * h.scheme.dt;
    std::vector<EnergyTrace> traces;
    double rmin = std::numeric_limits<double>::infinity();
    for (const NamedState& s : samples) {
        const double n0 = inner_product(s.u0, s.u0);
        if (!(n0 > 0.0)) throw DiagnosticError("observability sample '" + s.name + "' is the zero state");
        SimulationRun run = simulate(s.u0, h, 1);
        const EnergyTrace& tr = run.trace;
        std::vector<double> sum(tr.size());
        for (std::size_t k = 0; k < tr.size(); ++k) sum[k] = tr.I_ux0[k] + tr.I_top[k] + tr.I_nloc[k];
        const double R = time_integral(tr.t, sum) / n0;
        if (!(R > 0.0)) throw DiagnosticError("sample '" + s.name + "' is unobservable (zero trace integral)");
        rep.names.push_back(s.name);
        rep.ratios.push_back(R);
        rmin = std::min(rmin, R);
        traces.push_back(std::move(run.trace));
    }
    rep.constants = decay_constants(1.0 / rmin, rep.T);
    rep.envelope_holds = true;
    for (const EnergyTrace& tr : traces) {
        const double e = envelope_ratio(tr, rep.constants.kappa, rep.constants.theta);
        rep.envelope.push_back(e);
        if (e > 1.0 + 1e-12) rep.envelope_holds = false;
    }
    return rep;
}

}  // namespace kp2stab
