#include "kp2stab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "kp2stab/error.hpp"

namespace kp2stab {

using nlohmann::json;

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds = {"simulate", "identities", "spectrum", "observability", "scan"};
    return cmds;
}

FeedbackConfig RunConfig::feedback() const {
    FeedbackConfig f;
    f.alpha = alpha;
    f.beta = beta;
    f.drift = drift;
    f.L = L;
    return f;
}

TimeScheme RunConfig::scheme() const {
    TimeScheme s;
    s.dt = dt;
    s.theta = theta;
    s.T = T;
    return s;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["L"] = c.L;
    j["Nx"] = c.Nx;
    j["Ny"] = c.Ny;
    j["alpha"] = c.alpha;
    j["beta"] = c.beta;
    j["drift"] = c.drift;
    j["T"] = c.T;
    j["dt"] = c.dt;
    j["theta"] = c.theta;
    j["ic"] = c.ic;
    j["seed"] = c.seed;
    j["stride"] = c.stride;
    j["snapshot_every"] = c.snapshot_every;
    j["out"] = c.out;
    j["fit_t0"] = c.fit_t0;
    j["fit_t1"] = c.fit_t1;
    j["samples"] = c.samples;
    j["L_values"] = c.L_values;
    j["refinements"] = c.refinements;
    return j;
}

namespace {

double as_real(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "command") {
            if (!v.is_string()) throw ConfigError("config key 'command' must be a string");
            c.command = v.get<std::string>();
        } else if (key == "L") c.L = as_real(v, key);
        else if (key == "Nx") c.Nx = as_int(v, key);
        else if (key == "Ny") c.Ny = as_int(v, key);
        else if (key == "alpha") c.alpha = as_real(v, key);
        else if (key == "beta") c.beta = as_real(v, key);
        else if (key == "drift") {
            if (!v.is_boolean()) throw ConfigError("config key 'drift' must be true or false");
            c.drift = v.get<bool>();
        } else if (key == "T") c.T = as_real(v, key);
        else if (key == "dt") c.dt = as_real(v, key);
        else if (key == "theta") c.theta = as_real(v, key);
        else if (key == "ic") {
            if (!v.is_string()) throw ConfigError("config key 'ic' must be a string");
            c.ic = v.get<std::string>();
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
            c.seed = v.get<std::uint64_t>();
        } else if (key == "stride") c.stride = as_int(v, key);
        else if (key == "snapshot_every") c.snapshot_every = as_int(v, key);
        else if (key == "out") {
            if (!v.is_string()) throw ConfigError("config key 'out' must be a string");
            c.out = v.get<std::string>();
        } else if (key == "fit_t0") c.fit_t0 = as_real(v, key);
        else if (key == "fit_t1") c.fit_t1 = as_real(v, key);
        else if (key == "samples") c.samples = as_int(v, key);
        else if (key == "L_values") {
            if (!v.is_array()) throw ConfigError("config key 'L_values' must be an array");
            c.L_values.clear();
            for (const json& e : v) c.L_values.push_back(as_real(e, key));
        } else if (key == "refinements") {
            if (!v.is_array()) throw ConfigError("config key 'refinements' must be an array");
            c.refinements.clear();
            for (const json& e : v) c.refinements.push_back(as_int(e, key));
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return c;
}

std::string config_echo(const RunConfig& c) { return config_to_json(c).dump(); }

void validate(const RunConfig& c) {
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
        throw ConfigError("unknown subcommand '" + c.command + "'");
    build_grid(c.L, c.Nx, c.Ny);
    c.feedback().validate();
    c.scheme().validate();
    parse_preset(c.ic);
    if (c.stride < 1) throw ConfigError("stride must be >= 1");
    if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
    if (c.samples < 1) throw ConfigError("samples must be >= 1");
    for (int n : c.refinements)
        if (n < 8) throw ConfigError("refinement levels must be >= 8");
    for (double l : c.L_values)
        if (!(l > 0.0)) throw ConfigError("scan lengths must be positive");
    if (c.fit_t0 >= 0.0 && c.fit_t1 >= 0.0 && c.fit_t1 <= c.fit_t0)
        throw ConfigError("fit window must satisfy fit_t0 < fit_t1");
}

RunConfig parse_config(const std::vector<std::string>& args, const char* env_out) {
    if (args.empty()) throw ConfigError("missing subcommand (simulate, identities, spectrum, observability, scan)");
    RunConfig c;
    c.command = args[0];
    const auto& cmds = known_commands();
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
        throw ConfigError("unknown subcommand '" + c.command + "'");

    CLI::App app{"kp2stab " + c.command};
    std::optional<std::string> config_path, ic, out;
    std::optional<double> L, alpha, beta, T, dt, theta, fit_t0, fit_t1;
    std::optional<int> Nx, Ny, stride, snapshot_every, samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> drift;
    std::vector<double> L_values;
    std::vector<int> refinements;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--L", L, "domain side length");
    app.add_option("--Nx", Nx, "intervals in x");
    app.add_option("--Ny", Ny, "intervals in y");
    app.add_option("--alpha", alpha, "right-edge slope gain, |alpha| < 1");
    app.add_option("--beta", beta, "top-edge gain, beta > 0");
    app.add_option("--drift", drift, "keep the u_x term (true/false)");
    app.add_option("--T", T, "horizon");
    app.add_option("--dt", dt, "time step (default T/1024)");
    app.add_option("--theta", theta, "implicitness in [0.5, 1]");
    app.add_option("--ic", ic, "gaussian | sine-product | random-smooth | zero");
    app.add_option("--seed", seed, "seed for random initial data");
    app.add_option("--stride", stride, "record every k-th step");
    app.add_option("--snapshot-every", snapshot_every, "write every k-th record to snapshots.csv");
    app.add_option("--out", out, "output directory");
    app.add_option("--fit-t0", fit_t0, "decay fit window start");
    app.add_option("--fit-t1", fit_t1, "decay fit window end");
    app.add_option("--samples", samples, "observability sample count");
    app.add_option("--L-values", L_values, "scan lengths")->delimiter(',');
    app.add_option("--refinements", refinements, "identity refinement levels")->delimiter(',');

    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("bad arguments: ") + e.what());
    }

    std::set<std::string> present;
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw ConfigError("cannot read config file " + *config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config file " + *config_path + " is not valid JSON: " + e.what());
        }
        c = config_from_json(j, c);
        for (const auto& [k, v] : j.items()) present.insert(k);
        c.command = args[0];
    }
    if (env_out && *env_out) c.out = env_out;

    auto take = [&](const char* key, auto& opt, auto& field) {
        if (opt) {
            field = *opt;
            present.insert(key);
        }
    };
    take("L", L, c.L);
    take("Nx", Nx, c.Nx);
    take("Ny", Ny, c.Ny);
    take("alpha", alpha, c.alpha);
    take("beta", beta, c.beta);
    take("T", T, c.T);
    take("dt", dt, c.dt);
    take("theta", theta, c.theta);
    take("ic", ic, c.ic);
    take("seed", seed, c.seed);
    take("stride", stride, c.stride);
    take("snapshot_every", snapshot_every, c.snapshot_every);
    take("out", out, c.out);
    take("fit_t0", fit_t0, c.fit_t0);
    take("fit_t1", fit_t1, c.fit_t1);
    take("samples", samples, c.samples);
    if (drift) {
        std::string d = *drift;
        std::transform(d.begin(), d.end(), d.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (d == "true" || d == "on" || d == "1") c.drift = true;
        else if (d == "false" || d == "off" || d == "0") c.drift = false;
        else throw ConfigError("--drift expects true or false, got '" + *drift + "'");
    }
    if (!L_values.empty()) c.L_values = L_values;
    if (!refinements.empty()) c.refinements = refinements;

    for (const char* key : {"L", "Nx", "Ny", "alpha", "beta", "T"})
        if (!present.count(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    if (!present.count("dt")) c.dt = c.T / 1024.0;
    if (c.L_values.empty()) {
        const double pi = std::numbers::pi;
        c.L_values = {1.0, pi / 2.0, pi, 2.0 * pi, 5.0};
    }
    if (c.refinements.empty()) c.refinements = {16, 32, 64};
    validate(c);
    return c;
}

}  // namespace kp2stab
