#include "ccqsim/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ccqsim {

namespace {

using nlohmann::json;

const char* shape_name(Envelope::Shape s) {
    return s == Envelope::Shape::square ? "square" : "flat_top_sin2";
}

Envelope::Shape shape_from_string(const std::string& s) {
    if (s == "square") return Envelope::Shape::square;
    if (s == "flat_top_sin2") return Envelope::Shape::flat_top_sin2;
    throw ConfigError("unknown envelope shape '" + s + "'");
}

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("field '" + key + "' must be a number");
    return j[key].get<double>();
}

Envelope parse_envelope(const json& j, const std::string& name, double rate_scale) {
    if (!j.is_object()) throw ConfigError("envelope '" + name + "' must be an object");
    Envelope e;
    if (j.contains("shape")) e.shape = shape_from_string(j["shape"].get<std::string>());
    e.amplitude = get_number(j, "amplitude", 0) * rate_scale;
    e.ramp_us = get_number(j, "ramp", 0);
    e.hold_us = get_number(j, "hold", 0);
    e.start_us = get_number(j, "start", 0);
    e.phase_rad = get_number(j, "phase", 0);
    if (e.ramp_us < 0 || e.hold_us < 0)
        throw ConfigError("envelope '" + name + "': negative ramp or hold");
    return e;
}

json envelope_json(const Envelope& e, double rate_scale) {
    return {{"shape", shape_name(e.shape)}, {"amplitude", e.amplitude / rate_scale},
            {"ramp", e.ramp_us},           {"hold", e.hold_us},
            {"start", e.start_us},         {"phase", e.phase_rad}};
}

}  // namespace

const char* to_string(Representation r) {
    switch (r) {
        case Representation::polaron: return "polaron";
        case Representation::lab_compensated: return "lab-compensated";
        case Representation::lab_reduced: return "lab-reduced";
        case Representation::full: return "full";
    }
    return "?";
}

const char* to_string(CompensationMode m) {
    switch (m) {
        case CompensationMode::adiabatic: return "adiabatic";
        case CompensationMode::bad_cavity: return "bad_cavity";
        case CompensationMode::ideal: return "ideal";
        case CompensationMode::dynamic: return "dynamic";
        case CompensationMode::none: return "none";
    }
    return "?";
}

Representation representation_from_string(const std::string& s) {
    if (s == "polaron") return Representation::polaron;
    if (s == "lab-compensated") return Representation::lab_compensated;
    if (s == "lab-reduced") return Representation::lab_reduced;
    if (s == "full") return Representation::full;
    throw ConfigError("unknown representation '" + s + "'");
}

CompensationMode compensation_from_string(const std::string& s) {
    if (s == "adiabatic") return CompensationMode::adiabatic;
    if (s == "bad_cavity") return CompensationMode::bad_cavity;
    if (s == "ideal") return CompensationMode::ideal;
    if (s == "dynamic") return CompensationMode::dynamic;
    if (s == "none") return CompensationMode::none;
    throw ConfigError("unknown compensation mode '" + s + "'");
}

double SimulationConfig::step_size() const {
    if (dt > 0) return dt;
    const double k = std::max(params.kappa1, params.kappa2);
    if (k <= 0) throw ConfigError("dt: no default available with zero kappa, set dt explicitly");
    return 1.0 / (100.0 * k);
}

SimulationConfig SimulationConfig::with_width(double width_us) const {
    if (width_us <= 0) throw ConfigError("pulse width must be positive");
    SimulationConfig c = *this;
    c.drives.probe.hold_us = width_us;
    c.drives.bar_A_d.hold_us = width_us;
    c.drives.bar_B_d.hold_us = width_us;
    if (c.drives.direct_A_d) c.drives.direct_A_d->hold_us = width_us;
    if (c.drives.direct_B_d) c.drives.direct_B_d->hold_us = width_us;
    return c;
}

void SimulationConfig::validate() const {
    params.validate();
    const double k = std::max(params.kappa1, params.kappa2);
    if (step_size() * k > 0.05 + 1e-12)
        throw ConfigError("dt: dt*max(kappa) exceeds 0.05, reduce dt");
    if (trajectories < 1) throw ConfigError("trajectories: must be >= 1");
    if (snapshot_stride < 1) throw ConfigError("snapshot_stride: must be >= 1");
    if (ring_down_us < 0) throw ConfigError("ring_down: must be >= 0");
    if (classify_threshold <= 0.25 || classify_threshold > 1)
        throw ConfigError("classify_threshold: must lie in (0.25, 1]");
    if (fock_na < 2 || fock_nb < 2) throw ConfigError("fock_na/fock_nb: must be >= 2");
    if ((params.gamma_r1 > 0 || params.gamma_r2 > 0) &&
        representation != Representation::lab_reduced)
        throw ConfigError("gamma_r: relaxation is supported only in the lab-reduced representation");
    if ((params.omega1 > 0 || params.omega2 > 0) && representation != Representation::polaron)
        throw ConfigError("omega: qubit drives are supported only in the polaron representation");
    for (double w : pulse_widths)
        if (w <= 0) throw ConfigError("pulse_widths: entries must be positive");
}

SimulationConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    // Rates default to nu/2pi in MHz; emitted configs carry already-converted
    // values tagged rad_per_us so that round-trips are bit-exact.
    double scale = two_pi;
    if (j.contains("units")) {
        const std::string u = j["units"].get<std::string>();
        if (u == "rad_per_us")
            scale = 1.0;
        else if (u != "MHz")
            throw ConfigError("units: must be 'MHz' or 'rad_per_us'");
    }

    SimulationConfig c;
    const json& jp = j.value("params", json::object());
    SystemParams& p = c.params;
    p.chi1 = get_number(jp, "chi1", 0) * scale;
    p.chi2 = get_number(jp, "chi2", 0) * scale;
    p.kappa1 = get_number(jp, "kappa1", 0) * scale;
    p.kappa2 = get_number(jp, "kappa2", 0) * scale;
    p.gamma1 = get_number(jp, "gamma1", 0) * scale;
    p.gamma2 = get_number(jp, "gamma2", 0) * scale;
    p.delta1 = get_number(jp, "delta1", 0) * scale;
    p.delta2 = get_number(jp, "delta2", 0) * scale;
    p.eta_l = get_number(jp, "eta_l", 1.0);
    p.eta_m = get_number(jp, "eta_m", 1.0);
    p.phi = get_number(jp, "phi", 0);
    p.gamma_d1 = get_number(jp, "gamma_d1", 0) * scale;
    p.gamma_d2 = get_number(jp, "gamma_d2", 0) * scale;
    p.gamma_r1 = get_number(jp, "gamma_r1", 0) * scale;
    p.gamma_r2 = get_number(jp, "gamma_r2", 0) * scale;
    p.omega1 = get_number(jp, "omega1", 0) * scale;
    p.omega2 = get_number(jp, "omega2", 0) * scale;

    const json& jd = j.value("drives", json::object());
    if (jd.contains("probe")) c.drives.probe = parse_envelope(jd["probe"], "probe", scale);
    if (jd.contains("bar_A_d"))
        c.drives.bar_A_d = parse_envelope(jd["bar_A_d"], "bar_A_d", scale);
    if (jd.contains("bar_B_d"))
        c.drives.bar_B_d = parse_envelope(jd["bar_B_d"], "bar_B_d", scale);
    if (jd.contains("direct_A_d"))
        c.drives.direct_A_d = parse_envelope(jd["direct_A_d"], "direct_A_d", scale);
    if (jd.contains("direct_B_d"))
        c.drives.direct_B_d = parse_envelope(jd["direct_B_d"], "direct_B_d", scale);

    if (j.contains("compensation"))
        c.compensation = compensation_from_string(j["compensation"].get<std::string>());
    else
        warn("config: no compensation mode given, defaulting to adiabatic");
    if (j.contains("representation"))
        c.representation = representation_from_string(j["representation"].get<std::string>());
    c.dt = get_number(j, "dt", 0);
    if (j.contains("pulse_widths"))
        c.pulse_widths = j["pulse_widths"].get<std::vector<double>>();
    c.trajectories = int(get_number(j, "trajectories", 1));
    if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
    c.snapshot_stride = int(get_number(j, "snapshot_stride", 10));
    c.ring_down_us = get_number(j, "ring_down", 0);
    c.classify_threshold = get_number(j, "classify_threshold", 0.9);
    c.fock_na = int(get_number(j, "fock_na", 16));
    c.fock_nb = int(get_number(j, "fock_nb", 16));
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    c.validate();
    return c;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const SimulationConfig& c) {
    const SystemParams& p = c.params;
    json j;
    j["units"] = "rad_per_us";
    j["params"] = {{"chi1", p.chi1},         {"chi2", p.chi2},
                   {"kappa1", p.kappa1},     {"kappa2", p.kappa2},
                   {"gamma1", p.gamma1},     {"gamma2", p.gamma2},
                   {"delta1", p.delta1},     {"delta2", p.delta2},
                   {"eta_l", p.eta_l},       {"eta_m", p.eta_m},
                   {"phi", p.phi},           {"gamma_d1", p.gamma_d1},
                   {"gamma_d2", p.gamma_d2}, {"gamma_r1", p.gamma_r1},
                   {"gamma_r2", p.gamma_r2}, {"omega1", p.omega1},
                   {"omega2", p.omega2}};
    json jd;
    jd["probe"] = envelope_json(c.drives.probe, 1.0);
    jd["bar_A_d"] = envelope_json(c.drives.bar_A_d, 1.0);
    jd["bar_B_d"] = envelope_json(c.drives.bar_B_d, 1.0);
    if (c.drives.direct_A_d) jd["direct_A_d"] = envelope_json(*c.drives.direct_A_d, 1.0);
    if (c.drives.direct_B_d) jd["direct_B_d"] = envelope_json(*c.drives.direct_B_d, 1.0);
    j["drives"] = jd;
    j["compensation"] = to_string(c.compensation);
    j["representation"] = to_string(c.representation);
    j["dt"] = c.dt;
    j["pulse_widths"] = c.pulse_widths;
    j["trajectories"] = c.trajectories;
    j["master_seed"] = c.master_seed;
    j["snapshot_stride"] = c.snapshot_stride;
    j["ring_down"] = c.ring_down_us;
    j["classify_threshold"] = c.classify_threshold;
    j["fock_na"] = c.fock_na;
    j["fock_nb"] = c.fock_nb;
    j["out_dir"] = c.out_dir;
    return j.dump(2) + "\n";
}

void write_config(const SimulationConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file '" + path + "'");
    out << emit_config(c);
    if (!out) throw IoError("write failed for config file '" + path + "'");
}

}  // namespace ccqsim
