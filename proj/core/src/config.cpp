#include "qemit/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qemit/errors.hpp"
#include "qemit/io.hpp"
#include "qemit/units.hpp"

namespace qemit {

double SimulationConfig::gamma_rate() const { return units::ghz_to_rate(gamma_ghz); }

EmitterChain SimulationConfig::chain() const {
    EmitterChain c;
    c.n_emitters = n_emitters;
    c.spacing = dicke_limit ? 0.0 : spacing.resolve(wavelength);
    c.wavelength = wavelength;
    c.refractive_index = refractive_index;
    c.gamma = gamma_rate();
    c.dicke_limit = dicke_limit;
    return c;
}

PhononBathParams SimulationConfig::bath(double temperature) const {
    return PhononBathParams{alpha, resolved_omega_c(), temperature};
}

Eigen::VectorXcd SimulationConfig::two_qubit_vector() const {
    if (n_emitters != 2)
        throw ConfigError("run.initial_state: two-qubit state requires n_emitters = 2");
    if (initial_state.name != "vec") return two_qubit_state(initial_state.name);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(2) = initial_state.amplitudes[0];
    v(1) = initial_state.amplitudes[1];
    return v;
}

Eigen::MatrixXcd SimulationConfig::rho_sem() const {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n_emitters);
    if (initial_state.name == "e1") {
        amps(0) = 1.0;
    } else if (initial_state.name == "plus" || initial_state.name == "minus") {
        if (n_emitters != 2)
            throw ConfigError("run.initial_state: |+->/|-> require n_emitters = 2");
        const double s = 1.0 / std::sqrt(2.0);
        amps(0) = s;
        amps(1) = initial_state.name == "plus" ? s : -s;
    } else {
        for (int i = 0; i < n_emitters; ++i) amps(i) = initial_state.amplitudes[i];
    }
    return amps * amps.adjoint();
}

void SimulationConfig::validate() const {
    auto bad = [](const std::string& path, const std::string& msg) {
        throw ConfigError(path + ": " + msg);
    };
    if (!(alpha >= 0)) bad("material.alpha", "must be >= 0");
    if (dot_size && !(*dot_size > 0)) bad("material.dot_size", "must be > 0");
    if (!(omega_c > 0)) bad("material.omega_c", "must be > 0");
    if (!(sound_speed > 0)) bad("material.sound_speed", "must be > 0");
    if (!(mu >= 0)) bad("material.mu", "must be >= 0");
    if (!(refractive_index >= 1)) bad("material.refractive_index", "must be >= 1");
    if (!(wavelength > 0)) bad("material.wavelength", "must be > 0");
    if (!(gamma_ghz > 0)) bad("material.gamma_ghz", "must be > 0");
    if (n_emitters < 1) bad("chain.n_emitters", "must be >= 1");
    if (!(spacing.value > 0)) bad("chain.spacing", "must be > 0");
    if (temperatures.empty()) bad("run.temperatures", "at least one temperature required");
    for (double t : temperatures)
        if (!(t >= 0)) bad("run.temperatures", "temperatures must be >= 0");
    if (methods.empty()) bad("run.methods", "at least one method required");
    if (!(tau_p_epsilon > 0 && tau_p_epsilon < 1)) bad("run.tau_p_epsilon", "must be in (0,1)");
    if (initial_state.name == "vec") {
        if (static_cast<int>(initial_state.amplitudes.size()) != n_emitters)
            bad("run.initial_state", "vec amplitude count must equal n_emitters");
        double norm = 0;
        for (double a : initial_state.amplitudes) norm += a * a;
        if (std::abs(norm - 1.0) > 1e-8) bad("run.initial_state", "vec must be normalized");
    } else if (initial_state.name != "e1" && initial_state.name != "plus" &&
               initial_state.name != "minus") {
        bad("run.initial_state", "unknown state '" + initial_state.name + "'");
    }
    if (!(fine_dt > 0 && fine_dt <= 0.02)) bad("grids.fine_dt", "must be in (0, 0.02]");
    if (!(sideband_span_uev > 0)) bad("grids.sideband_span_uev", "must be > 0");
    if (!(zpl_step_uev > 0 && zpl_step_uev <= 2.0)) bad("grids.zpl_step_uev", "must be in (0, 2]");
    if (!(sideband_step_uev > 0)) bad("grids.sideband_step_uev", "must be > 0");
    if (workers < 0) bad("output.workers", "must be >= 0");
    if (out_dir.empty()) bad("output.dir", "must not be empty");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(path + ": not a number: '" + v + "'");
    }
}

int parse_int(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(path + ": not an integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& path, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(path + ": not a boolean: '" + v + "'");
}

SpacingSpec parse_spacing(const std::string& path, const std::string& v) {
    SpacingSpec s;
    if (v.rfind("lambda/", 0) == 0) {
        s.is_fraction = true;
        s.value = parse_double(path, v.substr(7));
    } else {
        s.is_fraction = false;
        s.value = parse_double(path, v);
    }
    if (!(s.value > 0)) throw ConfigError(path + ": must be > 0");
    return s;
}

InitialState parse_state(const std::string& path, const std::string& v) {
    InitialState st;
    if (v.rfind("vec:", 0) == 0) {
        st.name = "vec";
        for (const auto& part : split(v.substr(4), ','))
            st.amplitudes.push_back(parse_double(path, part));
        if (st.amplitudes.empty()) throw ConfigError(path + ": empty amplitude list");
    } else {
        st.name = v;
    }
    return st;
}

}  // namespace

std::vector<double> parse_temperature_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots != std::string::npos) {
            const double lo = parse_double("temperatures", part.substr(0, dots));
            std::string rest = part.substr(dots + 2);
            double step = 1.0;
            const auto colon = rest.find(':');
            if (colon != std::string::npos) {
                step = parse_double("temperatures", rest.substr(colon + 1));
                rest = rest.substr(0, colon);
            }
            const double hi = parse_double("temperatures", rest);
            if (!(step > 0) || hi < lo)
                throw ConfigError("temperatures: bad range '" + part + "'");
            for (double t = lo; t <= hi + 1e-9; t += step) out.push_back(t);
        } else if (!part.empty()) {
            out.push_back(parse_double("temperatures", part));
        }
    }
    return out;
}

SimulationConfig parse_config(const std::string& text, bool use_defaults) {
    static const std::map<std::string, std::vector<std::string>> schema = {
        {"material",
         {"alpha", "dot_size", "omega_c", "sound_speed", "mu", "refractive_index", "wavelength",
          "gamma_ghz"}},
        {"chain", {"n_emitters", "spacing", "dicke_limit"}},
        {"run", {"temperatures", "methods", "initial_state", "tau_p_epsilon"}},
        {"grids", {"fine_dt", "sideband_span_uev", "zpl_step_uev", "sideband_step_uev"}},
        {"output", {"dir", "workers"}},
    };

    SimulationConfig cfg;
    if (!use_defaults) cfg = SimulationConfig{};  // keys still required below

    std::map<std::string, bool> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema.count(section))
                throw ConfigError(section + ": unknown section");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError(key + ": key outside any section");
        const auto& keys = schema.at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(section + "." + key + ": unknown key");
        const std::string path = section + "." + key;
        if (seen[path])
            throw ConfigError(path + ": duplicate key");
        seen[path] = true;

        if (path == "material.alpha") cfg.alpha = parse_double(path, value);
        else if (path == "material.dot_size") cfg.dot_size = parse_double(path, value);
        else if (path == "material.omega_c") cfg.omega_c = parse_double(path, value);
        else if (path == "material.sound_speed") cfg.sound_speed = parse_double(path, value);
        else if (path == "material.mu") cfg.mu = parse_double(path, value);
        else if (path == "material.refractive_index") cfg.refractive_index = parse_double(path, value);
        else if (path == "material.wavelength") cfg.wavelength = parse_double(path, value);
        else if (path == "material.gamma_ghz") cfg.gamma_ghz = parse_double(path, value);
        else if (path == "chain.n_emitters") cfg.n_emitters = parse_int(path, value);
        else if (path == "chain.spacing") cfg.spacing = parse_spacing(path, value);
        else if (path == "chain.dicke_limit") cfg.dicke_limit = parse_bool(path, value);
        else if (path == "run.temperatures") cfg.temperatures = parse_temperature_list(value);
        else if (path == "run.methods") {
            cfg.methods.clear();
            for (const auto& m : split(value, ','))
                if (!m.empty()) cfg.methods.push_back(method_from_name(m));
        }
        else if (path == "run.initial_state") cfg.initial_state = parse_state(path, value);
        else if (path == "run.tau_p_epsilon") cfg.tau_p_epsilon = parse_double(path, value);
        else if (path == "grids.fine_dt") cfg.fine_dt = parse_double(path, value);
        else if (path == "grids.sideband_span_uev") cfg.sideband_span_uev = parse_double(path, value);
        else if (path == "grids.zpl_step_uev") cfg.zpl_step_uev = parse_double(path, value);
        else if (path == "grids.sideband_step_uev") cfg.sideband_step_uev = parse_double(path, value);
        else if (path == "output.dir") cfg.out_dir = value;
        else if (path == "output.workers") cfg.workers = parse_int(path, value);
    }

    if (!use_defaults) {
        for (const auto& [sec, keys] : schema)
            for (const auto& key : keys) {
                if (sec == "material" && key == "dot_size") continue;  // optional
                if (!seen[sec + "." + key])
                    throw ConfigError(sec + "." + key + ": missing required key");
            }
    }
    cfg.validate();
    return cfg;
}

std::string render_config(const SimulationConfig& c) {
    std::ostringstream out;
    out << "[material]\n";
    out << "alpha = " << float17(c.alpha) << "\n";
    if (c.dot_size) out << "dot_size = " << float17(*c.dot_size) << "\n";
    out << "omega_c = " << float17(c.omega_c) << "\n";
    out << "sound_speed = " << float17(c.sound_speed) << "\n";
    out << "mu = " << float17(c.mu) << "\n";
    out << "refractive_index = " << float17(c.refractive_index) << "\n";
    out << "wavelength = " << float17(c.wavelength) << "\n";
    out << "gamma_ghz = " << float17(c.gamma_ghz) << "\n";
    out << "\n[chain]\n";
    out << "n_emitters = " << c.n_emitters << "\n";
    if (c.spacing.is_fraction)
        out << "spacing = lambda/" << float17(c.spacing.value) << "\n";
    else
        out << "spacing = " << float17(c.spacing.value) << "\n";
    out << "dicke_limit = " << (c.dicke_limit ? "true" : "false") << "\n";
    out << "\n[run]\n";
    out << "temperatures = ";
    for (std::size_t i = 0; i < c.temperatures.size(); ++i)
        out << (i ? "," : "") << float17(c.temperatures[i]);
    out << "\n";
    out << "methods = ";
    for (std::size_t i = 0; i < c.methods.size(); ++i)
        out << (i ? "," : "") << method_name(c.methods[i]);
    out << "\n";
    if (c.initial_state.name == "vec") {
        out << "initial_state = vec:";
        for (std::size_t i = 0; i < c.initial_state.amplitudes.size(); ++i)
            out << (i ? "," : "") << float17(c.initial_state.amplitudes[i]);
        out << "\n";
    } else {
        out << "initial_state = " << c.initial_state.name << "\n";
    }
    out << "tau_p_epsilon = " << float17(c.tau_p_epsilon) << "\n";
    out << "\n[grids]\n";
    out << "fine_dt = " << float17(c.fine_dt) << "\n";
    out << "sideband_span_uev = " << float17(c.sideband_span_uev) << "\n";
    out << "zpl_step_uev = " << float17(c.zpl_step_uev) << "\n";
    out << "sideband_step_uev = " << float17(c.sideband_step_uev) << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.out_dir << "\n";
    out << "workers = " << c.workers << "\n";
    return out.str();
}

}  // namespace qemit
