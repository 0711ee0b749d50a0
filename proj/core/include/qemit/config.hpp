#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qemit/dynamics.hpp"

namespace qemit {

// Emitter spacing, either absolute (nm) or a fraction of the wavelength
// ("lambda/25"), resolved against lambda before use.
struct SpacingSpec {
    bool is_fraction = true;
    double value = 25.0;  // divisor when fraction, nm otherwise

    double resolve(double wavelength_nm) const {
        return is_fraction ? wavelength_nm / value : value;
    }
    bool operator==(const SpacingSpec&) const = default;
};

struct InitialState {
    std::string name = "e1";              // "e1", "plus", "minus" or "vec"
    std::vector<double> amplitudes;       // SEM amplitudes when name == "vec"

    bool operator==(const InitialState&) const = default;
};

// Flat-section key=value configuration (schema in docs/config.md).
struct SimulationConfig {
    // [material]
    double alpha = 0.025;                  // ps^2
    std::optional<double> dot_size = {};   // nm; sets omega_c = sound_speed/dot_size
    double omega_c = 1.49;                 // rad/ps
    double sound_speed = 6.705;            // nm/ps
    double mu = 0.019;                     // ps^3
    double refractive_index = 3.5;
    double wavelength = 940.0;             // nm
    double gamma_ghz = 0.85;               // plain rate

    // [chain]
    int n_emitters = 2;
    SpacingSpec spacing{true, 25.0};
    bool dicke_limit = false;

    // [run]
    std::vector<double> temperatures{4.0};
    std::vector<Method> methods{Method::Concatenation, Method::Polaron};
    InitialState initial_state{};
    double tau_p_epsilon = 1e-3;

    // [grids]
    double fine_dt = 0.02;                 // ps
    double sideband_span_uev = 6000.0;
    double zpl_step_uev = 2.0;
    double sideband_step_uev = 4.0;

    // [output]
    std::string out_dir = "out";
    int workers = 0;                       // 0 = logical core count

    bool operator==(const SimulationConfig&) const = default;

    double resolved_omega_c() const { return dot_size ? sound_speed / *dot_size : omega_c; }
    double gamma_rate() const;                    // ps^-1
    EmitterChain chain() const;
    PhononBathParams bath(double temperature) const;
    Eigen::MatrixXcd rho_sem() const;             // initial SEM block, site basis
    Eigen::VectorXcd two_qubit_vector() const;    // N=2 initial state
    void validate() const;
};

// Parse a UTF-8 key=value document. With use_defaults, missing keys keep
// the bulk GaAs profile above; otherwise every key must be present.
// Unknown keys, unknown sections and out-of-range values are rejected
// with path-qualified messages.
SimulationConfig parse_config(const std::string& text, bool use_defaults = true);

// Canonical textual form; parse_config(render_config(c)) == c.
std::string render_config(const SimulationConfig& config);

std::vector<double> parse_temperature_list(const std::string& text);

}  // namespace qemit
