#pragma once

// Internal unit system: time in ps, angular frequency in rad/ps,
// temperature in K, length in nm. Printed rates like "850 MHz" enter
// as plain rates (0.85 GHz -> 8.5e-4 ps^-1); spectra are reported on a
// detuning axis in ueV for comparability with experiments.

namespace qemit::units {

inline constexpr double kb_over_hbar = 0.130920;     // rad ps^-1 K^-1
inline constexpr double hbar_uev_ps = 658.2119569;   // ueV * ps
inline constexpr double c_light = 299792.458;        // nm / ps

constexpr double ghz_to_rate(double ghz) { return ghz * 1e-3; }  // -> ps^-1
constexpr double rate_to_ghz(double rate) { return rate * 1e3; }

constexpr double uev_to_angular(double uev) { return uev / hbar_uev_ps; }   // -> rad/ps
constexpr double angular_to_uev(double omega) { return omega * hbar_uev_ps; }

// Thermal energy in angular-frequency units (rad/ps) at temperature T (K).
constexpr double thermal_frequency(double temperature_k) {
    return kb_over_hbar * temperature_k;
}

}  // namespace qemit::units
