#pragma once

#include <string>
#include <vector>

#include "qemit/dynamics.hpp"

namespace qemit {

// Emission spectrum on a detuning axis relative to w0' (rad/ps).
struct Spectrum {
    std::vector<double> freq;      // rad/ps detuning
    std::vector<double> total;
    std::vector<double> zpl;
    std::vector<double> sideband;
    bool decomposed = false;

    std::string to_csv() const;  // detuning_ueV, total, zpl, sideband
};

struct MethodComparison {
    double cs = 0.0;             // Gamma+ + Gamma- + 2 w_col
    double pm = 0.0;             // F+ + F- + 2 W_col
    double delta_percent = 0.0;  // 100 (CS - PM)/CS
};

// Merged detuning grid: per-peak arctan-refined subgrids (dense out to
// ~250 widths), a uniform window around the ZPL, and a uniform sideband
// span. Suitable for trapezoid integration of both parts.
struct FrequencyGrid {
    struct Options {
        double sideband_span_uev = 6000.0;  // +- span
        double sideband_step_uev = 4.0;
        double zpl_window_uev = 60.0;       // +- uniform fine window
        double zpl_step_uev = 2.0;
        double peak_widths = 250.0;         // arctan subgrid reach, in widths
        int peak_points = 241;
    };

    std::vector<double> points;  // rad/ps, sorted, unique

    static FrequencyGrid for_modes(const ModeSet& modes, Method method, Options opt);
    static FrequencyGrid for_modes(const ModeSet& modes, Method method);
};

// Analytic ZPL Lorentzian sum with method-appropriate widths and centers
// (diagonal weights gamma_l rho_ll only).
Spectrum zpl_spectrum(const ModeSet& modes, Method method, const FrequencyGrid& grid);

// Wiener-Khinchin transform of a trace, split as C(tau) = C_inf +
// (C - C_inf): analytic Lorentzians plus a numerical transform of the
// short-time sideband factor over the trace's fine window.
Spectrum full_spectrum(const CorrelationTrace& trace, const FrequencyGrid& grid);

// N=2 method agreement: Delta = 100 (CS - PM)/CS.
MethodComparison delta_metric(const EmitterChain& chain, const PhononContext& ctx);

// max_l total width / min_l total width.
double enhancement_ratio(const ModeSet& modes, Method method = Method::Concatenation);

// integral(zpl)/integral(total) of a decomposed spectrum; equals C_inf up
// to O(Gamma tau_P). Errors if the grid truncates a peak (< 6 widths) or
// the sideband support.
double zpl_fraction(const Spectrum& spectrum, const ModeSet& modes, Method method);

// Trapezoid integral over the (nonuniform) grid.
double integrate_spectrum(const std::vector<double>& freq, const std::vector<double>& values);

// Integrated sideband above/below the ZPL.
struct SidebandSplit {
    double blue = 0.0;  // detuning > 0
    double red = 0.0;   // detuning < 0
};
SidebandSplit sideband_split(const Spectrum& spectrum);

}  // namespace qemit
