#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qemit/collective_modes.hpp"
#include "qemit/density_matrix.hpp"
#include "qemit/phonon_bath.hpp"

namespace qemit {

// Markovian is Concatenation with C(tau) == 1; InitialSlip is
// Concatenation with C(tau) == C_inf(T).
enum class Method { Concatenation, Polaron, Markovian, InitialSlip };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// Two-scale time grid: fine uniform sampling resolves phi(tau), a
// geometric tail covers the slow radiative decay (ps -> ns separation).
struct TimeGrid {
    std::vector<double> times;  // strictly increasing, starts at 0
    double fine_dt = 0.02;      // ps
    double fine_end = 10.0;     // ps

    static TimeGrid two_scale(double fine_dt, double fine_end, double tail_end,
                              int tail_points = 600);
    // Defaults from the phonon context and slowest mode: fine step 0.02 ps
    // over [0, max(5 tau_P, 10 ps)], tail out to 12/Gamma_min.
    static TimeGrid for_trace(const PhononContext& ctx, const ModeSet& modes,
                              double fine_dt = 0.02);
};

struct CorrelationTrace {
    std::vector<double> times;                        // ps
    std::vector<std::complex<double>> values;         // g1 in the w0' rotating frame
    std::vector<std::complex<double>> phonon_factor;  // C(tau) samples (same grid)
    Method method = Method::Concatenation;
    bool sidebands_restored = false;                  // polaron x C(tau)/C_inf option
    double fine_dt = 0.02;
    double fine_end = 10.0;
    ModeSet modes;
    std::shared_ptr<const PhononContext> phonon;

    std::string to_csv() const;  // tau_ps, re_g1, im_g1, abs_g1
};

// Single-emitter g1: gamma rho_ee K(tau) exp(-(Gamma) tau) in the rotating
// frame, K = C (Concatenation, Polaron), 1 (Markovian), C_inf (InitialSlip);
// Gamma = gamma/2 + gamma_pd.
CorrelationTrace g1_single(const TimeGrid& grid, Method method,
                           std::shared_ptr<const PhononContext> ctx, double gamma,
                           double rho_ee);

// Collective g1 from the approximately diagonalized master equations.
// Cross-mode initial coherences are retained through the congruence
// weights; the polaron kernel is sideband-suppressed (C_inf) unless
// restore_sidebands multiplies by C(tau)/C_inf.
CorrelationTrace g1_collective(const TimeGrid& grid, Method method, const ModeSet& modes,
                               std::shared_ptr<const PhononContext> ctx,
                               bool restore_sidebands = false);

// Normalized integrated intensity sum_l rho_ll exp(-gamma_l tau) (polaron:
// upsilon_l); value at tau = 0 is exactly 1.
std::vector<double> integrated_intensity(const TimeGrid& grid, const ModeSet& modes,
                                         Method method = Method::Concatenation);

// Which indices form the single-excitation manifold; all other indices
// except `ground` must be unpopulated.
struct SemLayout {
    int ground = 0;
    std::vector<int> sem;
    static SemLayout two_qubit() { return {0, {1, 2}}; }
    static SemLayout chain(int n_emitters);
};

// Exact IBM short-time map: diagonal untouched, SEM-SEM coherences scaled
// by C(tau)^2 (conjugate on the lower triangle). States with population
// outside {ground} + SEM, or ground<->SEM coherences, are outside the
// map's domain -> error.
DensityMatrix nonmarkovian_state(const DensityMatrix& rho0, double tau,
                                 const PhononContext& ctx, const SemLayout& layout,
                                 bool magnitude_only = false);

}  // namespace qemit
