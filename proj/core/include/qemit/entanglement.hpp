#pragma once

#include <span>
#include <string>
#include <vector>

#include "qemit/dynamics.hpp"
#include "qemit/lindblad.hpp"

namespace qemit {

// Wootters concurrence of a two-qubit state: eigenvalues a_i (descending)
// of rho (sy x sy) rho* (sy x sy), E = max(0, sqrt a1 - sqrt a2 - sqrt a3
// - sqrt a4). Tiny negatives above -1e-12 are clamped.
double concurrence(const DensityMatrix& rho);

struct ConcurrenceTrace {
    std::vector<double> times;   // ps
    std::vector<double> values;  // in [0, 1]
    Method method = Method::Concatenation;
    double tau_p = 0.0;          // seam between non-markovian and markovian regimes

    std::string to_csv() const;  // t_ps, concurrence, method
};

// Two-qubit concurrence dynamics. Concatenation: |C(tau)|^2 coherence
// scaling up to tau_P, then the diagonal two-emitter master equation
// seeded with the C_inf^2 seam state. Markovian: the same master equation
// from rho0 with C_inf forced to 1. Method::Polaron runs the concatenation
// seam with polaron rates (Upsilon_pm, W_col) in the markovian stage.
ConcurrenceTrace concurrence_trajectory(const DensityMatrix& rho0, Method method,
                                        const PhononContext& ctx, const EmitterChain& chain,
                                        const TimeGrid& grid);

// Two-emitter master equation of the trajectory's markovian stage, in the
// lab two-qubit basis (collapse ops sigma_pm, projector dephasing).
LindbladSpec two_emitter_equation(const EmitterChain& chain, const PhononContext& ctx,
                                  bool polaron_rates);

// Concurrence at tau = tau_P for initial |+-> as a function of temperature
// and dot size: C_inf^2(T; omega_c = sound_speed/L).
struct TauPTable {
    std::vector<double> temperatures;  // K
    std::vector<double> dot_sizes;     // nm
    std::vector<std::vector<double>> values;  // [temperature][dot size]

    std::string to_csv() const;  // T_K, then one column per dot size
};

TauPTable concurrence_at_tau_p(std::span<const double> temperatures,
                               std::span<const double> dot_sizes, double alpha,
                               double sound_speed, const QuadratureSpec& quad = {});

}  // namespace qemit
