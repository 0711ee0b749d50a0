#pragma once

#include <span>

namespace qemit {

// Bi-exponential fit a1 exp(-r1 t) + a2 exp(-r2 t) on a uniform grid via
// second-order linear prediction (Prony); exact for noiseless data.
// Degenerates gracefully to a single exponential (a2 = 0, r2 = 0).
struct BiexpFit {
    double rate_fast = 0.0;  // r1 >= r2, same units as 1/t
    double rate_slow = 0.0;
    double amp_fast = 0.0;
    double amp_slow = 0.0;
    double max_residual = 0.0;  // max |model - data|
};

BiexpFit fit_biexponential(std::span<const double> times, std::span<const double> values);

}  // namespace qemit
