#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace qemit {

// Uniform 1D chain of identical emitters in a bulk medium, H-aggregate
// configuration (parallel dipoles orthogonal to the chain axis).
struct EmitterChain {
    int n_emitters = 1;
    double spacing = 0.0;           // nm, center-to-center
    double wavelength = 940.0;      // nm, vacuum
    double refractive_index = 3.5;
    double gamma = 8.5e-4;          // single-emitter decay rate, ps^-1
    bool dicke_limit = false;       // zero-separation override: all gamma_nm = gamma
    bool shift_in_theta = true;     // include the polaron shift in q0'

    void validate() const {
        if (n_emitters < 1) throw std::invalid_argument("EmitterChain: n_emitters must be >= 1");
        if (n_emitters > 1 && !dicke_limit && !(spacing > 0))
            throw std::invalid_argument("EmitterChain: spacing must be > 0 for n_emitters > 1");
        if (!(gamma > 0)) throw std::invalid_argument("EmitterChain: gamma must be > 0");
        if (!(refractive_index >= 1))
            throw std::invalid_argument("EmitterChain: refractive_index must be >= 1");
        if (!(wavelength > 0)) throw std::invalid_argument("EmitterChain: wavelength must be > 0");
    }
};

struct CouplingMatrices {
    Eigen::MatrixXd gamma_mat;      // N x N, symmetric, gamma on the diagonal
    double omega_col = 0.0;         // nearest-neighbor collective Lamb shift
    Eigen::MatrixXd upsilon_mat;    // phonon-renormalized: C_inf * gamma_nm off-diagonal
    double omega_col_polaron = 0.0; // C_inf * omega_col
    double c_inf = 1.0;             // the factor the renormalization used
    std::vector<std::string> warnings;
};

// Dimensionless separation theta = n (w0'/c) r, with w0' the
// polaron-shifted transition frequency.
double theta(double separation, const EmitterChain& chain, double polaron_shift);

// gamma_col/gamma = (3/2)(sin t/t + cos t/t^2 - sin t/t^3); equals 1 at
// theta = 0 (series branch pins the Dicke limit).
double collective_decay(double theta);

// omega_col/gamma = (3/4)(-cos t/t + sin t/t^2 + cos t/t^3); diverges as
// theta -> 0 like (3/4)/theta^3. Domain error for theta <= 0.
double collective_lamb_shift(double theta);

// Full pairwise gamma matrix plus nearest-neighbor Lamb shift, and their
// polaron-renormalized counterparts. phonon_corr_length (nm) > 0 enables
// the r > L_P validity warning.
CouplingMatrices build_matrices(const EmitterChain& chain, double c_inf,
                                double polaron_shift = 0.0,
                                double phonon_corr_length = 0.0);

}  // namespace qemit
