#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qemit/optical_coupling.hpp"

namespace qemit {

// One collective emission channel of the approximately diagonalized
// N-emitter master equations. omega_l is the shift relative to w0'.
struct CollectiveMode {
    int index = 1;              // l = 1..N
    double omega_l = 0.0;       // 2 w_col cos(pi l/(N+1)), rad/ps
    double gamma_l = 0.0;       // concatenation mode decay, rad/ps
    double upsilon_l = 0.0;     // polaron mode decay, rad/ps
    double big_gamma_l = 0.0;   // gamma_l/2 + gamma_pd
    double digamma_l = 0.0;     // upsilon_l/2 + gamma_pd
    double rho_ll = 0.0;        // initial weight <l|rho(0)|l>
};

struct ModeSet {
    std::vector<CollectiveMode> modes;
    double c_inf = 1.0;
    double gamma_pd = 0.0;
    double omega_col = 0.0;
    double omega_col_polaron = 0.0;
    double gamma = 0.0;              // single-emitter rate
    // Full congruence transform of the SEM density matrix; cross-mode
    // coherences (off-diagonal) feed the time-domain traces only, never
    // the Lorentzian ZPL formula.
    Eigen::MatrixXcd rho_modes;
    Eigen::MatrixXd gamma_modes;     // M^T gamma_mat M
    Eigen::MatrixXd upsilon_modes;   // M^T upsilon_mat M

    // Polaron-frame mode center: Omega_l = C_inf * omega_l.
    double omega_l_polaron(int i) const { return c_inf * modes[i].omega_l; }
};

// M_nl = sqrt(2/(N+1)) sin(pi n l/(N+1)); orthogonal, M^T M = I.
Eigen::MatrixXd transform_coefficients(int n);

// Congruence-transform the coupling matrices and initial SEM state into
// the collective basis. rho_sem is the N x N single-excitation block of
// rho(0) in the site basis (trace <= 1). Throws on gamma_l < -1e-12.
ModeSet mode_spectrum(const EmitterChain& chain, const CouplingMatrices& matrices,
                      double gamma_pd, const Eigen::MatrixXcd& rho_sem);

// CSV export: l, omega_l, gamma_l, upsilon_l, Gamma_l, digamma_l, rho_ll.
std::string modes_to_csv(const ModeSet& set);

}  // namespace qemit
