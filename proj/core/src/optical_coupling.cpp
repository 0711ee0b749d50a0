#include "qemit/optical_coupling.hpp"

#include <cmath>

#include "qemit/units.hpp"

namespace qemit {

double theta(double separation, const EmitterChain& chain, double polaron_shift) {
    chain.validate();
    if (!(separation > 0)) throw std::domain_error("theta: separation must be > 0");
    const double w0 = 2.0 * M_PI * units::c_light / chain.wavelength;
    const double w0p = chain.shift_in_theta ? w0 - polaron_shift : w0;
    return chain.refractive_index * (w0p / units::c_light) * separation;
}

double collective_decay(double t) {
    if (t < 0) throw std::domain_error("collective_decay: theta must be >= 0");
    if (t < 0.05) {
        const double t2 = t * t;
        return 1.0 - t2 / 5.0 + 3.0 * t2 * t2 / 280.0 - 31.0 * t2 * t2 * t2 / 120960.0;
    }
    const double s = std::sin(t), c = std::cos(t);
    return 1.5 * (s / t + c / (t * t) - s / (t * t * t));
}

double collective_lamb_shift(double t) {
    if (!(t > 0)) throw std::domain_error("collective_lamb_shift: theta must be > 0");
    const double s = std::sin(t), c = std::cos(t);
    return 0.75 * (-c / t + s / (t * t) + c / (t * t * t));
}

CouplingMatrices build_matrices(const EmitterChain& chain, double c_inf,
                                double polaron_shift, double phonon_corr_length) {
    chain.validate();
    if (!(c_inf > 0 && c_inf <= 1))
        throw std::invalid_argument("build_matrices: c_inf must be in (0, 1]");

    const int n = chain.n_emitters;
    CouplingMatrices out;
    out.gamma_mat = Eigen::MatrixXd::Constant(n, n, chain.gamma);

    if (!chain.dicke_limit) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double r = (j - i) * chain.spacing;
                const double g = chain.gamma * collective_decay(theta(r, chain, polaron_shift));
                out.gamma_mat(i, j) = g;
                out.gamma_mat(j, i) = g;
            }
        if (n > 1) {
            out.omega_col =
                chain.gamma * collective_lamb_shift(theta(chain.spacing, chain, polaron_shift));
            if (phonon_corr_length > 0 && chain.spacing <= phonon_corr_length)
                out.warnings.push_back(
                    "spacing " + std::to_string(chain.spacing) +
                    " nm does not exceed the phonon correlation length L_P = " +
                    std::to_string(phonon_corr_length) +
                    " nm; independent-bath assumption is not justified");
        }
    }
    // Dicke override keeps all gamma_nm = gamma; the Lamb shift diverges at
    // zero separation and is excluded from that limit.

    out.upsilon_mat = c_inf * out.gamma_mat;
    out.upsilon_mat.diagonal().setConstant(chain.gamma);
    out.omega_col_polaron = c_inf * out.omega_col;
    out.c_inf = c_inf;
    return out;
}

}  // namespace qemit
