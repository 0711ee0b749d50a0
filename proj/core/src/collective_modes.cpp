#include "qemit/collective_modes.hpp"

#include <cmath>
#include <stdexcept>

#include "qemit/io.hpp"

namespace qemit {

Eigen::MatrixXd transform_coefficients(int n) {
    if (n < 1) throw std::invalid_argument("transform_coefficients: N must be >= 1");
    Eigen::MatrixXd m(n, n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int row = 1; row <= n; ++row)
        for (int col = 1; col <= n; ++col)
            m(row - 1, col - 1) = norm * std::sin(M_PI * row * col / (n + 1));
    return m;
}

ModeSet mode_spectrum(const EmitterChain& chain, const CouplingMatrices& matrices,
                      double gamma_pd, const Eigen::MatrixXcd& rho_sem) {
    chain.validate();
    const int n = chain.n_emitters;
    if (matrices.gamma_mat.rows() != n || rho_sem.rows() != n || rho_sem.cols() != n)
        throw std::invalid_argument("mode_spectrum: dimension mismatch");
    if (gamma_pd < 0) throw std::invalid_argument("mode_spectrum: gamma_pd must be >= 0");

    const Eigen::MatrixXd m = transform_coefficients(n);
    ModeSet set;
    set.gamma_pd = gamma_pd;
    set.gamma = chain.gamma;
    set.omega_col = matrices.omega_col;
    set.omega_col_polaron = matrices.omega_col_polaron;
    set.c_inf = matrices.c_inf;
    set.gamma_modes = m.transpose() * matrices.gamma_mat * m;
    set.upsilon_modes = m.transpose() * matrices.upsilon_mat * m;
    set.rho_modes = m.transpose() * rho_sem * m;

    set.modes.reserve(n);
    for (int l = 1; l <= n; ++l) {
        CollectiveMode mode;
        mode.index = l;
        mode.omega_l = 2.0 * matrices.omega_col * std::cos(M_PI * l / (n + 1));
        mode.gamma_l = set.gamma_modes(l - 1, l - 1);
        mode.upsilon_l = set.upsilon_modes(l - 1, l - 1);
        if (mode.gamma_l < -1e-12 || mode.upsilon_l < -1e-12)
            throw std::runtime_error(
                "mode_spectrum: negative collective rate; the approximate "
                "diagonalization is unphysical at this geometry");
        mode.gamma_l = std::max(mode.gamma_l, 0.0);
        mode.upsilon_l = std::max(mode.upsilon_l, 0.0);
        mode.big_gamma_l = 0.5 * mode.gamma_l + gamma_pd;
        mode.digamma_l = 0.5 * mode.upsilon_l + gamma_pd;
        mode.rho_ll = set.rho_modes(l - 1, l - 1).real();
        set.modes.push_back(mode);
    }
    return set;
}

std::string modes_to_csv(const ModeSet& set) {
    CsvWriter csv({"l", "omega_l", "gamma_l", "upsilon_l", "Gamma_l", "digamma_l", "rho_ll"});
    for (const auto& m : set.modes)
        csv.add_row({static_cast<double>(m.index), m.omega_l, m.gamma_l, m.upsilon_l,
                     m.big_gamma_l, m.digamma_l, m.rho_ll});
    return csv.text();
}

}  // namespace qemit
