#include "qemit/density_matrix.hpp"

#include <stdexcept>

namespace qemit {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1)
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(m_.trace().real() - 1.0) > trace_tol || std::abs(m_.trace().imag()) > trace_tol)
        throw std::invalid_argument("DensityMatrix: trace must be 1 within tolerance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double n = psi.norm();
    if (std::abs(n - 1.0) > 1e-8)
        throw std::invalid_argument("DensityMatrix::pure: state vector must be normalized");
    return DensityMatrix((psi / n) * (psi / n).adjoint());
}

Eigen::VectorXcd two_qubit_state(const std::string& name) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "e1") v(2) = 1.0;
    else if (name == "e2") v(1) = 1.0;
    else if (name == "plus") { v(2) = s; v(1) = s; }
    else if (name == "minus") { v(2) = s; v(1) = -s; }
    else throw std::invalid_argument("two_qubit_state: unknown state '" + name + "'");
    return v;
}

Eigen::VectorXcd chain_sem_state(int n_emitters, const Eigen::VectorXcd& sem_amplitudes) {
    if (sem_amplitudes.size() != n_emitters)
        throw std::invalid_argument("chain_sem_state: amplitude count must equal n_emitters");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_emitters + 1);
    v.tail(n_emitters) = sem_amplitudes;
    if (std::abs(v.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("chain_sem_state: amplitudes must be normalized");
    return v;
}

}  // namespace qemit
