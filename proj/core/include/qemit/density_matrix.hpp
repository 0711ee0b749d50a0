#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace qemit {

// Small complex Hermitian trace-one matrix. Two-qubit basis order is
// {|gg>, |ge>, |eg>, |ee>} (qubit 1 major), so the single-excitation
// manifold sites are index 2 (emitter 1 excited) and index 1 (emitter 2).
class DensityMatrix {
public:
    static constexpr double herm_tol = 1e-12;
    static constexpr double trace_tol = 1e-10;
    static constexpr double psd_tol = 1e-10;

    explicit DensityMatrix(Eigen::MatrixXcd m);
    static DensityMatrix pure(const Eigen::VectorXcd& psi);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    std::complex<double> operator()(int i, int j) const { return m_(i, j); }

private:
    Eigen::MatrixXcd m_;
};

// Named two-qubit states: "e1" -> |e,g>, "e2" -> |g,e>,
// "plus"/"minus" -> (|e,g> +- |g,e>)/sqrt(2).
Eigen::VectorXcd two_qubit_state(const std::string& name);

// N-site chain state vector over {ground} + SEM: amplitudes[0] on |0>,
// amplitudes[n] on |n> (site n excited), embedded in dimension N+1.
Eigen::VectorXcd chain_sem_state(int n_emitters, const Eigen::VectorXcd& sem_amplitudes);

}  // namespace qemit
