#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "qemit/density_matrix.hpp"

namespace qemit {

// Lindblad generator in diagonal form: hamiltonian H (rad/ps) plus a list
// of (collapse operator, rate >= 0) channels.
struct LindbladSpec {
    Eigen::MatrixXcd hamiltonian;
    std::vector<std::pair<Eigen::MatrixXcd, double>> collapse_ops;

    void validate() const;
    // L(m) = -i[H, m] + sum_k r_k (L m L^+ - 1/2 {L^+L, m}); linear in m,
    // valid for non-Hermitian m as well (quantum-regression inputs).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& m) const;
};

// Propagate an arbitrary matrix under the generator to each time in
// `times` (nonnegative, strictly increasing; first entry may be 0).
// Adaptive Dormand-Prince 5(4) with embedded error control.
std::vector<Eigen::MatrixXcd> propagate_matrix(const Eigen::MatrixXcd& m0,
                                               const LindbladSpec& spec,
                                               std::span<const double> times,
                                               double rel_tol = 1e-9, double abs_tol = 1e-13);

// Density-matrix front end: validates the input, checks trace
// preservation to 1e-8 over the grid.
std::vector<DensityMatrix> lindblad_evolve(const DensityMatrix& rho0, const LindbladSpec& spec,
                                           std::span<const double> times, double rel_tol = 1e-9,
                                           double abs_tol = 1e-13);

}  // namespace qemit
