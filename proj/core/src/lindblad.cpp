#include "qemit/lindblad.hpp"

#include <cmath>
#include <stdexcept>

#include "qemit/errors.hpp"

namespace qemit {

void LindbladSpec::validate() const {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("LindbladSpec: hamiltonian must be square");
    if (hamiltonian.rows() > 32)
        throw std::invalid_argument("LindbladSpec: dim must be <= 32");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("LindbladSpec: hamiltonian must be Hermitian");
    for (const auto& [op, rate] : collapse_ops) {
        if (op.rows() != hamiltonian.rows() || op.cols() != hamiltonian.cols())
            throw std::invalid_argument("LindbladSpec: collapse operator dimension mismatch");
        if (rate < 0) throw std::invalid_argument("LindbladSpec: rates must be >= 0");
    }
}

Eigen::MatrixXcd LindbladSpec::apply(const Eigen::MatrixXcd& m) const {
    const std::complex<double> i(0.0, 1.0);
    Eigen::MatrixXcd out = -i * (hamiltonian * m - m * hamiltonian);
    for (const auto& [op, rate] : collapse_ops) {
        if (rate == 0.0) continue;
        const Eigen::MatrixXcd opd_op = op.adjoint() * op;
        out += rate * (op * m * op.adjoint() - 0.5 * (opd_op * m + m * opd_op));
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<Eigen::MatrixXcd> propagate_matrix(const Eigen::MatrixXcd& m0,
                                               const LindbladSpec& spec,
                                               std::span<const double> times, double rel_tol,
                                               double abs_tol) {
    spec.validate();
    if (times.empty()) return {};
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1]))
            throw std::invalid_argument("propagate_matrix: times must be >= 0 and increasing");
    }

    std::vector<Eigen::MatrixXcd> out;
    out.reserve(times.size());

    Eigen::MatrixXcd y = m0;
    double t = 0.0;
    Eigen::MatrixXcd k1 = spec.apply(y);  // FSAL

    // Initial step from the generator scale.
    const double rhs_scale = std::max(k1.cwiseAbs().maxCoeff(), 1e-300);
    double h = std::min(0.1 * std::max(y.cwiseAbs().maxCoeff(), 1.0) / rhs_scale, 1.0);

    std::size_t next = 0;
    while (next < times.size() && times[next] <= t) {
        out.push_back(y);
        ++next;
    }

    while (next < times.size()) {
        bool hit_output = false;
        double step = h;
        if (t + step >= times[next]) {
            step = times[next] - t;
            hit_output = true;
        }

        const Eigen::MatrixXcd k2 = spec.apply(y + step * (a21 * k1));
        const Eigen::MatrixXcd k3 = spec.apply(y + step * (a31 * k1 + a32 * k2));
        const Eigen::MatrixXcd k4 = spec.apply(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::MatrixXcd k5 =
            spec.apply(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::MatrixXcd k6 =
            spec.apply(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::MatrixXcd y5 =
            y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::MatrixXcd k7 = spec.apply(y5);
        const Eigen::MatrixXcd err_mat =
            step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale =
            abs_tol + rel_tol * std::max(y.cwiseAbs().maxCoeff(), y5.cwiseAbs().maxCoeff());
        const double err = err_mat.cwiseAbs().maxCoeff() / scale;
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        const double proposed = step * factor;

        if (err <= 1.0) {
            t += step;
            y = y5;
            k1 = k7;
            if (hit_output) {
                out.push_back(y);
                ++next;
            }
            // An output-clipped step must not shrink the natural step size.
            h = hit_output ? std::max(h, proposed) : proposed;
        } else {
            if (!(proposed > 1e-14 * std::max(1.0, std::abs(t))))
                throw IntegrationError("propagate_matrix: step size underflow");
            h = proposed;
        }
    }
    return out;
}

std::vector<DensityMatrix> lindblad_evolve(const DensityMatrix& rho0, const LindbladSpec& spec,
                                           std::span<const double> times, double rel_tol,
                                           double abs_tol) {
    if (rho0.dim() != spec.hamiltonian.rows())
        throw std::invalid_argument("lindblad_evolve: dimension mismatch");
    auto raw = propagate_matrix(rho0.matrix(), spec, times, rel_tol, abs_tol);
    std::vector<DensityMatrix> out;
    out.reserve(raw.size());
    for (auto& m : raw) {
        if (std::abs(m.trace().real() - 1.0) > 1e-8)
            throw IntegrationError("lindblad_evolve: trace drifted beyond 1e-8");
        // Symmetrize away roundoff-level Hermiticity error before validation.
        Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
        out.emplace_back(std::move(h));
    }
    return out;
}

}  // namespace qemit
