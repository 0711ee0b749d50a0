#include "qemit/exp_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qemit {

BiexpFit fit_biexponential(std::span<const double> times, std::span<const double> values) {
    const auto n = times.size();
    if (n < 4 || values.size() != n)
        throw std::invalid_argument("fit_biexponential: need >= 4 uniform samples");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * dt)
            throw std::invalid_argument("fit_biexponential: grid must be uniform");

    // Linear prediction s[k+2] = c1 s[k+1] + c0 s[k], least squares.
    Eigen::MatrixXd A(n - 2, 2);
    Eigen::VectorXd b(n - 2);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        A(k, 0) = values[k + 1];
        A(k, 1) = values[k];
        b(k) = values[k + 2];
    }
    const Eigen::Matrix2d ata = A.transpose() * A;
    const Eigen::Vector2d atb = A.transpose() * b;

    BiexpFit fit;
    auto finish = [&](double r1, double a1, double r2, double a2) {
        if (r1 < r2) {
            std::swap(r1, r2);
            std::swap(a1, a2);
        }
        fit.rate_fast = r1;
        fit.rate_slow = r2;
        fit.amp_fast = a1;
        fit.amp_slow = a2;
        fit.max_residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double model = a1 * std::exp(-r1 * times[i]) + a2 * std::exp(-r2 * times[i]);
            fit.max_residual = std::max(fit.max_residual, std::abs(model - values[i]));
        }
    };

    const double det = ata.determinant();
    const bool degenerate = !(det > 1e-12 * ata(0, 0) * ata(1, 1));
    if (!degenerate) {
        const Eigen::Vector2d c = ata.ldlt().solve(atb);
        const double disc = c(0) * c(0) / 4.0 + c(1);
        if (disc >= 0) {
            const double p = c(0) / 2.0 + std::sqrt(disc);
            const double q = c(0) / 2.0 - std::sqrt(disc);
            if (p > 0 && q > 0 && std::abs(p - q) > 1e-12 * p) {
                const double r1 = -std::log(p) / dt;
                const double r2 = -std::log(q) / dt;
                // Amplitudes by linear least squares.
                Eigen::MatrixXd E(n, 2);
                for (std::size_t i = 0; i < n; ++i) {
                    E(i, 0) = std::exp(-r1 * times[i]);
                    E(i, 1) = std::exp(-r2 * times[i]);
                }
                const Eigen::Vector2d a =
                    (E.transpose() * E)
                        .ldlt()
                        .solve(E.transpose() * Eigen::Map<const Eigen::VectorXd>(values.data(), n));
                finish(r1, a(0), r2, a(1));
                return fit;
            }
        }
    }

    // Single-exponential fallback: rate from the mean log-ratio.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (values[i] > 0 && values[i + 1] > 0) {
            num += std::log(values[i] / values[i + 1]);
            den += 1.0;
        }
    }
    const double r = den > 0 ? num / (den * dt) : 0.0;
    finish(r, values[0], 0.0, 0.0);
    return fit;
}

}  // namespace qemit
