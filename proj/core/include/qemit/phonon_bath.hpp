#pragma once

#include <complex>
#include <stdexcept>

#include "qemit/quadrature.hpp"

namespace qemit {

// Deformation-potential coupling to 3D LA phonons with a Gaussian cutoff:
// J(w) = alpha * w^3 * exp(-w^2/wc^2).
struct PhononBathParams {
    double alpha = 0.025;       // ps^2
    double omega_c = 1.49;      // rad/ps
    double temperature = 4.0;   // K

    void validate() const {
        if (!(alpha >= 0)) throw std::invalid_argument("PhononBathParams: alpha must be >= 0");
        if (!(omega_c > 0)) throw std::invalid_argument("PhononBathParams: omega_c must be > 0");
        if (!(temperature >= 0))
            throw std::invalid_argument("PhononBathParams: temperature must be >= 0");
    }
};

// Prefactor of the quadratic-coupling pure-dephasing integral, in ps^3 so
// the rate comes out in rad/ps. The default is calibration-grade, not
// first-principles: the deformation potentials and effective masses it
// stands in for are material data (see docs/config.md).
struct DephasingParams {
    double mu = 0.019;  // ps^3

    void validate() const {
        if (!(mu >= 0)) throw std::invalid_argument("DephasingParams: mu must be >= 0");
    }
};

// J(w) in rad/ps; domain error for w < 0.
double spectral_density(double omega, const PhononBathParams& p);

// phi(tau) = int_0^inf dw J(w)/w^2 (cos(w tau) coth(bw/2) - i sin(w tau)).
std::complex<double> phonon_propagator(double tau, const PhononBathParams& p,
                                       const QuadratureSpec& q = {});

// Franck-Condon factor C_inf(T) = exp(-int J coth(bw/2)/w^2), in (0, 1].
double franck_condon(const PhononBathParams& p, const QuadratureSpec& q = {});

// C(tau) = C_inf * exp(phi(tau)); evaluated as exp(phi(tau) - phi(0)) so
// that C(0) = 1 holds to quadrature reproducibility.
std::complex<double> phonon_correlation(double tau, const PhononBathParams& p,
                                        const QuadratureSpec& q = {});

// Reorganization energy int J/w = alpha * sqrt(pi)/4 * wc^3.
double polaron_shift(const PhononBathParams& p, const QuadratureSpec& q = {});

// Smallest tau on a refinement grid with |exp(phi) - 1| < epsilon for all
// later sampled tau. Throws IntegrationError if not reached by 100 ps.
double polaron_time(const PhononBathParams& p, const QuadratureSpec& q = {},
                    double epsilon = 1e-3);

// gamma_pd(T) = alpha^2 mu / wc^4 * int w^10 exp(-2w^2/wc^2) n(n+1) dw.
double pure_dephasing_rate(const PhononBathParams& p, const DephasingParams& d,
                           const QuadratureSpec& q = {});

// Immutable bundle of precomputed phonon functionals for one (bath, T).
// Pure value type; safe to share across threads.
class PhononContext {
public:
    PhononContext(PhononBathParams bath, DephasingParams dephasing = {},
                  QuadratureSpec quad = {}, double tau_p_epsilon = 1e-3);

    const PhononBathParams& bath() const { return bath_; }
    const DephasingParams& dephasing() const { return dephasing_; }
    const QuadratureSpec& quad() const { return quad_; }

    double c_inf() const { return c_inf_; }
    double shift() const { return shift_; }
    double tau_p() const { return tau_p_; }
    double gamma_pd() const { return gamma_pd_; }

    // Past plateau_tau() the Gaussian-cutoff envelope exp(-(wc tau/2)^2)
    // has pushed |phi| below double precision; correlation() returns the
    // C_inf plateau and propagator() returns 0 there, so tail-grid
    // evaluations never chase thousands of integrand oscillations.
    double plateau_tau() const { return plateau_tau_; }

    std::complex<double> propagator(double tau) const;
    std::complex<double> correlation(double tau) const;

private:
    PhononBathParams bath_;
    DephasingParams dephasing_;
    QuadratureSpec quad_;
    double phi0_;
    double c_inf_;
    double shift_;
    double tau_p_;
    double gamma_pd_;
    double plateau_tau_;
};

}  // namespace qemit
