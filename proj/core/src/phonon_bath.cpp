#include "qemit/phonon_bath.hpp"

#include <cmath>

#include "qemit/units.hpp"

namespace qemit {

namespace {

// J(w)/w^2 with the w->0 limit taken analytically: alpha * w * exp(-w^2/wc^2).
double reduced_density(double w, const PhononBathParams& p) {
    return p.alpha * w * std::exp(-w * w / (p.omega_c * p.omega_c));
}

double omega_max(const PhononBathParams& p, const QuadratureSpec& q) {
    return q.omega_max_factor * p.omega_c;
}

}  // namespace

double spectral_density(double omega, const PhononBathParams& p) {
    p.validate();
    if (omega < 0) throw std::domain_error("spectral_density: omega must be >= 0");
    return p.alpha * omega * omega * omega * std::exp(-omega * omega / (p.omega_c * p.omega_c));
}

std::complex<double> phonon_propagator(double tau, const PhononBathParams& p,
                                       const QuadratureSpec& q) {
    p.validate();
    if (tau < 0) throw std::domain_error("phonon_propagator: tau must be >= 0");
    const double T = p.temperature;
    if (T == 0) {
        auto f = [&](double w) -> std::complex<double> {
            return reduced_density(w, p) *
                   std::complex<double>(std::cos(w * tau), -std::sin(w * tau));
        };
        return integrate(f, 0.0, omega_max(p, q), q);
    }
    const double beta = 1.0 / units::thermal_frequency(T);
    auto f = [&](double w) -> std::complex<double> {
        return reduced_density(w, p) * std::complex<double>(std::cos(w * tau) * coth(0.5 * beta * w),
                                                            -std::sin(w * tau));
    };
    return integrate(f, 0.0, omega_max(p, q), q);
}

double franck_condon(const PhononBathParams& p, const QuadratureSpec& q) {
    p.validate();
    if (p.alpha == 0) return 1.0;
    return std::exp(-phonon_propagator(0.0, p, q).real());
}

std::complex<double> phonon_correlation(double tau, const PhononBathParams& p,
                                        const QuadratureSpec& q) {
    const double phi0 = phonon_propagator(0.0, p, q).real();
    return std::exp(phonon_propagator(tau, p, q) - phi0);
}

double polaron_shift(const PhononBathParams& p, const QuadratureSpec& q) {
    p.validate();
    auto f = [&](double w) { return w * reduced_density(w, p); };
    return integrate(f, 0.0, omega_max(p, q), q);
}

double polaron_time(const PhononBathParams& p, const QuadratureSpec& q, double epsilon) {
    p.validate();
    if (!(epsilon > 0 && epsilon < 1))
        throw std::domain_error("polaron_time: epsilon must be in (0, 1)");
    if (p.alpha == 0) return 0.0;

    const double phi0 = phonon_propagator(0.0, p, q).real();
    auto deviation = [&](double tau) {
        const std::complex<double> phi = phonon_propagator(tau, p, q) - phi0;
        // |C(tau)/C_inf - 1| with the C(0)=1 normalization folded in
        return std::abs(std::exp(phi + phi0) - 1.0);
    };

    const double horizon = 100.0;
    const double coarse = 0.05;
    // Scan outward; the envelope decays like a Gaussian, so once the
    // deviation stays an order of magnitude below epsilon for 2 ps the
    // tail cannot resurge.
    double last_bad = 0.0;
    bool seen_bad = false;
    int quiet_run = 0;
    double t = 0.0;
    while (t <= horizon) {
        const double d = deviation(t);
        if (d >= epsilon) {
            last_bad = t;
            seen_bad = true;
            quiet_run = 0;
        } else if (d < 0.125 * epsilon) {
            if (++quiet_run >= 40) break;
        } else {
            quiet_run = 0;
        }
        t += coarse;
    }
    if (t > horizon)
        throw IntegrationError("polaron_time: no convergence within 100 ps horizon");
    if (!seen_bad) return 0.0;

    // Refine within the last coarse cell.
    double lo = last_bad, hi = last_bad + coarse;
    const double fine = coarse / 64.0;
    double refined = hi;
    for (double s = hi; s >= lo; s -= fine) {
        if (deviation(s) >= epsilon) break;
        refined = s;
    }
    return refined;
}

double pure_dephasing_rate(const PhononBathParams& p, const DephasingParams& d,
                           const QuadratureSpec& q) {
    p.validate();
    d.validate();
    const double T = p.temperature;
    if (T == 0 || d.mu == 0 || p.alpha == 0) return 0.0;
    const double beta = 1.0 / units::thermal_frequency(T);
    const double wc2 = p.omega_c * p.omega_c;
    auto f = [&](double w) {
        const double x = 0.5 * beta * w;
        if (x > 350.0) return 0.0;  // sinh overflow; occupation is zero there
        const double s = std::sinh(x);
        const double occ = 1.0 / (4.0 * s * s);  // n(n+1)
        return std::pow(w, 10) * std::exp(-2.0 * w * w / wc2) * occ;
    };
    const double integral = integrate(f, 0.0, omega_max(p, q), q);
    return p.alpha * p.alpha * d.mu / (wc2 * wc2) * integral;
}

PhononContext::PhononContext(PhononBathParams bath, DephasingParams dephasing,
                             QuadratureSpec quad, double tau_p_epsilon)
    : bath_(bath), dephasing_(dephasing), quad_(quad) {
    bath_.validate();
    dephasing_.validate();
    quad_.validate();
    phi0_ = phonon_propagator(0.0, bath_, quad_).real();
    c_inf_ = std::exp(-phi0_);
    shift_ = ::qemit::polaron_shift(bath_, quad_);
    tau_p_ = ::qemit::polaron_time(bath_, quad_, tau_p_epsilon);
    gamma_pd_ = ::qemit::pure_dephasing_rate(bath_, dephasing_, quad_);
    // exp(-(wc tau/2)^2) < 1e-27 at tau = 16/wc; phi is numerically zero.
    plateau_tau_ = std::max(2.0 * tau_p_, 16.0 / bath_.omega_c);
}

std::complex<double> PhononContext::propagator(double tau) const {
    if (tau >= plateau_tau_) return 0.0;
    return phonon_propagator(tau, bath_, quad_);
}

std::complex<double> PhononContext::correlation(double tau) const {
    if (tau >= plateau_tau_) return c_inf_;
    return std::exp(phonon_propagator(tau, bath_, quad_) - phi0_);
}

}  // namespace qemit
