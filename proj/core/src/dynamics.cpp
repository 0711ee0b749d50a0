#include "qemit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qemit/io.hpp"

namespace qemit {

std::string method_name(Method m) {
    switch (m) {
        case Method::Concatenation: return "concatenation";
        case Method::Polaron: return "polaron";
        case Method::Markovian: return "markovian";
        case Method::InitialSlip: return "initial-slip";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "concatenation") return Method::Concatenation;
    if (name == "polaron") return Method::Polaron;
    if (name == "markovian") return Method::Markovian;
    if (name == "initial-slip" || name == "initial_slip") return Method::InitialSlip;
    throw std::invalid_argument("unknown method '" + name + "'");
}

TimeGrid TimeGrid::two_scale(double fine_dt, double fine_end, double tail_end, int tail_points) {
    if (!(fine_dt > 0) || !(fine_end > 0))
        throw std::invalid_argument("TimeGrid: fine_dt and fine_end must be > 0");
    TimeGrid g;
    g.fine_dt = fine_dt;
    g.fine_end = fine_end;
    const auto n_fine = static_cast<std::size_t>(std::ceil(fine_end / fine_dt));
    g.times.reserve(n_fine + tail_points + 1);
    for (std::size_t i = 0; i <= n_fine; ++i) g.times.push_back(i * fine_dt);
    if (tail_end > g.times.back() && tail_points > 0) {
        const double t0 = g.times.back();
        const double ratio = std::pow(tail_end / t0, 1.0 / tail_points);
        double t = t0;
        for (int i = 1; i <= tail_points; ++i) {
            t *= ratio;
            // Keep the tail strictly coarser than the fine section so the
            // uniform window stays detectable.
            if (t >= g.times.back() + 1.5 * fine_dt) g.times.push_back(std::min(t, tail_end));
        }
        if (g.times.back() < tail_end) g.times.push_back(tail_end);
    }
    return g;
}

TimeGrid TimeGrid::for_trace(const PhononContext& ctx, const ModeSet& modes, double fine_dt) {
    const double fine_end = std::max(5.0 * ctx.tau_p(), 10.0);
    double gamma_min = std::numeric_limits<double>::max();
    for (const auto& m : modes.modes)
        gamma_min = std::min(gamma_min, std::min(m.big_gamma_l, m.digamma_l));
    if (!(gamma_min > 0)) gamma_min = 1e-6;
    return two_scale(fine_dt, fine_end, std::max(12.0 / gamma_min, 2.0 * fine_end));
}

std::string CorrelationTrace::to_csv() const {
    CsvWriter csv({"tau_ps", "re_g1", "im_g1", "abs_g1"});
    for (std::size_t i = 0; i < times.size(); ++i)
        csv.add_row({times[i], values[i].real(), values[i].imag(), std::abs(values[i])});
    return csv.text();
}

namespace {

// Shared trace kernel. weight_l and the per-mode (decay, frequency) pairs
// come from the method; K(tau) multiplies the mode sum.
CorrelationTrace make_trace(const TimeGrid& grid, Method method, const ModeSet& modes,
                            std::shared_ptr<const PhononContext> ctx, bool restore_sidebands) {
    const int n = static_cast<int>(modes.modes.size());
    if (n == 0) throw std::invalid_argument("g1: empty mode set");

    const bool polaron = method == Method::Polaron;
    // Diagonal-of-product congruence weights; reduce to gamma_l rho_ll for
    // diagonal mode density matrices.
    Eigen::VectorXcd w(n);
    const Eigen::MatrixXcd prod = modes.rho_modes * modes.gamma_modes.cast<std::complex<double>>();
    for (int l = 0; l < n; ++l) w(l) = prod(l, l);

    CorrelationTrace tr;
    tr.times = grid.times;
    tr.fine_dt = grid.fine_dt;
    tr.fine_end = grid.fine_end;
    tr.method = method;
    tr.sidebands_restored = polaron && restore_sidebands;
    tr.modes = modes;
    tr.phonon = ctx;
    tr.values.resize(tr.times.size());
    tr.phonon_factor.resize(tr.times.size());

    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double tau = tr.times[i];
        const std::complex<double> c = ctx->correlation(tau);
        tr.phonon_factor[i] = c;

        std::complex<double> k;
        switch (method) {
            case Method::Concatenation: k = c; break;
            case Method::Markovian: k = 1.0; break;
            case Method::InitialSlip: k = ctx->c_inf(); break;
            case Method::Polaron: k = restore_sidebands ? c : ctx->c_inf(); break;
        }

        std::complex<double> sum = 0.0;
        for (int l = 0; l < n; ++l) {
            const auto& m = modes.modes[l];
            const double decay = polaron ? m.digamma_l : m.big_gamma_l;
            const double freq = polaron ? modes.omega_l_polaron(l) : m.omega_l;
            sum += w(l) * std::exp(std::complex<double>(-decay * tau, -freq * tau));
        }
        tr.values[i] = k * sum;
    }
    return tr;
}

}  // namespace

CorrelationTrace g1_single(const TimeGrid& grid, Method method,
                           std::shared_ptr<const PhononContext> ctx, double gamma,
                           double rho_ee) {
    if (!(rho_ee >= 0 && rho_ee <= 1))
        throw std::invalid_argument("g1_single: rho_ee must be in [0, 1]");
    if (!(gamma > 0)) throw std::invalid_argument("g1_single: gamma must be > 0");

    ModeSet single;
    single.c_inf = ctx->c_inf();
    single.gamma_pd = ctx->gamma_pd();
    single.gamma = gamma;
    single.rho_modes = Eigen::MatrixXcd::Constant(1, 1, rho_ee);
    single.gamma_modes = Eigen::MatrixXd::Constant(1, 1, gamma);
    single.upsilon_modes = single.gamma_modes;
    CollectiveMode m;
    m.index = 1;
    m.gamma_l = gamma;
    m.upsilon_l = gamma;
    m.big_gamma_l = 0.5 * gamma + ctx->gamma_pd();
    m.digamma_l = m.big_gamma_l;
    m.rho_ll = rho_ee;
    single.modes.push_back(m);

    // For one emitter the polaron two-time correlation is exactly the
    // concatenation one (sidebands included).
    return make_trace(grid, method, single, std::move(ctx),
                      /*restore_sidebands=*/method == Method::Polaron);
}

CorrelationTrace g1_collective(const TimeGrid& grid, Method method, const ModeSet& modes,
                               std::shared_ptr<const PhononContext> ctx,
                               bool restore_sidebands) {
    return make_trace(grid, method, modes, std::move(ctx), restore_sidebands);
}

std::vector<double> integrated_intensity(const TimeGrid& grid, const ModeSet& modes,
                                         Method method) {
    if (modes.modes.empty()) throw std::invalid_argument("integrated_intensity: empty mode set");
    double norm = 0.0;
    for (const auto& m : modes.modes) norm += m.rho_ll;
    if (!(norm > 0))
        throw std::invalid_argument("integrated_intensity: initial SEM population is zero");
    std::vector<double> out;
    out.reserve(grid.times.size());
    for (double t : grid.times) {
        double v = 0.0;
        for (const auto& m : modes.modes) {
            const double rate = method == Method::Polaron ? m.upsilon_l : m.gamma_l;
            v += m.rho_ll * std::exp(-rate * t);
        }
        out.push_back(v / norm);
    }
    return out;
}

SemLayout SemLayout::chain(int n_emitters) {
    SemLayout l;
    l.ground = 0;
    l.sem.resize(n_emitters);
    for (int i = 0; i < n_emitters; ++i) l.sem[i] = i + 1;
    return l;
}

DensityMatrix nonmarkovian_state(const DensityMatrix& rho0, double tau,
                                 const PhononContext& ctx, const SemLayout& layout,
                                 bool magnitude_only) {
    if (tau < 0) throw std::domain_error("nonmarkovian_state: tau must be >= 0");
    const int dim = rho0.dim();
    const auto& rho = rho0.matrix();

    std::vector<bool> in_sem(dim, false);
    for (int s : layout.sem) {
        if (s < 0 || s >= dim) throw std::invalid_argument("nonmarkovian_state: bad SEM index");
        in_sem[s] = true;
    }
    constexpr double support_tol = 1e-12;
    for (int i = 0; i < dim; ++i) {
        const bool allowed_i = i == layout.ground || in_sem[i];
        for (int j = 0; j < dim; ++j) {
            const bool allowed_j = j == layout.ground || in_sem[j];
            if (!allowed_i || !allowed_j) {
                if (std::abs(rho(i, j)) > support_tol)
                    throw std::domain_error(
                        "nonmarkovian_state: support outside ground + single-excitation manifold");
            } else if ((i == layout.ground) != (j == layout.ground) && i != j) {
                if (std::abs(rho(i, j)) > support_tol)
                    throw std::domain_error(
                        "nonmarkovian_state: ground<->SEM coherences are outside the map's domain");
            }
        }
    }

    const std::complex<double> c = ctx.correlation(tau);
    const std::complex<double> c2 = magnitude_only ? std::norm(c) : c * c;
    Eigen::MatrixXcd out = rho;
    for (int i : layout.sem)
        for (int j : layout.sem) {
            if (i == j) continue;
            out(i, j) = i < j ? rho(i, j) * c2 : rho(i, j) * std::conj(c2);
        }
    return DensityMatrix(out);
}

}  // namespace qemit
