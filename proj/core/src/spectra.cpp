#include "qemit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qemit/io.hpp"
#include "qemit/units.hpp"

namespace qemit {

namespace {

struct Channel {
    std::complex<double> weight;  // trace weight (complex for cross-mode terms)
    double center;                // rad/ps detuning
    double width;                 // rad/ps
};

// Per-method Lorentzian channels with diagonal weights.
std::vector<Channel> diagonal_channels(const ModeSet& modes, Method method) {
    std::vector<Channel> ch;
    ch.reserve(modes.modes.size());
    for (std::size_t l = 0; l < modes.modes.size(); ++l) {
        const auto& m = modes.modes[l];
        Channel c;
        c.weight = m.gamma_l * m.rho_ll;
        if (method == Method::Polaron) {
            c.center = modes.omega_l_polaron(static_cast<int>(l));
            c.width = m.digamma_l;
        } else {
            c.center = m.omega_l;
            c.width = m.big_gamma_l;
        }
        ch.push_back(c);
    }
    return ch;
}

// Channels matching the time-domain trace kernel (cross-mode congruence
// weights retained).
std::vector<Channel> trace_channels(const ModeSet& modes, Method method) {
    const int n = static_cast<int>(modes.modes.size());
    const Eigen::MatrixXcd prod =
        modes.rho_modes * modes.gamma_modes.cast<std::complex<double>>();
    std::vector<Channel> ch;
    ch.reserve(n);
    for (int l = 0; l < n; ++l) {
        Channel c;
        c.weight = prod(l, l);
        if (method == Method::Polaron) {
            c.center = modes.omega_l_polaron(l);
            c.width = modes.modes[l].digamma_l;
        } else {
            c.center = modes.modes[l].omega_l;
            c.width = modes.modes[l].big_gamma_l;
        }
        ch.push_back(c);
    }
    return ch;
}

// Re integral_0^inf w e^{(i(d - c) - G) tau} dtau for complex weight w.
double lorentzian_part(const Channel& ch, double detuning) {
    const double d = detuning - ch.center;
    const double denom = ch.width * ch.width + d * d;
    return (ch.weight.real() * ch.width - ch.weight.imag() * d) / denom;
}

double method_prefactor(Method method, double c_inf) {
    switch (method) {
        case Method::Markovian: return 1.0;
        default: return c_inf;
    }
}

}  // namespace

std::string Spectrum::to_csv() const {
    CsvWriter csv({"detuning_ueV", "total", "zpl", "sideband"});
    for (std::size_t i = 0; i < freq.size(); ++i)
        csv.add_row({units::angular_to_uev(freq[i]), total[i],
                     decomposed ? zpl[i] : total[i], decomposed ? sideband[i] : 0.0});
    return csv.text();
}

FrequencyGrid FrequencyGrid::for_modes(const ModeSet& modes, Method method) {
    return for_modes(modes, method, Options{});
}

FrequencyGrid FrequencyGrid::for_modes(const ModeSet& modes, Method method, Options opt) {
    std::vector<double> pts;
    const double span = units::uev_to_angular(opt.sideband_span_uev);
    const double sb_step = units::uev_to_angular(opt.sideband_step_uev);
    for (double w = -span; w <= span + 0.5 * sb_step; w += sb_step) pts.push_back(w);

    const double zwin = units::uev_to_angular(opt.zpl_window_uev);
    const double zstep = units::uev_to_angular(opt.zpl_step_uev);
    for (double w = -zwin; w <= zwin + 0.5 * zstep; w += zstep) pts.push_back(w);

    for (const auto& ch : diagonal_channels(modes, method)) {
        if (!(ch.width > 0)) continue;
        const double reach = std::atan(opt.peak_widths);
        for (int i = 0; i < opt.peak_points; ++i) {
            const double th = -reach + 2.0 * reach * i / (opt.peak_points - 1);
            pts.push_back(ch.center + ch.width * std::tan(th));
        }
    }

    std::sort(pts.begin(), pts.end());
    FrequencyGrid g;
    g.points.reserve(pts.size());
    const double merge_eps = 1e-9;
    for (double p : pts)
        if (g.points.empty() || p - g.points.back() > merge_eps) g.points.push_back(p);
    return g;
}

Spectrum zpl_spectrum(const ModeSet& modes, Method method, const FrequencyGrid& grid) {
    if (modes.modes.empty()) throw std::invalid_argument("zpl_spectrum: empty mode set");
    const auto channels = diagonal_channels(modes, method);
    const double pref = method_prefactor(method, modes.c_inf);

    Spectrum s;
    s.freq = grid.points;
    s.zpl.resize(s.freq.size());
    s.sideband.assign(s.freq.size(), 0.0);
    s.total.resize(s.freq.size());
    s.decomposed = true;
    for (std::size_t i = 0; i < s.freq.size(); ++i) {
        double v = 0.0;
        for (const auto& ch : channels) v += lorentzian_part(ch, s.freq[i]);
        s.zpl[i] = pref * v;
        s.total[i] = s.zpl[i];
    }
    return s;
}

Spectrum full_spectrum(const CorrelationTrace& trace, const FrequencyGrid& grid) {
    if (!trace.phonon) throw std::invalid_argument("full_spectrum: trace has no phonon context");
    const auto& modes = trace.modes;
    if (modes.modes.empty()) throw std::invalid_argument("full_spectrum: trace has no modes");
    const double c_inf = trace.phonon->c_inf();
    const Method method = trace.method;

    const auto channels = trace_channels(modes, method);
    const double pref = method_prefactor(method, c_inf);

    Spectrum s;
    s.freq = grid.points;
    s.zpl.resize(s.freq.size());
    s.sideband.assign(s.freq.size(), 0.0);
    s.total.resize(s.freq.size());
    s.decomposed = true;

    for (std::size_t i = 0; i < s.freq.size(); ++i) {
        double v = 0.0;
        for (const auto& ch : channels) v += lorentzian_part(ch, s.freq[i]);
        s.zpl[i] = pref * v;
    }

    // Sideband part only for methods whose kernel carries C(tau); the
    // markovian and initial-slip kernels are sideband-free, as is the
    // plain suppressed polaron form.
    const bool has_sidebands =
        method == Method::Concatenation || (method == Method::Polaron && trace.sidebands_restored);
    if (has_sidebands) {
        // Fine uniform window of the trace.
        std::size_t n_fine = 0;
        while (n_fine + 1 < trace.times.size() &&
               trace.times[n_fine + 1] - trace.times[n_fine] <= trace.fine_dt * (1 + 1e-9))
            ++n_fine;
        ++n_fine;  // count of samples in the uniform section
        if (trace.fine_end < 5.0 * trace.phonon->tau_p() - 1e-9)
            throw std::invalid_argument(
                "full_spectrum: trace fine window shorter than 5 tau_P truncates the sidebands");
        const double tau_window = std::min(trace.fine_end, 10.0 * trace.phonon->tau_p());
        double w_max = 0.0;
        for (double f : grid.points) w_max = std::max(w_max, std::abs(f));
        double c_max = 0.0;
        for (const auto& ch : channels) c_max = std::max(c_max, std::abs(ch.center));
        if (trace.fine_dt * (w_max + c_max) > 1.0)
            throw std::invalid_argument(
                "full_spectrum: fine grid too coarse for the requested frequency range");

        std::size_t n_used = n_fine;
        while (n_used > 1 && trace.times[n_used - 1] > tau_window + 1e-9) --n_used;

        // Trapezoid transform of (C(tau) - C_inf) x mode kernel.
        std::vector<std::complex<double>> sb_factor(n_used);
        for (std::size_t k = 0; k < n_used; ++k)
            sb_factor[k] = trace.phonon_factor[k] - c_inf;

        const double dt = trace.fine_dt;
        for (std::size_t i = 0; i < s.freq.size(); ++i) {
            const double d = s.freq[i];
            std::complex<double> acc = 0.0;
            for (const auto& ch : channels) {
                // w * exp(((d - c) i - G) tau_k) by rotation recurrence.
                const std::complex<double> unit =
                    std::exp(std::complex<double>(-ch.width * dt, (d - ch.center) * dt));
                std::complex<double> z = ch.weight;
                std::complex<double> sum = 0.0;
                for (std::size_t k = 0; k < n_used; ++k) {
                    const std::complex<double> term = sb_factor[k] * z;
                    sum += (k == 0 || k == n_used - 1) ? 0.5 * term : term;
                    z *= unit;
                }
                acc += sum;
            }
            s.sideband[i] = (acc * dt).real();
        }
    }

    for (std::size_t i = 0; i < s.freq.size(); ++i) s.total[i] = s.zpl[i] + s.sideband[i];
    return s;
}

MethodComparison delta_metric(const EmitterChain& chain, const PhononContext& ctx) {
    if (chain.n_emitters != 2) throw std::invalid_argument("delta_metric: N must be 2");
    const auto mats = build_matrices(chain, ctx.c_inf(), ctx.shift());
    const Eigen::MatrixXcd rho_sem = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
    const auto modes = mode_spectrum(chain, mats, ctx.gamma_pd(), rho_sem);

    MethodComparison cmp;
    cmp.cs = modes.modes[0].big_gamma_l + modes.modes[1].big_gamma_l + 2.0 * mats.omega_col;
    cmp.pm = modes.modes[0].digamma_l + modes.modes[1].digamma_l + 2.0 * mats.omega_col_polaron;
    cmp.delta_percent = 100.0 * (cmp.cs - cmp.pm) / cmp.cs;
    return cmp;
}

double enhancement_ratio(const ModeSet& modes, Method method) {
    if (modes.modes.size() < 2)
        throw std::invalid_argument("enhancement_ratio: need at least 2 modes");
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (const auto& m : modes.modes) {
        const double w = method == Method::Polaron ? m.digamma_l : m.big_gamma_l;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    if (!(lo > 0)) throw std::runtime_error("enhancement_ratio: zero minimal width");
    return hi / lo;
}

double integrate_spectrum(const std::vector<double>& freq, const std::vector<double>& values) {
    if (freq.size() != values.size() || freq.size() < 2)
        throw std::invalid_argument("integrate_spectrum: bad grid");
    double acc = 0.0;
    for (std::size_t i = 1; i < freq.size(); ++i)
        acc += 0.5 * (values[i] + values[i - 1]) * (freq[i] - freq[i - 1]);
    return acc;
}

double zpl_fraction(const Spectrum& spectrum, const ModeSet& modes, Method method) {
    if (!spectrum.decomposed) throw std::invalid_argument("zpl_fraction: need decomposed spectrum");
    const double lo = spectrum.freq.front(), hi = spectrum.freq.back();
    for (const auto& ch : diagonal_channels(modes, method)) {
        if (!(ch.width > 0)) continue;
        if (ch.center - 6.0 * ch.width < lo || ch.center + 6.0 * ch.width > hi)
            throw std::invalid_argument("zpl_fraction: grid truncates a ZPL peak (< 6 widths)");
    }
    double sb_peak = 0.0;
    for (double v : spectrum.sideband) sb_peak = std::max(sb_peak, std::abs(v));
    if (sb_peak > 0.0) {
        // Genuine truncation leaves O(0.1) edge/peak ratios; far-edge
        // transform noise stays below ~2e-4 of the peak.
        const double edge =
            std::max(std::abs(spectrum.sideband.front()), std::abs(spectrum.sideband.back()));
        if (edge > 1e-3 * sb_peak)
            throw std::invalid_argument("zpl_fraction: grid truncates the sideband support");
    }
    const double zpl = integrate_spectrum(spectrum.freq, spectrum.zpl);
    const double total = integrate_spectrum(spectrum.freq, spectrum.total);
    if (!(total > 0)) throw std::runtime_error("zpl_fraction: nonpositive total integral");
    return zpl / total;
}

SidebandSplit sideband_split(const Spectrum& spectrum) {
    if (!spectrum.decomposed) throw std::invalid_argument("sideband_split: need decomposition");
    SidebandSplit out;
    for (std::size_t i = 1; i < spectrum.freq.size(); ++i) {
        const double seg =
            0.5 * (spectrum.sideband[i] + spectrum.sideband[i - 1]) *
            (spectrum.freq[i] - spectrum.freq[i - 1]);
        const double mid = 0.5 * (spectrum.freq[i] + spectrum.freq[i - 1]);
        (mid > 0 ? out.blue : out.red) += seg;
    }
    return out;
}

}  // namespace qemit
