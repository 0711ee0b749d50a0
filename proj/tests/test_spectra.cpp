#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qemit/spectra.hpp"
#include "qemit/units.hpp"
#include "support/fixtures.hpp"

using namespace qemit;
using qemit::test::gaas_chain;
using qemit::test::gaas_ctx;

namespace {

ModeSet make_modes(int n, double frac, const PhononContext& ctx, const std::string& state) {
    auto chain = gaas_chain(n, frac);
    const auto mats = build_matrices(chain, ctx.c_inf(), ctx.shift());
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n);
    if (state == "e1") amps(0) = 1.0;
    else { amps(0) = 1.0 / std::sqrt(2.0); amps(1) = (state == "plus" ? 1.0 : -1.0) * amps(0); }
    return mode_spectrum(chain, mats, ctx.gamma_pd(), amps * amps.adjoint());
}

CorrelationTrace make_trace(const ModeSet& modes, std::shared_ptr<const PhononContext> ctx,
                            Method method, bool restore = false) {
    const auto grid = TimeGrid::for_trace(*ctx, modes);
    return g1_collective(grid, method, modes, std::move(ctx), restore);
}

}  // namespace

TEST_CASE("ZPL spectrum is the diagonal Lorentzian sum") {
    const auto ctx = gaas_ctx(4.0);

    SUBCASE("single emitter: one Lorentzian of weight C_inf gamma rho_ee") {
        auto chain = gaas_chain(1, 25.0);
        const auto mats = build_matrices(chain, ctx->c_inf(), ctx->shift());
        const auto modes =
            mode_spectrum(chain, mats, ctx->gamma_pd(), Eigen::MatrixXcd::Constant(1, 1, 1.0));
        const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
        const auto s = zpl_spectrum(modes, Method::Concatenation, grid);

        const double big_gamma = modes.modes[0].big_gamma_l;
        // Peak height and integral against the closed form.
        const auto it = std::min_element(
            s.freq.begin(), s.freq.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        const double peak = s.zpl[std::distance(s.freq.begin(), it)];
        CHECK(peak == doctest::Approx(ctx->c_inf() * chain.gamma / big_gamma).epsilon(1e-6));
        CHECK(integrate_spectrum(s.freq, s.zpl) ==
              doctest::Approx(M_PI * ctx->c_inf() * chain.gamma).epsilon(5e-3));
    }

    SUBCASE("two peaks split by 2 w_col vs 2 W_col") {
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
        const auto cs = zpl_spectrum(modes, Method::Concatenation, grid);
        const auto pm = zpl_spectrum(modes, Method::Polaron,
                                     FrequencyGrid::for_modes(modes, Method::Polaron));

        CHECK(modes.modes[0].omega_l - modes.modes[1].omega_l ==
              doctest::Approx(2.0 * modes.omega_col).epsilon(1e-14));
        CHECK(modes.omega_l_polaron(0) - modes.omega_l_polaron(1) ==
              doctest::Approx(2.0 * modes.omega_col_polaron).epsilon(1e-14));

        // Integral identity: pi C_inf sum gamma_l rho_ll.
        double weight = 0.0;
        for (const auto& m : modes.modes) weight += m.gamma_l * m.rho_ll;
        CHECK(integrate_spectrum(cs.freq, cs.zpl) ==
              doctest::Approx(M_PI * modes.c_inf * weight).epsilon(5e-3));
        CHECK(integrate_spectrum(pm.freq, pm.zpl) ==
              doctest::Approx(M_PI * modes.c_inf * weight).epsilon(5e-3));
    }

    SUBCASE("superradiant peak sits at higher energy when w_col > 0") {
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        REQUIRE(modes.omega_col > 0);
        // Mode 1 (largest gamma_l) carries the positive frequency offset.
        CHECK(modes.modes[0].gamma_l > modes.modes[1].gamma_l);
        CHECK(modes.modes[0].omega_l > 0);
    }
}

TEST_CASE("full spectrum decomposition") {
    SUBCASE("alpha = 0: total equals the C_inf = 1 ZPL spectrum, zero sideband") {
        PhononBathParams bare{0.0, 1.49, 4.0};
        auto ctx = std::make_shared<PhononContext>(bare, DephasingParams{0.019});
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
        const auto full = full_spectrum(make_trace(modes, ctx, Method::Concatenation), grid);
        const auto zpl = zpl_spectrum(modes, Method::Concatenation, grid);
        for (std::size_t i = 0; i < grid.points.size(); ++i) {
            CHECK(std::abs(full.sideband[i]) < 1e-15);
            CHECK(full.total[i] ==
                  doctest::Approx(zpl.total[i]).epsilon(1e-6));
        }
    }

    SUBCASE("markovian spectrum has identically zero sideband") {
        const auto ctx = gaas_ctx(25.0);
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        const auto grid = FrequencyGrid::for_modes(modes, Method::Markovian);
        const auto s = full_spectrum(make_trace(modes, ctx, Method::Markovian), grid);
        for (double v : s.sideband) CHECK(v == 0.0);
    }

    SUBCASE("Parseval: integral of S over pi equals g1(0)") {
        const auto ctx = gaas_ctx(4.0);
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        const auto trace = make_trace(modes, ctx, Method::Concatenation);
        const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
        const auto s = full_spectrum(trace, grid);
        const double total = integrate_spectrum(s.freq, s.total);
        CHECK(total / M_PI ==
              doctest::Approx(trace.values[0].real()).epsilon(1e-3));
    }

    SUBCASE("sideband asymmetry melts away with temperature") {
        const auto cold_ctx = gaas_ctx(4.0);
        const auto cold_modes = make_modes(2, 25.0, *cold_ctx, "e1");
        const auto cold = full_spectrum(make_trace(cold_modes, cold_ctx, Method::Concatenation),
                                        FrequencyGrid::for_modes(cold_modes, Method::Concatenation));
        const auto cold_split = sideband_split(cold);
        CHECK(std::abs(cold_split.blue / cold_split.red - 1.0) > 0.5);

        const auto hot_ctx = gaas_ctx(100.0);
        const auto hot_modes = make_modes(2, 25.0, *hot_ctx, "e1");
        const auto hot = full_spectrum(make_trace(hot_modes, hot_ctx, Method::Concatenation),
                                       FrequencyGrid::for_modes(hot_modes, Method::Concatenation));
        const auto hot_split = sideband_split(hot);
        CHECK(std::abs(hot_split.blue / hot_split.red - 1.0) < 0.2);
    }
}

TEST_CASE("zpl fraction tracks the Franck-Condon factor") {
    SUBCASE("alpha = 0 gives exactly 1") {
        PhononBathParams bare{0.0, 1.49, 4.0};
        auto ctx = std::make_shared<PhononContext>(bare, DephasingParams{0.0});
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
        const auto s = full_spectrum(make_trace(modes, ctx, Method::Concatenation), grid);
        CHECK(zpl_fraction(s, modes, Method::Concatenation) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("monotone decrease over temperature, pinned at T=0") {
        double prev = 1.0;
        for (double T : {0.0, 1.0, 4.0, 25.0, 50.0}) {
            const auto ctx = gaas_ctx(T);
            const auto modes = make_modes(2, 25.0, *ctx, "e1");
            const auto grid = FrequencyGrid::for_modes(modes, Method::Concatenation);
            const auto s = full_spectrum(make_trace(modes, ctx, Method::Concatenation), grid);
            const double frac = zpl_fraction(s, modes, Method::Concatenation);
            CHECK(frac == doctest::Approx(ctx->c_inf()).epsilon(0.02));
            if (T == 0.0) CHECK(frac == doctest::Approx(0.9726).epsilon(2e-3));
            CHECK(frac < prev);
            prev = frac;
        }
    }

    SUBCASE("truncated support is rejected") {
        const auto ctx = gaas_ctx(4.0);
        const auto modes = make_modes(2, 25.0, *ctx, "e1");
        FrequencyGrid narrow;
        for (double f = -1e-4; f <= 1e-4; f += 1e-6) narrow.points.push_back(f);
        const auto s = zpl_spectrum(modes, Method::Concatenation, narrow);
        CHECK_THROWS_AS(zpl_fraction(s, modes, Method::Concatenation), std::invalid_argument);

        // A grid that resolves the peaks but chops the sideband wings.
        FrequencyGrid::Options chopped;
        chopped.sideband_span_uev = 300.0;
        const auto small_grid = FrequencyGrid::for_modes(modes, Method::Concatenation, chopped);
        const auto full = full_spectrum(make_trace(modes, ctx, Method::Concatenation), small_grid);
        CHECK_THROWS_AS(zpl_fraction(full, modes, Method::Concatenation), std::invalid_argument);
    }

    SUBCASE("under-resolved traces and grids are rejected") {
        const auto ctx = gaas_ctx(4.0);
        const auto modes = make_modes(2, 25.0, *ctx, "e1");

        // Frequency beyond the fine grid's Nyquist-like bound.
        FrequencyGrid wild;
        wild.points = {-60.0, 0.0, 60.0};  // rad/ps
        CHECK_THROWS_AS(full_spectrum(make_trace(modes, ctx, Method::Concatenation), wild),
                        std::invalid_argument);

        // Fine window shorter than 5 tau_P.
        const auto short_grid = TimeGrid::two_scale(0.02, 2.0, 100.0, 50);
        const auto short_trace =
            g1_collective(short_grid, Method::Concatenation, modes, ctx);
        CHECK_THROWS_AS(
            full_spectrum(short_trace, FrequencyGrid::for_modes(modes, Method::Concatenation)),
            std::invalid_argument);
    }
}

TEST_CASE("delta metric") {
    auto chain = gaas_chain(2, 25.0);

    SUBCASE("closed-form cross-check at several temperatures") {
        for (double T : {1.0, 25.0, 50.0, 150.0, 300.0}) {
            const auto ctx = gaas_ctx(T);
            const auto cmp = delta_metric(chain, *ctx);
            const auto mats = build_matrices(chain, ctx->c_inf(), ctx->shift());
            const double closed = 200.0 * mats.omega_col * (1.0 - ctx->c_inf()) /
                                  (chain.gamma + 2.0 * ctx->gamma_pd() + 2.0 * mats.omega_col);
            CHECK(cmp.delta_percent == doctest::Approx(closed).epsilon(1e-8));
            CHECK(cmp.delta_percent >= 0.0);
        }
    }

    SUBCASE("zero coupling removes the method difference entirely") {
        PhononBathParams bare{0.0, 1.49, 25.0};
        PhononContext ctx(bare, DephasingParams{0.019});
        CHECK(delta_metric(chain, ctx).delta_percent == doctest::Approx(0.0));
    }

    SUBCASE("interior maximum in T and ordering in spacing") {
        std::vector<double> temps{1, 10, 25, 50, 100, 200, 300};
        std::vector<double> deltas;
        for (double T : temps) deltas.push_back(delta_metric(chain, *gaas_ctx(T)).delta_percent);
        const auto imax = std::distance(deltas.begin(),
                                        std::max_element(deltas.begin(), deltas.end()));
        CHECK(imax > 0);
        CHECK(imax + 1 < static_cast<long>(deltas.size()));

        const double t_star = temps[imax];
        const double d25 = delta_metric(gaas_chain(2, 25.0), *gaas_ctx(t_star)).delta_percent;
        const double d20 = delta_metric(gaas_chain(2, 20.0), *gaas_ctx(t_star)).delta_percent;
        const double d15 = delta_metric(gaas_chain(2, 15.0), *gaas_ctx(t_star)).delta_percent;
        CHECK(d25 > d20);
        CHECK(d20 > d15);
    }

    SUBCASE("requires N = 2") {
        CHECK_THROWS_AS(delta_metric(gaas_chain(3, 25.0), *gaas_ctx(4.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("enhancement ratio") {
    SUBCASE("two emitters at 1 K approach the reference 13.1 within tolerance") {
        const auto modes = make_modes(2, 25.0, *gaas_ctx(1.0), "e1");
        const double ratio = enhancement_ratio(modes);
        CHECK(ratio == doctest::Approx(13.1).epsilon(0.15));
        CHECK(ratio == doctest::Approx(12.47).epsilon(0.01));
    }

    SUBCASE("dephasing washes collectivity out at high temperature") {
        const auto modes = make_modes(2, 25.0, *gaas_ctx(300.0), "e1");
        CHECK(enhancement_ratio(modes) < 1.5);
        CHECK(enhancement_ratio(modes) > 1.0);
    }

    SUBCASE("N=8 at 25 K reproduces the reference 6.85 with the default mu") {
        const auto modes = make_modes(8, 25.0, *gaas_ctx(25.0), "e1");
        CHECK(enhancement_ratio(modes) == doctest::Approx(6.85).epsilon(0.02));
    }
}

TEST_CASE("spectrum CSV export uses the ueV axis") {
    const auto ctx = gaas_ctx(4.0);
    const auto modes = make_modes(2, 25.0, *ctx, "e1");
    FrequencyGrid tiny;
    tiny.points = {-units::uev_to_angular(10.0), 0.0, units::uev_to_angular(10.0)};
    const auto s = zpl_spectrum(modes, Method::Concatenation, tiny);
    const auto csv = s.to_csv();
    CHECK(csv.rfind("detuning_ueV,total,zpl,sideband\n", 0) == 0);
    CHECK(csv.find("-10,") != std::string::npos);
}
