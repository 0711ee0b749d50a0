#include <cmath>
#include <complex>

#include "doctest.h"
#include "qemit/dynamics.hpp"
#include "qemit/exp_fit.hpp"
#include "qemit/units.hpp"
#include "support/fixtures.hpp"

using namespace qemit;
using qemit::test::gaas_chain;
using qemit::test::gaas_ctx;

namespace {

ModeSet gaas_modes(int n, double frac, const PhononContext& ctx, const std::string& state) {
    auto chain = gaas_chain(n, frac);
    const auto mats = build_matrices(chain, ctx.c_inf(), ctx.shift());
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(n);
    if (state == "e1") amps(0) = 1.0;
    else if (state == "plus") { amps(0) = amps(1) = 1.0 / std::sqrt(2.0); }
    else if (state == "minus") { amps(0) = 1.0 / std::sqrt(2.0); amps(1) = -amps(0); }
    return mode_spectrum(chain, mats, ctx.gamma_pd(), amps * amps.adjoint());
}

}  // namespace

TEST_CASE("two-scale grid structure") {
    const auto g = TimeGrid::two_scale(0.02, 10.0, 1000.0, 100);
    CHECK(g.times.front() == 0.0);
    CHECK(g.times.back() == doctest::Approx(1000.0));
    for (std::size_t i = 1; i < g.times.size(); ++i) CHECK(g.times[i] > g.times[i - 1]);
    // Fine section is uniform at 0.02.
    for (std::size_t i = 1; i <= 500; ++i)
        CHECK(g.times[i] - g.times[i - 1] == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("single-emitter g1 values at the origin") {
    const auto ctx = gaas_ctx(4.0);
    const auto grid = TimeGrid::two_scale(0.02, 10.0, 100.0, 50);
    const double gamma = 8.5e-4, rho_ee = 0.7;

    for (auto m : {Method::Concatenation, Method::Polaron, Method::Markovian}) {
        const auto tr = g1_single(grid, m, ctx, gamma, rho_ee);
        CHECK(std::abs(tr.values[0] - gamma * rho_ee) < 1e-12);
    }
    const auto slip = g1_single(grid, Method::InitialSlip, ctx, gamma, rho_ee);
    CHECK(std::abs(slip.values[0] - ctx->c_inf() * gamma * rho_ee) < 1e-12);
}

TEST_CASE("uncoupled zero-temperature trace is a pure damped exponential") {
    PhononBathParams bare{0.0, 1.49, 0.0};
    auto ctx = std::make_shared<PhononContext>(bare, DephasingParams{0.0});
    const double gamma = 8.5e-4;
    const double big_gamma = 0.5 * gamma;  // gamma_pd = 0
    const double t_probe = 1.0 / big_gamma;

    TimeGrid grid;
    grid.times = {0.0, t_probe};
    grid.fine_dt = t_probe;
    grid.fine_end = t_probe;
    const auto tr = g1_single(grid, Method::Concatenation, ctx, gamma, 1.0);
    CHECK(std::abs(tr.values[1]) / std::abs(tr.values[0]) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("concatenation kink: fast drop to the C_inf plateau, then slow tail") {
    const auto ctx = gaas_ctx(4.0);
    const auto grid = TimeGrid::two_scale(0.02, 20.0, 2000.0, 200);
    const auto tr = g1_single(grid, Method::Concatenation, ctx, 8.5e-4, 1.0);
    const double big_gamma = 0.5 * 8.5e-4 + ctx->gamma_pd();

    auto value_at = [&](double t) {
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            if (std::abs(tr.times[i] - t) < 1e-9) return std::abs(tr.values[i]);
        REQUIRE(false);
        return 0.0;
    };
    // Plateau: by 3 ps the phonon factor has settled onto C_inf.
    const double at3 = value_at(3.0) / (8.5e-4 * std::exp(-big_gamma * 3.0));
    CHECK(at3 == doctest::Approx(ctx->c_inf()).epsilon(2e-3));
    // The drop happens inside the first 3 ps, not on the tail.
    CHECK(value_at(3.0) / value_at(0.0) < ctx->c_inf() * 1.01);
    const double tail_ratio = value_at(10.0) / value_at(5.0);
    CHECK(tail_ratio == doctest::Approx(std::exp(-5.0 * big_gamma)).epsilon(1e-3));
}

TEST_CASE("single-emitter equivalence of concatenation and polaron") {
    const auto grid = TimeGrid::two_scale(0.02, 10.0, 5000.0, 200);
    for (double T : {1.0, 4.0, 25.0, 50.0, 100.0}) {
        const auto ctx = gaas_ctx(T);
        const auto a = g1_single(grid, Method::Concatenation, ctx, 8.5e-4, 1.0);
        const auto b = g1_single(grid, Method::Polaron, ctx, 8.5e-4, 1.0);
        double dev = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            dev = std::max(dev, std::abs(a.values[i] - b.values[i]));
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("collective trace degeneracies") {
    SUBCASE("zero coupling makes concatenation and polaron identical") {
        PhononBathParams bare{0.0, 1.49, 4.0};
        auto ctx = std::make_shared<PhononContext>(bare, DephasingParams{0.019});
        const auto modes = gaas_modes(2, 25.0, *ctx, "e1");
        const auto grid = TimeGrid::two_scale(0.02, 10.0, 3000.0, 100);
        const auto a = g1_collective(grid, Method::Concatenation, modes, ctx);
        const auto b = g1_collective(grid, Method::Polaron, modes, ctx);
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(std::abs(a.values[i] - b.values[i]) < 1e-12);
    }

    SUBCASE("N=1 reduces exactly to the single-emitter trace") {
        const auto ctx = gaas_ctx(25.0);
        auto chain = gaas_chain(1, 25.0);
        const auto mats = build_matrices(*&chain, ctx->c_inf(), ctx->shift());
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Constant(1, 1, 1.0);
        const auto modes = mode_spectrum(chain, mats, ctx->gamma_pd(), rho);
        const auto grid = TimeGrid::two_scale(0.02, 10.0, 2000.0, 100);

        const auto collective =
            g1_collective(grid, Method::Concatenation, modes, ctx);
        const auto single = g1_single(grid, Method::Concatenation, ctx, chain.gamma, 1.0);
        for (std::size_t i = 0; i < grid.times.size(); ++i)
            CHECK(std::abs(collective.values[i] - single.values[i]) < 1e-15);

        // Polaron: the collective kernel is sideband-suppressed; the
        // restore option recovers the exact single-emitter correlation.
        const auto polaron_restored =
            g1_collective(grid, Method::Polaron, modes, ctx, /*restore_sidebands=*/true);
        const auto polaron_single = g1_single(grid, Method::Polaron, ctx, chain.gamma, 1.0);
        for (std::size_t i = 0; i < grid.times.size(); ++i)
            CHECK(std::abs(polaron_restored.values[i] - polaron_single.values[i]) < 1e-15);
    }

    SUBCASE("localized initial state splits evenly over the two-emitter channels") {
        const auto ctx = gaas_ctx(4.0);
        const auto modes = gaas_modes(2, 25.0, *ctx, "e1");
        CHECK(modes.modes[0].rho_ll == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(modes.modes[1].rho_ll == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("integrated intensity is bi-exponential with the reference rates") {
    const auto ctx = gaas_ctx(4.0);
    TimeGrid grid;
    for (double t = 0; t <= 4000.0; t += 10.0) grid.times.push_back(t);

    SUBCASE("lambda/25") {
        const auto modes = gaas_modes(2, 25.0, *ctx, "e1");
        const auto intensity = integrated_intensity(grid, modes);
        CHECK(intensity[0] == doctest::Approx(1.0).epsilon(1e-15));
        const auto fit = fit_biexponential(grid.times, intensity);
        CHECK(fit.max_residual < 1e-6);
        // Reference rates 1.58 GHz and 0.12 GHz, +-15%.
        CHECK(units::rate_to_ghz(fit.rate_fast) == doctest::Approx(1.58).epsilon(0.15));
        CHECK(units::rate_to_ghz(fit.rate_slow) == doctest::Approx(0.12).epsilon(0.15));
        CHECK(fit.amp_fast == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(fit.amp_slow == doctest::Approx(0.5).epsilon(1e-6));
    }

    SUBCASE("lambda/15") {
        const auto modes = gaas_modes(2, 15.0, *ctx, "e1");
        const auto fit = fit_biexponential(grid.times, integrated_intensity(grid, modes));
        CHECK(fit.max_residual < 1e-6);
        CHECK(units::rate_to_ghz(fit.rate_fast) == doctest::Approx(1.38).epsilon(0.15));
        CHECK(units::rate_to_ghz(fit.rate_slow) == doctest::Approx(0.31).epsilon(0.15));
    }

    SUBCASE("symmetric initial state decays single-exponentially") {
        const auto modes = gaas_modes(2, 25.0, *ctx, "plus");
        const auto fit = fit_biexponential(grid.times, integrated_intensity(grid, modes));
        CHECK(fit.max_residual < 1e-9);
        CHECK(fit.amp_slow == doctest::Approx(0.0));
        CHECK(fit.rate_fast ==
              doctest::Approx(modes.modes[0].gamma_l).epsilon(1e-9));
    }
}

TEST_CASE("non-markovian state map") {
    const auto ctx = gaas_ctx(25.0);
    const auto layout = SemLayout::two_qubit();
    const auto rho0 = DensityMatrix::pure(two_qubit_state("plus"));

    SUBCASE("identity at tau = 0") {
        const auto out = nonmarkovian_state(rho0, 0.0, *ctx, layout);
        CHECK((out.matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("populations are invariant, coherences scale by C^2") {
        for (double tau : {0.5, 1.0, 2.0, ctx->tau_p()}) {
            const auto out = nonmarkovian_state(rho0, tau, *ctx, layout);
            CHECK(std::abs(out(1, 1) - rho0(1, 1)) < 1e-14);
            CHECK(std::abs(out(2, 2) - rho0(2, 2)) < 1e-14);
            const auto c = ctx->correlation(tau);
            CHECK(std::abs(out(1, 2) - rho0(1, 2) * c * c) < 1e-13);
        }
        // At tau_P the factor has settled onto C_inf^2 (within the epsilon
        // that defines tau_P).
        const auto out = nonmarkovian_state(rho0, ctx->tau_p(), *ctx, layout);
        const double ci2 = ctx->c_inf() * ctx->c_inf();
        CHECK(std::abs(out(1, 2)) / std::abs(rho0(1, 2)) ==
              doctest::Approx(ci2).epsilon(5e-3));
    }

    SUBCASE("support outside ground + SEM is rejected") {
        Eigen::VectorXcd ee = Eigen::VectorXcd::Zero(4);
        ee(3) = 1.0;
        CHECK_THROWS_AS(nonmarkovian_state(DensityMatrix::pure(ee), 1.0, *ctx, layout),
                        std::domain_error);

        // Ground<->SEM coherence is outside the map's domain.
        Eigen::VectorXcd mix = Eigen::VectorXcd::Zero(4);
        mix(0) = mix(2) = 1.0 / std::sqrt(2.0);
        CHECK_THROWS_AS(nonmarkovian_state(DensityMatrix::pure(mix), 1.0, *ctx, layout),
                        std::domain_error);
    }
}

TEST_CASE("biexponential fit recovers exact parameters") {
    std::vector<double> t, v;
    for (int i = 0; i < 200; ++i) {
        t.push_back(i * 5.0);
        v.push_back(0.3 * std::exp(-2e-3 * t.back()) + 0.7 * std::exp(-1e-4 * t.back()));
    }
    const auto fit = fit_biexponential(t, v);
    CHECK(fit.rate_fast == doctest::Approx(2e-3).epsilon(1e-7));
    CHECK(fit.rate_slow == doctest::Approx(1e-4).epsilon(1e-7));
    CHECK(fit.amp_fast == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(fit.amp_slow == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(fit.max_residual < 1e-8);

    CHECK_THROWS_AS(fit_biexponential(std::vector<double>{0, 1}, std::vector<double>{1, 0.5}),
                    std::invalid_argument);
}
