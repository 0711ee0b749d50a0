#include "qemit/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qemit/io.hpp"

namespace qemit {

namespace {

Eigen::Matrix4cd sigma_y_pair() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    // sigma_y x sigma_y in the {gg, ge, eg, ee} basis with |g> = (1,0).
    const std::complex<double> i(0, 1);
    Eigen::Matrix2cd sy;
    sy << 0.0, -i, i, 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    m(2 * a + c, 2 * b + d) = sy(a, b) * sy(c, d);
    return m;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: need a two-qubit state");
    static const Eigen::Matrix4cd yy = sigma_y_pair();
    const Eigen::Matrix4cd& r = rho.matrix();
    const Eigen::Matrix4cd rt = yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r * rt, /*computeEigenvectors=*/false);

    std::array<double, 4> vals{};
    for (int k = 0; k < 4; ++k) {
        double v = es.eigenvalues()(k).real();
        if (v < -1e-12)
            throw std::runtime_error("concurrence: indefinite Wootters matrix beyond tolerance");
        // Eigenvalues of exact zeros carry O(1e-16) solver noise which the
        // square root would blow up to 1e-8; they are zero within the same
        // tolerance that guards negativity.
        vals[k] = v <= 1e-12 ? 0.0 : std::sqrt(v);
    }
    std::sort(vals.begin(), vals.end(), std::greater<>());
    return std::max(0.0, vals[0] - vals[1] - vals[2] - vals[3]);
}

std::string ConcurrenceTrace::to_csv() const {
    std::string out = "t_ps,concurrence,method\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        out += float17(times[i]) + "," + float17(values[i]) + "," + method_name(method) + "\n";
    return out;
}

LindbladSpec two_emitter_equation(const EmitterChain& chain, const PhononContext& ctx,
                                  bool polaron_rates) {
    if (chain.n_emitters != 2)
        throw std::invalid_argument("two_emitter_equation: N must be 2");
    const auto mats = build_matrices(chain, ctx.c_inf(), ctx.shift());
    const double gamma_col = mats.gamma_mat(0, 1);
    const double w_col = polaron_rates ? mats.omega_col_polaron : mats.omega_col;
    const double rate_plus =
        chain.gamma + (polaron_rates ? ctx.c_inf() * gamma_col : gamma_col);
    const double rate_minus =
        chain.gamma - (polaron_rates ? ctx.c_inf() * gamma_col : gamma_col);

    // sigma_1 = |g><e| x I, sigma_2 = I x |g><e| on {gg, ge, eg, ee}.
    Eigen::Matrix4cd s1 = Eigen::Matrix4cd::Zero(), s2 = Eigen::Matrix4cd::Zero();
    s1(0, 2) = 1.0;
    s1(1, 3) = 1.0;
    s2(0, 1) = 1.0;
    s2(2, 3) = 1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Eigen::Matrix4cd sp = inv_sqrt2 * (s1 + s2);
    const Eigen::Matrix4cd sm = inv_sqrt2 * (s1 - s2);

    LindbladSpec spec;
    spec.hamiltonian = w_col * (sp.adjoint() * sp - sm.adjoint() * sm);
    spec.collapse_ops.emplace_back(sp, rate_plus);
    spec.collapse_ops.emplace_back(sm, rate_minus);
    spec.collapse_ops.emplace_back(sp.adjoint() * sp, 2.0 * ctx.gamma_pd());
    spec.collapse_ops.emplace_back(sm.adjoint() * sm, 2.0 * ctx.gamma_pd());
    return spec;
}

ConcurrenceTrace concurrence_trajectory(const DensityMatrix& rho0, Method method,
                                        const PhononContext& ctx, const EmitterChain& chain,
                                        const TimeGrid& grid) {
    if (rho0.dim() != 4)
        throw std::invalid_argument("concurrence_trajectory: need a two-qubit state");
    if (method == Method::InitialSlip)
        throw std::invalid_argument("concurrence_trajectory: initial-slip has no trajectory form");

    ConcurrenceTrace tr;
    tr.method = method;
    tr.tau_p = ctx.tau_p();
    tr.times = grid.times;
    tr.values.reserve(grid.times.size());

    const auto layout = SemLayout::two_qubit();
    const bool markovian = method == Method::Markovian;
    const LindbladSpec eq = two_emitter_equation(chain, ctx, method == Method::Polaron);

    if (markovian) {
        auto states = lindblad_evolve(rho0, eq, grid.times);
        for (const auto& st : states) tr.values.push_back(std::clamp(concurrence(st), 0.0, 1.0));
        return tr;
    }

    // Non-markovian stage: |C(tau)|^2 coherence scaling, populations frozen.
    std::vector<double> post_times;
    for (double t : grid.times) {
        if (t < tr.tau_p) {
            tr.values.push_back(std::clamp(
                concurrence(nonmarkovian_state(rho0, t, ctx, layout, /*magnitude_only=*/true)),
                0.0, 1.0));
        } else {
            post_times.push_back(t - tr.tau_p);
        }
    }

    // Markovian stage seeded with the long-time seam state (coherences x
    // C_inf^2): build it from the long-time limit of the map.
    Eigen::MatrixXcd seam = rho0.matrix();
    const double ci2 = ctx.c_inf() * ctx.c_inf();
    for (int i : layout.sem)
        for (int j : layout.sem)
            if (i != j) seam(i, j) *= ci2;
    const DensityMatrix rho_seam{seam};

    if (!post_times.empty()) {
        if (post_times.front() > 0) post_times.insert(post_times.begin(), 0.0);
        auto states = lindblad_evolve(rho_seam, eq, post_times);
        std::size_t k = states.size() - (tr.times.size() - tr.values.size());
        for (; k < states.size(); ++k)
            tr.values.push_back(std::clamp(concurrence(states[k]), 0.0, 1.0));
    }
    return tr;
}

std::string TauPTable::to_csv() const {
    std::vector<std::string> cols{"T_K"};
    for (double L : dot_sizes) cols.push_back("L_" + float17(L) + "_nm");
    CsvWriter csv(cols);
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        std::vector<double> row{temperatures[i]};
        row.insert(row.end(), values[i].begin(), values[i].end());
        csv.add_row(row);
    }
    return csv.text();
}

TauPTable concurrence_at_tau_p(std::span<const double> temperatures,
                               std::span<const double> dot_sizes, double alpha,
                               double sound_speed, const QuadratureSpec& quad) {
    if (!(sound_speed > 0))
        throw std::invalid_argument("concurrence_at_tau_p: sound_speed must be > 0");
    TauPTable table;
    table.temperatures.assign(temperatures.begin(), temperatures.end());
    table.dot_sizes.assign(dot_sizes.begin(), dot_sizes.end());
    table.values.resize(temperatures.size());
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        table.values[i].reserve(dot_sizes.size());
        for (double L : dot_sizes) {
            if (!(L > 0)) throw std::invalid_argument("concurrence_at_tau_p: dot size must be > 0");
            PhononBathParams p{alpha, sound_speed / L, temperatures[i]};
            const double ci = franck_condon(p, quad);
            table.values[i].push_back(ci * ci);
        }
    }
    return table;
}

}  // namespace qemit
