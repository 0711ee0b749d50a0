#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qemit/errors.hpp"

namespace qemit {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double omega_max_factor = 8.0;  // upper cutoff as multiple of omega_c

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
        if (!(omega_max_factor >= 6.0))
            throw std::invalid_argument("QuadratureSpec: omega_max_factor must be >= 6");
    }
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK dqk15 nodes).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
double vnorm(const T& v) {
    return std::abs(v);
}

template <typename F, typename T>
void gk15(F&& f, double a, double b, T& result, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    T fc = f(mid);
    T kronrod = gk_wk[7] * fc;
    T gauss = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        T s = f(mid + dx) + f(mid - dx);
        kronrod += gk_wk[i] * s;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * s;
    }
    kronrod *= half;
    gauss *= half;
    result = kronrod;
    const double diff = vnorm<T>(kronrod - gauss);
    err = 200.0 * diff * std::sqrt(200.0 * diff);
    err = std::min(err, diff * 200.0);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b]. Works for double
// and complex integrands. Throws QuadratureError (carrying the achieved
// estimate) when the interval budget is exhausted before convergence.
template <typename F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {},
               std::size_t max_intervals = 4096) {
    using T = decltype(f(a));
    spec.validate();

    struct Interval {
        double a, b, err;
        T val;
    };

    T total{};
    double total_err = 0.0;
    std::vector<Interval> heap;
    heap.reserve(256);

    auto push = [&](double lo, double hi) {
        Interval iv{lo, hi, 0.0, T{}};
        detail::gk15(f, lo, hi, iv.val, iv.err);
        total += iv.val;
        total_err += iv.err;
        heap.push_back(iv);
        std::push_heap(heap.begin(), heap.end(),
                       [](const Interval& x, const Interval& y) { return x.err < y.err; });
    };

    push(a, b);
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * detail::vnorm<T>(total))) {
        if (heap.size() + 1 >= max_intervals)
            throw QuadratureError("quadrature: interval budget exhausted",
                                  detail::vnorm<T>(total), total_err);
        std::pop_heap(heap.begin(), heap.end(),
                      [](const Interval& x, const Interval& y) { return x.err < y.err; });
        Interval worst = heap.back();
        heap.pop_back();
        total -= worst.val;
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("quadrature: interval underflow",
                                  detail::vnorm<T>(total + worst.val), total_err + worst.err);
        push(worst.a, mid);
        push(mid, worst.b);
    }
    return total;
}

// coth with a series branch near zero; the phonon integrands divide out
// the 1/x pole analytically, so x here is always > 0.
inline double coth(double x) {
    if (x < 1e-6) return 1.0 / x + x / 3.0;
    return 1.0 / std::tanh(x);
}

}  // namespace qemit
