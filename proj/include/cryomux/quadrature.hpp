#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace cryomux {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // absolute error estimate
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half).
inline constexpr double gk15_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// 7-point Gauss weights, matching nodes 1, 3, 5, 7 above.
inline constexpr double gk15_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

/// One Gauss-Kronrod 7-15 panel. Returns the K15 estimate; the error estimate
/// follows the QUADPACK rescaling so it stays meaningful for sharply peaked
/// integrands.
template <class F>
QuadResult gk15_panel(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[i];
        fv[i] = f(center - dx);
        fv[i + 7] = f(center + dx);
    }

    double resk = gk15_wk[7] * fc;
    double resg = gk15_wg[3] * fc;
    double resabs = gk15_wk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double sum = fv[i] + fv[i + 7];
        resk += gk15_wk[i] * sum;
        resabs += gk15_wk[i] * (std::abs(fv[i]) + std::abs(fv[i + 7]));
        if (i % 2 == 1) resg += gk15_wg[i / 2] * sum;
    }

    const double reskh = 0.5 * resk;
    double resasc = gk15_wk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i) {
        resasc += gk15_wk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[i + 7] - reskh));
    }

    QuadResult r;
    r.value = resk * half;
    r.evaluations = 15;
    double err = std::abs((resk - resg) * half);
    resasc *= std::abs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(half);
    r.error = std::max(err, round);
    return r;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The interval is first
/// split into `initial_panels` equal pieces (use enough panels to resolve
/// oscillations; a single wide panel over many periods can fool the error
/// estimate), then the worst panel is bisected until the summed error meets
/// max(abs_tol, rel_tol * |integral|) or the interval budget runs out.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-9,
                              double abs_tol = 0.0, int max_intervals = 4000,
                              int initial_panels = 1) {
    struct Segment {
        double a, b, value, error;
        bool operator<(const Segment& o) const { return error < o.error; }
    };

    QuadResult total;
    if (a == b) {
        total.converged = true;
        return total;
    }

    std::priority_queue<Segment> heap;
    initial_panels = std::max(1, initial_panels);
    double value = 0.0, error = 0.0;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / initial_panels;
        const double hi = a + (b - a) * static_cast<double>(i + 1) / initial_panels;
        const QuadResult p = detail::gk15_panel(f, lo, hi);
        total.evaluations += p.evaluations;
        value += p.value;
        error += p.error;
        heap.push({lo, hi, p.value, p.error});
    }

    int intervals = initial_panels;
    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(value)); };
    while (error > tolerance() && intervals < max_intervals) {
        const Segment worst = heap.top();
        heap.pop();
        value -= worst.value;
        error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            const QuadResult p = detail::gk15_panel(f, lo, hi);
            total.evaluations += p.evaluations;
            value += p.value;
            error += p.error;
            heap.push({lo, hi, p.value, p.error});
        }
        ++intervals;
    }

    total.value = value;
    total.error = error;
    total.converged = error <= tolerance();
    return total;
}

}  // namespace cryomux
