#include "cryomux/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cryomux/errors.hpp"

namespace cryomux {

namespace {

// Solves the symmetric positive system H x = g in place, Cholesky with a
// defensive pivot floor. Dimension is tiny (<= 3 here).
bool solve_spd(std::vector<double>& h, std::vector<double>& g, int n) {
    for (int k = 0; k < n; ++k) {
        double d = h[k * n + k];
        for (int j = 0; j < k; ++j) d -= h[k * n + j] * h[k * n + j];
        if (d <= 0.0) return false;
        d = std::sqrt(d);
        h[k * n + k] = d;
        for (int i = k + 1; i < n; ++i) {
            double s = h[i * n + k];
            for (int j = 0; j < k; ++j) s -= h[i * n + j] * h[k * n + j];
            h[i * n + k] = s / d;
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = g[i];
        for (int j = 0; j < i; ++j) s -= h[i * n + j] * g[j];
        g[i] = s / h[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = g[i];
        for (int j = i + 1; j < n; ++j) s -= h[j * n + i] * g[j];
        g[i] = s / h[i * n + i];
    }
    return true;
}

// Inverse of a symmetric 3x3 via adjugate; returns false when singular.
bool invert_sym3(const std::array<double, 9>& m, std::array<double, 9>& inv) {
    const double a = m[0], b = m[1], c = m[2], d = m[4], e = m[5], f = m[8];
    const double det = a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
    if (det == 0.0 || !std::isfinite(det)) return false;
    inv[0] = (d * f - e * e) / det;
    inv[1] = inv[3] = (c * e - b * f) / det;
    inv[2] = inv[6] = (b * e - c * d) / det;
    inv[4] = (a * f - c * c) / det;
    inv[5] = inv[7] = (b * c - a * e) / det;
    inv[8] = (a * d - b * b) / det;
    return true;
}

double rss_of(const std::vector<double>& t, const std::vector<double>& y, double amp, double rate,
              double off) {
    double rss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (amp * std::exp(-rate * t[i]) + off);
        rss += r * r;
    }
    return rss;
}

}  // namespace

ExpFitResult fit_exponential(const std::vector<double>& t, const std::vector<double>& y) {
    const int n = static_cast<int>(t.size());
    if (n != static_cast<int>(y.size())) throw FitError("time and signal lengths differ");
    if (n < 5) throw FitError("exponential fit needs at least 5 points");
    for (int i = 1; i < n; ++i) {
        if (!(t[i] > t[i - 1])) throw FitError("delays must be strictly increasing");
    }

    const auto [y_min_it, y_max_it] = std::minmax_element(y.begin(), y.end());
    if (*y_max_it - *y_min_it <= 0.0) throw FitError("degenerate trace: constant signal");

    // Starting point: offset from the tail, amplitude from the head, rate from
    // the log-slope between the head and the point nearest to half amplitude.
    double off = std::accumulate(y.end() - std::max(1, n / 10), y.end(), 0.0) /
                 std::max(1, n / 10);
    double amp = y.front() - off;
    if (amp == 0.0) amp = *y_max_it - *y_min_it;
    double rate = 0.0;
    {
        const double target = off + 0.5 * amp;
        int k = n - 1;
        for (int i = 1; i < n; ++i) {
            if ((amp > 0.0 && y[i] < target) || (amp < 0.0 && y[i] > target)) {
                k = i;
                break;
            }
        }
        rate = std::log(2.0) / std::max(t[k], std::numeric_limits<double>::min());
    }

    double lambda = 1e-3;
    double rss = rss_of(t, y, amp, rate, off);
    int iterations = 0;
    const int max_iter = 200;
    bool converged = false;

    for (; iterations < max_iter; ++iterations) {
        // J columns: d/d amp = e, d/d rate = -amp t e, d/d off = 1.
        std::array<double, 9> jtj{};
        std::array<double, 3> jtr{};
        for (int i = 0; i < n; ++i) {
            const double e = std::exp(-rate * t[i]);
            const double j0 = e;
            const double j1 = -amp * t[i] * e;
            const double j2 = 1.0;
            const double r = y[i] - (amp * e + off);
            jtj[0] += j0 * j0;
            jtj[1] += j0 * j1;
            jtj[2] += j0 * j2;
            jtj[4] += j1 * j1;
            jtj[5] += j1 * j2;
            jtj[8] += j2 * j2;
            jtr[0] += j0 * r;
            jtr[1] += j1 * r;
            jtr[2] += j2 * r;
        }
        jtj[3] = jtj[1];
        jtj[6] = jtj[2];
        jtj[7] = jtj[5];

        bool stepped = false;
        for (int attempt = 0; attempt < 25 && !stepped; ++attempt) {
            std::vector<double> h(jtj.begin(), jtj.end());
            for (int k = 0; k < 3; ++k) h[k * 3 + k] *= 1.0 + lambda;
            std::vector<double> step(jtr.begin(), jtr.end());
            if (!solve_spd(h, step, 3)) {
                lambda *= 10.0;
                continue;
            }
            const double amp_n = amp + step[0];
            const double rate_n = rate + step[1];
            const double off_n = off + step[2];
            const double rss_n = rss_of(t, y, amp_n, rate_n, off_n);
            if (std::isfinite(rss_n) && rss_n <= rss) {
                const double rel_drop = (rss - rss_n) / std::max(rss, 1e-300);
                const double rel_step = std::abs(step[1]) / std::max(std::abs(rate_n), 1e-300);
                amp = amp_n;
                rate = rate_n;
                off = off_n;
                rss = rss_n;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel_drop < 1e-12 || rel_step < 1e-10) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped || converged) {
            converged = true;
            break;
        }
    }
    if (!converged) throw FitError("exponential fit did not converge");
    if (!std::isfinite(amp) || !std::isfinite(rate) || !std::isfinite(off)) {
        throw FitError("exponential fit diverged to non-finite parameters");
    }

    ExpFitResult result;
    result.amplitude = amp;
    result.rate = rate;
    result.offset = off;
    result.rss = rss;
    result.iterations = iterations + 1;
    result.n_points = n;

    // Covariance sigma^2 (J^T J)^-1 at the solution, sigma^2 = RSS/(n - 3).
    std::array<double, 9> jtj{};
    for (int i = 0; i < n; ++i) {
        const double e = std::exp(-rate * t[i]);
        const double j[3] = {e, -amp * t[i] * e, 1.0};
        jtj[0] += j[0] * j[0];
        jtj[1] += j[0] * j[1];
        jtj[2] += j[0] * j[2];
        jtj[4] += j[1] * j[1];
        jtj[5] += j[1] * j[2];
        jtj[8] += j[2] * j[2];
    }
    jtj[3] = jtj[1];
    jtj[6] = jtj[2];
    jtj[7] = jtj[5];
    std::array<double, 9> cov{};
    if (n > 3 && invert_sym3(jtj, cov)) {
        const double s2 = rss / (n - 3);
        result.amplitude_sigma = std::sqrt(std::max(0.0, s2 * cov[0]));
        result.rate_sigma = std::sqrt(std::max(0.0, s2 * cov[4]));
        result.offset_sigma = std::sqrt(std::max(0.0, s2 * cov[8]));
    }
    return result;
}

std::vector<double> nnls(const std::vector<double>& a, int rows, int cols,
                         const std::vector<double>& b, int max_iter) {
    if (rows <= 0 || cols <= 0 || a.size() != static_cast<std::size_t>(rows) * cols ||
        b.size() != static_cast<std::size_t>(rows)) {
        throw std::invalid_argument("nnls dimensions are inconsistent");
    }

    std::vector<double> x(cols, 0.0);
    std::vector<bool> passive(cols, false);
    std::vector<double> w(cols, 0.0), resid(b);

    auto gradient = [&] {
        for (int j = 0; j < cols; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows; ++i) s += a[i * cols + j] * resid[i];
            w[j] = s;
        }
    };
    auto solve_passive = [&](std::vector<double>& z) {
        std::vector<int> idx;
        for (int j = 0; j < cols; ++j) {
            if (passive[j]) idx.push_back(j);
        }
        const int m = static_cast<int>(idx.size());
        z.assign(cols, 0.0);
        if (m == 0) return true;
        std::vector<double> h(m * m, 0.0), g(m, 0.0);
        for (int p = 0; p < m; ++p) {
            for (int q = 0; q <= p; ++q) {
                double s = 0.0;
                for (int i = 0; i < rows; ++i) s += a[i * cols + idx[p]] * a[i * cols + idx[q]];
                h[p * m + q] = h[q * m + p] = s;
            }
            double s = 0.0;
            for (int i = 0; i < rows; ++i) s += a[i * cols + idx[p]] * b[i];
            g[p] = s;
        }
        if (!solve_spd(h, g, m)) return false;
        for (int p = 0; p < m; ++p) z[idx[p]] = g[p];
        return true;
    };
    auto refresh_residual = [&] {
        for (int i = 0; i < rows; ++i) {
            double s = b[i];
            for (int j = 0; j < cols; ++j) s -= a[i * cols + j] * x[j];
            resid[i] = s;
        }
    };

    const double tol = 1e-12;
    for (int iter = 0; iter < max_iter; ++iter) {
        gradient();
        int best = -1;
        double best_w = tol;
        for (int j = 0; j < cols; ++j) {
            if (!passive[j] && w[j] > best_w) {
                best_w = w[j];
                best = j;
            }
        }
        if (best < 0) break;
        passive[best] = true;

        std::vector<double> z;
        while (true) {
            if (!solve_passive(z)) {
                passive[best] = false;
                break;
            }
            bool all_positive = true;
            for (int j = 0; j < cols; ++j) {
                if (passive[j] && z[j] <= 0.0) {
                    all_positive = false;
                    break;
                }
            }
            if (all_positive) {
                x = z;
                break;
            }
            double alpha = 1.0;
            for (int j = 0; j < cols; ++j) {
                if (passive[j] && z[j] <= 0.0 && x[j] != z[j]) {
                    alpha = std::min(alpha, x[j] / (x[j] - z[j]));
                }
            }
            for (int j = 0; j < cols; ++j) {
                if (passive[j]) {
                    x[j] += alpha * (z[j] - x[j]);
                    if (x[j] <= tol) {
                        x[j] = 0.0;
                        passive[j] = false;
                    }
                }
            }
        }
        refresh_residual();
    }
    return x;
}

LsqResult least_squares(const std::vector<double>& a, int rows, int cols,
                        const std::vector<double>& b) {
    if (rows < cols || cols <= 0 || a.size() != static_cast<std::size_t>(rows) * cols ||
        b.size() != static_cast<std::size_t>(rows)) {
        throw std::invalid_argument("least squares dimensions are inconsistent");
    }
    std::vector<double> h(cols * cols, 0.0), g(cols, 0.0);
    for (int p = 0; p < cols; ++p) {
        for (int q = 0; q <= p; ++q) {
            double s = 0.0;
            for (int i = 0; i < rows; ++i) s += a[i * cols + p] * a[i * cols + q];
            h[p * cols + q] = h[q * cols + p] = s;
        }
        double s = 0.0;
        for (int i = 0; i < rows; ++i) s += a[i * cols + p] * b[i];
        g[p] = s;
    }

    LsqResult out;
    std::vector<double> hs = h;
    out.coeff = g;
    if (!solve_spd(hs, out.coeff, cols)) throw FitError("normal equations are singular");

    for (int i = 0; i < rows; ++i) {
        double r = b[i];
        for (int j = 0; j < cols; ++j) r -= a[i * cols + j] * out.coeff[j];
        out.rss += r * r;
    }

    out.sigma.assign(cols, 0.0);
    if (rows > cols) {
        const double s2 = out.rss / (rows - cols);
        // Diagonal of (A^T A)^-1 by solving for unit vectors.
        for (int j = 0; j < cols; ++j) {
            std::vector<double> hj = h;
            std::vector<double> e(cols, 0.0);
            e[j] = 1.0;
            if (solve_spd(hj, e, cols)) out.sigma[j] = std::sqrt(std::max(0.0, s2 * e[j]));
        }
    }
    return out;
}

}  // namespace cryomux
