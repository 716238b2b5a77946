#include "cryomux/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cryomux {

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("variance needs at least 2 points");
    const double m = mean(v);
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double sample_stddev(const std::vector<double>& v) { return std::sqrt(sample_variance(v)); }

double combined_se(const std::vector<double>& a, const std::vector<double>& b) {
    return std::sqrt(sample_variance(a) / static_cast<double>(a.size()) +
                     sample_variance(b) / static_cast<double>(b.size()));
}

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-14;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta parameters must be positive");
    if (x < 0.0 || x > 1.0) throw std::domain_error("beta argument outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    if (!(dof > 0.0)) throw std::domain_error("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    const double x = dof / (dof + t * t);
    const double tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                         double alpha) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("Welch test needs at least 2 points per sample");
    }
    WelchResult r;
    r.mean_a = mean(a);
    r.mean_b = mean(b);
    const double va = sample_variance(a) / static_cast<double>(a.size());
    const double vb = sample_variance(b) / static_cast<double>(b.size());
    const double se2 = va + vb;
    if (se2 <= 0.0) throw std::invalid_argument("Welch test is degenerate: both samples constant");
    r.t_stat = (r.mean_a - r.mean_b) / std::sqrt(se2);
    const double da = va * va / static_cast<double>(a.size() - 1);
    const double db = vb * vb / static_cast<double>(b.size() - 1);
    r.dof = se2 * se2 / (da + db);
    const double x = r.dof / (r.dof + r.t_stat * r.t_stat);
    r.p_two_sided = r.t_stat == 0.0 ? 1.0 : incomplete_beta(0.5 * r.dof, 0.5, x);
    r.significant = r.p_two_sided < alpha;
    return r;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q > 1.0) throw std::domain_error("quantile level outside [0, 1]");
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= v.size()) return v.back();
    const double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

BoxSummary box_summary(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("box summary of empty sample");
    std::sort(v.begin(), v.end());
    BoxSummary s;
    s.median = quantile(v, 0.5);
    s.q1 = quantile(v, 0.25);
    s.q3 = quantile(v, 0.75);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_lo = s.q1;
    s.whisker_hi = s.q3;
    bool found = false;
    for (const double x : v) {
        if (x >= lo_fence && x <= hi_fence) {
            if (!found) {
                s.whisker_lo = x;
                found = true;
            }
            s.whisker_hi = x;
        } else {
            s.outliers.push_back(x);
        }
    }
    return s;
}

}  // namespace cryomux
