#pragma once

#include <array>
#include <vector>

namespace cryomux {

/// Result of fitting y = amplitude * exp(-rate * t) + offset.
struct ExpFitResult {
    double amplitude = 0.0;
    double rate = 0.0;    // [1/s]
    double offset = 0.0;
    double amplitude_sigma = 0.0;
    double rate_sigma = 0.0;
    double offset_sigma = 0.0;
    double rss = 0.0;
    int iterations = 0;
    int n_points = 0;
};

/// Levenberg-Marquardt fit of a 3-parameter exponential decay. Initial guesses
/// are derived from the data (log-slope of the early points). Parameter sigmas
/// come from the Jacobian-based covariance with variance RSS/(n-3).
/// Throws FitError when the data are degenerate or iterations diverge.
ExpFitResult fit_exponential(const std::vector<double>& t, const std::vector<double>& y);

/// Nonnegative least squares min ||A x - b||, x >= 0, Lawson-Hanson active set.
/// `a` is row-major with `cols` columns. Returns x of size cols.
std::vector<double> nnls(const std::vector<double>& a, int rows, int cols,
                         const std::vector<double>& b, int max_iter = 300);

/// Ordinary least squares for a small dense system; returns coefficients and
/// their standard errors (sigma^2 (A^T A)^-1 with sigma^2 = RSS/(rows-cols)).
struct LsqResult {
    std::vector<double> coeff;
    std::vector<double> sigma;
    double rss = 0.0;
};
LsqResult least_squares(const std::vector<double>& a, int rows, int cols,
                        const std::vector<double>& b);

}  // namespace cryomux
