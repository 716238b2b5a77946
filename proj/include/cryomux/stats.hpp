#pragma once

#include <vector>

namespace cryomux {

struct WelchResult {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double t_stat = 0.0;
    double dof = 0.0;       // Welch-Satterthwaite
    double p_two_sided = 1.0;
    bool significant = false;  // p < alpha used in the call
};

/// Welch's unequal-variance t-test for the difference of two sample means.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b,
                         double alpha = 0.05);

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

/// Standard error of the difference of means under unequal variances.
double combined_se(const std::vector<double>& a, const std::vector<double>& b);

/// Linear-interpolated quantile (the common "type 7" definition). q in [0,1].
double quantile(std::vector<double> v, double q);

struct BoxSummary {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_lo = 0.0;   // smallest point >= q1 - 1.5 IQR
    double whisker_hi = 0.0;   // largest point <= q3 + 1.5 IQR
    std::vector<double> outliers;
};
BoxSummary box_summary(std::vector<double> v);

/// CDF of Student's t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

/// Regularized incomplete beta I_x(a, b) via Lentz continued fractions.
double incomplete_beta(double a, double b, double x);

}  // namespace cryomux
