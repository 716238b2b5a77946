#include <doctest.h>

#include <cmath>
#include <vector>

#include "cryomux/errors.hpp"
#include "cryomux/fitting.hpp"
#include "cryomux/rng.hpp"

using namespace cryomux;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> decay(const std::vector<double>& t, double a, double rate, double c,
                          double sigma = 0.0, std::uint64_t seed = 0) {
  Rng rng(seed);
  std::vector<double> y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    y[i] = a * std::exp(-rate * t[i]) + c + (sigma > 0.0 ? rng.gaussian(0.0, sigma) : 0.0);
  }
  return y;
}

}  // namespace

TEST_CASE("noiseless exponential is recovered to rounding") {
  const auto t = linspace(0.0, 300e-6, 51);
  const double rate = 1e4;
  const auto y = decay(t, 1.0, rate, 0.0);
  const auto fit = fit_exponential(t, y);
  CHECK(fit.rate == doctest::Approx(rate).epsilon(1e-6));
  CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(fit.offset) < 1e-6);
  CHECK(fit.n_points == 51);
}

TEST_CASE("offset exponential is recovered") {
  const auto t = linspace(0.0, 5.0, 80);
  const auto y = decay(t, 0.9, 2.5, 0.1);
  const auto fit = fit_exponential(t, y);
  CHECK(fit.rate == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(fit.amplitude == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(fit.offset == doctest::Approx(0.1).epsilon(1e-5));
}

TEST_CASE("degenerate inputs raise fit errors") {
  const auto t4 = linspace(0.0, 1.0, 4);
  CHECK_THROWS_AS(fit_exponential(t4, decay(t4, 1.0, 1.0, 0.0)), FitError);

  auto t = linspace(0.0, 1.0, 20);
  std::vector<double> flat(20, 0.37);
  CHECK_THROWS_AS(fit_exponential(t, flat), FitError);

  auto bad_t = t;
  bad_t[5] = bad_t[4];
  CHECK_THROWS_AS(fit_exponential(bad_t, decay(t, 1.0, 1.0, 0.0)), FitError);

  std::vector<double> wrong_len(19, 0.5);
  CHECK_THROWS_AS(fit_exponential(t, wrong_len), FitError);
}

TEST_CASE("rate uncertainty is calibrated: 3-sigma covers >= 95% of 200 seeds") {
  const auto t = linspace(0.0, 300e-6, 51);
  const double rate = 1e4;
  int covered = 0;
  int within_pct = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto y = decay(t, 1.0, rate, 0.0, 0.01, seed);
    const auto fit = fit_exponential(t, y);
    if (std::abs(fit.rate - rate) <= 3.0 * fit.rate_sigma) ++covered;
    if (std::abs(fit.rate - rate) / rate < 0.05) ++within_pct;
  }
  CHECK(covered >= 190);
  CHECK(within_pct == 200);
}

TEST_CASE("nonnegative least squares clips the constrained coefficient") {
  // Columns: first explains b exactly, second is anti-correlated with b.
  const std::vector<double> a{1.0, -1.0, 2.0, -2.0, 3.0, -3.0};
  const std::vector<double> b{1.0, 2.0, 3.0};
  const auto x = nnls(a, 3, 2, b);
  REQUIRE(x.size() == 2);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(x[1] == 0.0);
}

TEST_CASE("nnls equals unconstrained least squares when the optimum is interior") {
  Rng rng(71);
  for (int rep = 0; rep < 25; ++rep) {
    const int rows = 12;
    const double c0 = rng.uniform() * 3.0 + 0.5;
    const double c1 = rng.uniform() * 2.0 + 0.25;
    std::vector<double> a(rows * 2), b(rows);
    for (int i = 0; i < rows; ++i) {
      const double x1 = rng.uniform() * 5.0;
      const double x2 = rng.uniform() * 5.0 + 2.0;
      a[2 * i] = x1;
      a[2 * i + 1] = x2;
      b[i] = c0 * x1 + c1 * x2;
    }
    const auto xs = nnls(a, rows, 2, b);
    const auto ls = least_squares(a, rows, 2, b);
    CHECK(xs[0] == doctest::Approx(ls.coeff[0]).epsilon(1e-8));
    CHECK(xs[1] == doctest::Approx(ls.coeff[1]).epsilon(1e-8));
    CHECK(xs[0] == doctest::Approx(c0).epsilon(1e-8));
  }
}

TEST_CASE("least squares on an exact line") {
  const std::vector<double> a{1.0, 0.0, 1.0, 1.0, 1.0, 2.0, 1.0, 3.0};
  const std::vector<double> b{1.0, 3.0, 5.0, 7.0};
  const auto r = least_squares(a, 4, 2, b);
  CHECK(r.coeff[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.coeff[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.rss < 1e-20);
  CHECK(r.sigma[0] < 1e-9);
}

TEST_CASE("least squares standard errors match the textbook line formulas") {
  // y = 2 + 0.5 x + residuals with known RSS.
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> a;
  std::vector<double> b;
  const std::vector<double> resid{0.1, -0.1, 0.1, -0.1, 0.1, -0.1};
  double sx = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    a.push_back(1.0);
    a.push_back(xs[i]);
    b.push_back(2.0 + 0.5 * xs[i] + resid[i]);
    sx += xs[i];
    sxx += xs[i] * xs[i];
  }
  const auto r = least_squares(a, 6, 2, b);
  const int n = 6;
  const double mean_x = sx / n;
  const double sxx_c = sxx - n * mean_x * mean_x;
  const double s2 = r.rss / (n - 2);
  CHECK(r.sigma[1] == doctest::Approx(std::sqrt(s2 / sxx_c)).epsilon(1e-9));
  CHECK(r.sigma[0] == doctest::Approx(std::sqrt(s2 * (1.0 / n + mean_x * mean_x / sxx_c)))
                          .epsilon(1e-9));
}
