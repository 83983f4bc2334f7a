// stats.hpp — the small statistical toolbox shared by the analytics and the
// experiment suites: moments, goodness-of-fit tests, least squares, bootstrap.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace frog::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased, 0 for size < 2

// Kahan-compensated sum.
double csum(std::span<const double> xs);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-square survival: P[Chi2_df >= stat].
double chi2_sf(double stat, int df);

// Goodness of fit of observed counts against expected counts (same total).
// Bins with expected < min_expected are merged into their successor; df is
// (#bins after merge) - 1 - extra_constraints. Returns the p-value.
double chi2_gof_pvalue(std::span<const double> observed,
                       std::span<const double> expected,
                       double min_expected = 5.0, int extra_constraints = 0);

// Two-sample chi-square homogeneity test on count histograms over the same
// bin set. Low-count bins merged as above. Returns the p-value.
double chi2_two_sample_pvalue(std::span<const double> counts_a,
                              std::span<const double> counts_b,
                              double min_expected = 5.0);

// Two-sample Kolmogorov-Smirnov p-value (asymptotic).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// Normal-approximation half-width k*sigma for a binomial frequency estimate.
inline double binomial_sigma(double p_hat, std::uint64_t n) {
    if (n == 0) return 1.0;
    double v = p_hat * (1.0 - p_hat) / static_cast<double>(n);
    return v > 0 ? std::sqrt(v) : 0.0;
}

struct Interval {
    double lo = 0;
    double hi = 0;
    double width() const { return hi - lo; }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Percentile bootstrap CI of a statistic over per-replica values.
// Deterministic given seed.
Interval bootstrap_ci(std::span<const double> values,
                      double (*statistic)(std::span<const double>),
                      int resamples, std::uint64_t seed,
                      double level = 0.95);

// Exact binomial upper tail P[Bin(N,p) >= k] by log-space summation.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t k);

}  // namespace frog::stats
