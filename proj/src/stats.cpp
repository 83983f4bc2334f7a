// stats.cpp
#include "frog/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace frog::stats {

double csum(std::span<const double> xs) {
    double s = 0, c = 0;
    for (double x : xs) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0;
    return csum(xs) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0;
    const double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0) throw std::invalid_argument("fit_line: degenerate x");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

// ---------------------- incomplete gamma ----------------------
// Series for P(a,x) when x < a+1, Lentz continued fraction for Q otherwise.

namespace {

double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0) return 0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0) return 1;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double stat, int df) {
    if (df <= 0) throw std::invalid_argument("chi2_sf: df <= 0");
    if (stat <= 0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * stat);
}

// ---------------------- chi-square tests ----------------------

namespace {

// Merge bins so every expected count reaches the floor; merging runs left to
// right, the trailing remainder folds into the last kept bin.
void merge_low_bins(std::vector<double>& obs, std::vector<double>& exp,
                    double min_expected) {
    std::vector<double> mo, me;
    double ao = 0, ae = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ao += obs[i];
        ae += exp[i];
        if (ae >= min_expected) {
            mo.push_back(ao);
            me.push_back(ae);
            ao = ae = 0;
        }
    }
    if (ae > 0 && !me.empty()) {
        mo.back() += ao;
        me.back() += ae;
    } else if (ae > 0) {
        mo.push_back(ao);
        me.push_back(ae);
    }
    obs = std::move(mo);
    exp = std::move(me);
}

}  // namespace

double chi2_gof_pvalue(std::span<const double> observed,
                       std::span<const double> expected,
                       double min_expected, int extra_constraints) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi2_gof_pvalue: bad bins");
    std::vector<double> obs(observed.begin(), observed.end());
    std::vector<double> exp(expected.begin(), expected.end());
    merge_low_bins(obs, exp, min_expected);
    if (obs.size() < 2) return 1.0;  // nothing left to test
    double stat = 0;
    for (std::size_t i = 0; i < obs.size(); ++i)
        stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    const int df = static_cast<int>(obs.size()) - 1 - extra_constraints;
    if (df <= 0) return 1.0;
    return chi2_sf(stat, df);
}

double chi2_two_sample_pvalue(std::span<const double> counts_a,
                              std::span<const double> counts_b,
                              double min_expected) {
    if (counts_a.size() != counts_b.size() || counts_a.empty())
        throw std::invalid_argument("chi2_two_sample_pvalue: bad bins");
    const std::size_t k = counts_a.size();
    double na = 0, nb = 0;
    for (std::size_t i = 0; i < k; ++i) {
        na += counts_a[i];
        nb += counts_b[i];
    }
    if (na == 0 || nb == 0) throw std::invalid_argument("chi2_two_sample: empty sample");

    // Merge bins until the pooled expectation in each sample reaches the floor.
    std::vector<double> a, b;
    double aa = 0, ab = 0;
    for (std::size_t i = 0; i < k; ++i) {
        aa += counts_a[i];
        ab += counts_b[i];
        const double tot = aa + ab;
        if (tot * na / (na + nb) >= min_expected && tot * nb / (na + nb) >= min_expected) {
            a.push_back(aa);
            b.push_back(ab);
            aa = ab = 0;
        }
    }
    if ((aa > 0 || ab > 0) && !a.empty()) {
        a.back() += aa;
        b.back() += ab;
    }
    if (a.size() < 2) return 1.0;

    double stat = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tot = a[i] + b[i];
        const double ea = tot * na / (na + nb);
        const double eb = tot * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea;
        stat += (b[i] - eb) * (b[i] - eb) / eb;
    }
    return chi2_sf(stat, static_cast<int>(a.size()) - 1);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    // Kolmogorov survival function.
    double p = 0;
    for (int t = 1; t <= 100; ++t) {
        const double term = 2.0 * ((t % 2) ? 1.0 : -1.0) *
                            std::exp(-2.0 * t * t * lambda * lambda);
        p += term;
        if (std::fabs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

Interval bootstrap_ci(std::span<const double> values,
                      double (*statistic)(std::span<const double>),
                      int resamples, std::uint64_t seed, double level) {
    if (values.empty()) throw std::invalid_argument("bootstrap_ci: empty");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    std::vector<double> stats(static_cast<std::size_t>(resamples));
    std::vector<double> sample(values.size());
    for (int r = 0; r < resamples; ++r) {
        for (auto& s : sample) s = values[pick(rng)];
        stats[static_cast<std::size_t>(r)] = statistic(sample);
    }
    std::sort(stats.begin(), stats.end());
    const double alpha = (1.0 - level) / 2.0;
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(stats.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, stats.size() - 1);
        const double w = pos - static_cast<double>(lo);
        return stats[lo] * (1 - w) + stats[hi] * w;
    };
    return Interval{at(alpha), at(1.0 - alpha)};
}

double binomial_upper_tail(std::int64_t n, double p, std::int64_t k) {
    if (n < 0 || p <= 0 || p >= 1) throw std::invalid_argument("binomial_upper_tail");
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgn = std::lgamma(static_cast<double>(n) + 1);
    double s = 0, c = 0;
    for (std::int64_t i = k; i <= n; ++i) {
        const double lt = lgn - std::lgamma(static_cast<double>(i) + 1) -
                          std::lgamma(static_cast<double>(n - i) + 1) +
                          static_cast<double>(i) * lp +
                          static_cast<double>(n - i) * lq;
        const double term = std::exp(lt);
        double y = term - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return std::min(s, 1.0);
}

}  // namespace frog::stats
