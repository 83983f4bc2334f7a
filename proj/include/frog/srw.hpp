// srw.hpp — exact and asymptotic single-walk numerics: the dynamic-programming
// occupation tables that serve as ground-truth oracles, the local-CLT leading
// term, Green's functions, range/hitting Monte Carlo, and the large-deviation
// rate machinery.
//
// Feasibility of the dense DP (box window [-w, w]^d, two or three buffers):
// d = 1 runs to n ~ 2*10^4 trivially, d = 2 to n ~ 600, d = 3 to n ~ 100,
// d = 4 to n ~ 30 under the default cell budget.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "frog/lattice.hpp"
#include "frog/stats.hpp"
#include "frog/walk.hpp"

namespace frog::srw {

// Exact distribution of S_n, restricted to a box window of radius w >= n.
// Values are doubles built by convolution with compensated normalization
// checks; parity-null sites are exact zeros by construction.
class SrwDp {
public:
    SrwDp(int d, std::int64_t window_radius, bool accumulate_green = false,
          std::size_t cell_budget = 30'000'000);

    void step();                    // advance n by one
    void run_to(std::int64_t n);

    int dim() const { return d_; }
    std::int64_t n() const { return n_; }
    std::int64_t window() const { return radius_; }

    double value(const Point& x) const;         // p_n(x), 0 outside window
    double green(const Point& x) const;         // G_n(x), needs accumulate_green
    double sum() const;                         // compensated sum of p_n

    // max_x |p_n(x) - clt(x)| over admissible-parity x in D_n.
    double max_clt_error() const;

    void for_each_support(const std::function<void(const Point&, double)>& fn) const;

private:
    int d_;
    std::int64_t radius_;
    std::int64_t n_ = 0;
    bool green_on_;
    std::int64_t side_;                          // padded box side
    std::array<std::int64_t, kMaxDim> stride_{};
    std::vector<double> cur_, prev_, green_;

    std::int64_t index_of(const Point& x) const;  // -1 outside box
    void point_of(std::int64_t idx, Point& out) const;
};

// p_n restricted to the diamond window; rejects window < n.
SrwDp exact_pn(int d, std::int64_t n, std::int64_t window_radius);

// Local-CLT leading term 2 n^{-d/2} (d / 2 pi)^{d/2} exp(-d ||x||^2 / 2n),
// defined on the admissible-parity sublattice (the factor 2 is the parity
// weight). Rejects parity mismatch.
double clt_pn(int d, std::int64_t n, const Point& x);

// Least-squares slope of log max-CLT-error against log n over n_grid.
stats::LineFit clt_error_fit(int d, std::span<const std::int64_t> n_grid);

// G_n(x) via one DP run with Green accumulation.
double green_fn(int d, std::int64_t n, const Point& x);

// Escape probability 1/G(0) for d >= 3: exact DP sum to n0 plus the
// admissible-parity CLT tail (summed to 10^7, integral remainder beyond).
double escape_probability(int d, std::int64_t n0 = 100);

struct McEstimate {
    double p_hat = 0;
    double sigma = 0;  // binomial standard error
    std::uint64_t replicas = 0;
};

// q(n, x) = P[t(0,x) <= n] by Monte Carlo.
McEstimate hitting_prob_mc(int d, std::int64_t n, const Point& x,
                           std::uint64_t replicas, Seed seed);

struct RangeEstimate {
    double mean = 0;
    double sigma = 0;  // standard error of the mean
    std::uint64_t replicas = 0;
};

// E|R_n|: mean distinct-site count of one walk up to time n.
RangeEstimate range_mc(int d, std::int64_t n, std::uint64_t replicas, Seed seed);

// Bernoulli large-deviation rate a log(a/p) + (1-a) log((1-a)/(1-p)).
// Domain 0 < p < a < 1.
double rate_H(double a, double p);

struct TailPair {
    double exact;  // P[Bin(N, p) >= a N], exact summation
    double bound;  // exp(-N H(a, p))
};
TailPair binomial_tail_check(std::int64_t n, double p, double a);

struct MarkovCheck {
    bool precondition_ok = false;  // empirical max <= a and mean >= b
    bool holds = false;            // P[X >= b/2] >= b/(2a) - slack
    double lhs = 0;
    double rhs = 0;
};

// Checks P[X >= b/2] >= b/(2a) on the empirical measure of the samples.
// The inequality holds exactly for any distribution with max <= a and
// mean >= b, so slack defaults to zero.
MarkovCheck markov_half_mean_check(std::span<const std::uint64_t> samples,
                                   double a, double b, double slack = 0.0);

struct TailCurve {
    std::vector<double> t;
    std::vector<double> tail;
    stats::LineFit logfit;  // log tail vs t, over points with tail > 0
};

// P[sup_{0<=i<=n} ||S_i|| >= t sqrt(n)] per t, with a log-linear decay fit.
TailCurve sup_tail_mc(int d, std::int64_t n, std::span<const double> t_grid,
                      std::uint64_t replicas, Seed seed);

// Empirical P[sum_{i=1}^n X_i >= a n] for i.i.d. positive integer draws from
// `sampler` (expected to have a stretched-exponential tail).
double nagaev_sum_tail_mc(const std::function<std::uint64_t(std::mt19937_64&)>& sampler,
                          std::int64_t n, double a, std::uint64_t replicas,
                          Seed seed);

// Stretched-exponential sampler X = ceil(E^{1/alpha}), E ~ Exp(1):
// P[X >= n] ~ exp(-(n-1)^alpha).
std::function<std::uint64_t(std::mt19937_64&)> stretched_exp_sampler(double alpha);

}  // namespace frog::srw
