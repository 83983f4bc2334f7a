// srw.cpp
#include "frog/srw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace frog::srw {

// ---------------------- SrwDp ----------------------

SrwDp::SrwDp(int d, std::int64_t window_radius, bool accumulate_green,
             std::size_t cell_budget)
    : d_(d), radius_(window_radius), green_on_(accumulate_green) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("SrwDp: bad dimension");
    if (radius_ < 0) throw std::invalid_argument("SrwDp: window_radius >= 0");
    side_ = 2 * (radius_ + 1) + 1;  // one-cell zero pad on every face
    double cells = 1;
    for (int i = 0; i < d_; ++i) cells *= static_cast<double>(side_);
    if (cells > static_cast<double>(cell_budget))
        throw std::invalid_argument("SrwDp: window exceeds the dense cell budget");
    std::int64_t stride = 1;
    for (int i = d_ - 1; i >= 0; --i) {
        stride_[static_cast<std::size_t>(i)] = stride;
        stride *= side_;
    }
    const std::size_t total = static_cast<std::size_t>(cells);
    cur_.assign(total, 0.0);
    prev_.assign(total, 0.0);
    if (green_on_) green_.assign(total, 0.0);
    const std::int64_t origin = index_of(Point(d_));
    cur_[static_cast<std::size_t>(origin)] = 1.0;
    if (green_on_) green_[static_cast<std::size_t>(origin)] = 1.0;
}

std::int64_t SrwDp::index_of(const Point& x) const {
    std::int64_t idx = 0;
    for (int i = 0; i < d_; ++i) {
        const std::int64_t c = x[i];
        if (c < -radius_ - 1 || c > radius_ + 1) return -1;
        idx += (c + radius_ + 1) * stride_[static_cast<std::size_t>(i)];
    }
    return idx;
}

void SrwDp::point_of(std::int64_t idx, Point& out) const {
    for (int i = 0; i < d_; ++i) {
        const std::int64_t s = stride_[static_cast<std::size_t>(i)];
        out[i] = idx / s - radius_ - 1;
        idx %= s;
    }
}

void SrwDp::step() {
    ++n_;
    std::swap(cur_, prev_);
    const double w = 1.0 / (2.0 * d_);
    const double* prev = prev_.data();
    double* cur = cur_.data();
    double* green = green_on_ ? green_.data() : nullptr;

    // Walk the interior (|c_i| <= radius) with an odometer over the leading
    // d-1 axes and a tight loop over the last one. The pad ring stays zero,
    // so neighbor reads never need bounds checks.
    std::array<std::int64_t, kMaxDim> coord{};
    coord.fill(-radius_);
    const std::int64_t last_stride = stride_[static_cast<std::size_t>(d_ - 1)];  // == 1
    while (true) {
        std::int64_t base = 0;
        for (int i = 0; i + 1 < d_; ++i)
            base += (coord[static_cast<std::size_t>(i)] + radius_ + 1) *
                    stride_[static_cast<std::size_t>(i)];
        std::int64_t idx = base + last_stride;  // last coord = -radius
        for (std::int64_t c = -radius_; c <= radius_; ++c, ++idx) {
            double acc = prev[idx - 1] + prev[idx + 1];
            for (int a = 0; a + 1 < d_; ++a) {
                const std::int64_t s = stride_[static_cast<std::size_t>(a)];
                acc += prev[idx - s] + prev[idx + s];
            }
            cur[idx] = w * acc;
            if (green) green[idx] += cur[idx];
        }
        // Odometer over axes d-2 .. 0.
        int axis = d_ - 2;
        while (axis >= 0 && ++coord[static_cast<std::size_t>(axis)] > radius_) {
            coord[static_cast<std::size_t>(axis)] = -radius_;
            --axis;
        }
        if (axis < 0) break;
    }
}

void SrwDp::run_to(std::int64_t n) {
    if (n > radius_)
        throw std::invalid_argument("SrwDp: n exceeds the window radius");
    while (n_ < n) step();
}

double SrwDp::value(const Point& x) const {
    const std::int64_t idx = index_of(x);
    return idx < 0 ? 0.0 : cur_[static_cast<std::size_t>(idx)];
}

double SrwDp::green(const Point& x) const {
    if (!green_on_) throw std::logic_error("SrwDp: green accumulation disabled");
    const std::int64_t idx = index_of(x);
    return idx < 0 ? 0.0 : green_[static_cast<std::size_t>(idx)];
}

double SrwDp::sum() const {
    double s = 0, c = 0;
    for (double v : cur_) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

void SrwDp::for_each_support(
    const std::function<void(const Point&, double)>& fn) const {
    Point p(d_);
    for (std::size_t idx = 0; idx < cur_.size(); ++idx) {
        if (cur_[idx] != 0.0) {
            point_of(static_cast<std::int64_t>(idx), p);
            fn(p, cur_[idx]);
        }
    }
}

double SrwDp::max_clt_error() const {
    double max_err = 0;
    Point p(d_);
    for (std::size_t idx = 0; idx < cur_.size(); ++idx) {
        point_of(static_cast<std::int64_t>(idx), p);
        if (l1_norm(p) > n_) continue;
        if (((l1_norm(p) ^ n_) & 1) != 0) continue;  // parity-null site
        const double err = std::fabs(cur_[idx] - clt_pn(d_, n_, p));
        if (err > max_err) max_err = err;
    }
    return max_err;
}

SrwDp exact_pn(int d, std::int64_t n, std::int64_t window_radius) {
    if (window_radius < n)
        throw std::invalid_argument("exact_pn: window smaller than D_n");
    SrwDp dp(d, window_radius);
    dp.run_to(n);
    return dp;
}

// ---------------------- CLT term and fits ----------------------

double clt_pn(int d, std::int64_t n, const Point& x) {
    if (n < 1) throw std::invalid_argument("clt_pn: n >= 1");
    if (((l1_norm(x) ^ n) & 1) != 0)
        throw std::invalid_argument("clt_pn: parity of x does not match parity of n");
    const double nd = static_cast<double>(n);
    const double r2 = l2_norm(x) * l2_norm(x);
    const double amp = 2.0 / std::pow(nd, d / 2.0) *
                       std::pow(d / (2.0 * std::numbers::pi), d / 2.0);
    return amp * std::exp(-d * r2 / (2.0 * nd));
}

stats::LineFit clt_error_fit(int d, std::span<const std::int64_t> n_grid) {
    if (n_grid.size() < 2) throw std::invalid_argument("clt_error_fit: need a grid");
    const std::int64_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
    SrwDp dp(d, n_max);
    std::vector<double> lx, ly;
    std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
    std::sort(grid.begin(), grid.end());
    for (std::int64_t n : grid) {
        dp.run_to(n);
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(dp.max_clt_error()));
    }
    return stats::fit_line(lx, ly);
}

double green_fn(int d, std::int64_t n, const Point& x) {
    SrwDp dp(d, n, /*accumulate_green=*/true);
    dp.run_to(n);
    return dp.green(x);
}

double escape_probability(int d, std::int64_t n0) {
    if (d < 3) throw std::invalid_argument("escape_probability: d >= 3");
    if (n0 % 2 != 0) ++n0;
    SrwDp dp(d, n0, /*accumulate_green=*/true);
    dp.run_to(n0);
    const double g0 = dp.green(Point(d));
    // Tail of G(0): sum the admissible-parity CLT term beyond n0, then an
    // integral remainder beyond 10^7.
    const double amp = 2.0 * std::pow(d / (2.0 * std::numbers::pi), d / 2.0);
    const std::int64_t big = 10'000'000;
    double tail = 0, c = 0;
    for (std::int64_t j = n0 + 2; j <= big; j += 2) {
        const double term = amp * std::pow(static_cast<double>(j), -d / 2.0);
        double y = term - c;
        double t = tail + y;
        c = (t - tail) - y;
        tail = t;
    }
    // Every other integer is admissible: integral of amp/2 * t^{-d/2}.
    tail += 0.5 * amp * std::pow(static_cast<double>(big), 1.0 - d / 2.0) /
            (d / 2.0 - 1.0);
    return 1.0 / (g0 + tail);
}

// ---------------------- Monte Carlo ----------------------

McEstimate hitting_prob_mc(int d, std::int64_t n, const Point& x,
                           std::uint64_t replicas, Seed seed) {
    if (replicas == 0) throw std::invalid_argument("hitting_prob_mc: replicas >= 1");
    const Point origin(d);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < replicas; ++r) {
        const std::uint64_t h = walk_hash(Seed{child_seed(seed.value, r)}, origin);
        Point pos = origin;
        if (pos == x) {
            ++hits;
            continue;
        }
        for (std::int64_t k = 1; k <= n; ++k) {
            pos.move(step_dir(h, static_cast<std::uint64_t>(k), d));
            if (pos == x) {
                ++hits;
                break;
            }
        }
    }
    McEstimate est;
    est.replicas = replicas;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(replicas);
    est.sigma = stats::binomial_sigma(est.p_hat, replicas);
    return est;
}

RangeEstimate range_mc(int d, std::int64_t n, std::uint64_t replicas, Seed seed) {
    if (replicas == 0) throw std::invalid_argument("range_mc: replicas >= 1");
    std::vector<double> counts;
    counts.reserve(replicas);
    std::unordered_set<Point, PointHash> visited;
    const Point origin(d);
    for (std::uint64_t r = 0; r < replicas; ++r) {
        visited.clear();
        const std::uint64_t h = walk_hash(Seed{child_seed(seed.value, r)}, origin);
        Point pos = origin;
        visited.insert(pos);
        for (std::int64_t k = 1; k <= n; ++k) {
            pos.move(step_dir(h, static_cast<std::uint64_t>(k), d));
            visited.insert(pos);
        }
        counts.push_back(static_cast<double>(visited.size()));
    }
    RangeEstimate est;
    est.replicas = replicas;
    est.mean = stats::mean(counts);
    est.sigma = std::sqrt(stats::variance(counts) / static_cast<double>(replicas));
    return est;
}

double rate_H(double a, double p) {
    if (!(p > 0 && p < a && a < 1))
        throw std::invalid_argument("rate_H: need 0 < p < a < 1");
    return a * std::log(a / p) + (1 - a) * std::log((1 - a) / (1 - p));
}

TailPair binomial_tail_check(std::int64_t n, double p, double a) {
    if (!(p > 0 && p < a && a < 1))
        throw std::invalid_argument("binomial_tail_check: need 0 < p < a < 1");
    if (n < 1 || n > 100'000)
        throw std::invalid_argument("binomial_tail_check: N out of range");
    const std::int64_t k =
        static_cast<std::int64_t>(std::ceil(a * static_cast<double>(n) - 1e-12));
    TailPair pair{};
    pair.exact = stats::binomial_upper_tail(n, p, k);
    pair.bound = std::exp(-static_cast<double>(n) * rate_H(a, p));
    return pair;
}

MarkovCheck markov_half_mean_check(std::span<const std::uint64_t> samples,
                                   double a, double b, double slack) {
    MarkovCheck out;
    if (samples.empty() || a <= 0 || b <= 0) return out;
    std::uint64_t max_v = 0;
    double sum = 0;
    std::uint64_t at_least = 0;
    for (std::uint64_t v : samples) {
        max_v = std::max(max_v, v);
        sum += static_cast<double>(v);
        if (static_cast<double>(v) >= b / 2.0) ++at_least;
    }
    const double mean = sum / static_cast<double>(samples.size());
    out.precondition_ok = static_cast<double>(max_v) <= a && mean >= b;
    out.lhs = static_cast<double>(at_least) / static_cast<double>(samples.size());
    out.rhs = b / (2.0 * a) - slack;
    out.holds = out.precondition_ok && out.lhs >= out.rhs;
    return out;
}

TailCurve sup_tail_mc(int d, std::int64_t n, std::span<const double> t_grid,
                      std::uint64_t replicas, Seed seed) {
    if (replicas == 0) throw std::invalid_argument("sup_tail_mc: replicas >= 1");
    std::vector<double> sups;
    sups.reserve(replicas);
    const Point origin(d);
    for (std::uint64_t r = 0; r < replicas; ++r) {
        const std::uint64_t h = walk_hash(Seed{child_seed(seed.value, r)}, origin);
        Point pos = origin;
        double sup = 0;
        for (std::int64_t k = 1; k <= n; ++k) {
            pos.move(step_dir(h, static_cast<std::uint64_t>(k), d));
            sup = std::max(sup, l2_norm(pos));
        }
        sups.push_back(sup);
    }
    const double scale = std::sqrt(static_cast<double>(n));
    TailCurve curve;
    std::vector<double> fit_t, fit_log;
    for (double t : t_grid) {
        std::uint64_t count = 0;
        for (double s : sups)
            if (s >= t * scale) ++count;
        const double tail = static_cast<double>(count) / static_cast<double>(replicas);
        curve.t.push_back(t);
        curve.tail.push_back(tail);
        if (tail > 0 && t > 0) {
            fit_t.push_back(t);
            fit_log.push_back(std::log(tail));
        }
    }
    if (fit_t.size() >= 2) curve.logfit = stats::fit_line(fit_t, fit_log);
    return curve;
}

double nagaev_sum_tail_mc(
    const std::function<std::uint64_t(std::mt19937_64&)>& sampler,
    std::int64_t n, double a, std::uint64_t replicas, Seed seed) {
    if (replicas == 0) throw std::invalid_argument("nagaev_sum_tail_mc: replicas >= 1");
    std::uint64_t exceed = 0;
    const double threshold = a * static_cast<double>(n);
    for (std::uint64_t r = 0; r < replicas; ++r) {
        std::mt19937_64 rng(child_seed(seed.value, r));
        double sum = 0;
        for (std::int64_t i = 0; i < n; ++i)
            sum += static_cast<double>(sampler(rng));
        if (sum >= threshold) ++exceed;
    }
    return static_cast<double>(exceed) / static_cast<double>(replicas);
}

std::function<std::uint64_t(std::mt19937_64&)> stretched_exp_sampler(double alpha) {
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("stretched_exp_sampler: 0 < alpha < 1");
    return [alpha](std::mt19937_64& rng) {
        const double e = -std::log(u01(rng()));
        const double v = std::ceil(std::pow(e, 1.0 / alpha));
        return v < 1.0 ? std::uint64_t{1} : static_cast<std::uint64_t>(v);
    };
}

}  // namespace frog::srw
