#pragma once

// Monte Carlo oracle for the analytic results.
//
// Random source: replications are split into fixed-size batches of
// `sim_batch_size`. Batch b uses its own std::mt19937_64 seeded with
// splitmix64(seed + b * 0x9E3779B97F4A7C15). Batches may run on any number
// of threads; per-batch tallies are merged in batch order, so the estimate
// depends only on (seed, replications), never on the thread count.
//
// Gamma intensities: shape 1 uses inverse-transform exponential sampling
// (-scale * log U); other shapes use Marsaglia & Tsang's squeeze/rejection
// method, with the U^(1/shape) boost for shape < 1.

#include "distributions.hpp"
#include "errors.hpp"
#include "mixture_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace incidence {

inline constexpr std::uint64_t default_seed = 20100808;
inline constexpr std::uint64_t sim_batch_size = 1 << 16;

template <class Params>
struct sim_config {
    std::uint64_t replications;
    std::uint64_t seed;
    Params params;
    unsigned threads = 0; // 0: hardware concurrency
};

struct sim_estimate {
    double point;
    double std_error;
    std::uint64_t replications;

    static sim_estimate from_hits(std::uint64_t hits, std::uint64_t reps) {
        const double p = static_cast<double>(hits) / static_cast<double>(reps);
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)), reps};
    }

    // |point - target| measured in standard errors; exact agreement with a
    // zero standard error counts as 0.
    double z_score(double target) const {
        const double diff = std::abs(point - target);
        if (std_error == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
        return diff / std_error;
    }
};

struct sim_moments {
    double mean;
    double mean_std_error;
    double variance;
    double variance_std_error; // moment-based: sqrt((m4 - var^2) / n)
    std::uint64_t replications;
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class sim_stream {
public:
    using engine_type = std::mt19937_64;

    sim_stream(std::uint64_t seed, std::uint64_t batch)
        : engine_(splitmix64(seed + batch * 0x9E3779B97F4A7C15ull)) {}

    // Uniform on the open interval (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double scale) noexcept { return -scale * std::log(uniform()); }

    double normal() { return normal_(engine_); }

    double gamma(double shape, double scale) {
        if (shape == 1.0) return exponential(scale);
        if (shape < 1.0) return gamma(shape + 1.0, scale) * std::pow(uniform(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

    std::int64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<std::int64_t>(mean)(engine_);
    }

    // Number of marked items in `draws` taken without replacement from an urn
    // of `population` with `successes` marked.
    std::int64_t hypergeometric(const hypergeom_params& p) noexcept {
        // The count is symmetric in (successes, draws); walk the shorter one.
        std::int64_t steps = std::min(p.successes(), p.draws());
        std::int64_t marked = std::max(p.successes(), p.draws());
        std::int64_t remaining = p.population();
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < steps; ++i, --remaining) {
            if (uniform() * static_cast<double>(remaining) < static_cast<double>(marked)) {
                ++hits;
                --marked;
            }
        }
        return hits;
    }

private:
    engine_type engine_;
    std::normal_distribution<double> normal_;
};

namespace detail {

// Runs `body(stream, count)` for every batch and returns the per-batch
// results in batch order.
template <class Result, class Body>
std::vector<Result> run_batches(std::uint64_t replications, std::uint64_t seed, unsigned threads,
                                Body body) {
    const std::uint64_t batches = (replications + sim_batch_size - 1) / sim_batch_size;
    std::vector<Result> results(batches);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b; (b = next.fetch_add(1)) < batches;) {
            const std::uint64_t count =
                std::min<std::uint64_t>(sim_batch_size, replications - b * sim_batch_size);
            sim_stream stream(seed, b);
            results[b] = body(stream, count);
        }
    };
    unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::uint64_t>(n, batches));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    return results;
}

template <class Params, class Hit>
sim_estimate estimate_probability(const sim_config<Params>& cfg, Hit hit) {
    if (cfg.replications < 1) throw std::domain_error("simulation: replications must be >= 1");
    const auto per_batch = run_batches<std::uint64_t>(
        cfg.replications, cfg.seed, cfg.threads, [&](sim_stream& s, std::uint64_t count) {
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < count; ++i) hits += hit(s) ? 1 : 0;
            return hits;
        });
    std::uint64_t hits = 0;
    for (auto h : per_batch) hits += h;
    return sim_estimate::from_hits(hits, cfg.replications);
}

inline std::int64_t draw_mixture_count(sim_stream& s, const mixed_poisson_model& m) {
    const double intensity = s.gamma(m.rho(), m.intensity_scale());
    return s.poisson(intensity * m.t());
}

} // namespace detail

// Estimates P(N >= n) by sampling L ~ Gamma(rho, mu / rho), N ~ Poisson(L t).
inline sim_estimate simulate_mixture_tail(const sim_config<mixed_poisson_model>& cfg,
                                          std::int64_t n) {
    if (n <= 0) {
        if (cfg.replications < 1) throw std::domain_error("simulation: replications must be >= 1");
        return {1.0, 0.0, cfg.replications};
    }
    return detail::estimate_probability(
        cfg, [&](sim_stream& s) { return detail::draw_mixture_count(s, cfg.params) >= n; });
}

// Sample mean and variance of N under the mixture model.
inline sim_moments simulate_mixture_moments(const sim_config<mixed_poisson_model>& cfg) {
    if (cfg.replications < 2) throw std::domain_error("simulation: replications must be >= 2");
    struct sums {
        long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    };
    const auto per_batch = detail::run_batches<sums>(
        cfg.replications, cfg.seed, cfg.threads, [&](sim_stream& s, std::uint64_t count) {
            sums acc;
            for (std::uint64_t i = 0; i < count; ++i) {
                const auto x = static_cast<long double>(detail::draw_mixture_count(s, cfg.params));
                acc.s1 += x;
                acc.s2 += x * x;
                acc.s3 += x * x * x;
                acc.s4 += x * x * x * x;
            }
            return acc;
        });
    sums t;
    for (const auto& b : per_batch) {
        t.s1 += b.s1;
        t.s2 += b.s2;
        t.s3 += b.s3;
        t.s4 += b.s4;
    }
    const long double n = static_cast<long double>(cfg.replications);
    const long double m = t.s1 / n;
    const long double var = t.s2 / n - m * m;
    const long double m4 =
        t.s4 / n - 4 * m * t.s3 / n + 6 * m * m * t.s2 / n - 3 * m * m * m * m;
    const long double unbiased = var * n / (n - 1);
    return {static_cast<double>(m), static_cast<double>(std::sqrt(unbiased / n)),
            static_cast<double>(unbiased),
            static_cast<double>(std::sqrt(std::max<long double>(0, m4 - var * var) / n)),
            cfg.replications};
}

// Estimates P(L1 >= k L2 or L2 >= k L1) for independent exponential
// intensities. Only defined for rho = 1.
inline sim_estimate simulate_rate_ratio(const sim_config<mixed_poisson_model>& cfg, double k) {
    if (cfg.params.rho() != 1.0)
        throw unsupported_configuration("simulate_rate_ratio: requires rho = 1 (exponential intensities)");
    if (!(k >= 1.0)) throw std::domain_error("simulate_rate_ratio: ratio must be at least 1");
    const double scale = cfg.params.mu();
    return detail::estimate_probability(cfg, [&](sim_stream& s) {
        const double a = s.exponential(scale);
        const double b = s.exponential(scale);
        return a >= k * b || b >= k * a;
    });
}

// Estimates P(X >= observed) under uniform random allocation of shifts.
inline sim_estimate simulate_allocation(const sim_config<hypergeom_params>& cfg,
                                        std::int64_t observed) {
    if (observed <= 0) {
        if (cfg.replications < 1) throw std::domain_error("simulation: replications must be >= 1");
        return {1.0, 0.0, cfg.replications};
    }
    return detail::estimate_probability(
        cfg, [&](sim_stream& s) { return s.hypergeometric(cfg.params) >= observed; });
}

} // namespace incidence
