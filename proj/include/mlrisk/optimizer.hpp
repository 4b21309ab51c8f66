#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mlrisk/cost.hpp"
#include "mlrisk/domain.hpp"

namespace mlrisk {

enum class Strategy : std::uint8_t { ExhaustiveGrid, CoordinateDescent };

/// Search space of the coordinate-descent heuristic.
enum class SearchDomain : std::uint8_t {
    Continuous,  // every coordinate in [min_score, 1]
    Lattice,     // the same grid the exhaustive search enumerates
};

struct OptimizationConfig {
    double min_score = 0.1;
    double grid_step = 0.1;
    Strategy strategy = Strategy::ExhaustiveGrid;
    int max_iterations = 100;  // coordinate sweeps per restart
    int restarts = 8;
    std::uint64_t seed = 0x5eed;
    std::uint64_t budget = 10'000'000;  // max grid points for the exhaustive search
    unsigned threads = 1;
    SearchDomain domain = SearchDomain::Continuous;
    bool record_trace = false;
    /// Called with the running evaluation count. May be called from worker threads.
    std::function<void(std::uint64_t)> on_progress;
};

struct TracePoint {
    int iteration = 0;
    double ratio = 0.0;
    bool operator==(const TracePoint&) const = default;
};

struct OptimizationResult {
    std::vector<std::string> factor_ids;
    std::vector<double> best_scores;
    double best_ratio = kInfeasibleRatio;
    std::uint64_t evaluations = 0;
    bool feasible = false;  // false when every point has zero selected coverage
    std::vector<TracePoint> trace;

    bool operator==(const OptimizationResult&) const = default;
};

/// Grid values {min, min+step, ...} with 1 appended when the step does not land on it.
/// Values are rounded to 12 decimals so 0.1-steps come out as the nearest doubles to 0.2, 0.3, ...
inline std::vector<double> grid_points(double min_score, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidConfig("grid step must be > 0");
    if (!(min_score >= 0.0 && min_score < 1.0)) throw InvalidConfig("min score must lie in [0, 1)");
    auto snap = [](double v) { return std::round(v * 1e12) / 1e12; };
    std::vector<double> points;
    const auto count = static_cast<std::size_t>(std::floor((1.0 - min_score) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) points.push_back(std::min(1.0, snap(min_score + step * k)));
    if (points.back() < 1.0 - 1e-9) points.push_back(1.0);
    if (points.size() < 2) throw InvalidConfig("grid must contain at least two points");
    return points;
}

namespace detail {

inline void check_config(const OptimizationConfig& cfg) {
    if (!(cfg.min_score >= 0.0 && cfg.min_score < 1.0)) throw InvalidConfig("min score must lie in [0, 1)");
    if (cfg.restarts < 1) throw InvalidConfig("restarts must be >= 1");
    if (cfg.max_iterations < 1) throw InvalidConfig("max iterations must be >= 1");
    grid_points(cfg.min_score, cfg.grid_step);
}

inline std::uint64_t saturating_power(std::uint64_t base, std::size_t exponent) {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        result *= base;
    }
    return result;
}

/// Strictly better, or equal ratio and lexicographically smaller.
inline bool better(double ratio, const std::vector<double>& scores, double best_ratio,
                   const std::vector<double>& best_scores) {
    if (best_scores.empty()) return true;
    if (ratio != best_ratio) return ratio < best_ratio;
    return std::lexicographical_compare(scores.begin(), scores.end(), best_scores.begin(), best_scores.end());
}

struct GridBest {
    std::vector<double> scores;
    double ratio = kInfeasibleRatio;
};

/// Enumerates the grid points whose first index lies in [first_begin, first_end), in
/// lexicographic order. Keeps the first strict minimum so ties resolve to the smallest vector.
inline GridBest scan_grid(const EfficiencyObjective& objective, const std::vector<double>& points,
                          std::size_t first_begin, std::size_t first_end,
                          const std::function<void()>& tick) {
    const std::size_t n = objective.dimension();
    GridBest best;
    if (n == 0 || first_begin >= first_end) return best;
    std::vector<std::size_t> idx(n, 0);
    idx[0] = first_begin;
    std::vector<double> scores(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) scores[i] = points[idx[i]];
        const double r = objective(scores);
        if (r < best.ratio) {
            best.ratio = r;
            best.scores = scores;
        }
        if (tick) tick();
        std::size_t d = n;
        while (d > 0) {
            --d;
            if (++idx[d] < (d == 0 ? first_end : points.size())) break;
            if (d == 0) return best;
            idx[d] = 0;
        }
    }
}

}  // namespace detail

/// Global minimum of the efficiency ratio over {min_score, min_score + step, ..., 1}^n.
/// Ties go to the lexicographically smallest score vector; the result does not depend on
/// cfg.threads. Throws BudgetExceeded when the grid is larger than cfg.budget.
inline OptimizationResult optimize_exhaustive(const Assessment& a, const OptimizationConfig& cfg = {}) {
    detail::check_config(cfg);
    const EfficiencyObjective objective(a);
    const auto points = grid_points(cfg.min_score, cfg.grid_step);
    const std::size_t n = objective.dimension();
    const std::uint64_t combinations = detail::saturating_power(points.size(), n);
    if (combinations > cfg.budget) throw BudgetExceeded(combinations);

    OptimizationResult result;
    result.factor_ids = objective.factor_ids();
    if (n == 0) return result;

    std::atomic<std::uint64_t> done{0};
    std::function<void()> tick;
    if (cfg.on_progress) {
        tick = [&] {
            const auto count = done.fetch_add(1, std::memory_order_relaxed) + 1;
            if (count % 65536 == 0) cfg.on_progress(count);
        };
    }

    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, points.size());
    std::vector<detail::GridBest> partial(workers);
    auto chunk = [&](std::size_t w) {
        const std::size_t begin = points.size() * w / workers;
        const std::size_t end = points.size() * (w + 1) / workers;
        partial[w] = detail::scan_grid(objective, points, begin, end, tick);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
        for (auto& t : pool) t.join();
    }

    // Chunks cover increasing first coordinates, so a strict '<' keeps the sequential tie-break.
    for (const auto& p : partial) {
        if (p.ratio < result.best_ratio) {
            result.best_ratio = p.ratio;
            result.best_scores = p.scores;
        }
    }
    result.evaluations = combinations;
    result.feasible = std::isfinite(result.best_ratio);
    if (!result.feasible) result.best_scores.assign(n, points.front());
    if (cfg.on_progress) cfg.on_progress(combinations);
    return result;
}

namespace detail {

inline constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

/// Golden-section search for the minimum of f on [lo, hi]. Returns the best point seen,
/// including the two end points.
template <typename F>
double golden_section(F&& f, double lo, double hi, double tolerance, std::uint64_t& evaluations) {
    double best_x = lo;
    double best_f = f(lo);
    const double f_hi = f(hi);
    evaluations += 2;
    if (f_hi < best_f) {
        best_x = hi;
        best_f = f_hi;
    }
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evaluations += 2;
    while (b - a > tolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        ++evaluations;
    }
    for (auto [x, fx] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (fx < best_f) {
            best_x = x;
            best_f = fx;
        }
    }
    return best_x;
}

/// Discrete counterpart over indices [0, size). Narrows with golden ratios, then scans what is left.
template <typename F>
std::size_t golden_section_index(F&& f, std::size_t size, std::uint64_t& evaluations) {
    std::size_t a = 0;
    std::size_t b = size - 1;
    while (b - a > 3) {
        const auto span = static_cast<double>(b - a);
        auto c = a + static_cast<std::size_t>(std::floor((1.0 - kInvPhi) * span));
        auto d = a + static_cast<std::size_t>(std::ceil(kInvPhi * span));
        if (c == d) ++d;
        evaluations += 2;
        if (f(c) <= f(d))
            b = d;
        else
            a = c;
    }
    std::size_t best = a;
    double best_f = f(a);
    ++evaluations;
    for (std::size_t k = a + 1; k <= b; ++k) {
        const double v = f(k);
        ++evaluations;
        if (v < best_f) {
            best_f = v;
            best = k;
        }
    }
    for (std::size_t k : {std::size_t{0}, size - 1}) {
        const double v = f(k);
        ++evaluations;
        if (v < best_f) {
            best_f = v;
            best = k;
        }
    }
    return best;
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Coordinate descent with a golden-section line search per coordinate, restarted from
/// seeded random points. Never returns a point worse than any restart's start point and is
/// deterministic for a fixed seed.
inline OptimizationResult optimize_heuristic(const Assessment& a, const OptimizationConfig& cfg = {}) {
    detail::check_config(cfg);
    const EfficiencyObjective objective(a);
    const std::size_t n = objective.dimension();
    const auto lattice = grid_points(cfg.min_score, cfg.grid_step);
    const bool on_lattice = cfg.domain == SearchDomain::Lattice;

    OptimizationResult result;
    result.factor_ids = objective.factor_ids();
    if (n == 0) return result;

    std::mt19937_64 rng(cfg.seed);
    std::vector<double> best_scores;
    double best_ratio = kInfeasibleRatio;
    int iteration = 0;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::vector<double> x(n);
        for (auto& v : x) {
            const double u = detail::unit_uniform(rng);
            v = on_lattice ? lattice[std::min(lattice.size() - 1, static_cast<std::size_t>(u * lattice.size()))]
                           : cfg.min_score + u * (1.0 - cfg.min_score);
        }
        double fx = objective(x);
        ++result.evaluations;

        for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
            const double before = fx;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> probe = x;
                auto along = [&](double v) {
                    probe[i] = v;
                    return objective(probe);
                };
                double candidate;
                if (on_lattice) {
                    const auto k = detail::golden_section_index(
                        [&](std::size_t idx) { return along(lattice[idx]); }, lattice.size(), result.evaluations);
                    candidate = lattice[k];
                } else {
                    candidate = detail::golden_section(along, cfg.min_score, 1.0, 1e-10, result.evaluations);
                }
                const double fc = along(candidate);
                ++result.evaluations;
                if (fc < fx) {
                    x[i] = candidate;
                    fx = fc;
                }
            }
            ++iteration;
            if (cfg.record_trace) result.trace.push_back({iteration, fx});
            const bool stalled = std::isfinite(before) ? before - fx <= 1e-12 * std::abs(before) : fx == before;
            if (stalled) break;
        }

        if (detail::better(fx, x, best_ratio, best_scores)) {
            best_ratio = fx;
            best_scores = x;
        }
        if (cfg.on_progress) cfg.on_progress(result.evaluations);
    }

    result.best_scores = best_scores;
    result.best_ratio = best_ratio;
    result.feasible = std::isfinite(best_ratio);
    return result;
}

inline OptimizationResult optimize(const Assessment& a, const OptimizationConfig& cfg = {}) {
    return cfg.strategy == Strategy::ExhaustiveGrid ? optimize_exhaustive(a, cfg) : optimize_heuristic(a, cfg);
}

}  // namespace mlrisk
