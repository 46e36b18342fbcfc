#pragma once

#include <waldgame/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

namespace waldgame {

struct LevelValue {
    std::int64_t level;
    Rational value;
};

/// Finitary stand-in for lim_{n→∞}: the last value of an increasing level
/// schedule, plus the whole trajectory that produced it.
struct LimitEstimate {
    Rational estimate;
    bool converged = false;
    std::vector<LevelValue> history;
    double tolerance = 0.0;

    double estimate_value() const { return to_double(estimate); }

    /// |last − second-to-last|, or infinity with fewer than two levels.
    double last_step() const {
        if (history.size() < 2) return std::numeric_limits<double>::infinity();
        return to_double(abs_rational(history.back().value - history[history.size() - 2].value));
    }
};

/// n0, 2·n0, 4·n0, ... up to and including n_max.
inline std::vector<std::int64_t> doubling_schedule(std::int64_t n0, std::int64_t n_max) {
    if (n0 < 1) throw std::invalid_argument("schedule start must be positive");
    if (n0 > n_max) throw std::invalid_argument("schedule start exceeds its maximum level");
    std::vector<std::int64_t> levels;
    for (std::int64_t n = n0; n <= n_max; n *= 2) {
        levels.push_back(n);
        if (n > n_max / 2) break;
    }
    return levels;
}

/// Evaluates `value_at` on every level (optionally on `workers` threads; the
/// result does not depend on the worker count) and applies the two-step test.
inline LimitEstimate estimate_limit(const std::vector<std::int64_t>& levels,
                                    const std::function<Rational(std::int64_t)>& value_at, double tol,
                                    unsigned workers = 1) {
    if (levels.empty()) throw std::invalid_argument("empty level schedule");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    LimitEstimate out;
    out.tolerance = tol;
    out.history.resize(levels.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < levels.size(); ++i) out.history[i] = {levels[i], value_at(levels[i])};
    } else {
        std::vector<std::future<Rational>> pending;
        pending.reserve(levels.size());
        const unsigned batch = std::max(1u, workers);
        for (std::size_t start = 0; start < levels.size(); start += batch) {
            pending.clear();
            const std::size_t stop = std::min(levels.size(), start + batch);
            for (std::size_t i = start; i < stop; ++i)
                pending.push_back(std::async(std::launch::async, value_at, levels[i]));
            for (std::size_t i = start; i < stop; ++i) out.history[i] = {levels[i], pending[i - start].get()};
        }
    }
    out.estimate = out.history.back().value;
    out.converged = out.last_step() <= tol;
    return out;
}

}  // namespace waldgame
