#include "ssrjd/monte_carlo.hpp"

#include "ssrjd/detail/exercise.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ssrjd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void checkConfig(const McConfig& cfg) {
    if (cfg.paths < 2) throw ArgumentError("Monte Carlo: need at least two paths");
    if (cfg.stepsPerYear <= 0) throw ArgumentError("Monte Carlo: steps per year must be positive");
}

}  // namespace

std::vector<PathSample> simulatePaths(const IntensityParams& p, double horizon,
                                      const McConfig& cfg) {
    checkConfig(cfg);
    if (!(horizon >= 0.0)) throw ArgumentError("Monte Carlo: horizon must be nonnegative");
    if (!(p.y0 >= 0.0 && p.kappa >= 0.0 && p.nu >= 0.0 && p.alpha >= 0.0 && p.gamma >= 0.0)) {
        throw ArgumentError("Monte Carlo: parameters must be nonnegative");
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(horizon * cfg.stepsPerYear - 1e-9)));
    const double dt = horizon / steps;
    const double sqrtDt = std::sqrt(dt);
    const std::uint64_t base = splitmix64(cfg.seed);

    std::vector<PathSample> out(cfg.paths);
    std::normal_distribution<double> normal;
    std::poisson_distribution<int> arrivals(std::max(p.alpha * dt, 1e-300));
    for (std::size_t i = 0; i < cfg.paths; ++i) {
        std::mt19937_64 rng(splitmix64(base ^ splitmix64(i)));
        normal.reset();
        double y = p.y0;
        double integral = 0.0;
        if (horizon > 0.0) {
            for (int s = 0; s < steps; ++s) {
                const double yp = std::max(y, 0.0);
                double next = y + p.kappa * (p.mu - yp) * dt + p.nu * std::sqrt(yp) * sqrtDt * normal(rng);
                if (p.alpha > 0.0) {
                    const int n = arrivals(rng);
                    if (n > 0) {
                        next += std::gamma_distribution<double>(n, p.gamma)(rng);
                    }
                }
                integral += 0.5 * (yp + std::max(next, 0.0)) * dt;
                y = next;
            }
        }
        out[i] = {std::max(y, 0.0), integral};
    }
    return out;
}

McEstimate summarize(std::span<const double> values) {
    if (values.size() < 2) throw ArgumentError("summarize: need at least two values");
    CompensatedSum s;
    for (double v : values) s.add(v);
    const double n = static_cast<double>(values.size());
    const double mean = s.value() / n;
    CompensatedSum sq;
    for (double v : values) sq.add((v - mean) * (v - mean));
    const double variance = sq.value() / (n - 1.0);
    return {mean, std::sqrt(variance / n), values.size()};
}

McEstimate mcMeanFactor(const IntensityParams& p, double horizon, const McConfig& cfg) {
    std::vector<double> v;
    for (const PathSample& s : simulatePaths(p, horizon, cfg)) v.push_back(s.terminal);
    return summarize(v);
}

McEstimate mcSurvival(const IntensityParams& p, double horizon, const McConfig& cfg) {
    std::vector<double> v;
    for (const PathSample& s : simulatePaths(p, horizon, cfg)) v.push_back(std::exp(-s.integral));
    return summarize(v);
}

McEstimate mcTruncatedTransform(const IntensityParams& p, double horizon, double sigma, double rho,
                                const McConfig& cfg) {
    std::vector<double> v;
    for (const PathSample& s : simulatePaths(p, horizon, cfg)) {
        v.push_back(s.terminal >= sigma ? std::exp(-rho * s.terminal - s.integral) : 0.0);
    }
    return summarize(v);
}

std::vector<McEstimate> mcSwaptionPrices(const Model& m, const DiscountCurve& curve,
                                         const SwaptionSpec& spec, std::span<const double> strikes,
                                         double t, double yt, const McConfig& cfg) {
    spec.validate();
    const double Ta = spec.optionMaturity();
    if (!(t >= 0.0 && t <= Ta)) throw ArgumentError("Monte Carlo: require 0 <= t <= T_a");
    IntensityParams start = m.params;
    start.y0 = yt;
    const std::vector<PathSample> paths = simulatePaths(start, Ta - t, cfg);
    const double outer = curve.discount(t, Ta) * std::exp(-m.shift.integral(t, Ta));

    std::vector<McEstimate> out;
    std::vector<double> values(paths.size());
    for (double K : strikes) {
        const detail::ExerciseBoundary eb(m, curve, spec.schedule, K, spec.lossGivenDefault,
                                          cfg.innerSubintervalsPerPeriod);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const double inner = std::max(eb.lossGivenDefault() - eb.value(paths[i].terminal), 0.0);
            values[i] = outer * std::exp(-paths[i].integral) * inner;
        }
        out.push_back(summarize(values));
    }
    return out;
}

McEstimate mcSwaptionPrice(const Model& m, const DiscountCurve& curve, const SwaptionSpec& spec,
                           double t, double yt, const McConfig& cfg) {
    const double K = spec.strike;
    return mcSwaptionPrices(m, curve, spec, std::span<const double>(&K, 1), t, yt, cfg).front();
}

}  // namespace ssrjd
