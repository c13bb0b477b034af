#include "fixtures.hpp"

#include "ssrjd/cds.hpp"
#include "ssrjd/monte_carlo.hpp"
#include "ssrjd/reference_sets.hpp"
#include "ssrjd/survival.hpp"

#include <doctest.h>

#include <vector>

using namespace ssrjd;

TEST_SUITE("mc") {

TEST_CASE("same seed, same paths; prefixes are stable") {
    const IntensityParams p = fixture::modelParams(0);
    McConfig cfg;
    cfg.paths = 500;
    const std::vector<PathSample> a = simulatePaths(p, 1.0, cfg);
    const std::vector<PathSample> b = simulatePaths(p, 1.0, cfg);
    cfg.paths = 100;
    const std::vector<PathSample> c = simulatePaths(p, 1.0, cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].terminal == b[i].terminal);
        CHECK(a[i].integral == b[i].integral);
    }
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i].terminal == a[i].terminal);
    cfg.seed += 1;
    CHECK(simulatePaths(p, 1.0, cfg)[0].terminal != a[0].terminal);
}

TEST_CASE("deterministic limit follows the mean-reversion ODE") {
    const IntensityParams p{0.05, 0.8, 0.01, 1e-12, 0.0, 0.01};
    McConfig cfg;
    cfg.paths = 10;
    for (int steps : {250, 1000}) {
        cfg.stepsPerYear = steps;
        const std::vector<PathSample> x = simulatePaths(p, 2.0, cfg);
        const double exact = p.mu + (p.y0 - p.mu) * std::exp(-p.kappa * 2.0);
        const double integral = p.mu * 2.0 + (p.y0 - p.mu) * (1.0 - std::exp(-p.kappa * 2.0)) / p.kappa;
        const double dt = 1.0 / steps;
        CHECK(std::abs(x[0].terminal - exact) < 2.0 * dt * p.kappa * (p.y0 - p.mu));
        CHECK(std::abs(x[0].integral - integral) < 2.0 * dt * (p.y0 - p.mu));
    }
}

TEST_CASE("first moment") {
    McConfig cfg;
    cfg.paths = 100'000;
    for (int i = 0; i < 3; ++i) {
        const IntensityParams p = fixture::modelParams(i);
        for (double T : {1.0, 3.0}) {
            const McEstimate e = mcMeanFactor(p, T, cfg);
            const double decay = std::exp(-p.kappa * T);
            const double exact = p.y0 * decay + (p.mu + p.alpha * p.gamma / p.kappa) * (1.0 - decay);
            CHECK(std::abs(e.mean - exact) <= 3.0 * e.standardError);
        }
    }
}

TEST_CASE("survival against the closed form") {
    McConfig cfg;
    cfg.paths = 100'000;
    for (int i = 0; i < 3; ++i) {
        const IntensityParams p = fixture::modelParams(i);
        const McEstimate e = mcSurvival(p, 3.0, cfg);
        const double exact = survival(fixture::model(p), 0.0, 3.0, p.y0);
        CHECK(std::abs(e.mean - exact) <= 3.0 * e.standardError);
    }
}

TEST_CASE("standard error shrinks like one over root n") {
    const IntensityParams p = fixture::modelParams(1);
    McConfig cfg;
    cfg.paths = 10'000;
    const double small = mcMeanFactor(p, 1.0, cfg).standardError;
    cfg.paths = 40'000;
    const double large = mcMeanFactor(p, 1.0, cfg).standardError;
    CHECK(large / small == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("swaption estimator limits") {
    const IntensityParams p = reference::kStrikeStudy;
    const Model m = fixture::model(p);
    McConfig cfg;
    cfg.paths = 50'000;
    const std::vector<double> strikes{0.0, 1.0};
    const std::vector<McEstimate> e = mcSwaptionPrices(m, fixture::flat(), fixture::spec(0.0), strikes, 0.0,
                                                       p.y0, cfg);
    const double fwd = cdsValue(m, fixture::flat(), fixture::spec(0.0).schedule, 0.0, p.y0, 0.0, 0.7);
    CHECK(std::abs(e[0].mean - fwd) <= 3.0 * e[0].standardError);
    CHECK(e[1].mean == 0.0);
}

TEST_CASE("summary statistics") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const McEstimate e = summarize(x);
    CHECK(e.mean == 2.5);
    CHECK(e.standardError == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(e.paths == 4);
}

}
