#include "fixtures.hpp"
#include "../oracles/ssrd_reference.hpp"

#include "ssrjd/cds.hpp"
#include "ssrjd/detail/exercise.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/monte_carlo.hpp"
#include "ssrjd/reference_sets.hpp"
#include "ssrjd/survival.hpp"
#include "ssrjd/swaption.hpp"

#include <doctest.h>

#include <vector>

using namespace ssrjd;

namespace {

const PaymentSchedule& schedule() {
    static const PaymentSchedule s = PaymentSchedule::regular(1.0, 5.0, 4);
    return s;
}

Model strikeStudy() { return fixture::model(reference::kStrikeStudy); }

// int h(u) S(T_a,u;y) du with 64 Simpson subintervals per quarter plus the point mass.
double fineBoundary(const Model& m, const DiscountCurve& curve, double K, double L, double y) {
    const auto dates = schedule().dates();
    double total = L * curve.discount(1.0, 5.0) * survival(m, 1.0, 5.0, y);
    for (std::size_t i = 1; i < dates.size(); ++i) {
        const double a = dates[i - 1];
        const double b = dates[i];
        const int n = 64;
        const double step = (b - a) / n;
        for (int j = 0; j <= n; ++j) {
            const double u = a + j * step;
            const double w = step / 3.0 * (j == 0 || j == n ? 1.0 : (j % 2 ? 4.0 : 2.0));
            const double h = curve.discount(1.0, u) * (L * 0.03 + K * (1.0 - (u - a) * 0.03));
            total += w * h * survival(m, 1.0, u, y);
        }
    }
    return total;
}

}  // namespace

TEST_SUITE("swaption") {

TEST_CASE("h weight") {
    const DiscountCurve zero(0.0);
    for (double u : {1.0, 1.1, 2.25, 4.9, 5.0}) {
        const HWeight w = hWeight(zero, schedule(), 0.02, 0.6, u);
        CHECK(w.continuousPart == doctest::Approx(0.02).epsilon(1e-15));
        CHECK(w.pointMassAtTb == doctest::Approx(0.6).epsilon(1e-15));
    }
    // at a payment date the elapsed period is the one just ending
    const DiscountCurve r(0.05);
    const HWeight at = hWeight(r, schedule(), 0.02, 0.6, 1.25);
    CHECK(at.continuousPart ==
          doctest::Approx(std::exp(-0.05 * 0.25) * (0.6 * 0.05 + 0.02 * (1.0 - 0.25 * 0.05))).epsilon(1e-14));
    // the worst curve allowed still keeps h nonnegative
    const DiscountCurve one(1.0);
    const PaymentSchedule annual = PaymentSchedule::regular(0.0, 4.0, 1);
    for (int i = 0; i <= 400; ++i) {
        CHECK(hWeight(one, annual, 0.5, 0.01, 0.01 * i).continuousPart >= 0.0);
    }
}

TEST_CASE("gate integral signs") {
    const Model m = strikeStudy();
    CHECK(gateIntegral(m, fixture::flat(), schedule(), 0.0, 0.7) < 0.0);
    CHECK(gateIntegral(m, fixture::flat(), schedule(), 1.0, 0.7) > 0.0);
    CHECK(gateIntegral(m, fixture::flat(), schedule(), 0.0204, 0.7) > 0.0);
}

TEST_CASE("exercise boundary: limits, endpoint identity and residual") {
    const Model m = strikeStudy();
    const double K = 0.0204;
    const detail::ExerciseBoundary eb(m, fixture::flat(), schedule(), K, 0.7, 2);
    // S(T_a,u;y) -> 0 for u > T_a, so only the Simpson node at u = T_a survives
    const detail::ExerciseBoundary::Node& first = eb.nodes().front();
    CHECK(first.u == 1.0);
    CHECK(eb.value(1e3) == doctest::Approx(first.weight * first.amplitude).epsilon(1e-12));
    CHECK(eb.value(1e3) < 0.01 * 0.7);
    CHECK(std::abs(eb.value(0.0) - (0.7 + eb.gate())) <= 1e-7);
    const double y = solveYStar(m, fixture::flat(), schedule(), K, 0.7);
    CHECK(y > 0.0);
    CHECK(std::abs(eb.value(y) - 0.7) < 1e-12 * 0.7);
    // an independent fine-grid integral at y* lands on L_GD up to Simpson error
    CHECK(std::abs(fineBoundary(m, fixture::flat(), K, 0.7, y) - 0.7) < 1e-6);
    CHECK_THROWS_AS(solveYStar(m, fixture::flat(), schedule(), 0.0, 0.7), BranchError);
}

TEST_CASE("zero strike is the forward CDS at zero spread") {
    const Model m = strikeStudy();
    const DecompositionReport r = payerSwaption(m, fixture::flat(), fixture::spec(0.0), 0.0, m.params.y0);
    CHECK((r.branch == SwaptionBranch::DeepInTheMoney));
    CHECK_FALSE(r.yStar.has_value());
    const double fwd = -0.7 * protectionLegIntegral(m, fixture::flat(), schedule(), 0.0, m.params.y0);
    CHECK(r.price == doctest::Approx(fwd).epsilon(1e-12));
    CHECK((toString(r.branch) == "deep-in-the-money"));
}

TEST_CASE("price in the strike: nonincreasing, convex, above intrinsic, vanishing") {
    const Model m = strikeStudy();
    std::vector<double> strikes;
    for (int i = 1; i <= 12; ++i) strikes.push_back(0.005 * i);
    std::vector<double> prices;
    for (double K : strikes) {
        const double price = payerSwaptionPrice(m, fixture::flat(), fixture::spec(K), 0.0, m.params.y0);
        const double intrinsic = cdsValue(m, fixture::flat(), schedule(), 0.0, m.params.y0, K, 0.7);
        CHECK(price >= std::max(intrinsic, 0.0) - 1e-9);
        prices.push_back(price);
    }
    for (std::size_t i = 1; i < prices.size(); ++i) CHECK(prices[i] <= prices[i - 1] + 1e-10);
    for (std::size_t i = 2; i < prices.size(); ++i) {
        CHECK(prices[i] - 2.0 * prices[i - 1] + prices[i - 2] >= -1e-9);
    }
    // five times the forward: y* sits far in the tail and Pi needs more evaluations
    SwaptionOptions wide;
    wide.fourier.maxEvaluations = 5'000'000;
    const double far = payerSwaptionPrice(m, fixture::flat(), fixture::spec(0.1), 0.0, m.params.y0, wide);
    CHECK(far >= 0.0);
    CHECK(far < 1e-8);
}

TEST_CASE("price is continuous where the gate changes sign") {
    const Model m = strikeStudy();
    double lo = 0.0;
    double hi = 0.0204;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gateIntegral(m, fixture::flat(), schedule(), mid, 0.7) < 0.0 ? lo : hi) = mid;
    }
    MESSAGE("gate changes sign at K = " << hi);
    const DecompositionReport below = payerSwaption(m, fixture::flat(), fixture::spec(lo * (1.0 - 1e-7)), 0.0,
                                                    m.params.y0);
    const DecompositionReport above = payerSwaption(m, fixture::flat(), fixture::spec(hi * (1.0 + 1e-7)), 0.0,
                                                    m.params.y0);
    CHECK((below.branch == SwaptionBranch::DeepInTheMoney));
    CHECK((above.branch == SwaptionBranch::Decomposed));
    CHECK(std::abs(above.price - below.price) < 1e-6 * below.price);
}

TEST_CASE("without jumps the price matches an independent diffusion-only pricer") {
    IntensityParams p = reference::kStrikeStudy;
    p.alpha = 0.0;
    p.mu = 0.025;
    const Model m = fixture::model(p);
    const oracle::SsrdSwaption base{{p.kappa, p.mu, p.nu}, p.y0, 0.03, 1.0, 5.0, 0.0, 0.7};
    const double atm = fairSpread(m, fixture::flat(), schedule(), 0.0, p.y0, 0.7);
    for (double k : {0.8, 1.0, 1.3}) {
        oracle::SsrdSwaption o = base;
        o.strike = k * atm;
        const double ref = o.price();
        const double lib = payerSwaptionPrice(m, fixture::flat(), fixture::spec(o.strike), 0.0, p.y0);
        MESSAGE("K " << o.strike << ": " << lib << " vs " << ref);
        CHECK(std::abs(lib - ref) <= 1e-9);
    }
}

TEST_CASE("outer self-convergence from 2 to 4 subintervals per quarter") {
    const Model m = strikeStudy();
    SwaptionOptions two;
    SwaptionOptions four;
    four.outerSubintervalsPerPeriod = 4;
    for (double K : {0.0150, 0.0204, 0.0300}) {
        const double a = payerSwaptionPrice(m, fixture::flat(), fixture::spec(K), 0.0, m.params.y0, two);
        const double b = payerSwaptionPrice(m, fixture::flat(), fixture::spec(K), 0.0, m.params.y0, four);
        CHECK(std::abs(a - b) < 1e-5);
    }
}

TEST_CASE("strike-study prices agree with simulation") {
    const Model m = strikeStudy();
    const std::vector<double> strikes{0.0150, 0.0204, 0.0250, 0.0300};
    McConfig cfg;
    const std::vector<McEstimate> mc =
        mcSwaptionPrices(m, fixture::flat(), fixture::spec(0.0), strikes, 0.0, m.params.y0, cfg);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
        const double price = payerSwaptionPrice(m, fixture::flat(), fixture::spec(strikes[i]), 0.0, m.params.y0);
        MESSAGE("K " << strikes[i] << ": " << price << " vs " << mc[i].mean << " +- " << mc[i].standardError);
        CHECK(std::abs(price - mc[i].mean) <= 3.0 * mc[i].standardError);
    }
}

}
