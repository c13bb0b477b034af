// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Exit status is the number of failed criteria.

#include "../oracles/riccati.hpp"
#include "../oracles/ssrd_reference.hpp"

#include "ssrjd/black.hpp"
#include "ssrjd/calibration.hpp"
#include "ssrjd/cds.hpp"
#include "ssrjd/detail/exercise.hpp"
#include "ssrjd/monte_carlo.hpp"
#include "ssrjd/reference_sets.hpp"
#include "ssrjd/survival.hpp"
#include "ssrjd/swaption.hpp"
#include "ssrjd/transform.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ssrjd;
namespace ref = ssrjd::reference;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point since) {
    return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Detail {
    std::vector<std::string> lines;
    template <class... A>
    void add(const char* fmt, A... a) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, a...);
        lines.emplace_back(buf);
    }
};

int failures = 0;

void report(const char* name, bool pass, const Detail& d, double elapsed) {
    std::printf("%s %s (%.1f s)\n", pass ? "PASS" : "FAIL", name, elapsed);
    for (const std::string& l : d.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

const DiscountCurve& curve() {
    static const DiscountCurve c(ref::kFlatRate);
    return c;
}

SwaptionSpec spec(double strike) {
    return {0.0, PaymentSchedule::regular(ref::kOptionMaturity, ref::kSwapEnd, 4), strike,
            ref::kLossGivenDefault};
}

Model model(const IntensityParams& p) { return {p, ShiftFunction::zero()}; }

double atmSpread(const Model& m) {
    return fairSpread(m, curve(), spec(0.0).schedule, 0.0, m.params.y0, ref::kLossGivenDefault);
}

void table1() {
    const auto start = Clock::now();
    const IntensityParams p = ref::kTruncationStudy;
    const double rho = factorB(p, 0.0, ref::kTruncationRhoMaturity);
    Detail d;
    bool pass = true;
    for (std::size_t i = 0; i < ref::kTruncationLevels.size(); ++i) {
        FourierOptions o;
        o.truncation = ref::kTruncationLevels[i];
        o.maxEvaluations = 10'000'000;
        const PiResult r = bigPiDetailed(p, ref::kTruncationHorizon, p.y0, ref::kTruncationSigma, rho, o);
        const double diff = r.integral - ref::kTruncationLadder[i];
        const bool ok = r.quadrature.converged && std::abs(diff) <= 5e-5;
        pass = pass && ok;
        d.add("N=%-8.0e integral %.7f  reference %.5f  diff %+.2e  %s", o.truncation, r.integral,
              ref::kTruncationLadder[i], diff, ok ? "ok" : "outside 5e-5");
    }
    const double elapsed = seconds(start);
    d.add("runtime %.2f s (limit 5 s)", elapsed);
    report("table1-truncation-ladder", pass && elapsed < 5.0, d, elapsed);
}

void fig2Forward() {
    const auto start = Clock::now();
    const Model m = model(ref::kStrikeStudy);
    const double bps = atmSpread(m) * 1e4;
    const double elapsed = seconds(start);
    Detail d;
    d.add("forward spread %.4f bps, target %.0f +- 2 bps, runtime %.3f s (limit 1 s)", bps,
          ref::kStrikeStudyForwardBps, elapsed);
    report("fig2-forward-spread", std::abs(bps - ref::kStrikeStudyForwardBps) <= 2.0 && elapsed < 1.0, d, elapsed);
}

void mcOracle() {
    const auto start = Clock::now();
    Detail d;
    bool pass = true;
    const McConfig cfg;  // 2e5 paths, 250 steps per year
    const std::vector<double> multiples{0.5, 1.0, 1.5, 2.0};
    for (const ref::NamedModel& nm : ref::kSmileModels) {
        const Model m = model(nm.params);
        const double atm = atmSpread(m);
        std::vector<double> strikes;
        for (double k : multiples) strikes.push_back(k * atm);
        const std::vector<McEstimate> mc = mcSwaptionPrices(m, curve(), spec(0.0), strikes, 0.0, m.params.y0, cfg);
        for (std::size_t i = 0; i < strikes.size(); ++i) {
            const double price = payerSwaptionPrice(m, curve(), spec(strikes[i]), 0.0, m.params.y0);
            const double z = (price - mc[i].mean) / mc[i].standardError;
            const bool ok = std::abs(z) <= 3.0;
            pass = pass && ok;
            d.add("%s K=%.1fxATM (%.2f bps): analytic %.6e  mc %.6e +- %.2e  z %+.2f  %s",
                  std::string(nm.name).c_str(), multiples[i], strikes[i] * 1e4, price, mc[i].mean,
                  mc[i].standardError, z, ok ? "ok" : "outside 3 SE");
        }
    }
    const double elapsed = seconds(start);
    d.add("paths %zu, steps per year %d, seed %llu, runtime %.1f s (limit 300 s)", cfg.paths, cfg.stepsPerYear,
          static_cast<unsigned long long>(cfg.seed), elapsed);
    report("mc-oracle-equivalence", pass && elapsed < 300.0, d, elapsed);
}

void smileShape() {
    const auto start = Clock::now();
    Detail d;
    bool pass = true;
    for (const ref::NamedModel& nm : ref::kSmileModels) {
        const Model m = model(nm.params);
        const double atm = atmSpread(m);
        const std::vector<double> strikes = defaultStrikeGrid(atm);
        const Smile s = generateSmile(m, curve(), spec(0.0), strikes, 0.0, m.params.y0);
        bool monotone = true;
        int intrinsic = 0;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (!s.points[i].converged) ++intrinsic;
            if (i > 0 && s.points[i].impliedVol < s.points[i - 1].impliedVol) monotone = false;
        }
        pass = pass && monotone;
        std::ostringstream vols;
        vols.precision(4);
        for (const SmilePoint& pt : s.points) vols << std::fixed << pt.impliedVol << ' ';
        d.add("%s ATM %.2f bps, strikes 0.5..2.0 x ATM (21), %d at intrinsic (vol 0): %s",
              std::string(nm.name).c_str(), atm * 1e4, intrinsic, monotone ? "nondecreasing" : "DECREASES");
        d.add("  vols: %s", vols.str().c_str());
    }
    report("smile-nondecreasing", pass, d, seconds(start));
}

void identities() {
    const auto start = Clock::now();
    Detail d;
    bool pass = true;
    auto item = [&](const char* label, bool ok, const std::string& what) {
        pass = pass && ok;
        d.add("(%s) %s: %s", label, ok ? "ok" : "violated", what.c_str());
    };
    char buf[256];

    {  // (a) sigma = 0 returns the whole transform
        double worst = 0.0;
        std::vector<IntensityParams> sets{ref::kTruncationStudy, ref::kStrikeStudy};
        for (const auto& nm : ref::kSmileModels) sets.push_back(nm.params);
        for (const IntensityParams& p : sets) {
            for (double rho : {0.0, factorB(p, 1.0, 3.0), factorB(p, 1.0, 5.0)}) {
                for (double T : {0.5, 1.0, 2.0}) {
                    const AlphaBeta ab = alphaBetaPsi(p, T, rho);
                    worst = std::max(worst, std::abs(bigPi(p, T, p.y0, 0.0, rho) - ab.alpha * std::exp(-ab.beta * p.y0)));
                }
            }
        }
        std::snprintf(buf, sizeof buf, "max |Pi(T,y0,0,rho) - alpha_psi e^{-beta_psi y0}| = %.2e (limit 1e-8)", worst);
        item("a", worst <= 1e-8, buf);
    }
    {  // (b) Psi = 0 at rho = 0
        double worst = 0.0;
        for (const auto& nm : ref::kSmileModels) {
            for (double s : {0.0, 0.01, 0.05}) worst = std::max(worst, std::abs(bigPsiOption(nm.params, 0.0, 1.0, nm.params.y0, s, 0.0)));
        }
        std::snprintf(buf, sizeof buf, "max |Psi(rho=0)| = %.2e", worst);
        item("b", worst == 0.0, buf);
    }
    {  // (c) maturity derivative vs central differences
        std::mt19937_64 rng(20080101);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            IntensityParams p{0.001 + 0.05 * u(rng), 0.05 + u(rng), 0.005 + 0.08 * u(rng),
                              0.02 + 0.25 * u(rng), 2.0 * u(rng), 0.001 + 0.05 * u(rng)};
            const Model m{p, ShiftFunction({2.0}, {0.002 * u(rng), 0.004 * u(rng)})};
            double T = 0.2 + 8.0 * u(rng);
            if (std::abs(T - 2.0) < 1e-3) T += 0.01;
            const double y = 0.08 * u(rng);
            const double fd = (survival(m, 0.0, T + 1e-6, y) - survival(m, 0.0, T - 1e-6, y)) / 2e-6;
            const double an = survivalMaturityDerivative(m, 0.0, T, y);
            worst = std::max(worst, std::abs(an - fd) / std::abs(an));
        }
        std::snprintf(buf, sizeof buf, "max relative |dS/dT - FD| over 100 draws = %.2e (limit 1e-6)", worst);
        item("c", worst <= 1e-6, buf);
    }
    {  // (d) fair spread zeroes the CDS
        double worst = 0.0;
        for (const auto& nm : ref::kSmileModels) {
            const Model m = model(nm.params);
            for (double end : {2.0, 5.0, 10.0}) {
                const PaymentSchedule s = PaymentSchedule::regular(1.0, end, 4);
                const double R = fairSpread(m, curve(), s, 0.0, m.params.y0, 0.7);
                const CdsLegBreakdown b = cdsBreakdown(m, curve(), s, 0.0, m.params.y0, R, 0.7);
                worst = std::max(worst, std::abs(b.pv) / b.protectionLeg);
            }
        }
        std::snprintf(buf, sizeof buf, "max |cdsValue(fairSpread)| / protection leg = %.2e (limit 1e-10)", worst);
        item("d", worst <= 1e-10, buf);
    }
    {  // (e) y* residual and the y = 0 endpoint identity
        double residual = 0.0;
        double endpoint = 0.0;
        for (const auto& nm : ref::kSmileModels) {
            const Model m = model(nm.params);
            const double atm = atmSpread(m);
            for (double k : {0.9, 1.0, 1.5, 2.0}) {
                const SwaptionSpec sp = spec(k * atm);
                const detail::ExerciseBoundary eb(m, curve(), sp.schedule, sp.strike, sp.lossGivenDefault, 2);
                const double y = solveYStar(m, curve(), sp.schedule, sp.strike, sp.lossGivenDefault);
                residual = std::max(residual, std::abs(eb.value(y) - sp.lossGivenDefault) / sp.lossGivenDefault);
                endpoint = std::max(endpoint, std::abs(eb.value(0.0) - sp.lossGivenDefault - eb.gate()));
            }
        }
        std::snprintf(buf, sizeof buf,
                      "max |Phi(y*) - L|/L = %.2e (limit 1e-12); max |Phi(0) - L - gate| = %.2e (limit 1e-7)",
                      residual, endpoint);
        item("e", residual < 1e-12 && endpoint <= 1e-7, buf);
    }
    {  // (f) no jumps: independent diffusion-only pricer
        double worst = 0.0;
        for (const auto& nm : ref::kSmileModels) {
            IntensityParams p = nm.params;
            p.alpha = 0.0;
            const Model m = model(p);
            const double atm = atmSpread(m);
            for (double k : {0.8, 1.0, 1.5}) {
                oracle::SsrdSwaption o{{p.kappa, p.mu, p.nu}, p.y0, ref::kFlatRate, ref::kOptionMaturity,
                                       ref::kSwapEnd, k * atm, ref::kLossGivenDefault};
                worst = std::max(worst, std::abs(payerSwaptionPrice(m, curve(), spec(k * atm), 0.0, p.y0) - o.price()));
            }
        }
        std::snprintf(buf, sizeof buf, "max |library - diffusion-only reference| = %.2e (limit 1e-9)", worst);
        item("f", worst <= 1e-9, buf);
    }
    {  // (g) zeta continuity across the singular jump size
        double worst = 0.0;
        for (IntensityParams p : {ref::kTruncationStudy, ref::kStrikeStudy}) {
            const double gs = 0.5 * (p.h() - p.kappa);
            for (double T : {0.5, 1.0, 5.0, 10.0}) {
                p.gamma = gs;
                const double at = factorZeta(p, 0.0, T);
                for (double dg : {-1e-6, 1e-6}) {
                    p.gamma = gs + dg;
                    worst = std::max(worst, std::abs(factorZeta(p, 0.0, T) - at));
                }
            }
        }
        std::snprintf(buf, sizeof buf, "max |zeta(gamma* +- 1e-6) - zeta(gamma*)| = %.2e (limit 1e-4)", worst);
        item("g", worst <= 1e-4, buf);
    }
    {  // (h) Black price <-> vol
        double worst = 0.0;
        for (double K : {0.01, 0.02, 0.03}) {
            for (double s : {0.1, 0.5, 1.2}) {
                const double price = blackPayerPrice(3.5, 0.0204, K, s, 1.0);
                const double iv = impliedVol(3.5, 0.0204, K, 1.0, price);
                worst = std::max(worst, std::abs(blackPayerPrice(3.5, 0.0204, K, iv, 1.0) - price));
            }
        }
        std::snprintf(buf, sizeof buf, "max |black(implied(p)) - p| = %.2e (limit 1e-10)", worst);
        item("h", worst <= 1e-10, buf);
    }
    {  // (i) first moment of the simulated factor
        const McConfig cfg;
        double worstZ = 0.0;
        for (const auto& nm : ref::kSmileModels) {
            const IntensityParams& p = nm.params;
            const McEstimate e = mcMeanFactor(p, 1.0, cfg);
            const double decay = std::exp(-p.kappa);
            const double exact = p.y0 * decay + (p.mu + p.alpha * p.gamma / p.kappa) * (1.0 - decay);
            worstZ = std::max(worstZ, std::abs(e.mean - exact) / e.standardError);
        }
        std::snprintf(buf, sizeof buf, "max |E[y_1] mc - closed form| = %.2f SE (limit 3)", worstZ);
        item("i", worstZ <= 3.0, buf);
    }
    report("internal-identities", pass, d, seconds(start));
}

void selfConvergence() {
    const auto start = Clock::now();
    Detail d;
    double worst = 0.0;
    SwaptionOptions coarse;
    SwaptionOptions fine;
    fine.outerSubintervalsPerPeriod = 8;
    for (const ref::NamedModel& nm : ref::kSmileModels) {
        const Model m = model(nm.params);
        const double atm = atmSpread(m);
        for (double k : {0.5, 1.0, 1.5, 2.0}) {
            const double a = payerSwaptionPrice(m, curve(), spec(k * atm), 0.0, m.params.y0, coarse);
            const double b = payerSwaptionPrice(m, curve(), spec(k * atm), 0.0, m.params.y0, fine);
            worst = std::max(worst, std::abs(a - b));
            d.add("%s K=%.1fxATM: 2/quarter %.8e  8/quarter %.8e  diff %.2e bp", std::string(nm.name).c_str(), k, a,
                  b, std::abs(a - b) * 1e4);
        }
    }
    d.add("max change %.3e bp (limit 0.1 bp)", worst * 1e4);
    report("outer-quadrature-self-convergence", worst * 1e4 < 0.1, d, seconds(start));
}

void calibrationRoundtrips() {
    const auto start = Clock::now();
    Detail d;
    bool pass = true;
    const std::vector<double> maturities{1.0, 2.0, 3.0, 5.0, 7.0, 10.0};
    const BootstrapOptions bo;
    auto spreadTo = [&](const Model& m, double T) {
        return fairSpread(m, curve(), PaymentSchedule::regular(0.0, T, bo.frequency), 0.0, m.params.y0,
                          bo.lossGivenDefault);
    };
    for (const ref::NamedModel& nm : ref::kSmileModels) {
        const Model m = model(nm.params);
        for (double add : {0.0, 0.0050}) {
            std::vector<CdsQuote> quotes;
            for (double T : maturities) quotes.push_back({T, spreadTo(m, T) + add});
            const ShiftFunction psi = bootstrapShift(nm.params, curve(), quotes, bo);
            const Model fitted{nm.params, psi};
            double worst = 0.0;
            double minLevel = 1.0;
            double maxLevel = 0.0;
            for (const CdsQuote& q : quotes) worst = std::max(worst, std::abs(spreadTo(fitted, q.maturity) - q.spread));
            for (double v : psi.values()) {
                minLevel = std::min(minLevel, v);
                maxLevel = std::max(maxLevel, v);
            }
            const bool levelsOk = add == 0.0 ? std::max(std::abs(minLevel), maxLevel) <= 1e-8 : minLevel > 0.0;
            const bool ok = worst <= 1e-8 && levelsOk;
            pass = pass && ok;
            d.add("bootstrap %s +%.0f bp: max spread error %.2e, psi in [%.3e, %.3e]  %s", std::string(nm.name).c_str(),
                  add * 1e4, worst, minLevel, maxLevel, ok ? "ok" : "failed");
        }
    }

    // swaption fit: Model1 quotes at three strikes, start perturbed by +-20%
    const IntensityParams truth = ref::kSmileModels[0].params;
    const Model m = model(truth);
    const double atm = atmSpread(m);
    std::vector<SwaptionQuote> quotes;
    for (double k : {0.9, 1.0, 1.2}) {
        quotes.push_back({spec(k * atm), payerSwaptionPrice(m, curve(), spec(k * atm), 0.0, truth.y0)});
    }
    IntensityParams startPoint = truth;
    startPoint.y0 *= 1.2;
    startPoint.kappa *= 0.8;
    startPoint.mu *= 1.2;
    startPoint.nu *= 0.8;
    startPoint.alpha *= 1.2;
    startPoint.gamma *= 0.8;
    const FitReport r = fitParams(startPoint, curve(), {}, quotes);
    double worst = 0.0;
    for (const SwaptionQuote& q : quotes) {
        const double repriced = payerSwaptionPrice(Model{r.params, r.shift}, curve(), q.spec, 0.0, r.params.y0);
        worst = std::max(worst, std::abs(repriced / q.price - 1.0));
    }
    bool traceOk = true;
    for (std::size_t i = 1; i < r.trace.size(); ++i) traceOk = traceOk && r.trace[i] <= r.trace[i - 1];
    const bool fitOk = worst <= 5e-3 && traceOk;
    pass = pass && fitOk;
    d.add("fitParams Model1, strikes 0.9/1.0/1.2 x ATM, start +-20%%: %zu evaluations, max relative price error %.2e "
          "(limit 5e-3), trace %s  %s",
          r.evaluations, worst, traceOk ? "nonincreasing" : "INCREASES", fitOk ? "ok" : "failed");
    report("calibration-roundtrips", pass, d, seconds(start));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{table1,     fig2Forward,     mcOracle,
                                                      smileShape, identities,      selfConvergence,
                                                      calibrationRoundtrips};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("FAIL (exception: %s)\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
