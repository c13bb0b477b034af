// ssrjd: command-line front end for the SSRJD credit library.
//
// Exit codes: 0 success, 1 mc-check outside 3 standard errors,
// 2 invalid input, 3 numerical non-convergence.

#include "ssrjd/black.hpp"
#include "ssrjd/calibration.hpp"
#include "ssrjd/cds.hpp"
#include "ssrjd/documents.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/monte_carlo.hpp"
#include "ssrjd/reference_sets.hpp"
#include "ssrjd/survival.hpp"
#include "ssrjd/swaption.hpp"
#include "ssrjd/transform.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace ssrjd;

namespace {

struct Options {
    std::string model;
    std::string curve;
    std::string spec;
    std::string out;
    std::optional<double> strikeBps;
    double truncation = 1e6;
    double tol = 1e-9;
    int outer = 2;
    std::size_t paths = 200'000;
    std::uint64_t seed = McConfig{}.seed;
    int stepsPerYear = 250;
    bool lenientFeller = false;
    std::vector<std::string> argv;
};

class Run {
public:
    Run(const Options& o, std::string command) : o_(o) {
        provenance_["tool"] = "ssrjd";
        provenance_["command"] = std::move(command);
        provenance_["argv"] = o.argv;
        provenance_["inputs"] = Json::object();
    }

    Json load(const std::string& role, const std::string& path) {
        if (path.empty()) throw SchemaError("/", "--" + role + " is required");
        Json j = loadJsonFile(path);
        provenance_["inputs"][role] = j;
        return j;
    }

    Model model() {
        std::vector<std::string> warnings;
        const FellerMode mode = o_.lenientFeller ? FellerMode::Lenient : FellerMode::Strict;
        Model m = readModel(load("model", o_.model), mode, &warnings);
        for (const std::string& w : warnings) warn(w);
        return m;
    }

    DiscountCurve curve() { return readCurve(load("curve", o_.curve)); }

    SwaptionSpec spec() {
        SwaptionSpec s = readSpec(load("spec", o_.spec));
        if (o_.strikeBps) {
            if (!(*o_.strikeBps >= 0.0)) throw SchemaError("/strike", "--strike-bps must be >= 0");
            s.strike = *o_.strikeBps * 1e-4;
        }
        return s;
    }

    SwaptionOptions swaptionOptions() const {
        SwaptionOptions so;
        so.outerSubintervalsPerPeriod = o_.outer;
        so.fourier.truncation = o_.truncation;
        so.fourier.tolerance = o_.tol;
        return so;
    }

    McConfig mcConfig() const {
        McConfig cfg;
        cfg.paths = o_.paths;
        cfg.seed = o_.seed;
        cfg.stepsPerYear = o_.stepsPerYear;
        return cfg;
    }

    void warn(const std::string& w) {
        std::cerr << "warning: " << w << '\n';
        provenance_["warnings"].push_back(w);
    }

    void emitJson(const Json& result) {
        Json doc;
        doc["provenance"] = provenance_;
        doc["result"] = result;
        write(doc.dump(2) + "\n");
    }

    /// rows already formatted; header is the CSV column line
    void emitCsv(const std::string& header, const std::vector<std::vector<std::string>>& rows,
                 const std::vector<std::string>& notes = {}) {
        std::ostringstream os;
        os << "# provenance: " << provenance_.dump() << '\n';
        for (const std::string& n : notes) os << "# " << n << '\n';
        os << header << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
        write(os.str());
    }

private:
    void write(const std::string& text) {
        if (o_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(o_.out);
        if (!f) throw SchemaError("/", "cannot write " + o_.out);
        f << text;
    }

    const Options& o_;
    Json provenance_;
};

std::string num(double x) { return formatSig10(x); }

std::vector<double> parseList(const std::string& s, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw SchemaError("/" + flag, "not a number: " + item);
        }
    }
    return out;
}

int cmdSurvival(const Options& o, const std::string& maturities, double t) {
    Run run(o, "survival");
    const Model m = run.model();
    std::vector<std::vector<std::string>> rows;
    for (double T : parseList(maturities, "maturities")) {
        const SurvivalPoint s = survivalWithDerivative(m, t, T, m.params.y0);
        const SurvivalFactors f = survivalFactors(m.params, t, T);
        rows.push_back({num(T), num(s.value), num(s.derivative), num(f.A), num(f.B)});
    }
    run.emitCsv("maturity_years,survival,dsurvival_dT,A,B", rows);
    return 0;
}

int cmdCds(const Options& o) {
    Run run(o, "cds");
    const Model m = run.model();
    const DiscountCurve c = run.curve();
    const SwaptionSpec s = run.spec();
    const CdsLegBreakdown b = cdsBreakdown(m, c, s.schedule, s.valuationTime, m.params.y0,
                                           s.strike, s.lossGivenDefault);
    run.emitJson(toJson(b));
    return 0;
}

int cmdSwaption(const Options& o) {
    Run run(o, "swaption");
    const Model m = run.model();
    const DiscountCurve c = run.curve();
    const SwaptionSpec s = run.spec();
    const DecompositionReport r =
        payerSwaption(m, c, s, s.valuationTime, m.params.y0, run.swaptionOptions());
    Json j = toJson(r);
    j["strike"] = sig10(s.strike);
    j["strike_bps"] = sig10(s.strike * 1e4);
    run.emitJson(j);
    return 0;
}

std::vector<std::vector<std::string>> smileRows(const Smile& smile, const std::string& label) {
    std::vector<std::vector<std::string>> rows;
    for (const SmilePoint& p : smile.points) {
        std::vector<std::string> row;
        if (!label.empty()) row.push_back(label);
        row.push_back(num(p.strike * 1e4));
        row.push_back(num(p.modelPrice * 1e4));
        row.push_back(num(p.impliedVol));
        row.push_back(p.converged ? "1" : "0");
        rows.push_back(row);
    }
    return rows;
}

int cmdSmile(const Options& o, int points, double lo, double hi) {
    Run run(o, "smile");
    const Model m = run.model();
    const DiscountCurve c = run.curve();
    const SwaptionSpec s = run.spec();
    const SwaptionOptions so = run.swaptionOptions();
    const double atm =
        fairSpread(m, c, s.schedule, s.valuationTime, m.params.y0, s.lossGivenDefault, so.legs);
    const Smile smile = generateSmile(m, c, s, defaultStrikeGrid(atm, points, lo, hi),
                                      s.valuationTime, m.params.y0, so);
    run.emitCsv("strike_bps,price_bps,implied_vol,converged", smileRows(smile, ""),
                {"annuity=" + num(smile.annuity) + " forward_bps=" + num(smile.forward * 1e4) +
                 " expiry=" + num(smile.expiry)});
    return 0;
}

int cmdTransform(const Options& o, double horizon, double rho, double sigma, double vMax,
                 int vPoints) {
    Run run(o, "transform");
    const Model m = run.model();
    const IntensityParams& p = m.params;
    FourierOptions fo;
    fo.truncation = o.truncation;
    fo.tolerance = o.tol;
    if (vPoints < 2 || !(vMax > 0.0)) throw SchemaError("/v-grid", "need v-max > 0 and v-points >= 2");

    const AlphaBeta ab = alphaBetaPsi(p, horizon, rho);
    const PiResult atRho = bigPiDetailed(p, horizon, p.y0, sigma, rho, fo);
    const PiResult atZero = bigPiDetailed(p, horizon, p.y0, sigma, 0.0, fo);
    if (!atRho.quadrature.converged || !atZero.quadrature.converged) {
        throw NumericalError("Fourier inversion did not converge", atRho.value,
                             atRho.quadrature.errorEstimate);
    }
    const double psiOption = std::exp(-rho * sigma) * atZero.value - atRho.value;

    const FourierIntegrand f(p, horizon, rho, sigma, p.y0);
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < vPoints; ++i) {
        const double v = vMax * i / (vPoints - 1);
        rows.push_back({num(v), num(f(v))});
    }
    run.emitCsv("v,integrand", rows,
                {"alpha_psi=" + num(ab.alpha) + " beta_psi=" + num(ab.beta),
                 "Pi=" + num(atRho.value) + " Pi_rho0=" + num(atZero.value) +
                     " Psi=" + num(psiOption),
                 "integral=" + num(atRho.integral) +
                     " error_bound=" + num(atRho.quadrature.errorEstimate)});
    return 0;
}

int cmdMcCheck(const Options& o) {
    Run run(o, "mc-check");
    const Model m = run.model();
    const DiscountCurve c = run.curve();
    const SwaptionSpec s = run.spec();
    const double analytic =
        payerSwaptionPrice(m, c, s, s.valuationTime, m.params.y0, run.swaptionOptions());
    const McEstimate mc = mcSwaptionPrice(m, c, s, s.valuationTime, m.params.y0, run.mcConfig());
    const double z = mc.standardError > 0.0 ? (analytic - mc.mean) / mc.standardError
                                            : (analytic == mc.mean ? 0.0 : INFINITY);
    const bool pass = std::abs(z) <= 3.0;
    run.emitJson(Json{{"analytic", sig10(analytic)},
                      {"mc_mean", sig10(mc.mean)},
                      {"mc_standard_error", sig10(mc.standardError)},
                      {"paths", mc.paths},
                      {"z", sig10(z)},
                      {"pass", pass}});
    return pass ? 0 : 1;
}

int cmdCalibrate(const Options& o, const std::string& cdsPath, const std::string& swaptionPath,
                 double cdsLgd, std::size_t budget, bool strictFeller) {
    Run run(o, "calibrate");
    const Model initial = run.model();
    const DiscountCurve c = run.curve();
    std::vector<CdsQuote> cds;
    if (!cdsPath.empty()) {
        std::ifstream in(cdsPath);
        if (!in) throw SchemaError("/", "cannot open " + cdsPath);
        cds = readCdsQuotesCsv(in);
    }
    const std::vector<SwaptionQuote> quotes = readSwaptionQuotes(run.load("swaptions", swaptionPath));

    FitOptions fo;
    fo.maxEvaluations = budget;
    fo.feller = strictFeller ? FellerMode::Strict : FellerMode::Lenient;
    fo.bootstrap.lossGivenDefault = cdsLgd;
    const FitReport r = fitParams(initial.params, c, cds, quotes, fo);
    run.emitJson(toJson(r));
    return r.converged ? 0 : 3;
}

int reproduceTable1(const Options& o) {
    Run run(o, "reproduce table1");
    namespace ref = reference;
    const IntensityParams& p = ref::kTruncationStudy;
    const double rho = factorB(p, 0.0, ref::kTruncationRhoMaturity);
    const FourierIntegrand f(p, ref::kTruncationHorizon, rho, ref::kTruncationSigma, p.y0);
    std::vector<std::vector<std::string>> rows;
    for (double N : ref::kTruncationLevels) {
        const QuadratureResult r = adaptiveLobatto(f, 0.0, N, o.tol, 10'000'000);
        rows.push_back({num(N), num(r.value), num(r.errorEstimate)});
    }
    run.emitCsv("truncation,integral,error_bound", rows);
    return 0;
}

int reproduceFig2Forward(const Options& o) {
    Run run(o, "reproduce fig2-forward");
    namespace ref = reference;
    const Model m{ref::kStrikeStudy, ShiftFunction::zero()};
    const DiscountCurve c(ref::kFlatRate);
    const PaymentSchedule s = PaymentSchedule::regular(ref::kOptionMaturity, ref::kSwapEnd, 4);
    const double fwd = fairSpread(m, c, s, 0.0, m.params.y0, ref::kLossGivenDefault);
    run.emitJson(Json{{"forward_spread", sig10(fwd)}, {"forward_spread_bps", sig10(fwd * 1e4)}});
    return 0;
}

int reproduceFig3(const Options& o) {
    Run run(o, "reproduce fig3");
    namespace ref = reference;
    const DiscountCurve c(ref::kFlatRate);
    std::vector<std::vector<std::string>> rows;
    for (int q = 2; q <= 40; q += 2) {
        const double T = 0.25 * q;
        std::vector<std::string> row{num(T)};
        for (const auto& nm : ref::kSmileModels) {
            const Model m{nm.params, ShiftFunction::zero()};
            row.push_back(num(1e4 * fairSpread(m, c, PaymentSchedule::regular(0.0, T, 4), 0.0,
                                               nm.params.y0, ref::kLossGivenDefault)));
        }
        rows.push_back(row);
    }
    run.emitCsv("maturity_years,Model1_bps,Model2_bps,Model3_bps", rows);
    return 0;
}

int reproduceFig4(const Options& o, int points, double lo, double hi) {
    Run run(o, "reproduce fig4");
    namespace ref = reference;
    const DiscountCurve c(ref::kFlatRate);
    const SwaptionSpec templ{0.0, PaymentSchedule::regular(ref::kOptionMaturity, ref::kSwapEnd, 4),
                             0.0, ref::kLossGivenDefault};
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    for (const auto& nm : ref::kSmileModels) {
        const ValidatedParams v = validateParams(nm.params, FellerMode::Lenient);
        for (const std::string& w : v.warnings) run.warn(std::string(nm.name) + ": " + w);
        const Model m{v.params, ShiftFunction::zero()};
        const SwaptionOptions so = run.swaptionOptions();
        const double atm = fairSpread(m, c, templ.schedule, 0.0, m.params.y0,
                                      templ.lossGivenDefault, so.legs);
        const Smile smile = generateSmile(m, c, templ, defaultStrikeGrid(atm, points, lo, hi), 0.0,
                                          m.params.y0, so);
        notes.push_back(std::string(nm.name) + " forward_bps=" + num(smile.forward * 1e4) +
                        " annuity=" + num(smile.annuity));
        for (auto& row : smileRows(smile, std::string(nm.name))) rows.push_back(row);
    }
    run.emitCsv("model,strike_bps,price_bps,implied_vol,converged", rows, notes);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pricing and calibration for CDS and payer default swaptions under SSRJD"};
    app.require_subcommand(1);
    Options o;
    for (int i = 0; i < argc; ++i) o.argv.emplace_back(argv[i]);

    auto addInputs = [&](CLI::App* sub, bool curve, bool spec) {
        sub->add_option("--model", o.model, "Model JSON (y0, kappa, mu, nu, alpha, gamma, psi_*)")
            ->required();
        if (curve) sub->add_option("--curve", o.curve, "Curve JSON (rate or rate_knots/rate_values)")->required();
        if (spec) {
            sub->add_option("--spec", o.spec, "Contract JSON (dates or start/end/frequency, strike, lgd)")
                ->required();
            sub->add_option("--strike-bps", o.strikeBps, "Override the strike (bps)");
        }
        sub->add_flag("--lenient-feller", o.lenientFeller, "Warn instead of failing on 2 kappa mu <= nu^2");
        sub->add_option("--out", o.out, "Write output to this file");
    };
    auto addFourier = [&](CLI::App* sub) {
        sub->add_option("--truncation", o.truncation, "Fourier truncation N")->capture_default_str();
        sub->add_option("--tol", o.tol, "Fourier quadrature tolerance")->capture_default_str();
    };

    auto* survival = app.add_subcommand("survival", "Survival curve S(t,T;y0) as CSV");
    addInputs(survival, false, false);
    std::string maturities = "0.5,1,2,3,4,5,7,10";
    double survivalT = 0.0;
    survival->add_option("--maturities", maturities, "Comma-separated maturities")->capture_default_str();
    survival->add_option("--t", survivalT, "Valuation time")->capture_default_str();

    auto* cds = app.add_subcommand("cds", "CDS legs, annuity and fair spread (JSON)");
    addInputs(cds, true, true);

    auto* swaption = app.add_subcommand("swaption", "Payer default swaption price and decomposition (JSON)");
    addInputs(swaption, true, true);
    addFourier(swaption);
    swaption->add_option("--outer", o.outer, "Outer Simpson subintervals per period")->capture_default_str();

    auto* smile = app.add_subcommand("smile", "Implied volatility smile (CSV)");
    addInputs(smile, true, true);
    addFourier(smile);
    int points = 21;
    double lo = 0.5;
    double hi = 2.0;
    smile->add_option("--points", points)->capture_default_str();
    smile->add_option("--lo", lo, "Lowest strike / ATM")->capture_default_str();
    smile->add_option("--hi", hi, "Highest strike / ATM")->capture_default_str();

    auto* transform = app.add_subcommand("transform", "Pi, Psi and the Fourier integrand on a grid (CSV)");
    addInputs(transform, false, false);
    addFourier(transform);
    double horizon = 1.0;
    double rho = 0.0;
    double sigma = 0.0;
    double vMax = 100.0;
    int vPoints = 201;
    transform->add_option("--horizon", horizon)->required();
    transform->add_option("--rho", rho)->required();
    transform->add_option("--sigma", sigma)->required();
    transform->add_option("--v-max", vMax)->capture_default_str();
    transform->add_option("--v-points", vPoints)->capture_default_str();

    auto* mc = app.add_subcommand("mc-check", "Analytic swaption price against Monte Carlo (JSON)");
    addInputs(mc, true, true);
    addFourier(mc);
    mc->add_option("--paths", o.paths)->capture_default_str();
    mc->add_option("--seed", o.seed)->capture_default_str();
    mc->add_option("--steps-per-year", o.stepsPerYear)->capture_default_str();

    auto* calibrate = app.add_subcommand("calibrate", "Fit psi and the factor parameters (JSON)");
    addInputs(calibrate, true, false);
    std::string cdsPath;
    std::string swaptionPath;
    double cdsLgd = 0.6;
    std::size_t budget = 500;
    bool strictFeller = false;
    calibrate->add_option("--cds-quotes", cdsPath, "CSV maturity_years,spread_bps");
    calibrate->add_option("--swaptions", swaptionPath, "JSON {\"swaptions\": [...]}")->required();
    calibrate->add_option("--cds-lgd", cdsLgd, "Loss given default for the CDS quotes")->capture_default_str();
    calibrate->add_option("--budget", budget, "Objective evaluations")->capture_default_str();
    calibrate->add_flag("--strict-feller", strictFeller, "Penalise 2 kappa mu <= nu^2 during the fit");

    auto* reproduce = app.add_subcommand("reproduce", "Built-in studies: table1, fig2-forward, fig3, fig4");
    std::string target;
    reproduce->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"table1", "fig2-forward", "fig3", "fig4"}));
    reproduce->add_option("--out", o.out, "Write output to this file");
    reproduce->add_option("--tol", o.tol, "Quadrature tolerance")->capture_default_str();
    reproduce->add_option("--outer", o.outer, "Outer Simpson subintervals per period")->capture_default_str();
    reproduce->add_option("--points", points, "Smile points (fig4)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*survival) return cmdSurvival(o, maturities, survivalT);
        if (*cds) return cmdCds(o);
        if (*swaption) return cmdSwaption(o);
        if (*smile) return cmdSmile(o, points, lo, hi);
        if (*transform) return cmdTransform(o, horizon, rho, sigma, vMax, vPoints);
        if (*mc) return cmdMcCheck(o);
        if (*calibrate) return cmdCalibrate(o, cdsPath, swaptionPath, cdsLgd, budget, strictFeller);
        if (*reproduce) {
            if (target == "table1") return reproduceTable1(o);
            if (target == "fig2-forward") return reproduceFig2Forward(o);
            if (target == "fig3") return reproduceFig3(o);
            return reproduceFig4(o, points, lo, hi);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CalibrationError& e) {
        std::cerr << "calibration error on interval " << e.interval() << " [" << e.intervalStart()
                  << ", " << e.intervalEnd() << "): " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << " (estimate " << e.estimate()
                  << ", error bound " << e.errorBound() << ")\n";
        return 3;
    } catch (const BranchError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
