#include "ssrjd/documents.hpp"

#include "ssrjd/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ssrjd {

namespace {

std::string child(const std::string& pointer, const std::string& key) {
    return pointer + "/" + key;
}

const Json& require(const Json& j, const std::string& pointer, const std::string& key) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(child(pointer, key), "required field is missing");
    return *it;
}

double number(const Json& v, const std::string& pointer) {
    if (!v.is_number()) throw SchemaError(pointer, "expected a number");
    return v.get<double>();
}

double requireNumber(const Json& j, const std::string& pointer, const std::string& key) {
    return number(require(j, pointer, key), child(pointer, key));
}

double optionalNumber(const Json& j, const std::string& pointer, const std::string& key,
                      double fallback) {
    if (!j.contains(key)) return fallback;
    return number(j.at(key), child(pointer, key));
}

std::vector<double> numbers(const Json& v, const std::string& pointer) {
    if (!v.is_array()) throw SchemaError(pointer, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(number(v[i], pointer + "/" + std::to_string(i)));
    }
    return out;
}

// Re-raise construction failures at the document location.
template <class F>
auto at(const std::string& pointer, F&& make) {
    try {
        return make();
    } catch (const SchemaError&) {
        throw;
    } catch (const ValidationError& e) {
        throw SchemaError(pointer + "/" + e.field(), e.what());
    } catch (const ArgumentError& e) {
        throw SchemaError(pointer.empty() ? "/" : pointer, e.what());
    }
}

Json rounded(const std::vector<double>& xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(sig10(x));
    return a;
}

}  // namespace

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("", path + ": " + e.what());
    }
}

IntensityParams readParams(const Json& j, const std::string& pointer) {
    IntensityParams p;
    p.y0 = requireNumber(j, pointer, "y0");
    p.kappa = requireNumber(j, pointer, "kappa");
    p.mu = requireNumber(j, pointer, "mu");
    p.nu = requireNumber(j, pointer, "nu");
    p.alpha = requireNumber(j, pointer, "alpha");
    p.gamma = requireNumber(j, pointer, "gamma");
    return p;
}

Model readModel(const Json& j, FellerMode feller, std::vector<std::string>* warnings,
                const std::string& pointer) {
    const IntensityParams raw = readParams(j, pointer);
    const ValidatedParams v = at(pointer, [&] { return validateParams(raw, feller); });
    if (warnings) warnings->insert(warnings->end(), v.warnings.begin(), v.warnings.end());

    Model m{v.params, ShiftFunction::zero()};
    const bool hasKnots = j.contains("psi_knots");
    const bool hasValues = j.contains("psi_values");
    if (hasKnots != hasValues) {
        throw SchemaError(child(pointer, hasKnots ? "psi_values" : "psi_knots"),
                          "psi_knots and psi_values must be given together");
    }
    if (hasValues) {
        std::vector<double> knots = numbers(j.at("psi_knots"), child(pointer, "psi_knots"));
        std::vector<double> values = numbers(j.at("psi_values"), child(pointer, "psi_values"));
        m.shift = at(child(pointer, "psi_values"),
                     [&] { return ShiftFunction(std::move(knots), std::move(values)); });
    }
    return m;
}

DiscountCurve readCurve(const Json& j, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    if (j.contains("rate")) {
        const double r = requireNumber(j, pointer, "rate");
        if (!(r >= 0.0 && r <= 1.0)) throw SchemaError(child(pointer, "rate"), "short rate must lie in [0, 1]");
        return DiscountCurve(r);
    }
    std::vector<double> knots = numbers(require(j, pointer, "rate_knots"), child(pointer, "rate_knots"));
    std::vector<double> values =
        numbers(require(j, pointer, "rate_values"), child(pointer, "rate_values"));
    return at(child(pointer, "rate_values"),
              [&] { return DiscountCurve(std::move(knots), std::move(values)); });
}

PaymentSchedule readSchedule(const Json& j, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    if (j.contains("dates")) {
        std::vector<double> dates = numbers(j.at("dates"), child(pointer, "dates"));
        return at(child(pointer, "dates"), [&] { return PaymentSchedule(std::move(dates)); });
    }
    const double start = requireNumber(j, pointer, "start");
    const double end = requireNumber(j, pointer, "end");
    const double freq = optionalNumber(j, pointer, "frequency", 4.0);
    if (freq != std::floor(freq) || freq < 1.0) {
        throw SchemaError(child(pointer, "frequency"), "expected a positive integer");
    }
    return at(pointer, [&] { return PaymentSchedule::regular(start, end, static_cast<int>(freq)); });
}

SwaptionSpec readSpec(const Json& j, const std::string& pointer) {
    SwaptionSpec spec{optionalNumber(j, pointer, "valuation_time", 0.0), readSchedule(j, pointer),
                      requireNumber(j, pointer, "strike"), requireNumber(j, pointer, "lgd")};
    at(pointer, [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

std::vector<SwaptionQuote> readSwaptionQuotes(const Json& j) {
    const Json& list = require(j, "", "swaptions");
    if (!list.is_array() || list.empty()) {
        throw SchemaError("/swaptions", "expected a nonempty array");
    }
    std::vector<SwaptionQuote> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string ptr = "/swaptions/" + std::to_string(i);
        out.push_back({readSpec(list[i], ptr), requireNumber(list[i], ptr, "price")});
    }
    return out;
}

std::vector<CdsQuote> readCdsQuotesCsv(std::istream& in) {
    std::string line;
    std::vector<CdsQuote> out;
    bool header = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "maturity_years,spread_bps") {
                throw SchemaError("/header", "expected 'maturity_years,spread_bps'");
            }
            header = true;
            continue;
        }
        const std::string ptr = "/" + std::to_string(row);
        std::stringstream ss(line);
        std::string a;
        std::string b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
            throw SchemaError(ptr, "expected two columns");
        }
        try {
            std::size_t usedA = 0;
            std::size_t usedB = 0;
            const double m = std::stod(a, &usedA);
            const double s = std::stod(b, &usedB);
            if (usedA != a.size() || usedB != b.size()) throw std::invalid_argument("trailing");
            out.push_back({m, s * 1e-4});
        } catch (const std::exception&) {
            throw SchemaError(ptr, "not a number");
        }
        ++row;
    }
    if (!header) throw SchemaError("/header", "missing header line");
    return out;
}

double sig10(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::strtod(buf, nullptr);
}

std::string formatSig10(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

Json toJson(const IntensityParams& p) {
    return Json{{"y0", sig10(p.y0)},       {"kappa", sig10(p.kappa)}, {"mu", sig10(p.mu)},
                {"nu", sig10(p.nu)},       {"alpha", sig10(p.alpha)}, {"gamma", sig10(p.gamma)}};
}

Json toJson(const Model& m) {
    Json j = toJson(m.params);
    j["psi_knots"] = rounded({m.shift.knots().begin(), m.shift.knots().end()});
    j["psi_values"] = rounded({m.shift.values().begin(), m.shift.values().end()});
    return j;
}

Json toJson(const CdsLegBreakdown& b) {
    return Json{{"premium_leg", sig10(b.premiumLeg)},
                {"accrual_on_default", sig10(b.accrualOnDefault)},
                {"annuity", sig10(b.annuity)},
                {"protection_leg", sig10(b.protectionLeg)},
                {"spread", sig10(b.spread)},
                {"fair_spread", sig10(b.fairSpread)},
                {"fair_spread_bps", sig10(b.fairSpread * 1e4)},
                {"pv", sig10(b.pv)}};
}

Json toJson(const DecompositionReport& r) {
    Json j;
    j["branch"] = toString(r.branch);
    j["y_star"] = r.yStar ? Json(sig10(*r.yStar)) : Json(nullptr);
    j["gate_integral"] = sig10(r.gateIntegral);
    j["price"] = sig10(r.price);
    j["price_bps"] = sig10(r.price * 1e4);
    j["outer_nodes"] = r.outerNodes;
    j["max_fourier_error"] = sig10(r.maxFourierError);
    j["fourier_evaluations"] = r.fourierEvaluations;
    return j;
}

Json toJson(const FitReport& r) {
    Json j;
    j["model"] = toJson(Model{r.params, r.shift});
    j["objective"] = sig10(r.objective);
    j["evaluations"] = r.evaluations;
    j["converged"] = r.converged;
    j["relative_residuals"] = rounded(r.relativeResiduals);
    j["trace"] = rounded(r.trace);
    return j;
}

}  // namespace ssrjd
