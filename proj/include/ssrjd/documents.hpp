#pragma once

// JSON/CSV documents read and written by the command-line tool. Malformed input
// raises SchemaError whose field() is the JSON pointer of the offending value.

#include "ssrjd/black.hpp"
#include "ssrjd/calibration.hpp"
#include "ssrjd/errors.hpp"
#include "ssrjd/cds.hpp"
#include "ssrjd/model.hpp"
#include "ssrjd/swaption.hpp"

#include <json.hpp>

#include <istream>
#include <string>
#include <vector>

namespace ssrjd {

class SchemaError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

using Json = nlohmann::ordered_json;

/// Parses a file; I/O and syntax problems become SchemaError at pointer "".
Json loadJsonFile(const std::string& path);

/// Model document: y0, kappa, mu, nu, alpha, gamma, optional psi_knots/psi_values.
/// Parameter checks run in `feller` mode; warnings are appended when given.
Model readModel(const Json& j, FellerMode feller, std::vector<std::string>* warnings = nullptr,
                const std::string& pointer = "");
IntensityParams readParams(const Json& j, const std::string& pointer = "");

/// Curve document: either {"rate": r} or rate_knots/rate_values.
DiscountCurve readCurve(const Json& j, const std::string& pointer = "");

/// Either "dates" or start/end/frequency.
PaymentSchedule readSchedule(const Json& j, const std::string& pointer = "");

/// Schedule fields plus strike (decimal), lgd and optional valuation_time.
SwaptionSpec readSpec(const Json& j, const std::string& pointer = "");

/// {"swaptions": [ {spec fields..., "price": p}, ... ]}
std::vector<SwaptionQuote> readSwaptionQuotes(const Json& j);

/// CSV with header maturity_years,spread_bps.
std::vector<CdsQuote> readCdsQuotesCsv(std::istream& in);

/// Round to 10 significant digits for output.
double sig10(double x);
std::string formatSig10(double x);

Json toJson(const IntensityParams& p);
Json toJson(const Model& m);
Json toJson(const CdsLegBreakdown& b);
Json toJson(const DecompositionReport& r);
Json toJson(const FitReport& r);

}  // namespace ssrjd
