#pragma once

#include <json.hpp>
#include <string>

#include "lubintate/phigamma.hpp"
#include "lubintate/reps.hpp"

namespace lubintate {

using Json = nlohmann::json;

/// {"p":, "m":} for F_{p^m}.
Json field_to_json(const FieldPtr& field);
FieldPtr field_from_json(const Json& j);

Json spec_to_json(const LocalFieldSpec& spec);
/// Throws InvalidSpec on a malformed object.
LocalFieldSpec spec_from_json(const Json& j);

/// Coefficient array over F_p, lowest degree first.
Json to_json(const FFElem& x);
/// Accepts a coefficient array or a plain integer.
FFElem ffelem_from_json(const FieldPtr& field, const Json& j);

/// {"val":, "prec":, "coeffs": [FFElem...]}; prec is null for exact series
/// and val is null for the exact zero series.
Json to_json(const TSeries& f);
TSeries tseries_from_json(const FieldPtr& field, const Json& j);

Json to_json(const SeriesMatrix& m);
SeriesMatrix matrix_from_json(const Json& j);

Json vector_to_json(const SeriesVector& v);
SeriesVector vector_from_json(const FieldPtr& field, const Json& j);

/// {"prec":, "coords": [[...], ...]}: pi-basis coordinates as W-polynomials.
Json to_json(const PiadicInteger& u);
/// Also accepts a plain integer, taken at the field's storage precision.
PiadicInteger unit_from_json(const LocalFieldPtr& field, const Json& j);

Json to_json(const PExponent& s);
Json to_json(const RepClass& c);

/// {"check":, "params":, "ok":, "first_failure": {...} or null}.
Json report_to_json(const std::string& check, const Json& params, const CheckReport& r);

}  // namespace lubintate
