#include "lubintate/json_io.hpp"

#include <algorithm>

#include "lubintate/errors.hpp"

namespace lubintate {

namespace {

Error bad(const std::string& what) { return Error(ErrorCode::InvalidInput, what); }

template <class T>
T get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw bad(std::string("missing integer field '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

Json field_to_json(const FieldPtr& field) {
  return {{"p", field->characteristic()}, {"m", field->degree()}};
}

FieldPtr field_from_json(const Json& j) {
  return FiniteField::get(get_int<std::uint32_t>(j, "p"), get_int<unsigned>(j, "m"));
}

Json spec_to_json(const LocalFieldSpec& spec) {
  Json out{{"p", spec.p}, {"f", spec.f}, {"e", spec.e}};
  if (!spec.eis.empty()) out["eis"] = spec.eis;
  return out;
}

LocalFieldSpec spec_from_json(const Json& j) {
  try {
    LocalFieldSpec s;
    s.p = j.at("p").get<std::uint32_t>();
    s.f = j.value("f", 1u);
    s.e = j.value("e", 1u);
    if (j.contains("eis")) s.eis = j.at("eis").get<std::vector<std::vector<std::int64_t>>>();
    return s;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidSpec, ex.what());
  }
}

Json to_json(const FFElem& x) { return x.coeffs(); }

FFElem ffelem_from_json(const FieldPtr& field, const Json& j) {
  if (j.is_number_integer()) return FFElem::from_int(field, j.get<std::int64_t>());
  if (!j.is_array()) throw bad("field element must be an integer or a coefficient array");
  std::vector<std::int64_t> raw = j.get<std::vector<std::int64_t>>();
  if (raw.size() > field->degree()) throw bad("field element has too many coefficients");
  const auto p = static_cast<std::int64_t>(field->characteristic());
  std::vector<std::uint32_t> c(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) c[i] = static_cast<std::uint32_t>(((raw[i] % p) + p) % p);
  return FFElem::from_coeffs(field, c);
}

Json to_json(const TSeries& f) {
  Json coeffs = Json::array();
  for (auto r : f.coeffs()) coeffs.push_back(f.field()->coeffs(r));
  Json out{{"coeffs", coeffs}};
  out["prec"] = f.is_exact() ? Json(nullptr) : Json(f.prec());
  out["val"] = f.val() >= TSeries::kExact ? Json(nullptr) : Json(f.val());
  return out;
}

TSeries tseries_from_json(const FieldPtr& field, const Json& j) {
  if (!j.is_object() || !j.contains("coeffs")) throw bad("series must be an object with 'coeffs'");
  const std::int64_t prec = j.contains("prec") && !j.at("prec").is_null() ? j.at("prec").get<std::int64_t>()
                                                                           : TSeries::kExact;
  if (!j.contains("val") || j.at("val").is_null()) {
    if (!j.at("coeffs").empty()) throw bad("series with coefficients needs a valuation");
    return TSeries::zero(field, prec);
  }
  std::vector<TSeries::Raw> raw;
  for (const auto& c : j.at("coeffs")) raw.push_back(ffelem_from_json(field, c).raw());
  return TSeries(field, j.at("val").get<std::int64_t>(), std::move(raw), prec);
}

Json to_json(const SeriesMatrix& m) {
  Json rows = Json::array();
  std::int64_t prec = TSeries::kExact;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(to_json(m(r, c)));
      prec = std::min(prec, m(r, c).prec());
    }
    rows.push_back(row);
  }
  Json out{{"n", m.rows()}, {"rows", rows}, {"field", field_to_json(m(0, 0).field())}};
  out["prec"] = prec >= TSeries::kExact ? Json(nullptr) : Json(prec);
  return out;
}

SeriesMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("field")) throw bad("matrix must have 'rows' and 'field'");
  const auto field = field_from_json(j.at("field"));
  const auto& rows = j.at("rows");
  const std::size_t n = rows.size();
  if (n == 0) throw bad("empty matrix");
  SeriesMatrix m(n, rows.at(0).size(), TSeries::zero(field));
  for (std::size_t r = 0; r < n; ++r) {
    if (rows.at(r).size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = tseries_from_json(field, rows.at(r).at(c));
  }
  return m;
}

Json vector_to_json(const SeriesVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

SeriesVector vector_from_json(const FieldPtr& field, const Json& j) {
  if (!j.is_array()) throw bad("vector must be an array of series");
  SeriesVector out;
  for (const auto& x : j) out.push_back(tseries_from_json(field, x));
  return out;
}

Json to_json(const PiadicInteger& u) {
  Json coords = Json::array();
  for (const auto& c : u.pi_coordinates()) coords.push_back(c);
  return {{"prec", u.prec()}, {"coords", coords}};
}

PiadicInteger unit_from_json(const LocalFieldPtr& field, const Json& j) {
  if (j.is_number_integer()) return PiadicInteger::from_int(field, j.get<std::int64_t>(), field->max_precision());
  if (!j.is_object() || !j.contains("coords")) throw bad("unit must be an integer or {\"prec\":, \"coords\":}");
  const int prec = j.contains("prec") ? j.at("prec").get<int>() : field->max_precision();
  return PiadicInteger::from_pi_basis(field, j.at("coords").get<std::vector<std::vector<std::int64_t>>>(), prec);
}

Json to_json(const PExponent& s) { return {{"num", s.num}, {"den", s.den}}; }

Json to_json(const RepClass& c) {
  return {{"q", c.q}, {"n", c.n}, {"h", c.h}, {"s", c.s}, {"lambda", to_json(c.lambda)},
          {"lambda_pow_n", to_json(c.lambda_pow_n)}};
}

Json report_to_json(const std::string& check, const Json& params, const CheckReport& r) {
  Json out{{"check", check}, {"params", params}, {"ok", r.ok}};
  if (r.ok) {
    out["first_failure"] = nullptr;
  } else {
    out["first_failure"] = {{"index", r.index}, {"component", r.component}, {"detail", r.detail}};
  }
  return out;
}

}  // namespace lubintate
