#pragma once

// File formats and report serialization.
//   polynomial:        {"n_vars": n, "terms": [{"coef": c, "exps": [e_1, ..., e_n]}, ...]}
//   rational function: {"num": <polynomial>, "den": <polynomial>}
//   quadratic form:    {"n": n, "matrix": [[...], ...]}  (symmetric)

#include <json.hpp>
#include <string>

#include "expsum/census.hpp"
#include "expsum/cyclo.hpp"
#include "expsum/poly.hpp"

namespace expsum {

using json = nlohmann::ordered_json;

/// Parse errors carry line and column.
json parse_json_text(const std::string& text);
json load_json_file(const std::string& path);

MultiPoly poly_from_json(const json& j);
json poly_to_json(const MultiPoly& f);
/// Accepts either a rational-function or a polynomial document.
RationalFunc rational_from_json(const json& j);
json rational_to_json(const RationalFunc& f);
QuadraticForm form_from_json(const json& j);
json form_to_json(const QuadraticForm& Q);

/// x rounded to the given number of significant digits.
double round_sig(double x, int digits = 12);
/// Fixed-format rendering used for CSV cells.
std::string format_sig(double x, int digits = 12);

/// {p, m, coeffs, re, im}; composite conductors use {q, coeffs, re, im}.
json cyclo_to_json(const CycloElement& x);

json census_to_json(const CensusResult& c, bool scaling_ok);
json sweep_to_json(const SweepReport& rep);
std::string sweep_to_csv(const SweepReport& rep);
json growth_to_json(const std::vector<GrowthRow>& rows);
std::string growth_to_csv(const std::vector<GrowthRow>& rows);

}  // namespace expsum
