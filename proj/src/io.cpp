#include "expsum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace expsum {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

i64 as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<i64>();
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() already names the line and column.
    throw Error(ErrorKind::Parse, e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

MultiPoly poly_from_json(const json& j) {
  const i64 n = as_int(field(j, "n_vars", "polynomial"), "/n_vars");
  if (n < 1) bad("/n_vars", "must be >= 1");
  const json& terms = field(j, "terms", "polynomial");
  if (!terms.is_array()) bad("/terms", "expected an array");
  MultiPoly f(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "/terms/" + std::to_string(t);
    const i64 c = as_int(field(terms[t], "coef", where), where + "/coef");
    const json& e = field(terms[t], "exps", where);
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n))
      bad(where + "/exps", "expected " + std::to_string(n) + " exponents");
    Exponents exps;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const i64 v = as_int(e[i], where + "/exps/" + std::to_string(i));
      if (v < 0) bad(where + "/exps/" + std::to_string(i), "negative exponent");
      exps.push_back(static_cast<unsigned>(v));
    }
    f.add_term(exps, c);
  }
  return f;
}

json poly_to_json(const MultiPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"coef", c}, {"exps", e}});
  return {{"n_vars", f.n_vars()}, {"terms", terms}};
}

RationalFunc rational_from_json(const json& j) {
  if (j.is_object() && j.contains("num")) {
    MultiPoly num = poly_from_json(field(j, "num", "rational"));
    MultiPoly den = poly_from_json(field(j, "den", "rational"));
    if (num.n_vars() != den.n_vars()) bad("rational", "num and den disagree on n_vars");
    if (den.is_zero()) bad("/den", "zero denominator");
    return RationalFunc(std::move(num), std::move(den));
  }
  return RationalFunc(poly_from_json(j));
}

json rational_to_json(const RationalFunc& f) {
  if (f.is_polynomial()) return poly_to_json(f.num());
  return {{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

QuadraticForm form_from_json(const json& j) {
  const i64 n = as_int(field(j, "n", "form"), "/n");
  const json& m = field(j, "matrix", "form");
  if (!m.is_array() || m.size() != static_cast<std::size_t>(n)) bad("/matrix", "expected n rows");
  IntMatrix a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string where = "/matrix/" + std::to_string(i);
    if (!m[i].is_array() || m[i].size() != static_cast<std::size_t>(n)) bad(where, "expected n entries");
    std::vector<i64> row;
    for (std::size_t k = 0; k < m[i].size(); ++k) row.push_back(as_int(m[i][k], where + "/" + std::to_string(k)));
    a.push_back(std::move(row));
  }
  if (!is_symmetric(a)) bad("/matrix", "matrix is not symmetric");
  try {
    return QuadraticForm(std::move(a));
  } catch (const Error& e) {
    bad("form", e.what());
  }
}

json form_to_json(const QuadraticForm& Q) { return {{"n", Q.n()}, {"matrix", Q.matrix()}}; }

double round_sig(double x, int digits) {
  if (x == 0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  const double r = std::strtod(buf, nullptr);
  return r == 0 ? 0.0 : r;  // no negative zero
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, round_sig(x, digits));
  return buf;
}

json cyclo_to_json(const CycloElement& x) {
  json out;
  const Conductor& c = x.conductor();
  if (c.is_prime_power() && !c.factors().empty()) {
    out["p"] = c.factors()[0].p;
    out["m"] = c.factors()[0].m;
  } else {
    out["q"] = c.q();
  }
  out["coeffs"] = x.coeffs();
  const std::complex<double> z = x.embed_complex();
  double scale = 1;
  for (i64 v : x.coeffs()) scale += std::abs(static_cast<double>(v));
  auto clean = [&](double v) { return std::abs(v) < 1e-12 * scale ? 0.0 : round_sig(v); };
  out["re"] = clean(z.real());
  out["im"] = clean(z.imag());
  return out;
}

json census_to_json(const CensusResult& c, bool scaling_ok) {
  return {{"p", c.p}, {"m", c.m}, {"count_A", c.count_A}, {"b_p", c.b_p.to_string()},
          {"hensel_scaling", scaling_ok}};
}

json sweep_to_json(const SweepReport& rep) {
  json rows = json::array();
  for (const SweepRow& r : rep.rows)
    rows.push_back({{"p", r.p},
                    {"m", r.m},
                    {"epsilon", round_sig(r.epsilon)},
                    {"N", round_sig(r.N)},
                    {"T", round_sig(r.T)},
                    {"T0", round_sig(r.T0)},
                    {"ratio", round_sig(r.ratio)},
                    {"deviation", round_sig(r.deviation)},
                    {"runtime_ms", round_sig(r.runtime_ms, 6)}});
  return {{"rows", rows},
          {"non_increasing", rep.non_increasing},
          {"final_below", rep.final_below},
          {"final_threshold", rep.final_threshold},
          {"converging", rep.converging()}};
}

std::string sweep_to_csv(const SweepReport& rep) {
  std::string out = "p,m,epsilon,N,T,T0,ratio,deviation,runtime_ms\n";
  for (const SweepRow& r : rep.rows) {
    out += std::to_string(r.p) + "," + std::to_string(r.m) + "," + format_sig(r.epsilon) + "," +
           format_sig(r.N) + "," + format_sig(r.T) + "," + format_sig(r.T0) + "," +
           format_sig(r.ratio) + "," + format_sig(r.deviation) + "," + format_sig(r.runtime_ms, 6) +
           "\n";
  }
  return out;
}

json growth_to_json(const std::vector<GrowthRow>& rows) {
  json out = json::array();
  for (const GrowthRow& g : rows)
    out.push_back({{"N", g.N},
                   {"count", g.count},
                   {"count_2N", g.count_double},
                   {"ratio", round_sig(g.ratio)},
                   {"exponent", round_sig(g.exponent)}});
  return out;
}

std::string growth_to_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "N,count,count_2N,ratio,exponent\n";
  for (const GrowthRow& g : rows)
    out += std::to_string(g.N) + "," + std::to_string(g.count) + "," + std::to_string(g.count_double) +
           "," + format_sig(g.ratio) + "," + format_sig(g.exponent) + "\n";
  return out;
}

}  // namespace expsum
