#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>

#include "expsum/census.hpp"
#include "expsum/expsum.hpp"
#include "expsum/io.hpp"
#include "expsum/suites.hpp"

using namespace expsum;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBudget = 3 };

struct Output {
  std::string path;
  std::string format = "json";
  bool timing = true;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
  }
  void write(const json& j) const { write(j.dump(2) + "\n"); }
};

template <typename T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::Parse, "bad list item '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty list");
  return out;
}

json suite_to_json(const SuiteReport& r, bool timing) {
  json j = {{"suite", r.name}, {"seed", r.seed}, {"cases", r.cases}, {"passed", r.passed},
            {"failed", r.failed}, {"counters", r.counters}, {"failures", r.failures}};
  if (timing) j["seconds"] = round_sig(r.seconds, 4);
  j["verdict"] = r.ok() ? "pass" : "fail";
  return j;
}

int run_eval_sum(const std::string& file, u64 p, unsigned m, const std::string& method, u64 budget,
                 const Output& out) {
  const RationalFunc f = rational_from_json(load_json_file(file));
  const PrimePower q(p, m);
  json j = {{"f", rational_to_json(f)}, {"p", p}, {"m", m}};
  std::optional<CycloElement> brute, closed;
  if (method == "brute" || method == "both") {
    brute = brute_full_sum(f, q, budget);
    j["brute"] = cyclo_to_json(*brute);
  }
  if (method == "theorem" || method == "both") {
    closed = full_sum_via_theorem1(f, q);
    j["theorem"] = cyclo_to_json(*closed);
  }
  int code = kOk;
  if (brute && closed) {
    j["equal"] = *brute == *closed;
    if (!(*brute == *closed)) code = kFailed;
  }
  out.write(j);
  return code;
}

int run_verify(const std::string& suite, u64 seed, u64 qmax, std::size_t cases, u64 budget,
               const Output& out) {
  SuiteReport r;
  if (suite == "prop1") {
    r = prop1_suite(seed, cases ? cases : 240);
  } else if (suite == "thm1") {
    r = thm1_suite(seed, cases ? cases : 240);
  } else if (suite == "gauss") {
    r = gauss_suite(seed, qmax);
  } else {
    r = esum_suite(seed, cases ? cases : 120, budget);
  }
  out.write(suite_to_json(r, out.timing));
  return r.ok() ? kOk : kFailed;
}

int run_census(const std::string& file, u64 p, unsigned m, u64 budget, const Output& out) {
  const QuadraticForm Q = form_from_json(load_json_file(file));
  json rows = json::array();
  bool stable = true;
  bool scaling = true;
  Rational first;
  for (unsigned k = 1; k <= m; ++k) {
    const CensusResult c = census(Q, p, k, budget);
    const bool ok = hensel_scaling_check(Q, p, k, budget);
    if (k == 1) first = c.b_p;
    stable = stable && c.b_p == first;
    scaling = scaling && ok;
    rows.push_back(census_to_json(c, ok));
  }
  out.write(json{{"form", form_to_json(Q)},
                 {"p", p},
                 {"m", m},
                 {"rows", rows},
                 {"b_p", first.to_string()},
                 {"b_p_stable", stable},
                 {"hensel_scaling", scaling}});
  return stable && scaling ? kOk : kFailed;
}

int run_sweep(const std::string& file, u64 p, const std::string& ms, double eps, const std::string& x0s,
              double radius, u64 budget, const Output& out) {
  const QuadraticForm Q = form_from_json(load_json_file(file));
  std::vector<i64> x0(Q.n(), 0);
  if (!x0s.empty()) x0 = parse_list<i64>(x0s);
  if (x0.size() != Q.n()) throw Error(ErrorKind::Parse, "--x0 needs " + std::to_string(Q.n()) + " entries");
  SweepReport rep = theorem2_sweep(Q, p, parse_list<unsigned>(ms), eps, x0, radius, budget);
  if (!out.timing)
    for (SweepRow& r : rep.rows) r.runtime_ms = 0;
  if (out.format == "csv")
    out.write(sweep_to_csv(rep));
  else
    out.write(sweep_to_json(rep));
  return rep.converging() ? kOk : kFailed;
}

int run_growth(const std::string& file, const std::string& Ns, u64 budget, const Output& out) {
  const QuadraticForm Q = form_from_json(load_json_file(file));
  const std::vector<GrowthRow> rows = growth_table(Q, parse_list<i64>(Ns), budget);
  const double bound = std::pow(2.0, static_cast<double>(Q.n()) - 2 + 0.5);
  bool ok = true;
  for (const GrowthRow& g : rows) ok = ok && g.ratio <= bound;
  if (out.format == "csv") {
    out.write(growth_to_csv(rows));
  } else {
    out.write(json{{"form", form_to_json(Q)},
                   {"rows", growth_to_json(rows)},
                   {"ratio_bound", round_sig(bound)},
                   {"within_bound", ok}});
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exponential sums modulo prime powers and quadratic congruence censuses"};
  app.require_subcommand(1);
  app.fallthrough();

  u64 budget = default_budget();
  Output out;
  app.add_option("--budget", budget, "enumeration budget in points (default 1e7 or $EXPSUM_BUDGET)");
  app.add_option("-o,--out", out.path, "write the report to a file");
  app.add_option("--format", out.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timing", [&](std::int64_t) { out.timing = false; }, "omit wall-clock fields");

  std::string file, method = "brute", suite, ms = "4,6,8", x0, Ns = "50,100,200";
  u64 p = 3, seed = 7, qmax = 2000;
  unsigned m = 2;
  std::size_t cases = 0;
  double eps = 0.05, radius = 8;

  auto* eval = app.add_subcommand("eval-sum", "S(f, p^m) by enumeration and/or the closed form");
  eval->add_option("--f", file, "polynomial or rational-function file")->required();
  eval->add_option("--p", p)->required();
  eval->add_option("--m", m)->required();
  eval->add_option("--method", method)->check(CLI::IsMember({"brute", "theorem", "both"}));

  auto* verify = app.add_subcommand("verify", "seeded oracle suites");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"prop1", "thm1", "gauss", "esum"}));
  verify->add_option("--seed", seed);
  verify->add_option("--qmax", qmax);
  verify->add_option("--cases", cases);

  auto* cen = app.add_subcommand("census", "count_A, b_p and the scaling law");
  cen->add_option("--form", file)->required();
  cen->add_option("--p", p)->required();
  cen->add_option("--m", m)->required();

  auto* sweep = app.add_subcommand("thm2-sweep", "weighted small-box counts against the main term");
  sweep->add_option("--form", file)->required();
  sweep->add_option("--p", p)->required();
  sweep->add_option("--m", ms, "comma-separated exponents");
  sweep->add_option("--eps", eps);
  sweep->add_option("--x0", x0, "comma-separated centre");
  sweep->add_option("--radius", radius);

  auto* growth = app.add_subcommand("growth", "integer zeros in boxes |x_i| <= N and 2N");
  growth->add_option("--form", file)->required();
  growth->add_option("--N", Ns, "comma-separated box sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return run_eval_sum(file, p, m, method, budget, out);
    if (*verify) return run_verify(suite, seed, qmax, cases, budget, out);
    if (*cen) return run_census(file, p, m, budget, out);
    if (*sweep) return run_sweep(file, p, ms, eps, x0, radius, budget, out);
    return run_growth(file, Ns, budget, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::BudgetExceeded ? kBudget : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
