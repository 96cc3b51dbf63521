#include "expsum/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace expsum {

namespace {

constexpr std::size_t kMaxFailures = 10;

u64 pick(std::mt19937_64& rng, u64 lo, u64 hi) { return lo + rng() % (hi - lo + 1); }

i64 pick_signed(std::mt19937_64& rng, i64 bound, bool nonzero) {
  while (true) {
    const i64 v = static_cast<i64>(pick(rng, 0, static_cast<u64>(2 * bound))) - bound;
    if (v != 0 || !nonzero) return v;
  }
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned max_deg, std::size_t max_terms) {
  MultiPoly f(n);
  const std::size_t terms = pick(rng, 1, max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    unsigned budget = static_cast<unsigned>(pick(rng, 0, max_deg));
    for (std::size_t i = 0; i < n && budget > 0; ++i) {
      const unsigned k = static_cast<unsigned>(pick(rng, 0, budget));
      e[i] = k;
      budget -= k;
    }
    f.add_term(e, pick_signed(rng, 6, true));
  }
  return f;
}

MultiPoly random_den(std::mt19937_64& rng, std::size_t n, u64 p) {
  MultiPoly d = random_poly(rng, n, 2, 2);
  const i64 c = static_cast<i64>(pick(rng, 1, p - 1));
  return d - MultiPoly::constant(n, d.constant_term()) + MultiPoly::constant(n, c);
}

Point random_point(std::mt19937_64& rng, std::size_t n, u64 p) {
  Point a(n);
  for (auto& v : a) v = static_cast<i64>(pick(rng, 0, p - 1));
  return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void SuiteReport::record(bool pass, const std::string& what) {
  ++cases;
  if (pass) {
    ++passed;
  } else {
    ++failed;
    if (failures.size() < kMaxFailures) failures.push_back(what);
  }
}

std::string StationaryCase::to_string() const {
  std::string s = "f = (" + f.num().to_string() + ")";
  if (!f.is_polynomial()) s += " / (" + f.den().to_string() + ")";
  s += ", p = " + std::to_string(q.p()) + ", m = " + std::to_string(q.m()) + ", r = " +
       std::to_string(r) + ", alpha = (";
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + std::to_string(alpha[i]);
  return s + ")";
}

std::vector<StationaryCase> stationary_cases(u64 seed, std::size_t count, u64 max_points) {
  static const u64 primes[] = {3, 5, 7};
  std::mt19937_64 rng(seed);
  std::vector<StationaryCase> out;
  while (out.size() < count) {
    const u64 p = primes[pick(rng, 0, 2)];
    const std::size_t n = pick(rng, 1, 3);
    const unsigned m = static_cast<unsigned>(pick(rng, 2, 5));
    if (std::pow(static_cast<long double>(p), static_cast<long double>((m - 1) * n)) > max_points) continue;

    MultiPoly g = random_poly(rng, n, 4, 4);
    if (pick(rng, 0, 1) == 0) {
      // diagonal quadratic plus a p-divisible tail: critical points are nonsingular
      MultiPoly quad(n);
      for (std::size_t i = 0; i < n; ++i) {
        Exponents e(n, 0);
        e[i] = 2;
        quad.add_term(e, static_cast<i64>(pick(rng, 1, p - 1)));
        e[i] = 1;
        quad.add_term(e, pick_signed(rng, 6, false));
      }
      g = quad + g.scaled(static_cast<i64>(p));
    }
    if (g.total_degree() == 0) continue;
    if (pick(rng, 0, 2) == 0) g = g.scaled(static_cast<i64>(ipow(p, static_cast<unsigned>(pick(rng, 1, m - 1)))));
    const RationalFunc f = pick(rng, 0, 2) == 0 ? RationalFunc(g, random_den(rng, n, p)) : RationalFunc(g);

    int r = 0;
    std::vector<CriticalPoint> crit;
    try {
      r = StationaryData(f, p).r();
      if (r >= static_cast<int>(m)) continue;
      crit = critical_points_mod_p(f, p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::AllDerivativesZero || e.kind() == ErrorKind::ZeroFunction) continue;
      throw;
    }
    Point alpha = random_point(rng, n, p);
    if (!crit.empty() && pick(rng, 0, 9) < 6) alpha = crit[pick(rng, 0, crit.size() - 1)].alpha;
    out.push_back({f, PrimePower(p, m), alpha, r});
  }
  return out;
}

SuiteReport prop1_suite(u64 seed, std::size_t count) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "prop1";
  rep.seed = seed;
  for (const StationaryCase& c : stationary_cases(seed, count)) {
    const CycloElement lhs = prop1_reduce(c.f, c.q, c.alpha);
    const CycloElement rhs = restricted_sum_alpha(c.f, c.q, c.alpha);
    rep.record(lhs == rhs, c.to_string());
    const int d = static_cast<int>(c.q.m()) - c.r;
    ++rep.counters[d % 2 == 0 ? "even_d" : "odd_d"];
    if (c.r > 0) ++rep.counters["r_positive"];
    if (!c.f.is_polynomial()) ++rep.counters["rational"];
    if (!rhs.is_zero()) ++rep.counters["nonzero"];
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

SuiteReport thm1_suite(u64 seed, std::size_t count) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "thm1";
  rep.seed = seed;
  for (const StationaryCase& c : stationary_cases(seed, count)) {
    const int d = static_cast<int>(c.q.m()) - c.r;
    if (d < 2) {
      ++rep.counters["skipped_small_d"];
      continue;
    }
    bool singular = false;
    for (const CriticalPoint& cp : critical_points_mod_p(c.f, c.q.p())) singular = singular || cp.singular;
    if (singular) {
      ++rep.counters["skipped_singular"];
      continue;
    }
    ++rep.counters["applicable"];
    const StationaryData data(c.f, c.q.p());
    const CycloElement brute = restricted_sum_alpha(c.f, c.q, c.alpha);
    const bool critical = is_critical_mod_p(data, c.alpha);
    try {
      const CycloElement closed = theorem1_eval(data, c.q, c.alpha);
      rep.record(closed == brute, c.to_string());
      if (critical) ++rep.counters[d % 2 == 0 ? "even_critical" : "odd_critical"];
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TaylorRemainder) throw;
      ++rep.counters["refused_taylor"];
      if (!(theorem1_formula_unchecked(data, c.q, c.alpha) == brute)) ++rep.counters["refusal_confirmed"];
    }
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

SuiteReport gauss_suite(u64 seed, u64 qmax, std::size_t per_q) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "gauss";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (u64 q = 3; q <= qmax; q += 2) {
    for (std::size_t k = 0; k < per_q; ++k) {
      i64 a;
      do a = static_cast<i64>(pick(rng, 1, q - 1));
      while (gcd(static_cast<u64>(a), q) != 1);
      rep.record(gauss_sum_closed(q, a) == gauss_sum_brute(q, a),
                 "q = " + std::to_string(q) + ", a = " + std::to_string(a));
    }
    ++rep.counters["moduli"];
  }
  for (u64 p : {3, 5, 7, 11}) {
    if (p > qmax) break;
    const double norm = std::norm(gauss_sum_brute(p, 1).embed_complex());
    rep.record(std::abs(norm - static_cast<double>(p)) < 1e-9, "|G_" + std::to_string(p) + "(1)|^2");
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

IntMatrix random_form_matrix(std::mt19937_64& rng, std::size_t n, u64 p, i64 bound, bool cross_terms) {
  while (true) {
    IntMatrix a(n, std::vector<i64>(n, 0));
    bool has_cross = false;
    for (std::size_t i = 0; i < n; ++i) {
      a[i][i] = pick_signed(rng, bound, false);
      for (std::size_t j = 0; j < i && cross_terms; ++j) {
        a[i][j] = a[j][i] = pick_signed(rng, bound, false);
        has_cross = has_cross || a[i][j] != 0;
      }
    }
    if (cross_terms && !has_cross) continue;
    if (reduce(int_determinant(a), p) != 0) return a;
  }
}

SuiteReport esum_suite(u64 seed, std::size_t count, u64 budget) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "esum";
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::size_t done = 0;
  while (done < count) {
    const u64 p = pick(rng, 0, 1) ? 5 : 3;
    const std::size_t n = 3;
    const unsigned m = static_cast<unsigned>(pick(rng, 2, 4));
    if (std::pow(static_cast<long double>(p), static_cast<long double>(m * n)) > budget) continue;
    const unsigned r = static_cast<unsigned>(pick(rng, 0, m - 2));
    const QuadraticForm Q(random_form_matrix(rng, n, p, 4, true));
    std::vector<i64> L(n);
    do
      for (auto& v : L) v = pick_signed(rng, 9, false);
    while (std::all_of(L.begin(), L.end(), [&](i64 v) { return reduce(v, p) == 0; }));
    const u64 pr = ipow(p, r);
    i64 l;
    do l = static_cast<i64>(pick(rng, 1, ipow(p, m - r) - 1));
    while (l % static_cast<i64>(p) == 0);
    std::vector<i64> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = static_cast<i64>(pr) * L[i];
    const i64 h = static_cast<i64>(pr) * l;

    std::string what = "Q = " + Q.to_string() + ", p = " + std::to_string(p) + ", m = " +
                       std::to_string(m) + ", r = " + std::to_string(r) + ", L = (" +
                       std::to_string(L[0]) + "," + std::to_string(L[1]) + "," + std::to_string(L[2]) +
                       "), l = " + std::to_string(l);
    const CycloElement brute = esum_brute(Q, k, h, p, m, false, budget);
    rep.record(esum_closed(Q, L, l, r, p, m) == brute, "closed: " + what);
    ++rep.counters["closed_vs_brute"];
    rep.record(esum_brute(Q, k, h, p, m, true, budget) == brute, "restricted: " + what);
    ++rep.counters["restricted_vs_unrestricted"];

    // h with ord_p(h) != r; ord = m stands for h = 0.
    unsigned s;
    do s = static_cast<unsigned>(pick(rng, 0, m));
    while (s == r);
    i64 h2 = 0;
    if (s < m) {
      i64 unit;
      do unit = static_cast<i64>(pick(rng, 1, ipow(p, m - s) - 1));
      while (unit % static_cast<i64>(p) == 0);
      h2 = static_cast<i64>(ipow(p, s)) * unit;
    }
    rep.record(esum_brute(Q, k, h2, p, m, true, budget).is_zero(),
               "vanishing h = " + std::to_string(h2) + ": " + what);
    ++rep.counters["vanishing"];

    const HAverage avg = esum_h_average(Q, L, r, p, m);
    rep.record(avg.vanishing_holds && avg.bound_holds, "h-average: " + what);
    ++rep.counters["h_average"];
    if (avg.predicted_zero) ++rep.counters["h_average_predicted_zero"];
    ++rep.counters[p == 3 ? "p3" : "p5"];
    ++done;
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace expsum
