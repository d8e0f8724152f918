#include "oqh/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oqh/fourier.hpp"

namespace oqh {

ReducedFraction::ReducedFraction(int64_t a, int64_t q) {
  if (q < 1) throw ParameterError("ReducedFraction: denominator must be >= 1");
  a %= q;
  if (a < 0) a += q;
  int64_t g = std::gcd(a, q);
  num = a / g;
  den = q / g;
}

std::string ReducedFraction::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

double torus_dist(double x, double y) {
  double d = std::fmod(std::abs(x - y), 1.0);
  return std::min(d, 1.0 - d);
}

cplx gauss_sum(const ReducedFraction& aq, int64_t b) {
  const int64_t Q = aq.den, A = aq.num;
  if (std::gcd(A, Q) != 1) throw ParameterError("gauss_sum: A/Q not reduced");
  b %= Q;
  if (b < 0) b += Q;
  cplx acc = 0.0;
  for (int64_t r = 0; r < Q; ++r) {
    int64_t t = (A * ((r * r) % Q)) % Q - (b * r) % Q;
    if (t < 0) t += Q;
    acc += unit_phase(static_cast<double>(t) / static_cast<double>(Q));
  }
  return acc / static_cast<double>(Q);
}

std::vector<double> gauss_abs_row(int64_t Q, int64_t A) {
  if (std::gcd(A % Q, Q) != 1) throw ParameterError("gauss_abs_row: A/Q not reduced");
  A %= Q;
  std::vector<cplx> table(static_cast<size_t>(Q));
  for (int64_t t = 0; t < Q; ++t)
    table[static_cast<size_t>(t)] =
        unit_phase(static_cast<double>(t) / static_cast<double>(Q));
  std::vector<int64_t> u(static_cast<size_t>(Q));
  for (int64_t r = 0; r < Q; ++r) u[static_cast<size_t>(r)] = (A * ((r * r) % Q)) % Q;

  std::vector<double> row(static_cast<size_t>(Q));
  // |S(A,B)| = |S(A,Q-B)| (substitute r -> Q-r), so only B <= Q/2 is summed.
  for (int64_t B = 0; B <= Q / 2; ++B) {
    cplx acc = 0.0;
    int64_t br = 0;
    for (int64_t r = 0; r < Q; ++r) {
      int64_t idx = u[static_cast<size_t>(r)] - br;
      if (idx < 0) idx += Q;
      acc += table[static_cast<size_t>(idx)];
      br += B;
      if (br >= Q) br -= Q;
    }
    double v = std::abs(acc) / static_cast<double>(Q);
    row[static_cast<size_t>(B)] = v;
    if (B > 0) row[static_cast<size_t>(Q - B)] = v;
  }
  return row;
}

int64_t level_q_min(int64_t s) { return (int64_t{1} << (s - 1)) + 1; }
int64_t level_q_max(int64_t s) { return int64_t{1} << s; }

RationalPairLevel enumerate_level(int64_t s) {
  if (s < 1) throw ParameterError("enumerate_level: s must be >= 1");
  if (s > 12) throw ResourceError("enumerate_level: s > 12 exceeds the enumeration cap");
  RationalPairLevel lvl;
  lvl.s = s;
  for (int64_t Q = level_q_min(s); Q <= level_q_max(s); ++Q) {
    auto res = coprime_residues(Q);
    for (int64_t A : res)
      for (int64_t B : res)
        lvl.pairs.emplace_back(ReducedFraction(A, Q), ReducedFraction(B, Q));
  }
  return lvl;
}

std::vector<int64_t> coprime_residues(int64_t Q) {
  std::vector<int64_t> out;
  for (int64_t r = 0; r < Q; ++r)
    if (std::gcd(r, Q) == 1) out.push_back(r);
  return out;
}

double chi_support_radius(int64_t s) { return 0.2 * std::pow(10.0, -static_cast<double>(s)); }

std::optional<ReducedFraction> find_alpha_s(double alpha, int64_t s) {
  if (s < 1) throw ParameterError("find_alpha_s: s must be >= 1");
  const double radius = chi_support_radius(s);
  for (int64_t Q = level_q_min(s); Q <= level_q_max(s); ++Q) {
    int64_t A = std::llround(alpha * static_cast<double>(Q));
    for (int64_t a : {A, A - 1, A + 1}) {
      if (torus_dist(alpha, static_cast<double>(a) / static_cast<double>(Q)) >= radius)
        continue;
      ReducedFraction f(a, Q);
      if (f.den == Q) return f;
    }
  }
  return std::nullopt;
}

double ArcParams::alpha_radius() const {
  return std::exp2((epsilon - 2.0) * static_cast<double>(j));
}
double ArcParams::beta_radius() const {
  return std::exp2((epsilon - 1.0) * static_cast<double>(j));
}
int64_t ArcParams::q_max() const {
  return static_cast<int64_t>(std::floor(std::exp2(6.0 * epsilon * static_cast<double>(j))));
}
int64_t ArcParams::level_max() const {
  return static_cast<int64_t>(std::floor(epsilon * static_cast<double>(j)));
}

namespace {

struct Frac {
  int64_t p, q;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

Frac simplest_impl(double lo, double hi, int depth) {
  if (depth > 128) throw NumericError("simplest_in_interval: recursion cap");
  double fl = std::ceil(lo);
  if (fl <= std::floor(hi)) {
    double cand = (lo <= 0.0 && 0.0 <= hi) ? 0.0 : fl;
    return {static_cast<int64_t>(cand), 1};
  }
  int64_t a = static_cast<int64_t>(std::floor(lo));
  Frac inner = simplest_impl(1.0 / (hi - static_cast<double>(a)),
                             1.0 / (lo - static_cast<double>(a)), depth + 1);
  return {a * inner.p + inner.q, inner.p};
}

// Left Farey-order-n neighbor of the reduced fraction p/q (q >= 2).
Frac farey_left_neighbor(const Frac& f, int64_t n) {
  // Solve p*v - q*u = 1 by the extended Euclid algorithm.
  int64_t old_r = f.p, r = f.q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - quot * t);
  }
  // old_s * p + old_t * q == gcd == 1; neighbor (u,v) with p*v - q*u = 1.
  int64_t v = old_s, u = -old_t;
  // Shift into the largest denominator <= n.
  int64_t shift = (n - v) / f.q;
  return {u + shift * f.p, v + shift * f.q};
}

Frac farey_next(const Frac& prev, const Frac& cur, int64_t n) {
  int64_t k = (n + prev.q) / cur.q;
  return {k * cur.p - prev.p, k * cur.q - prev.q};
}

Frac farey_prev(const Frac& next, const Frac& cur, int64_t n) {
  int64_t k = (n + next.q) / cur.q;
  return {k * cur.p - next.p, k * cur.q - next.q};
}

// Closest residue B mod Q with gcd(B,Q)=1 and |beta - B/Q| <= radius.
std::optional<int64_t> coprime_near(double beta, int64_t Q, double radius) {
  int64_t lo = static_cast<int64_t>(std::ceil((beta - radius) * static_cast<double>(Q)));
  int64_t hi = static_cast<int64_t>(std::floor((beta + radius) * static_cast<double>(Q)));
  std::optional<int64_t> best;
  double best_d = 2.0;
  for (int64_t b = lo; b <= hi; ++b) {
    int64_t bm = ((b % Q) + Q) % Q;
    if (Q != 1 && std::gcd(bm, Q) != 1) continue;
    double d = std::abs(beta - static_cast<double>(b) / static_cast<double>(Q));
    if (d < best_d) {
      best_d = d;
      best = bm;
    }
  }
  return best;
}

}  // namespace

ReducedFraction simplest_in_interval(double lo, double hi) {
  if (hi < lo) throw ParameterError("simplest_in_interval: hi < lo");
  Frac f = simplest_impl(lo, hi, 0);
  return ReducedFraction(f.p, f.q);
}

std::optional<std::pair<ReducedFraction, ReducedFraction>> locate_major_arc(
    double alpha, double beta, const ArcParams& params) {
  const double ra = params.alpha_radius();
  const double rb = params.beta_radius();
  const int64_t qmax = params.q_max();
  if (qmax < 1) return std::nullopt;

  Frac center = simplest_impl(alpha - ra, alpha + ra, 0);
  if (center.q > qmax) return std::nullopt;

  // Walk Farey neighbors of order qmax in both directions while the
  // alpha-interval still contains candidates.
  std::vector<Frac> candidates{center};
  if (qmax >= 2) {
    Frac left = farey_left_neighbor(center, qmax);
    Frac cur = left, prev = center;
    while (cur.value() >= alpha - ra) {
      candidates.push_back(cur);
      Frac nxt = farey_prev(prev, cur, qmax);
      prev = cur;
      cur = nxt;
    }
    // Right-hand walk starting from (left, center).
    prev = left;
    cur = center;
    for (;;) {
      Frac nxt = farey_next(prev, cur, qmax);
      if (nxt.value() > alpha + ra) break;
      candidates.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
  }

  for (const Frac& c : candidates) {
    if (std::abs(alpha - c.value()) > ra) continue;
    auto b = coprime_near(beta, c.q, rb);
    if (b) return std::make_pair(ReducedFraction(c.p, c.q), ReducedFraction(*b, c.q));
  }
  return std::nullopt;
}

DisjointnessReport verify_major_arc_disjointness(const ArcParams& params,
                                                 double radius_inflation) {
  const int64_t qmax = params.q_max();
  if (qmax > 4096)
    throw ResourceError("verify_major_arc_disjointness: q_max exceeds 2^12 cap");
  const double wa = 2.0 * params.alpha_radius() * radius_inflation;
  const double wb = 2.0 * params.beta_radius() * radius_inflation;

  DisjointnessReport rep;
  rep.worst_alpha_gap = 1.0;

  // Minimal gap between distinct beta-centers sharing a denominator.
  for (int64_t Q = 2; Q <= qmax; ++Q) {
    auto res = coprime_residues(Q);
    if (res.size() < 2) continue;
    int64_t gap = Q;
    for (size_t i = 1; i < res.size(); ++i) gap = std::min(gap, res[i] - res[i - 1]);
    gap = std::min(gap, res.front() + Q - res.back());
    double g = static_cast<double>(gap) / static_cast<double>(Q);
    if (g <= wb) {
      rep.disjoint = false;
      rep.worst_pair = "same alpha-center, denominator " + std::to_string(Q);
      return rep;
    }
  }

  // Walk the Farey sequence of order qmax; only consecutive fractions can
  // realize the minimal alpha gap.
  Frac prev{0, 1}, cur{1, qmax};
  auto check_pair = [&](const Frac& f1, const Frac& f2) {
    double gap = f2.value() - f1.value();
    if (gap < rep.worst_alpha_gap) {
      rep.worst_alpha_gap = gap;
      rep.worst_pair = ReducedFraction(f1.p, f1.q).str() + " vs " +
                       ReducedFraction(f2.p, f2.q).str();
    }
    if (gap > wa) return true;
    // Alpha-intervals overlap; boxes collide if some pair of admissible
    // beta-centers is within the beta width.
    auto r1 = coprime_residues(f1.q);
    for (int64_t B : r1) {
      double b1 = static_cast<double>(B) / static_cast<double>(f1.q);
      int64_t B2 = std::llround(b1 * static_cast<double>(f2.q));
      for (int64_t d = -2; d <= 2; ++d) {
        int64_t b = B2 + d;
        int64_t bm = ((b % f2.q) + f2.q) % f2.q;
        if (f2.q != 1 && std::gcd(bm, f2.q) != 1) continue;
        if (torus_dist(b1, static_cast<double>(bm) / static_cast<double>(f2.q)) <= wb) {
          rep.disjoint = false;
          rep.worst_pair = "(" + ReducedFraction(f1.p, f1.q).str() + "," +
                           ReducedFraction(B, f1.q).str() + ") vs (" +
                           ReducedFraction(f2.p, f2.q).str() + "," +
                           ReducedFraction(bm, f2.q).str() + ")";
          return false;
        }
      }
    }
    return true;
  };

  if (qmax == 1) return rep;
  for (;;) {
    if (!check_pair(prev, cur)) return rep;
    if (cur.p == 1 && cur.q == 1) break;
    Frac nxt = farey_next(prev, cur, qmax);
    prev = cur;
    cur = nxt;
  }
  return rep;
}

}  // namespace oqh
