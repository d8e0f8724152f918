#include "oqh/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "oqh/fourier.hpp"

namespace oqh {

int64_t SparseEntry::witness_count() const {
  return static_cast<int64_t>(std::count(witness.begin(), witness.end(), true));
}

VerifyReport verify_sparse(const SparseCollection& c) {
  VerifyReport rep;
  std::map<int64_t, int64_t> overlap;
  const int64_t cap = static_cast<int64_t>(std::ceil(1.0 / c.rho));
  for (size_t i = 0; i < c.entries.size(); ++i) {
    const SparseEntry& e = c.entries[i];
    if (static_cast<int64_t>(e.witness.size()) != e.interval.length())
      throw StructuralError("verify_sparse: witness bitset does not match interval");
    double need = c.rho * static_cast<double>(e.interval.length());
    if (static_cast<double>(e.witness_count()) <= need) {
      rep.ok = false;
      rep.diagnostic = "entry " + std::to_string(i) + " [" +
                       std::to_string(e.interval.a) + "," + std::to_string(e.interval.b) +
                       "]: |E_S| = " + std::to_string(e.witness_count()) +
                       " not > rho|S| = " + std::to_string(need);
      return rep;
    }
    for (int64_t k = 0; k < e.interval.length(); ++k)
      if (e.witness[static_cast<size_t>(k)]) {
        int64_t& cnt = overlap[e.interval.a + k];
        if (++cnt > cap) {
          rep.ok = false;
          rep.diagnostic = "point " + std::to_string(e.interval.a + k) +
                           " lies in more than ceil(1/rho) = " + std::to_string(cap) +
                           " witness sets";
          return rep;
        }
      }
  }
  return rep;
}

double eval_sparse_form(const SparseCollection& c, const Signal& f,
                        const Signal& g, const SparseFormParams& p) {
  double acc = 0.0;
  for (const SparseEntry& e : c.entries)
    acc += lr_average(f, e.interval, p.r) * lr_average(g, e.interval, p.s) *
           static_cast<double>(e.interval.length());
  return acc;
}

namespace {

// Smallest absolutely-aligned dyadic interval containing [a,b].
DiscreteInterval dyadic_hull(int64_t a, int64_t b) {
  for (int64_t m = 0; m < 62; ++m) {
    int64_t len = int64_t{1} << m;
    int64_t k = a >= 0 ? a / len : -((-a + len - 1) / len);
    int64_t lo = k * len;
    if (b <= lo + len - 1) return {lo, lo + len - 1};
  }
  throw ResourceError("dyadic_hull: interval too large");
}

struct Builder {
  const Signal& f;
  const Signal& g;
  SparseFormParams p;
  SparseCollection out;

  // Maximal dyadic subintervals of the halves of `parent` whose average
  // exceeds 4x the parent average.
  void collect_children(const DiscreteInterval& I, double tf, double tg,
                        std::vector<DiscreteInterval>& children) {
    if (I.length() == 1) {
      if (lr_average(f, I, p.r) > tf || lr_average(g, I, p.s) > tg)
        children.push_back(I);
      return;
    }
    int64_t mid = I.a + I.length() / 2 - 1;
    for (const DiscreteInterval& half : {DiscreteInterval(I.a, mid),
                                         DiscreteInterval(mid + 1, I.b)}) {
      if (lr_average(f, half, p.r) > tf || lr_average(g, half, p.s) > tg)
        children.push_back(half);
      else
        collect_children(half, tf, tg, children);
    }
  }

  void build(const DiscreteInterval& S) {
    double af = lr_average(f, S, p.r), ag = lr_average(g, S, p.s);
    std::vector<DiscreteInterval> children;
    if (S.length() > 1) collect_children(S, 4.0 * af, 4.0 * ag, children);

    SparseEntry e;
    e.interval = S;
    e.witness.assign(static_cast<size_t>(S.length()), true);
    for (const DiscreteInterval& c : children)
      for (int64_t x = c.a; x <= c.b; ++x)
        e.witness[static_cast<size_t>(x - S.a)] = false;
    out.entries.push_back(std::move(e));
    for (const DiscreteInterval& c : children) build(c);
  }
};

}  // namespace

SparseCollection build_universal_sparse(const Signal& f, const Signal& g,
                                        const SparseFormParams& p) {
  if (f.empty() && g.empty())
    throw StructuralError("build_universal_sparse: both inputs are zero");
  int64_t lo = std::numeric_limits<int64_t>::max();
  int64_t hi = std::numeric_limits<int64_t>::min();
  for (const Signal* h : {&f, &g}) {
    if (h->empty()) continue;
    lo = std::min(lo, h->support_min());
    hi = std::max(hi, h->support_max());
  }
  Builder b{f, g, p, SparseCollection{{}, 0.5}};
  b.build(dyadic_hull(lo, hi));
  return std::move(b.out);
}

Signal mhl(const Signal& f, const Window& window) {
  const int64_t wa = window.interval.a, wb = window.interval.b;
  int64_t lo = wa, hi = wb;
  if (!f.empty()) {
    lo = std::min(lo, f.support_min());
    hi = std::max(hi, f.support_max());
  }
  // Prefix sums of |f| over [lo, hi].
  const int64_t n = hi - lo + 1;
  std::vector<double> pre(static_cast<size_t>(n + 1), 0.0);
  for (int64_t i = 0; i < n; ++i)
    pre[static_cast<size_t>(i + 1)] = pre[static_cast<size_t>(i)] + std::abs(f(lo + i));
  auto mass = [&](int64_t a, int64_t b) {  // sum of |f| over [a,b] cap [lo,hi]
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b < a) return 0.0;
    return pre[static_cast<size_t>(b - lo + 1)] - pre[static_cast<size_t>(a - lo)];
  };

  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(wb - wa + 1);
  for (int64_t x = wa; x <= wb; ++x) {
    int64_t nmax = std::max(std::abs(x - lo), std::abs(hi - x));
    double best = 0.0;
    for (int64_t N = 0; N <= nmax; ++N)
      best = std::max(best, mass(x - N, x + N) / static_cast<double>(2 * N + 1));
    out[x - wa] = best;
  }
  return Signal(wa, std::move(out));
}

double estimate_sparse_ratio(const std::function<Signal(const Signal&)>& op,
                             const Signal& f, const Signal& g,
                             const SparseFormParams& p) {
  SparseCollection universal = build_universal_sparse(f, g, p);
  double denom = eval_sparse_form(universal, f, g, p);
  if (denom == 0.0)
    throw StructuralError("estimate_sparse_ratio: sparse form vanishes");
  return std::abs(inner_product(op(f), g)) / denom;
}

double truncated_kernel_estimate(const Signal& K, const SparseFormParams& p) {
  if (K.empty()) return 0.0;
  if (p.r != p.s || p.r < 1.0 || p.r > 2.0)
    throw ParameterError(
        "truncated_kernel_estimate: only r == s in [1,2] is interpolable here");
  const int64_t N =
      std::max<int64_t>({std::abs(K.support_min()), std::abs(K.support_max()), 1});

  const double norm_1_inf = K.sup_abs();

  int64_t L = 1;
  while (L < 4 * K.support_hull()->length()) L <<= 1;
  auto khat = dft_on_grid(K, L);
  double norm_2_2 = 0.0;
  for (const cplx& v : khat) norm_2_2 = std::max(norm_2_2, std::abs(v));

  const double theta = 2.0 * (1.0 - 1.0 / p.r);  // 0 at r=1, 1 at r=2
  const double op_norm =
      std::pow(norm_1_inf, 1.0 - theta) * std::pow(norm_2_2, theta);
  return std::pow(static_cast<double>(N), 1.0 / p.r + 1.0 / p.s - 1.0) * op_norm;
}

SparseCollection random_sparse_collection(const DiscreteInterval& hull,
                                          std::mt19937_64& rng, double keep_prob) {
  DiscreteInterval root = dyadic_hull(hull.a, hull.b);
  std::vector<DiscreteInterval> nodes;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Random subset of the dyadic tree, root always kept.
  std::function<void(DiscreteInterval, bool)> visit = [&](DiscreteInterval I, bool is_root) {
    if (is_root || unif(rng) < keep_prob) nodes.push_back(I);
    if (I.length() == 1) return;
    int64_t mid = I.a + I.length() / 2 - 1;
    visit({I.a, mid}, false);
    visit({mid + 1, I.b}, false);
  };
  visit(root, true);

  // Assign witnesses top-down; drop entries whose witness falls to half mass
  // or below, then recompute until stable.
  for (;;) {
    std::sort(nodes.begin(), nodes.end(), [](const DiscreteInterval& x, const DiscreteInterval& y) {
      return x.length() > y.length();
    });
    SparseCollection c;
    c.rho = 0.5;
    bool dropped = false;
    std::vector<DiscreteInterval> kept;
    for (const DiscreteInterval& S : nodes) {
      SparseEntry e;
      e.interval = S;
      e.witness.assign(static_cast<size_t>(S.length()), true);
      for (const DiscreteInterval& T : nodes) {
        if (T.length() >= S.length()) continue;
        if (T.a >= S.a && T.b <= S.b)
          for (int64_t x = T.a; x <= T.b; ++x) e.witness[static_cast<size_t>(x - S.a)] = false;
      }
      if (2 * e.witness_count() <= S.length()) {
        dropped = true;
        continue;
      }
      kept.push_back(S);
      c.entries.push_back(std::move(e));
    }
    if (!dropped) return c;
    nodes = std::move(kept);
  }
}

}  // namespace oqh
