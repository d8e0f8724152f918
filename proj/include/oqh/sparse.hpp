#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oqh/signal.hpp"

namespace oqh {

/// One interval of a sparse collection with its witness set, stored as a
/// bitset over the interval.
struct SparseEntry {
  DiscreteInterval interval;
  std::vector<bool> witness;

  int64_t witness_count() const;
};

struct SparseCollection {
  std::vector<SparseEntry> entries;
  double rho = 0.5;
};

struct SparseFormParams {
  double r = 1.0;
  double s = 1.0;
};

struct VerifyReport {
  bool ok = true;
  std::string diagnostic;
};

/// Checks |E_S| > rho |S| for every entry and that no point lies in more
/// than ceil(1/rho) witness sets.
VerifyReport verify_sparse(const SparseCollection& c);

/// Lambda_{S,r,s}(f,g) = sum_S <f>_{S,r} <g>_{S,s} |S|.
double eval_sparse_form(const SparseCollection& c, const Signal& f,
                        const Signal& g, const SparseFormParams& p);

/// Greedy stopping-time construction on the dyadic grid over the joint
/// support hull: children are the maximal dyadic subintervals whose f- or
/// g-average exceeds 4x the parent's. The output is 1/2-sparse with
/// pairwise disjoint witness sets.
SparseCollection build_universal_sparse(const Signal& f, const Signal& g,
                                        const SparseFormParams& p);

/// Hardy-Littlewood maximal function, exact sup over all radii, on `window`.
Signal mhl(const Signal& f, const Window& window);

/// |<op(f), g>| / Lambda*(f,g) with Lambda* the universal form for (f,g).
double estimate_sparse_ratio(const std::function<Signal(const Signal&)>& op,
                             const Signal& f, const Signal& g,
                             const SparseFormParams& p);

/// N^{1/r+1/s-1} times an interpolation bound on ||T_K : l^r -> l^{s'}||.
/// Exact endpoints: (1,1) via sup|K|, (2,2) via the grid max of |K^|.
/// Requires r == s in [1,2].
double truncated_kernel_estimate(const Signal& K, const SparseFormParams& p);

/// Random valid rho=1/2 sparse collection of dyadic subintervals of `hull`.
SparseCollection random_sparse_collection(const DiscreteInterval& hull,
                                          std::mt19937_64& rng,
                                          double keep_prob = 0.35);

}  // namespace oqh
