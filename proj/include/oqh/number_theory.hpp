#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqh/types.hpp"

namespace oqh {

/// A/Q in lowest terms with 0 <= A < Q, representing a point of the torus.
struct ReducedFraction {
  int64_t num = 0;
  int64_t den = 1;

  ReducedFraction() = default;
  /// Reduces and normalizes the numerator into [0, Q).
  ReducedFraction(int64_t a, int64_t q);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const ReducedFraction&) const = default;
  std::string str() const;
};

/// Distance on the torus R/Z.
double torus_dist(double x, double y);

/// Complete Gauss sum S(A/Q, B/Q) = Q^{-1} sum_{r<Q} e(A r^2/Q - B r/Q).
/// Phases are reduced mod Q in exact integer arithmetic before evaluation.
cplx gauss_sum(const ReducedFraction& aq, int64_t b);

/// |S(A/Q, B/Q)| for all B = 0..Q-1 at once, via a shared root table and
/// incremental index arithmetic. Matches gauss_sum to ~1e-14.
std::vector<double> gauss_abs_row(int64_t Q, int64_t A);

/// Rational levels: level s holds all pairs (A/Q, B/Q), both reduced, with
/// 2^{s-1} < Q <= 2^s. The ranges partition the denominators Q >= 2.
struct RationalPairLevel {
  int64_t s = 0;
  std::vector<std::pair<ReducedFraction, ReducedFraction>> pairs;
};

int64_t level_q_min(int64_t s);  // smallest Q at level s (2^{s-1}+1)
int64_t level_q_max(int64_t s);  // largest Q at level s (2^s)

RationalPairLevel enumerate_level(int64_t s);

/// Support radius of the frequency cutoff at level s: chi_s vanishes outside
/// |t| <= (1/5) 10^{-s}.
double chi_support_radius(int64_t s);

/// The unique A/Q at level s with |alpha - A/Q| < (1/5) 10^{-s}, if any.
std::optional<ReducedFraction> find_alpha_s(double alpha, int64_t s);

/// All B with 0 <= B < Q, gcd(B,Q) = 1, for the denominator of alpha_s.
std::vector<int64_t> coprime_residues(int64_t Q);

/// Arc geometry parameters: boxes at (A/Q, B/Q) have alpha-halfwidth
/// 2^{(eps-2)j} and beta-halfwidth 2^{(eps-1)j}; denominators run up to
/// 2^{6 eps j}.
struct ArcParams {
  double epsilon = 0.15;
  int64_t j = 1;

  double alpha_radius() const;
  double beta_radius() const;
  int64_t q_max() const;
  int64_t level_max() const;  // floor(eps * j)
};

/// Minimal-denominator reduced fraction in the closed interval [lo, hi].
ReducedFraction simplest_in_interval(double lo, double hi);

/// The box containing (alpha, beta), searched through continued-fraction /
/// Farey neighbors of alpha rather than a scan over all Q. Returns none on
/// the minor arcs.
std::optional<std::pair<ReducedFraction, ReducedFraction>> locate_major_arc(
    double alpha, double beta, const ArcParams& params);

struct DisjointnessReport {
  bool disjoint = true;
  // Closest pair of box centers relative to their widths (the violating pair
  // when disjoint is false).
  std::string worst_pair;
  double worst_alpha_gap = 0.0;
};

/// Exhaustive disjointness check of the major-arc collection, walking the
/// Farey sequence of order q_max. `radius_inflation` is a test hook that
/// scales both box radii.
DisjointnessReport verify_major_arc_disjointness(const ArcParams& params,
                                                 double radius_inflation = 1.0);

}  // namespace oqh
