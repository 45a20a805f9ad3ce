#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "l1lb/infotheory.hpp"
#include "l1lb/l1metric.hpp"
#include "l1lb/pointset.hpp"

namespace l1lb {

/// Largest l1 norm accepted for an edge vector before the embedding is
/// considered not normalized.
inline constexpr double kLipschitzSlack = 1e-6;

/// Values of |x| below this are reported as exactly zero in epsilon.
inline constexpr double kEpsilonSnap = 1e-12;

/// Slack subtracted from the raw bound before taking the ceiling, so that a
/// bound such as 3.9999999999999991 or 4.0000000000000009 yields 4.
inline constexpr double kCeilSlack = 1e-9;

/// The edge-difference map f: [2k]^n -> R^d, f(x) = F(head(x)) - F(tail(x)).
struct EdgeVectorMap {
  GraphParams params;
  std::size_t d = 0;
  std::vector<double> table;  // row-major by lexicographic edge rank

  std::span<const double> row(std::uint64_t rank) const { return {table.data() + rank * d, d}; }
};

/// Throws InvalidArgument when some ||f(x)||_1 exceeds 1 + kLipschitzSlack;
/// run normalize_lipschitz first.
EdgeVectorMap edge_difference_map(const PointSet& points, const Embedding& emb);

/// Average of f over all uniform completions of `prefix` (length l <= n).
/// The sum of f over the 2k edges of a cycle telescopes to twice the
/// difference across the refined edge, so the average is
/// (F(head_e) - F(tail_e)) / k^(n-l) for the level-l edge e named by the prefix.
std::vector<double> average_edge_vector(const PointSet& points, const Embedding& emb,
                                        std::span<const std::uint64_t> prefix);

/// Left-hand side of the separation constraint for a level-l cycle named by
/// `prefix` (length l-1) and split point r in [1, k-1]:
///
///   (1/2k) || sum_{b<=r} (avg(prefix,b) + avg(prefix,b+k))
///           - sum_{b>r}  (avg(prefix,b) + avg(prefix,b+k)) ||_1
double constraint_lhs(const PointSet& points, const Embedding& emb,
                      std::span<const std::uint64_t> prefix, std::uint64_t r);

struct ConstraintEntry {
  std::uint64_t level = 0;
  std::vector<std::uint64_t> prefix;
  std::uint64_t r = 0;
  double lhs = 0.0;
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;
  double min_lhs = 0.0;
  double epsilon = 0.0;  // max(0, 1 - min_lhs)
};

/// Evaluates every (level, prefix, r) triple.
ConstraintReport constraint_report(const PointSet& points, const Embedding& emb);

/// (max(v,0), max(-v,0), 1 - ||v||_1) as a distribution over 2d+1 symbols.
/// Norms in (1 + 1e-9, 1 + kLipschitzSlack] are scaled back to 1; larger norms throw.
ProbVector nonneg_lift(std::span<const double> v);

/// y -> (y_j - y_{j+d})_{j<d} for y of length 2d+1. Never increases the l1 norm.
std::vector<double> lift_recover(std::span<const double> y);

struct BoundResult {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double per_level_term = 0.0;
  double raw_bound = 0.0;
  std::uint64_t min_dimension = 1;
  bool applicable = false;
};

/// Dimension lower bound 2^{(log2 k - delta log2(k-1) - H(delta)) n - 1} - 1/2
/// with delta = (k-1) eps / 2. Vacuous (applicable = false, raw_bound = 0)
/// unless eps < 1/(k-1).
BoundResult dimension_bound(std::uint64_t k, std::uint64_t n, double epsilon);

/// dimension_bound with eps = 1 - 1/D. Throws for D < 1.
BoundResult bound_for_distortion(std::uint64_t k, std::uint64_t n, double distortion);

/// max(2, floor(1 / (eps log2(1/eps)))) for eps in (0, 1/2).
std::uint64_t choose_k(double epsilon);

struct PredictorResult {
  std::vector<std::size_t> guess;  // symbol j -> argmax_a Q_a(j), smallest a on ties
  double success = 0.0;            // (1/k) sum_j max_a Q_a(j)
};

PredictorResult predictor_success(std::span<const ProbVector> q);

struct CertificateReport {
  DistortionReport distortion;
  ConstraintReport constraints;
  BoundResult bound;
  std::size_t embedding_dimension = 0;
  bool consistent = false;
};

/// Normalizes, measures epsilon, and compares the embedding dimension with
/// the lower bound. Throws DegenerateEmbedding for non-injective embeddings.
CertificateReport certify(const PointSet& points, const Embedding& emb);

}  // namespace l1lb
