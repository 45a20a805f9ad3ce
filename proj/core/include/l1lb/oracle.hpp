#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "l1lb/infotheory.hpp"
#include "l1lb/l1metric.hpp"
#include "l1lb/pointset.hpp"

namespace l1lb {

/// Most completions brute_force_average will enumerate.
inline constexpr std::uint64_t kMaxCompletions = 1'000'000;

/// Uniform average of F(head(x)) - F(tail(x)) over every full-depth edge x
/// extending `prefix`, by direct enumeration. Reference for average_edge_vector.
std::vector<double> brute_force_average(const PointSet& points, const Embedding& emb,
                                        std::span<const std::uint64_t> prefix);

struct ClaimGap {
  double lhs = 0.0;  // sum p - max p
  double rhs = 0.0;  // (1/2) sum_{r<k} (sum p - |sum_{i<=r} p_i - sum_{i>r} p_i|)
};

/// Both sides of the max inequality for nonnegative p_1..p_k.
ClaimGap max_claim_gap(std::span<const double> p);

struct LemmaReport {
  std::size_t k = 0;
  std::size_t d = 0;
  double separation = 0.0;  // min_r (1/k) || sum_{a<=r} Q_a - sum_{a>r} Q_a ||_1
  double epsilon = 0.0;
  double delta = 0.0;
  bool applicable = false;  // delta < 1/2
  double mi_exact = 0.0;    // I(A : B), A uniform on [2k]
  double mi_folded = 0.0;   // I(A' : B), A' = A mod k
  double predictor_success = 0.0;
  double bound = 0.0;       // log2 k - delta log2(k-1) - H(delta), when applicable
  bool holds = true;
};

/// Exact check of the mutual-information lemma on 2k distributions P_a over
/// a common alphabet, with Q_a = (P_a + P_{a+k}) / 2.
LemmaReport lemma_check(std::span<const ProbVector> p);

struct SearchConfig {
  std::size_t target_dimension = 1;
  std::size_t iterations = 2000;
  std::size_t restarts = 4;
  std::uint64_t seed = 1;
  double step_initial = 0.5;
  double step_decay = 0.3;  // step_t = step_initial / (t+1)^decay
};

struct SearchResult {
  Embedding embedding;
  DistortionReport report;
  std::size_t best_restart = 0;
};

/// Largest point set search_embedding accepts.
inline constexpr std::size_t kMaxSearchPoints = 2000;

/// Best-effort low-distortion embedding into R^d by subgradient descent on
/// max_{pairs} |log(embedded / original distance)|.
///
/// Restart 0 starts from the labels summed over d contiguous coordinate
/// blocks (the labels themselves when d >= k^n); restart i > 0 starts from a
/// uniform random point cloud drawn with seed + i. Each iteration rescales the
/// embedding so the largest and smallest ratios are reciprocal, then moves the
/// extreme pairs: the most expanded pair is pulled together and the most
/// contracted pair pushed apart. The best iterate over all restarts (lowest
/// distortion, ties to the lowest restart) is returned. Deterministic.
SearchResult search_embedding(const PointSet& points, const SearchConfig& cfg);

/// Joint law of (X_1, ..., X_n, M) with X uniform on [2k]^n and M distributed
/// as nonneg_lift(f(X)) over 2d+1 symbols. `emb` must be 1-Lipschitz.
JointDistribution build_message_joint(const PointSet& points, const Embedding& emb);

}  // namespace l1lb
