#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "l1lb/pointset.hpp"

namespace l1lb {

/// Outcome of one property suite: counts of individual checks.
struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
  double seconds = 0.0;

  bool ok() const { return failed == 0 && passed > 0; }
  void check(bool condition, std::string_view what);
};

// Each suite is deterministic for a given seed.

/// Vertex counts, edge and antipodal label distances, distinct canonical
/// labels and index round trips for k in {2,3,4}, n in {1,2,3}.
SuiteResult suite_construction();

/// Identity embedding gives constraint value 1 (within 1e-12) on every triple,
/// k in {2,3,4}, n in {1,2,3}. Fails under Orientation::kFlippedBottom.
SuiteResult suite_identity_equality(Orientation orientation = Orientation::kStandard);

/// Closed-form averages against enumeration (1e-12), k=2 n<=3 and k=3 n<=2,
/// for the identity and random embeddings.
SuiteResult suite_averaging(std::uint64_t seed = 7);

/// Scale invariance, identity isometry, normalization, label triangle inequality.
SuiteResult suite_metric(std::uint64_t seed = 11);

/// Reference bound values.
SuiteResult suite_bounds();

/// I(X:Y) >= fano_bound(k, p) - 1e-9 for predictors with success p >= 1/2.
SuiteResult suite_fano(std::size_t trials = 1000, std::uint64_t seed = 13);

/// I(g(Y):X) <= I(Y:X) + 1e-9 for random deterministic maps g.
SuiteResult suite_data_processing(std::size_t trials = 500, std::uint64_t seed = 17);

/// lhs <= rhs + 1e-12 for the max inequality; equality for k = 2.
SuiteResult suite_inner_claim(std::size_t trials = 10000, std::uint64_t seed = 19);

/// Lemma bound and I(A:B) >= I(A':B) whenever delta < 1/2.
SuiteResult suite_lemma(std::size_t trials = 1000, std::uint64_t seed = 23);

/// Chain-rule identity on random joints and the per-level bound on message
/// joints of identity embeddings (k = 2, n <= 2).
SuiteResult suite_chain_rule(std::uint64_t seed = 29);

/// Lift validity, exact round trip, and norm-nonincreasing recovery.
SuiteResult suite_lift(std::size_t trials = 10000, std::uint64_t seed = 31);

/// Searched embeddings of P_{2,2} into d in {1,2,3,4}: certificates are
/// consistent and epsilon <= 1 - 1/distortion + 1e-9.
SuiteResult suite_end_to_end(std::size_t seeds_per_dimension = 20);

struct SelfTestOptions {
  Orientation orientation = Orientation::kStandard;
};

/// Every suite at default sizes.
std::vector<SuiteResult> run_all_suites(const SelfTestOptions& options = {});

}  // namespace l1lb
