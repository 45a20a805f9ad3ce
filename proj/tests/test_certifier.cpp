#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "l1lb/certifier.hpp"
#include "l1lb/error.hpp"
#include "l1lb/oracle.hpp"

using namespace l1lb;

namespace {

Embedding random_embedding(const PointSet& points, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Embedding emb(points.size(), d);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    for (double& x : emb.row(i)) x = u(rng);
  }
  return normalize_lipschitz(points, emb);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("edge vectors of the identity on G_{2,1}") {
  const PointSet points{build_graph({2, 1})};
  const EdgeVectorMap f = edge_difference_map(points, Embedding::identity(points));
  REQUIRE(f.d == 2);
  const std::vector<std::vector<double>> expected{{0, 1}, {1, 0}, {0, 1}, {1, 0}};
  for (std::uint64_t x = 0; x < 4; ++x) {
    const auto row = f.row(x);
    CHECK(std::vector<double>(row.begin(), row.end()) == expected[x]);
  }
}

TEST_CASE("identity edge vectors have unit norm") {
  for (auto [k, n] : {std::pair{2u, 3u}, {3u, 2u}, {4u, 2u}}) {
    const PointSet points{build_graph({k, n})};
    const EdgeVectorMap f = edge_difference_map(points, Embedding::identity(points));
    for (std::uint64_t x = 0; x < points.graph().edge_count(); ++x) {
      const auto row = f.row(x);
      CHECK(std::accumulate(row.begin(), row.end(), 0.0,
                            [](double s, double v) { return s + std::abs(v); }) == 1.0);
    }
  }
}

TEST_CASE("edge vectors reject expanding embeddings") {
  const PointSet points{build_graph({2, 1})};
  CHECK_THROWS_AS(edge_difference_map(points, Embedding::identity(points).scaled(2.0)), InvalidArgument);
}

TEST_CASE("averages") {
  const PointSet points{build_graph({2, 2})};
  const Embedding id = Embedding::identity(points);
  const std::uint64_t one[] = {1};
  CHECK(average_edge_vector(points, id, one) == std::vector<double>{0.0, 0.0, 0.5, 0.5});

  for (auto [k, n] : {std::pair{2u, 3u}, {3u, 2u}}) {
    const PointSet ps{build_graph({k, n})};
    const Embedding emb = random_embedding(ps, 3, k * 10 + n);
    std::vector<std::uint64_t> prefix;
    for (std::uint64_t len = 0; len <= n; ++len) {
      CHECK(max_abs_diff(average_edge_vector(ps, emb, prefix), brute_force_average(ps, emb, prefix)) <= 1e-12);
      prefix.push_back(1 + (len * 3) % (2 * k));
    }
  }
}

TEST_CASE("constraint report for the identity and a shrunk copy") {
  const PointSet points{build_graph({3, 2})};
  const Embedding id = Embedding::identity(points);
  const ConstraintReport exact = constraint_report(points, id);
  CHECK(exact.entries.size() == 14);
  CHECK(exact.epsilon == 0.0);
  for (const auto& e : exact.entries) CHECK(std::abs(e.lhs - 1.0) <= 1e-12);

  const ConstraintReport shrunk = constraint_report(points, id.scaled(0.9));
  CHECK(shrunk.epsilon == doctest::Approx(0.1).epsilon(1e-12));

  const std::uint64_t prefix[] = {4};
  CHECK(constraint_lhs(points, id, prefix, 2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(constraint_lhs(points, id, prefix, 3), InvalidArgument);
  CHECK_THROWS_AS(constraint_lhs(points, id, prefix, 0), InvalidArgument);
}

TEST_CASE("constraint value equals the antipodal ratio") {
  const PointSet points{build_graph({3, 2})};
  const Embedding emb = random_embedding(points, 4, 77);
  const ConstraintReport rep = constraint_report(points, emb);
  double min_ratio = INFINITY;
  for (std::uint64_t level = 1; level <= 2; ++level) {
    for (const auto& [u, v] : points.graph().antipodal_pairs(level)) {
      const double orig = points.distance(points.index_of(u), points.index_of(v));
      const double ratio = l1_distance(emb.row(points.index_of(u)), emb.row(points.index_of(v))) / orig;
      min_ratio = std::min(min_ratio, ratio);
    }
  }
  CHECK(rep.min_lhs == doctest::Approx(min_ratio).epsilon(1e-12));
}

TEST_CASE("nonnegative lift") {
  const double v[] = {0.5, -0.25};
  const ProbVector g = nonneg_lift(v);
  const std::vector<double> expected{0.5, 0.0, 0.0, 0.25, 0.25};
  REQUIRE(g.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(g[i] == doctest::Approx(expected[i]));
  const auto back = lift_recover(g.weights());
  CHECK(back == std::vector<double>{0.5, -0.25});

  const double too_big[] = {0.8, 0.3};
  CHECK_THROWS_AS(nonneg_lift(too_big), InvalidArgument);
  const double even[] = {1.0, 2.0};
  CHECK_THROWS_AS(lift_recover(even), InvalidArgument);
}

TEST_CASE("bounds") {
  const BoundResult exact = dimension_bound(2, 10, 0.0);
  CHECK(exact.applicable);
  CHECK(exact.raw_bound == doctest::Approx(511.5));
  CHECK(exact.min_dimension == 512);

  const BoundResult d2 = dimension_bound(2, 20, 0.5);
  CHECK(d2.delta == 0.25);
  CHECK(d2.raw_bound == doctest::Approx(6.34209).epsilon(1e-6));
  CHECK(d2.min_dimension == 7);
  CHECK(bound_for_distortion(2, 20, 2.0).min_dimension == 7);

  const BoundResult k3 = dimension_bound(3, 4, 0.2);
  CHECK(k3.raw_bound == doctest::Approx(2.64299).epsilon(1e-6));
  CHECK(k3.min_dimension == 3);

  const BoundResult out = dimension_bound(3, 4, 0.5);
  CHECK_FALSE(out.applicable);
  CHECK(out.min_dimension == 1);
  CHECK(out.raw_bound == 0.0);

  CHECK(dimension_bound(2, 3, 0.0).min_dimension == 4);
  CHECK(dimension_bound(3, 2, 0.0).min_dimension == 4);

  CHECK_THROWS_AS(dimension_bound(2, 3, -0.1), InvalidArgument);
  CHECK_THROWS_AS(bound_for_distortion(2, 3, 0.5), InvalidArgument);
}

TEST_CASE("bound is monotone") {
  for (std::uint64_t k = 2; k <= 6; ++k) {
    const double limit = 1.0 / static_cast<double>(k - 1);
    double prev = INFINITY;
    for (int i = 0; i < 50; ++i) {
      const double eps = limit * i / 50.0;
      const double raw = dimension_bound(k, 8, eps).raw_bound;
      CHECK(raw <= prev + 1e-9);
      prev = raw;
    }
    for (std::uint64_t n = 1; n < 12; ++n) {
      CHECK(dimension_bound(k, n + 1, 0.1 * limit).raw_bound >= dimension_bound(k, n, 0.1 * limit).raw_bound);
    }
  }
}

TEST_CASE("choose_k") {
  CHECK(choose_k(0.1) == 3);
  CHECK(choose_k(0.01) == 15);
  CHECK(choose_k(0.4) == 2);
  CHECK_THROWS_AS(choose_k(0.0), InvalidArgument);
  CHECK_THROWS_AS(choose_k(0.5), InvalidArgument);
}

TEST_CASE("predictor") {
  const ProbVector q[] = {ProbVector({0.7, 0.2, 0.1}), ProbVector({0.1, 0.2, 0.7})};
  const PredictorResult r = predictor_success(q);
  CHECK(r.guess == std::vector<std::size_t>{0, 0, 1});
  CHECK(r.success == doctest::Approx(0.8));
}

TEST_CASE("certificates of identity embeddings") {
  for (auto [k, n] : {std::pair{2u, 3u}, {3u, 2u}}) {
    const PointSet points{build_graph({k, n})};
    const CertificateReport rep = certify(points, Embedding::identity(points));
    CHECK(rep.constraints.epsilon == 0.0);
    CHECK(rep.bound.min_dimension == 4);
    CHECK(rep.embedding_dimension == points.dimension());
    CHECK(rep.consistent);
  }
  const PointSet points{build_graph({2, 2})};
  CHECK_THROWS_AS(certify(points, Embedding(points.size(), 2)), DegenerateEmbedding);
}

TEST_CASE("certificates of random embeddings are consistent") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PointSet points{build_graph({2, 2 + seed % 2})};
    const CertificateReport rep = certify(points, random_embedding(points, 1 + seed % 5, seed));
    CHECK(rep.consistent);
  }
}
