#include "l1lb/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "l1lb/certifier.hpp"
#include "l1lb/infotheory.hpp"
#include "l1lb/l1metric.hpp"
#include "l1lb/oracle.hpp"

namespace l1lb {
namespace {

using Rng = std::mt19937_64;

SuiteResult timed(std::string name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult result;
  result.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.check(false, std::string("unexpected exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::string tag(std::uint64_t k, std::uint64_t n) {
  return "k=" + std::to_string(k) + " n=" + std::to_string(n);
}

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random distribution, sharper for larger `peak`.
std::vector<double> random_weights(Rng& rng, std::size_t m, double peak) {
  std::vector<double> w(m);
  for (double& x : w) x = std::pow(uniform(rng), peak);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (total == 0.0) {
    w.assign(m, 0.0);
    w[pick(rng, 0, m - 1)] = 1.0;
    return w;
  }
  for (double& x : w) x /= total;
  return w;
}

Embedding random_embedding(const PointSet& points, std::size_t d, Rng& rng) {
  Embedding emb(points.size(), d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double& x : emb.row(i)) x = uniform(rng, -1.0, 1.0);
  }
  return emb;
}

// Enumerates all prefixes of length `len` over [2k].
void for_each_prefix(std::uint64_t k, std::uint64_t len,
                     const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> prefix(len, 1);
  const std::uint64_t total = ipow(2 * k, len);
  for (std::uint64_t i = 0; i < total; ++i) {
    visit(prefix);
    for (std::size_t c = prefix.size(); c-- > 0;) {
      if (++prefix[c] <= 2 * k) break;
      prefix[c] = 1;
    }
  }
}

}  // namespace

void SuiteResult::check(bool condition, std::string_view what) {
  if (condition) {
    ++passed;
    return;
  }
  if (failed == 0) first_failure = std::string(what);
  ++failed;
}

SuiteResult suite_construction() {
  return timed("construction", [](SuiteResult& s) {
    for (std::uint64_t k = 2; k <= 4; ++k) {
      for (std::uint64_t n = 1; n <= 3; ++n) {
        const std::string t = tag(k, n);
        const PointSet points{build_graph({k, n})};
        const RecursiveCycleGraph& g = points.graph();
        const std::uint64_t closed = ((2 * k - 2) * ipow(2 * k, n) + 2 * k) / (2 * k - 1);
        s.check(points.size() == closed, "vertex count " + t);

        std::set<std::vector<Interval>> distinct;
        bool canonical = true;
        for (const IntervalLabel& label : points.labels()) {
          distinct.insert(label.ones());
          canonical = canonical && label.is_canonical() && label.length() == ipow(k, n);
        }
        s.check(distinct.size() == points.size(), "distinct labels " + t);
        s.check(canonical, "canonical labels " + t);

        bool indices = true;
        for (std::size_t i = 0; i < points.size(); ++i) {
          indices = indices && g.vertex_index(points.address(i)) == i && g.vertex_at(i) == points.address(i) &&
                    g.vertex_label(points.address(i)) == points.label(i);
        }
        s.check(indices, "index round trip " + t);

        std::uint64_t edges = 0;
        bool unit = true;
        g.for_each_edge([&](const EdgeLabel&, const OrientedEdge& e) {
          ++edges;
          unit = unit && points.distance(points.index_of(e.tail), points.index_of(e.head)) == 1;
        });
        s.check(edges == ipow(2 * k, n), "edge count " + t);
        s.check(unit, "adjacent labels at distance 1 " + t);

        for (std::uint64_t level = 1; level <= n; ++level) {
          const auto pairs = g.antipodal_pairs(level);
          bool exact = pairs.size() == k * ipow(2 * k, level - 1);
          for (const auto& [u, v] : pairs) {
            exact = exact && points.distance(points.index_of(u), points.index_of(v)) == ipow(k, n - level + 1);
          }
          s.check(exact, "antipodal distance k^(n-l+1) at level " + std::to_string(level) + " " + t);
        }
      }
    }
  });
}

SuiteResult suite_identity_equality(Orientation orientation) {
  return timed("identity-equality", [orientation](SuiteResult& s) {
    for (std::uint64_t k = 2; k <= 4; ++k) {
      for (std::uint64_t n = 1; n <= 3; ++n) {
        const PointSet points{build_graph({k, n}, orientation)};
        const Embedding id = Embedding::identity(points);
        const ConstraintReport report = constraint_report(points, id);
        std::uint64_t expected = 0;
        for (std::uint64_t l = 1; l <= n; ++l) expected += ipow(2 * k, l - 1) * (k - 1);
        s.check(report.entries.size() == expected, "triple count " + tag(k, n));
        for (const ConstraintEntry& e : report.entries) {
          s.check(std::abs(e.lhs - 1.0) <= 1e-12,
                  "constraint value " + std::to_string(e.lhs) + " != 1 at level " + std::to_string(e.level) +
                      " r=" + std::to_string(e.r) + " " + tag(k, n));
        }
      }
    }
  });
}

SuiteResult suite_averaging(std::uint64_t seed) {
  return timed("averaging-oracle", [seed](SuiteResult& s) {
    Rng rng(seed);
    const std::pair<std::uint64_t, std::uint64_t> cases[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
    for (auto [k, n] : cases) {
      const PointSet points{build_graph({k, n})};
      const Embedding embeddings[] = {Embedding::identity(points), random_embedding(points, 3, rng)};
      for (const Embedding& emb : embeddings) {
        for (std::uint64_t len = 0; len <= n; ++len) {
          for_each_prefix(k, len, [&](const std::vector<std::uint64_t>& prefix) {
            const auto closed = average_edge_vector(points, emb, prefix);
            const auto brute = brute_force_average(points, emb, prefix);
            double gap = 0.0;
            for (std::size_t j = 0; j < closed.size(); ++j) gap = std::max(gap, std::abs(closed[j] - brute[j]));
            s.check(gap <= 1e-12, "closed form differs from enumeration by " + std::to_string(gap) + " " + tag(k, n));
          });
        }
      }
    }
  });
}

SuiteResult suite_metric(std::uint64_t seed) {
  return timed("l1-metric", [seed](SuiteResult& s) {
    Rng rng(seed);
    for (std::uint64_t k = 2; k <= 3; ++k) {
      for (std::uint64_t n = 1; n <= 2; ++n) {
        const PointSet points{build_graph({k, n})};
        const Embedding id = Embedding::identity(points);
        const DistortionReport r = distortion(points, id);
        s.check(r.expansion == 1.0 && r.contraction == 1.0 && r.distortion == 1.0, "identity isometry " + tag(k, n));

        const Embedding emb = random_embedding(points, 4, rng);
        const double base = distortion(points, emb).distortion;
        for (double scale : {1e-3, 0.5, 3.0, 1e4}) {
          const double scaled = distortion(points, emb.scaled(scale)).distortion;
          s.check(std::abs(scaled - base) <= 1e-9 * std::max(1.0, base), "scale invariance " + tag(k, n));
        }
        const Embedding once = normalize_lipschitz(points, emb);
        const Embedding twice = normalize_lipschitz(points, once);
        s.check(std::abs(distortion(points, once).expansion - 1.0) <= 1e-12, "normalized expansion " + tag(k, n));
        s.check(std::abs(distortion(points, once).distortion - base) <= 1e-9 * std::max(1.0, base),
                "normalization keeps distortion " + tag(k, n));
        double drift = 0.0;
        for (std::size_t i = 0; i < once.values().size(); ++i) {
          drift = std::max(drift, std::abs(once.values()[i] - twice.values()[i]));
        }
        s.check(drift <= 1e-12, "normalization idempotent " + tag(k, n));

        for (int t = 0; t < 200; ++t) {
          const std::size_t a = pick(rng, 0, points.size() - 1);
          const std::size_t b = pick(rng, 0, points.size() - 1);
          const std::size_t c = pick(rng, 0, points.size() - 1);
          s.check(points.distance(a, c) <= points.distance(a, b) + points.distance(b, c), "label triangle inequality");
        }
      }
    }
  });
}

SuiteResult suite_bounds() {
  return timed("bound-values", [](SuiteResult& s) {
    const BoundResult a = dimension_bound(2, 10, 0.0);
    s.check(a.applicable && std::abs(a.raw_bound - 511.5) <= 1e-6 && a.min_dimension == 512, "bound(2,10,0)");
    const BoundResult b = bound_for_distortion(2, 20, 2.0);
    s.check(b.applicable && std::abs(b.raw_bound - 6.34209203720093) <= 1e-6 && b.min_dimension == 7,
            "bound_for_distortion(2,20,2)");
    const BoundResult c = dimension_bound(3, 4, 0.2);
    s.check(c.applicable && std::abs(c.raw_bound - 2.6429898723159613) <= 1e-6 && c.min_dimension == 3,
            "bound(3,4,0.2)");
    s.check(!dimension_bound(2, 7, 1.0).applicable, "eps = 1/(k-1) is vacuous");
    s.check(!bound_for_distortion(3, 5, 2.0).applicable, "k=3, D=2 is vacuous");
    s.check(choose_k(0.1) == 3 && choose_k(0.25) == 2, "choose_k");
  });
}

SuiteResult suite_fano(std::size_t trials, std::uint64_t seed) {
  return timed("fano", [trials, seed](SuiteResult& s) {
    Rng rng(seed);
    std::size_t applicable = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t k = pick(rng, 2, 6);
      const std::size_t m = pick(rng, 1, 8);
      const double peak = uniform(rng, 0.5, 12.0);
      std::vector<double> table(k * m);
      for (std::size_t x = 0; x < k; ++x) {
        const auto w = random_weights(rng, m, peak);
        for (std::size_t y = 0; y < m; ++y) table[x * m + y] = w[y] / static_cast<double>(k);
      }
      const JointDistribution joint({k, m}, table);
      const double mi = mutual_information(joint, 0, 1);

      // The MAP predictor and a random predictor.
      std::vector<std::size_t> map_guess(m), random_guess(m);
      for (std::size_t y = 0; y < m; ++y) {
        std::size_t best = 0;
        for (std::size_t x = 1; x < k; ++x) {
          if (table[x * m + y] > table[best * m + y]) best = x;
        }
        map_guess[y] = best;
        random_guess[y] = pick(rng, 0, k - 1);
      }
      for (const auto* guess : {&map_guess, &random_guess}) {
        double p = 0.0;
        for (std::size_t y = 0; y < m; ++y) p += table[(*guess)[y] * m + y];
        p = std::min(p, 1.0);
        if (p < 0.5) continue;
        ++applicable;
        s.check(mi >= fano_bound(k, p) - 1e-9, "I(X:Y) below the Fano bound");
      }
    }
    s.check(applicable >= trials / 4, "too few trials with success >= 1/2");
  });
}

SuiteResult suite_data_processing(std::size_t trials, std::uint64_t seed) {
  return timed("data-processing", [trials, seed](SuiteResult& s) {
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t kx = pick(rng, 2, 5);
      const std::size_t ky = pick(rng, 2, 6);
      const std::size_t kf = pick(rng, 1, ky);
      const JointDistribution joint({kx, ky}, random_weights(rng, kx * ky, uniform(rng, 0.5, 6.0)));
      std::vector<double> mapped(kx * kf, 0.0);
      std::vector<std::size_t> g(ky);
      for (std::size_t y = 0; y < ky; ++y) g[y] = pick(rng, 0, kf - 1);
      for (std::size_t x = 0; x < kx; ++x) {
        for (std::size_t y = 0; y < ky; ++y) mapped[x * kf + g[y]] += joint.table()[x * ky + y];
      }
      const double before = mutual_information(joint, 0, 1);
      const double after = mutual_information(JointDistribution({kx, kf}, mapped), 0, 1);
      s.check(after <= before + 1e-9, "I(g(Y):X) exceeds I(Y:X)");
      s.check(before >= -1e-9, "negative mutual information");
    }
  });
}

SuiteResult suite_inner_claim(std::size_t trials, std::uint64_t seed) {
  return timed("inner-claim", [trials, seed](SuiteResult& s) {
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t k = pick(rng, 2, 8);
      std::vector<double> p(k);
      for (double& x : p) x = pick(rng, 0, 4) == 0 ? 0.0 : uniform(rng, 0.0, 10.0);
      const ClaimGap gap = max_claim_gap(p);
      s.check(gap.lhs <= gap.rhs + 1e-12, "max claim violated");
      if (k == 2) s.check(std::abs(gap.lhs - gap.rhs) <= 1e-12 * std::max(1.0, p[0] + p[1]), "max claim not tight for k=2");
    }
  });
}

SuiteResult suite_lemma(std::size_t trials, std::uint64_t seed) {
  return timed("lemma", [trials, seed](SuiteResult& s) {
    Rng rng(seed);
    std::size_t applicable = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t k = pick(rng, 2, 5);
      const std::size_t d = pick(rng, 2, 8);
      // A separated core (P_a concentrated on a symbol chosen by a mod k) mixed
      // with random noise of random strength.
      const double noise = std::pow(uniform(rng), 2.0);
      std::vector<std::size_t> home(k);
      for (std::size_t a = 0; a < k; ++a) home[a] = (a + pick(rng, 0, 1) * k) % d;
      std::vector<ProbVector> p;
      for (std::size_t a = 0; a < 2 * k; ++a) {
        auto w = random_weights(rng, d, uniform(rng, 0.5, 4.0));
        for (double& x : w) x *= noise;
        w[home[a % k]] += 1.0 - noise;
        p.emplace_back(std::move(w));
      }
      const LemmaReport r = lemma_check(p);
      if (!r.applicable) continue;
      ++applicable;
      s.check(r.mi_exact >= r.bound - 1e-9, "I(A:B) below the lemma bound");
      s.check(r.mi_exact >= r.mi_folded - 1e-9, "I(A:B) < I(A':B)");
      s.check(r.holds, "lemma report does not hold");
    }
    s.check(applicable >= trials / 10, "too few trials with delta < 1/2");
  });
}

SuiteResult suite_chain_rule(std::uint64_t seed) {
  return timed("chain-rule", [seed](SuiteResult& s) {
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = pick(rng, 1, 3);
      std::vector<std::size_t> sizes(n + 1);
      std::size_t cells = 1;
      for (std::size_t& a : sizes) {
        a = pick(rng, 1, 4);
        cells *= a;
      }
      const JointDistribution joint(sizes, random_weights(rng, cells, uniform(rng, 0.5, 5.0)));
      const auto terms = chain_rule_terms(joint);
      std::vector<std::size_t> xs(n);
      std::iota(xs.begin(), xs.end(), std::size_t{0});
      const std::size_t m[] = {n};
      const double total = mutual_information(joint, xs, m);
      s.check(std::abs(std::accumulate(terms.begin(), terms.end(), 0.0) - total) <= 1e-9, "chain rule sum");
    }

    for (std::uint64_t n = 1; n <= 2; ++n) {
      const PointSet points{build_graph({2, n})};
      const Embedding id = Embedding::identity(points);
      const double eps = constraint_report(points, id).epsilon;
      const BoundResult bound = dimension_bound(2, n, eps);
      const JointDistribution joint = build_message_joint(points, id);
      const auto terms = chain_rule_terms(joint);
      std::vector<std::size_t> xs(n);
      std::iota(xs.begin(), xs.end(), std::size_t{0});
      const std::size_t m[] = {n};
      const double total = mutual_information(joint, xs, m);
      const double hm = joint.entropy(m);
      s.check(std::abs(std::accumulate(terms.begin(), terms.end(), 0.0) - total) <= 1e-9,
              "message chain rule sum n=" + std::to_string(n));
      for (double term : terms) s.check(term >= bound.per_level_term - 1e-9, "per-level term below bound");
      for (double term : terms) s.check(term >= 1.0 - 1e-9, "per-level term below 1");
      const double symbols = static_cast<double>(2 * id.dimension() + 1);
      s.check(std::log2(symbols) >= hm - 1e-12 && hm >= total - 1e-9, "log(2d+1) >= H(M) >= I(X:M)");
    }
  });
}

SuiteResult suite_lift(std::size_t trials, std::uint64_t seed) {
  return timed("lift", [trials, seed](SuiteResult& s) {
    Rng rng(seed);
    std::normal_distribution<double> normal;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t d = pick(rng, 1, 8);
      std::vector<double> v(d);
      for (double& x : v) x = pick(rng, 0, 5) == 0 ? 0.0 : normal(rng);
      double norm = 0.0;
      for (double x : v) norm += std::abs(x);
      const double target = t % 4 == 0 ? 1.0 : uniform(rng);
      if (norm > 0.0) {
        for (double& x : v) x *= target / norm;
      }
      const ProbVector g = nonneg_lift(v);
      const double mass = std::accumulate(g.weights().begin(), g.weights().end(), 0.0);
      s.check(g.size() == 2 * d + 1 && std::abs(mass - 1.0) <= 1e-9, "lift is a distribution");
      s.check(lift_recover(g.weights()) == v, "recover(lift(v)) != v");

      std::vector<double> y(2 * d + 1);
      for (double& x : y) x = normal(rng);
      double ny = 0.0, nr = 0.0;
      for (double x : y) ny += std::abs(x);
      for (double x : lift_recover(y)) nr += std::abs(x);
      s.check(nr <= ny * (1.0 + 1e-12), "recovery increased the l1 norm");
    }
  });
}

SuiteResult suite_end_to_end(std::size_t seeds_per_dimension) {
  return timed("end-to-end", [seeds_per_dimension](SuiteResult& s) {
    const PointSet points{build_graph({2, 2})};
    for (std::size_t d = 1; d <= 4; ++d) {
      for (std::size_t seed = 1; seed <= seeds_per_dimension; ++seed) {
        SearchConfig cfg;
        cfg.target_dimension = d;
        cfg.seed = seed;
        cfg.iterations = 1500;
        cfg.restarts = 3;
        const SearchResult found = search_embedding(points, cfg);
        const std::string t = "d=" + std::to_string(d) + " seed=" + std::to_string(seed);
        s.check(found.report.injective, "search returned a non-injective embedding " + t);
        if (!found.report.injective) continue;
        const CertificateReport cert = certify(points, found.embedding);
        s.check(cert.consistent, "inconsistent certificate " + t);
        const double eps0 = 1.0 - 1.0 / cert.distortion.distortion;
        s.check(cert.constraints.epsilon <= eps0 + 1e-9, "constraint epsilon exceeds distortion slack " + t);
      }
    }
    // Noisy identities exercise the same implication away from the search.
    Rng rng(97);
    for (std::uint64_t k = 2; k <= 3; ++k) {
      const PointSet ps{build_graph({k, 2})};
      const Embedding id = Embedding::identity(ps);
      for (int t = 0; t < 20; ++t) {
        std::vector<double> values = id.values();
        const double amplitude = 0.02 * (t + 1);
        for (double& x : values) x += uniform(rng, -amplitude, amplitude);
        const Embedding emb(ps.size(), id.dimension(), std::move(values));
        const CertificateReport cert = certify(ps, emb);
        s.check(cert.consistent, "noisy identity inconsistent " + tag(k, 2));
        s.check(cert.constraints.epsilon <= 1.0 - 1.0 / cert.distortion.distortion + 1e-9,
                "noisy identity epsilon exceeds distortion slack " + tag(k, 2));
      }
    }
  });
}

std::vector<SuiteResult> run_all_suites(const SelfTestOptions& options) {
  std::vector<SuiteResult> out;
  out.push_back(suite_construction());
  out.push_back(suite_identity_equality(options.orientation));
  out.push_back(suite_averaging());
  out.push_back(suite_metric());
  out.push_back(suite_bounds());
  out.push_back(suite_fano());
  out.push_back(suite_data_processing());
  out.push_back(suite_inner_claim());
  out.push_back(suite_lemma());
  out.push_back(suite_chain_rule());
  out.push_back(suite_lift());
  out.push_back(suite_end_to_end());
  return out;
}

}  // namespace l1lb
