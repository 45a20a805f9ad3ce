// l1lb: generate recursive cycle point sets, certify embeddings against the
// entropy dimension bound, evaluate bounds, search embeddings, self-test.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "l1lb/certifier.hpp"
#include "l1lb/error.hpp"
#include "l1lb/io.hpp"
#include "l1lb/oracle.hpp"
#include "l1lb/pointset.hpp"
#include "l1lb/selftest.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

l1lb::PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw l1lb::ParseError("cannot open point set file " + path);
  return l1lb::read_point_set(in);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw l1lb::ParseError("cannot write " + path);
  return out;
}

int cmd_generate(std::uint64_t k, std::uint64_t n, const std::string& out_path) {
  const l1lb::PointSet points{l1lb::build_graph({k, n})};
  const bool to_stdout = out_path == "-";
  std::ostream& report = to_stdout ? std::cerr : std::cout;
  if (to_stdout) {
    l1lb::write_point_set(std::cout, points);
  } else {
    std::ofstream out = open_output(out_path);
    l1lb::write_point_set(out, points);
  }
  report << "N=" << points.size() << '\n'
         << "dim=" << points.dimension() << '\n'
         << "edges=" << points.graph().edge_count() << '\n'
         << "generated P_{" << k << "," << n << "} with " << points.size() << " points"
         << (to_stdout ? "" : " -> " + out_path) << '\n';
  return kOk;
}

int cmd_certify(const std::string& points_path, const std::string& embedding_path,
                const std::string& table_path) {
  const l1lb::PointSet points = load_points(points_path);
  std::ifstream in(embedding_path);
  if (!in) throw l1lb::ParseError("cannot open embedding file " + embedding_path);
  const l1lb::Embedding emb = l1lb::read_embedding(in, points);
  const l1lb::CertificateReport cert = l1lb::certify(points, emb);
  l1lb::write_certificate(std::cout, cert);
  if (!table_path.empty()) {
    std::ofstream table = open_output(table_path);
    l1lb::write_constraint_table(table, cert.constraints);
  }
  if (cert.consistent) {
    std::cout << "certificate: consistent, d=" << cert.embedding_dimension
              << " >= " << cert.bound.min_dimension << '\n';
    return kOk;
  }
  std::cout << "certificate: INCONSISTENT, d=" << cert.embedding_dimension << " < "
            << cert.bound.min_dimension << '\n';
  return kVerificationFailure;
}

int cmd_bound(std::uint64_t k, std::uint64_t n, std::optional<double> eps, std::optional<double> dist) {
  if (eps.has_value() == dist.has_value()) throw UsageError("give exactly one of --eps or --distortion");
  const l1lb::BoundResult b =
      eps ? l1lb::dimension_bound(k, n, *eps) : l1lb::bound_for_distortion(k, n, *dist);
  l1lb::write_bound(std::cout, b);
  if (b.applicable) {
    std::cout << "bound: any such embedding needs d >= " << b.min_dimension << '\n';
  } else {
    std::cout << "bound: vacuous, requires eps < 1/(k-1)\n";
  }
  return kOk;
}

int cmd_search(const std::string& points_path, const l1lb::SearchConfig& cfg, const std::string& out_path,
               std::string report_path) {
  const l1lb::PointSet points = load_points(points_path);
  const l1lb::SearchResult result = l1lb::search_embedding(points, cfg);
  {
    std::ofstream out = open_output(out_path);
    l1lb::write_embedding(out, points, result.embedding);
  }
  if (report_path.empty()) report_path = out_path + ".report";
  {
    std::ofstream report = open_output(report_path);
    l1lb::write_search_report(report, cfg, result);
  }
  l1lb::write_search_report(std::cout, cfg, result);
  std::cout << "search: best distortion " << l1lb::format_double(result.report.distortion)
            << " from restart " << result.best_restart << " -> " << out_path << '\n';
  return kOk;
}

int cmd_selftest(bool flip) {
  l1lb::SelfTestOptions options;
  if (flip) options.orientation = l1lb::Orientation::kFlippedBottom;
  const auto results = l1lb::run_all_suites(options);
  std::size_t failed_suites = 0;
  for (const auto& r : results) {
    std::cout << (r.ok() ? "[pass] " : "[FAIL] ") << r.name << ": " << r.passed << " passed, " << r.failed
              << " failed (" << l1lb::format_double(std::round(r.seconds * 1000.0) / 1000.0) << " s)\n";
    if (!r.ok()) {
      ++failed_suites;
      std::cout << "       first failure: " << r.first_failure << '\n';
    }
  }
  if (failed_suites == 0) {
    std::cout << "selftest: all " << results.size() << " suites passed\n";
    return kOk;
  }
  std::cout << "selftest: " << failed_suites << " of " << results.size() << " suites failed\n";
  return kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive cycle point sets and entropy dimension bounds in l1"};
  app.require_subcommand(1);

  std::uint64_t gen_k = 0, gen_n = 0;
  std::string gen_out = "-";
  auto* generate = app.add_subcommand("generate", "Write the point set P_{k,n}");
  generate->add_option("-k", gen_k, "Half-cycle length (>= 2)")->required();
  generate->add_option("-n", gen_n, "Recursion depth (>= 1)")->required();
  generate->add_option("-o,--output", gen_out, "Output file ('-' for stdout)");

  std::string cert_points, cert_emb, cert_table;
  auto* certify = app.add_subcommand("certify", "Certify an embedding against the dimension bound");
  certify->add_option("pointset", cert_points, "P1 point set file")->required();
  certify->add_option("embedding", cert_emb, "L1EMB v1 embedding file")->required();
  certify->add_option("--table", cert_table, "Write every constraint value as CSV");

  std::uint64_t bound_k = 0, bound_n = 0;
  std::optional<double> bound_eps, bound_dist;
  auto* bound = app.add_subcommand("bound", "Evaluate the dimension lower bound");
  bound->add_option("-k", bound_k, "Half-cycle length (>= 2)")->required();
  bound->add_option("-n", bound_n, "Recursion depth (>= 1)")->required();
  auto* eps_opt = bound->add_option("--eps", bound_eps, "Constraint slack epsilon");
  auto* dist_opt = bound->add_option("--distortion", bound_dist, "Embedding distortion D >= 1");
  eps_opt->excludes(dist_opt);

  std::string search_points, search_out, search_report;
  l1lb::SearchConfig cfg;
  auto* search = app.add_subcommand("search", "Search for a low-distortion embedding");
  search->add_option("pointset", search_points, "P1 point set file")->required();
  search->add_option("-d", cfg.target_dimension, "Target dimension")->required();
  search->add_option("--iters", cfg.iterations, "Iterations per restart")->capture_default_str();
  search->add_option("--restarts", cfg.restarts, "Number of restarts")->capture_default_str();
  search->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  search->add_option("--step", cfg.step_initial, "Initial relative step")->capture_default_str();
  search->add_option("--decay", cfg.step_decay, "Step decay exponent")->capture_default_str();
  search->add_option("-o,--output", search_out, "Embedding output file")->required();
  search->add_option("--report", search_report, "Sidecar report file (default <output>.report)");

  bool flip = false;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in property suites");
  selftest->add_flag("--flip-orientation", flip, "Debug: reverse bottom-path edges")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*generate) return cmd_generate(gen_k, gen_n, gen_out);
    if (*certify) return cmd_certify(cert_points, cert_emb, cert_table);
    if (*bound) return cmd_bound(bound_k, bound_n, bound_eps, bound_dist);
    if (*search) return cmd_search(search_points, cfg, search_out, search_report);
    if (*selftest) return cmd_selftest(flip);
  } catch (const l1lb::DegenerateEmbedding& e) {
    std::cout << "certificate: degenerate embedding: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
