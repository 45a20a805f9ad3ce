// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <unistd.h>
#include <vector>

#include "l1lb/certifier.hpp"
#include "l1lb/io.hpp"
#include "l1lb/selftest.hpp"
#include "support/dense_oracle.hpp"

namespace fs = std::filesystem;
using namespace l1lb;

namespace {

// Tolerances and limits used by the criteria below.
constexpr double kRawBoundTolerance = 1e-6;
constexpr double kConstructionSeconds = 10.0;
constexpr double kIdentitySeconds = 30.0;
constexpr double kAveragingSeconds = 30.0;
constexpr double kFanoSeconds = 60.0;
constexpr double kEndToEndSeconds = 300.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome from_suite(const SuiteResult& s, double limit_seconds = INFINITY) {
  Outcome o;
  std::ostringstream os;
  os << s.passed << " passed, " << s.failed << " failed, " << s.seconds << " s";
  if (!s.ok()) {
    o.ok = false;
    if (!s.first_failure.empty()) os << ", first failure: " << s.first_failure;
  }
  if (s.seconds >= limit_seconds) {
    o.ok = false;
    os << ", over the " << limit_seconds << " s limit";
  }
  o.detail = os.str();
  return o;
}

Outcome merge(Outcome a, const Outcome& b) {
  a.ok = a.ok && b.ok;
  a.detail += "; " + b.detail;
  return a;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Independent construction: same vertex set, edge distances 1, antipodal distances k^{n-l+1}.
Outcome dense_cross_check() {
  Outcome o;
  std::size_t compared = 0;
  for (std::size_t k = 2; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const testing::DenseGraph dense = testing::build_dense(k, n);
      const PointSet points{build_graph({k, n})};
      std::set<testing::Bits> ours;
      for (const IntervalLabel& label : points.labels()) {
        const auto bits = label.to_bits();
        ours.insert(testing::Bits(bits.begin(), bits.end()));
      }
      const std::set<testing::Bits> theirs(dense.labels.begin(), dense.labels.end());
      const std::uint64_t expected = ((2 * k - 2) * static_cast<std::uint64_t>(std::pow(2 * k, n)) + 2 * k) / (2 * k - 1);
      auto distance = [](const testing::Bits& a, const testing::Bits& b) {
        std::size_t d = 0;
        for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
        return d;
      };
      bool good = points.size() == expected && dense.labels.size() == expected && ours == theirs;
      for (auto [u, v] : dense.edges) good = good && distance(dense.labels[u], dense.labels[v]) == 1;
      std::size_t width = static_cast<std::size_t>(std::pow(k, n));
      for (const auto& level : dense.antipodal) {
        for (auto [u, v] : level) good = good && distance(dense.labels[u], dense.labels[v]) == width;
        width /= k;
      }
      if (!good && o.ok) {
        o.ok = false;
        o.detail = "independent construction disagrees at k=" + std::to_string(k) + " n=" + std::to_string(n);
      }
      ++compared;
    }
  }
  if (o.ok) o.detail = std::to_string(compared) + " (k,n) pairs match the independent construction";
  return o;
}

Outcome criterion_bounds() {
  struct Case {
    const char* what;
    BoundResult got;
    double raw;
    std::uint64_t min_dimension;
  };
  const Case cases[] = {
      {"dimension_bound(2,10,0)", dimension_bound(2, 10, 0.0), 511.5, 512},
      {"bound_for_distortion(2,20,2)", bound_for_distortion(2, 20, 2.0), 6.34209203720093, 7},
      {"dimension_bound(3,4,0.2)", dimension_bound(3, 4, 0.2), 2.6429898723159613, 3},
  };
  Outcome o;
  std::ostringstream os;
  for (const Case& c : cases) {
    const bool good = c.got.applicable && std::abs(c.got.raw_bound - c.raw) <= kRawBoundTolerance &&
                      c.got.min_dimension == c.min_dimension;
    o.ok = o.ok && good;
    os << c.what << " raw=" << format_double(c.got.raw_bound) << " min=" << c.got.min_dimension
       << (good ? "" : " (mismatch)") << "; ";
  }
  o.detail = os.str();
  o.detail.resize(o.detail.size() - 2);
  return o;
}

// ---- CLI contract -----------------------------------------------------------

#ifdef L1LB_CLI_PATH
struct Run {
  int exit_code = -1;
  std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = quote(L1LB_CLI_PATH) + " " + args + " > " + quote(out.string()) + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out);
  r.out.assign(std::istreambuf_iterator<char>(is), {});
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}

Outcome criterion_cli() {
  const fs::path dir = fs::temp_directory_path() / ("l1lb_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<std::string> failures;
  std::size_t checks = 0;
  auto expect = [&](bool cond, const std::string& what) {
    ++checks;
    if (!cond) failures.push_back(what);
  };
  auto has = [](const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; };

  // generate
  const fs::path p21 = dir / "p21.txt", p32 = dir / "p32.txt", p23 = dir / "p23.txt";
  expect(run_cli("generate -k 2 -n 1 -o " + quote(p21.string()), dir).exit_code == 0, "generate -k 2 -n 1 exit");
  expect(slurp(p21).rfind("P1 k=2 n=1 N=4 dim=2\n", 0) == 0, "generate -k 2 -n 1 header");
  expect(run_cli("generate -k 3 -n 2 -o " + quote(p32.string()), dir).exit_code == 0, "generate -k 3 -n 2 exit");
  expect(slurp(p32).rfind("P1 k=3 n=2 N=30 dim=9\n", 0) == 0, "generate -k 3 -n 2 header");
  expect(run_cli("generate -k 1 -n 1 -o " + quote((dir / "bad.txt").string()), dir).exit_code == 2,
         "generate -k 1 -n 1 exit");

  // byte-identical round trip through the parser, and agreement with memory
  for (const auto& [path, k, n] : {std::tuple{p21, 2u, 1u}, {p32, 3u, 2u}}) {
    const std::string text = slurp(path);
    std::istringstream is(text);
    const PointSet parsed = read_point_set(is);
    const PointSet built{build_graph({k, n})};
    std::ostringstream os;
    write_point_set(os, parsed);
    expect(os.str() == text, "round trip bytes " + path.filename().string());
    expect(parsed.addresses() == built.addresses() && parsed.labels() == built.labels(),
           "round trip structure " + path.filename().string());
  }

  // certify
  expect(run_cli("generate -k 2 -n 3 -o " + quote(p23.string()), dir).exit_code == 0, "generate -k 2 -n 3 exit");
  const PointSet points{build_graph({2, 3})};
  const fs::path ident = dir / "identity.emb", trunc = dir / "truncated.emb", flat = dir / "constant.emb";
  {
    std::ofstream os(ident);
    write_embedding(os, points, Embedding::identity(points));
  }
  {
    const std::string full = slurp(ident);
    std::ofstream os(trunc);
    os << full.substr(0, full.size() / 2);
  }
  {
    std::ofstream os(flat);
    write_embedding(os, points, Embedding(points.size(), 3));
  }
  const Run good = run_cli("certify " + quote(p23.string()) + " " + quote(ident.string()), dir);
  expect(good.exit_code == 0, "certify identity exit");
  expect(has(good.out, "epsilon=0\n") && has(good.out, "min_dimension=4\n") && has(good.out, "consistent=true\n"),
         "certify identity report");
  expect(run_cli("certify " + quote(p23.string()) + " " + quote(trunc.string()), dir).exit_code == 2,
         "certify truncated exit");
  const Run degenerate = run_cli("certify " + quote(p23.string()) + " " + quote(flat.string()), dir);
  expect(degenerate.exit_code == 2, "certify constant exit");
  expect(has(degenerate.out, "degenerate"), "certify constant report");

  // bound
  const Run b1 = run_cli("bound -k 2 -n 10 --eps 0", dir);
  expect(b1.exit_code == 0 && has(b1.out, "min_dimension=512\n"), "bound -k 2 -n 10 --eps 0");
  const Run b2 = run_cli("bound -k 2 -n 20 --distortion 2", dir);
  expect(b2.exit_code == 0 && has(b2.out, "min_dimension=7\n"), "bound -k 2 -n 20 --distortion 2");
  const Run b3 = run_cli("bound -k 3 -n 5 --eps 0.6", dir);
  expect(b3.exit_code == 0 && has(b3.out, "applicable=false\n"), "bound -k 3 -n 5 --eps 0.6");
  expect(run_cli("bound -k 2 -n 3 --eps 0 --distortion 2", dir).exit_code == 2, "bound with both flags");
  expect(run_cli("bound -k 2 -n 3", dir).exit_code == 2, "bound with neither flag");

  // selftest
  const auto start = std::chrono::steady_clock::now();
  expect(run_cli("selftest", dir).exit_code == 0, "selftest exit");
  expect(seconds_since(start) < 300.0, "selftest runtime");
  expect(run_cli("selftest --flip-orientation", dir).exit_code == 1, "selftest with flipped orientation");

  fs::remove_all(dir);
  Outcome o;
  o.ok = failures.empty();
  o.detail = std::to_string(checks - failures.size()) + "/" + std::to_string(checks) + " CLI checks";
  for (const std::string& f : failures) o.detail += "; failed: " + f;
  return o;
}
#else
Outcome criterion_cli() { return {false, "built without the l1lb executable"}; }
#endif

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "construction exactness",
       [] { return merge(from_suite(suite_construction(), kConstructionSeconds), dense_cross_check()); }},
      {2, "identity embedding meets every constraint with equality",
       [] { return from_suite(suite_identity_equality(), kIdentitySeconds); }},
      {3, "closed-form averages match enumeration", [] { return from_suite(suite_averaging(), kAveragingSeconds); }},
      {4, "reference bound values", [] { return merge(criterion_bounds(), from_suite(suite_bounds())); }},
      {5, "Fano-type bound on random joints", [] { return from_suite(suite_fano(1000), kFanoSeconds); }},
      {6, "max inequality on random vectors", [] { return from_suite(suite_inner_claim(10000)); }},
      {7, "mutual-information lemma on random encodings", [] { return from_suite(suite_lemma(1000)); }},
      {8, "chain rule and per-level bound", [] { return from_suite(suite_chain_rule()); }},
      {9, "nonnegative lift", [] { return from_suite(suite_lift(10000)); }},
      {10, "searched embeddings certify consistently",
       [] { return from_suite(suite_end_to_end(20), kEndToEndSeconds); }},
      {11, "command-line contract", [] { return criterion_cli(); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << o.detail << ")"
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
