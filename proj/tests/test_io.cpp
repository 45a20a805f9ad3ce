#include <sstream>

#include "doctest.h"
#include "l1lb/error.hpp"
#include "l1lb/io.hpp"

using namespace l1lb;

namespace {

std::string point_set_text(std::uint64_t k, std::uint64_t n) {
  std::ostringstream os;
  write_point_set(os, PointSet{build_graph({k, n})});
  return os.str();
}

}  // namespace

TEST_CASE("addresses") {
  CHECK(format_address(VertexAddress::root_left()) == "L");
  CHECK(format_address(VertexAddress::root_right()) == "R");
  CHECK(format_address(VertexAddress::inner({}, 3)) == "/3");
  CHECK(format_address(VertexAddress::inner({4, 1}, 2)) == "4.1/2");
  for (const char* text : {"L", "R", "/1", "3/5", "1.2.3/4"}) {
    CHECK(format_address(parse_address(text)) == text);
  }
  for (const char* bad : {"", "X", "1/", "/x", "1..2/3", "a/1", "L1", "1.2"}) {
    CHECK_THROWS_AS(parse_address(bad), ParseError);
  }
}

TEST_CASE("interval lists") {
  const IntervalLabel label(9, {{0, 2}, {5, 9}});
  CHECK(format_intervals(label) == "0-2,5-9");
  CHECK(parse_intervals("0-2,5-9", 9) == label);
  CHECK(format_intervals(IntervalLabel(9)) == "");
  CHECK(parse_intervals("", 9) == IntervalLabel(9));
  for (const char* bad : {"2-1", "0-2,2-4", "3-4,0-1", "0-10", "0-", "x", "0-2,"}) {
    CHECK_THROWS_AS(parse_intervals(bad, 9), ParseError);
  }
}

TEST_CASE("doubles") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  const double tricky = 0.1 + 0.2;
  CHECK(std::stod(format_double(tricky)) == tricky);
}

TEST_CASE("point set text") {
  CHECK(point_set_text(2, 1) == "P1 k=2 n=1 N=4 dim=2\nL\nR 0-2\n/1 1-2\n/3 0-1\n");
  for (auto [k, n] : {std::pair{2u, 3u}, {3u, 2u}, {4u, 1u}}) {
    const std::string text = point_set_text(k, n);
    std::istringstream is(text);
    const PointSet back = read_point_set(is);
    CHECK(back.params() == GraphParams{k, n});
    std::ostringstream os;
    write_point_set(os, back);
    CHECK(os.str() == text);
  }
}

TEST_CASE("point set parse errors") {
  const std::string good = point_set_text(2, 1);
  auto fails = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(read_point_set(is), ParseError);
  };
  fails("");
  fails("P2 k=2 n=1 N=4 dim=2\nL\nR 0-2\n/1 1-2\n/3 0-1\n");
  fails("P1 k=2 n=1 N=5 dim=2\nL\nR 0-2\n/1 1-2\n/3 0-1\n");
  fails("P1 k=2 n=1 N=4 dim=2\nL\nR 0-2\n/1 1-2\n");
  fails("P1 k=2 n=1 N=4 dim=2\nL\nR 0-2\n/1 0-1\n/3 0-1\n");
  fails("P1 k=2 n=1 N=4 dim=2\nL\nR 0-2\n/3 0-1\n/1 1-2\n");
  fails("P1 k=1 n=1 N=2 dim=1\nL\nR 0-1\n");
  fails(good + "/1 1-2\n");
}

TEST_CASE("embedding text") {
  const PointSet points{build_graph({2, 1})};
  Embedding emb(points.size(), 2, {0.0, 0.0, 1.0, 1.0, 0.5, -0.25, 1e-300, 3.0});
  std::ostringstream os;
  write_embedding(os, points, emb);
  CHECK(os.str().rfind("L1EMB v1 d=2 N=4 k=2 n=1\nL 0 0\nR 1 1\n", 0) == 0);
  std::istringstream is(os.str());
  CHECK(read_embedding(is, points) == emb);
}

TEST_CASE("embedding parse errors") {
  const PointSet points{build_graph({2, 1})};
  auto fails = [&](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(read_embedding(is, points), ParseError);
  };
  const std::string header = "L1EMB v1 d=1 N=4 k=2 n=1\n";
  fails(header + "L 0\nR 1\n/1 2\n");
  fails(header + "L 0\nR 1\n/3 2\n/1 3\n");
  fails(header + "L 0\nR 1\n/1 2\n/5 3\n");
  fails(header + "L 0\nR 1\n/1 2\n/3 x\n");
  fails(header + "L 0\nR 1\n/1 2\n/3 3 4\n");
  fails(header + "L 0\nR 1\n/1 2\n/3 nan\n");
  fails("L1EMB v1 d=1 N=4 k=3 n=1\nL 0\nR 1\n/1 2\n/3 3\n");
  fails("L1EMB v2 d=1 N=4 k=2 n=1\nL 0\nR 1\n/1 2\n/3 3\n");
}

TEST_CASE("reports") {
  const PointSet points{build_graph({2, 2})};
  const CertificateReport rep = certify(points, Embedding::identity(points));
  std::ostringstream cert;
  write_certificate(cert, rep);
  const std::string text = cert.str();
  CHECK(text.find("epsilon=0\n") != std::string::npos);
  CHECK(text.find("min_dimension=2\n") != std::string::npos);
  CHECK(text.find("consistent=true\n") != std::string::npos);

  std::ostringstream csv;
  write_constraint_table(csv, rep.constraints);
  CHECK(csv.str().rfind("level,prefix,r,lhs\n1,,1,1\n", 0) == 0);

  std::ostringstream bound;
  write_bound(bound, dimension_bound(2, 10, 0.0));
  CHECK(bound.str().find("min_dimension=512\n") != std::string::npos);
}
