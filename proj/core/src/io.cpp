#include "l1lb/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "l1lb/error.hpp"

namespace l1lb {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_field(std::string_view token, std::string_view key) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') {
    throw ParseError("expected '" + std::string(key) + "=<value>', got '" + std::string(token) + "'");
  }
  return parse_u64(token.substr(key.size() + 1), key);
}

bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!tokens(line).empty()) return true;
  }
  return false;
}

GraphParams checked_params(std::uint64_t k, std::uint64_t n) {
  GraphParams p{k, n};
  try {
    validate(p);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid graph parameters in header: ") + e.what());
  }
  return p;
}

}  // namespace

std::string format_address(const VertexAddress& v) {
  switch (v.kind) {
    case VertexAddress::Kind::kRootLeft:
      return "L";
    case VertexAddress::Kind::kRootRight:
      return "R";
    case VertexAddress::Kind::kInner:
      break;
  }
  std::string out;
  for (std::size_t i = 0; i < v.path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(v.path[i]);
  }
  out += '/';
  out += std::to_string(v.position);
  return out;
}

VertexAddress parse_address(std::string_view text) {
  if (text == "L") return VertexAddress::root_left();
  if (text == "R") return VertexAddress::root_right();
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) throw ParseError("malformed address '" + std::string(text) + "'");
  std::vector<std::uint64_t> path;
  if (slash > 0) {
    for (std::string_view part : split(text.substr(0, slash), '.')) {
      path.push_back(parse_u64(part, "address path"));
    }
  }
  return VertexAddress::inner(std::move(path), parse_u64(text.substr(slash + 1), "address position"));
}

std::string format_intervals(const IntervalLabel& label) {
  std::string out;
  for (const Interval& iv : label.ones()) {
    if (!out.empty()) out += ',';
    out += std::to_string(iv.begin);
    out += '-';
    out += std::to_string(iv.end);
  }
  return out;
}

IntervalLabel parse_intervals(std::string_view text, std::uint64_t length) {
  std::vector<Interval> runs;
  if (!text.empty()) {
    for (std::string_view part : split(text, ',')) {
      const std::size_t dash = part.find('-');
      if (dash == std::string_view::npos) throw ParseError("malformed interval '" + std::string(part) + "'");
      runs.push_back({parse_u64(part.substr(0, dash), "interval start"),
                      parse_u64(part.substr(dash + 1), "interval end")});
    }
  }
  for (const Interval& iv : runs) {
    if (iv.begin >= iv.end || iv.end > length) {
      throw ParseError("interval " + std::to_string(iv.begin) + "-" + std::to_string(iv.end) +
                       " is empty or out of range");
    }
  }
  IntervalLabel label(length, runs);
  if (label.ones() != runs) throw ParseError("interval list is not sorted, disjoint and maximal");
  return label;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw InvalidArgument("cannot format number");
  return std::string(buf, ptr);
}

void write_point_set(std::ostream& os, const PointSet& points) {
  const GraphParams& p = points.params();
  os << "P1 k=" << p.k << " n=" << p.n << " N=" << points.size() << " dim=" << points.dimension() << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << format_address(points.address(i));
    const std::string runs = format_intervals(points.label(i));
    if (!runs.empty()) os << ' ' << runs;
    os << '\n';
  }
}

PointSet read_point_set(std::istream& is) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("empty point set file");
  const auto head = tokens(line);
  if (head.size() != 5 || head[0] != "P1") throw ParseError("expected 'P1 k= n= N= dim=' header");
  const GraphParams params = checked_params(parse_field(head[1], "k"), parse_field(head[2], "n"));
  const std::uint64_t count = parse_field(head[3], "N");
  const std::uint64_t dim = parse_field(head[4], "dim");
  if (count != vertex_count(params)) throw ParseError("header N does not match the vertex count for k, n");
  if (dim != label_dimension(params)) throw ParseError("header dim does not match k^n");

  PointSet points{RecursiveCycleGraph(params)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!next_line(is, line)) throw ParseError("point set file truncated after " + std::to_string(i) + " records");
    const auto fields = tokens(line);
    if (fields.size() > 2) throw ParseError("too many fields in record '" + line + "'");
    if (parse_address(fields[0]) != points.address(i)) {
      throw ParseError("record " + std::to_string(i) + " has address " + std::string(fields[0]) +
                       ", expected " + format_address(points.address(i)));
    }
    const IntervalLabel label = parse_intervals(fields.size() == 2 ? fields[1] : std::string_view{}, dim);
    if (label != points.label(i)) throw ParseError("label of " + std::string(fields[0]) + " does not match the construction");
  }
  if (next_line(is, line)) throw ParseError("unexpected trailing record '" + line + "'");
  return points;
}

void write_embedding(std::ostream& os, const PointSet& points, const Embedding& emb) {
  if (emb.size() != points.size()) throw InvalidArgument("embedding does not cover the point set");
  const GraphParams& p = points.params();
  os << "L1EMB v1 d=" << emb.dimension() << " N=" << emb.size() << " k=" << p.k << " n=" << p.n << '\n';
  for (std::size_t i = 0; i < emb.size(); ++i) {
    os << format_address(points.address(i));
    for (double x : emb.row(i)) os << ' ' << format_double(x);
    os << '\n';
  }
}

Embedding read_embedding(std::istream& is, const PointSet& points) {
  std::string line;
  if (!next_line(is, line)) throw ParseError("empty embedding file");
  const auto head = tokens(line);
  if (head.size() != 6 || head[0] != "L1EMB" || head[1] != "v1") {
    throw ParseError("expected 'L1EMB v1 d= N= k= n=' header");
  }
  const std::uint64_t d = parse_field(head[2], "d");
  const std::uint64_t count = parse_field(head[3], "N");
  const GraphParams params{parse_field(head[4], "k"), parse_field(head[5], "n")};
  if (d == 0) throw ParseError("embedding dimension must be at least 1");
  if (params != points.params()) throw ParseError("embedding k, n do not match the point set");
  if (count != points.size()) throw ParseError("embedding N does not match the point set");

  std::vector<double> values;
  values.reserve(points.size() * d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!next_line(is, line)) throw ParseError("embedding file truncated after " + std::to_string(i) + " records");
    const auto fields = tokens(line);
    const VertexAddress v = parse_address(fields[0]);
    if (!points.graph().contains(v)) throw ParseError("unknown address " + std::string(fields[0]));
    if (v != points.address(i)) {
      throw ParseError("address " + std::string(fields[0]) + " out of order, expected " +
                       format_address(points.address(i)));
    }
    if (fields.size() != d + 1) throw ParseError("record for " + std::string(fields[0]) + " does not have d values");
    for (std::size_t j = 1; j < fields.size(); ++j) values.push_back(parse_double(fields[j]));
  }
  if (next_line(is, line)) throw ParseError("unexpected trailing record '" + line + "'");
  try {
    return Embedding(points.size(), d, std::move(values));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

void write_certificate(std::ostream& os, const CertificateReport& report) {
  os << "epsilon=" << format_double(report.constraints.epsilon) << '\n'
     << "delta=" << format_double(report.bound.delta) << '\n'
     << "per_level_term=" << format_double(report.bound.per_level_term) << '\n'
     << "raw_bound=" << format_double(report.bound.raw_bound) << '\n'
     << "min_dimension=" << report.bound.min_dimension << '\n'
     << "applicable=" << (report.bound.applicable ? "true" : "false") << '\n'
     << "embedding_dimension=" << report.embedding_dimension << '\n'
     << "distortion=" << format_double(report.distortion.distortion) << '\n'
     << "consistent=" << (report.consistent ? "true" : "false") << '\n';
}

void write_constraint_table(std::ostream& os, const ConstraintReport& report) {
  os << "level,prefix,r,lhs\n";
  for (const ConstraintEntry& e : report.entries) {
    os << e.level << ',';
    for (std::size_t i = 0; i < e.prefix.size(); ++i) {
      if (i > 0) os << '.';
      os << e.prefix[i];
    }
    os << ',' << e.r << ',' << format_double(e.lhs) << '\n';
  }
}

void write_bound(std::ostream& os, const BoundResult& bound) {
  os << "k=" << bound.k << '\n'
     << "n=" << bound.n << '\n'
     << "epsilon=" << format_double(bound.epsilon) << '\n'
     << "delta=" << format_double(bound.delta) << '\n'
     << "per_level_term=" << format_double(bound.per_level_term) << '\n'
     << "raw_bound=" << format_double(bound.raw_bound) << '\n'
     << "min_dimension=" << bound.min_dimension << '\n'
     << "applicable=" << (bound.applicable ? "true" : "false") << '\n';
}

void write_search_report(std::ostream& os, const SearchConfig& cfg, const SearchResult& result) {
  os << "dimension=" << cfg.target_dimension << '\n'
     << "iterations=" << cfg.iterations << '\n'
     << "restarts=" << cfg.restarts << '\n'
     << "seed=" << cfg.seed << '\n'
     << "best_restart=" << result.best_restart << '\n'
     << "expansion=" << format_double(result.report.expansion) << '\n'
     << "contraction=" << format_double(result.report.contraction) << '\n'
     << "distortion=" << format_double(result.report.distortion) << '\n';
}

}  // namespace l1lb
