#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "l1lb/certifier.hpp"
#include "l1lb/l1metric.hpp"
#include "l1lb/oracle.hpp"
#include "l1lb/pointset.hpp"

namespace l1lb {

/// `L`, `R`, or `e1.e2...em/q` (a level-1 vertex has an empty path: `/q`).
std::string format_address(const VertexAddress& v);
VertexAddress parse_address(std::string_view text);

/// `a1-b1,a2-b2,...` with half-open decimal runs; empty for the zero label.
std::string format_intervals(const IntervalLabel& label);
IntervalLabel parse_intervals(std::string_view text, std::uint64_t length);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Point set text format:
///
///   P1 k=<k> n=<n> N=<N> dim=<k^n>
///   <address> <interval-list>
///   ...
///
/// one line per vertex in export order. The zero label is written as the
/// address alone.
void write_point_set(std::ostream& os, const PointSet& points);

/// Parses a P1 file and checks every record against the construction.
/// Throws ParseError on any mismatch.
PointSet read_point_set(std::istream& is);

/// Embedding text format:
///
///   L1EMB v1 d=<d> N=<N> k=<k> n=<n>
///   <address> <v_1> ... <v_d>
///
/// with vertices in the point set's export order.
void write_embedding(std::ostream& os, const PointSet& points, const Embedding& emb);

/// Throws ParseError for a header that does not match `points`, unknown or
/// out-of-order addresses, malformed numbers, or a truncated file.
Embedding read_embedding(std::istream& is, const PointSet& points);

/// key=value lines for a certificate.
void write_certificate(std::ostream& os, const CertificateReport& report);

/// `level,prefix,r,lhs` CSV of every constraint triple.
void write_constraint_table(std::ostream& os, const ConstraintReport& report);

/// key=value lines for a bound.
void write_bound(std::ostream& os, const BoundResult& bound);

/// key=value sidecar for a search result.
void write_search_report(std::ostream& os, const SearchConfig& cfg, const SearchResult& result);

}  // namespace l1lb
