#pragma once

#include "ordlab/rational.hpp"
#include "ordlab/structures.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ordlab {

// Text formats, one structure per file:
//   hypergraph r=<r> n=<n>     then one hyperedge per line (r vertex ids)
//   metric n=<n>               then n rows of n decimals
//   equiv n=<n>                then one line of n class labels
//   vector q=<q> d=<d>
// Blank lines and lines starting with '#' are ignored.

Structure parse_structure(std::istream& in);
Structure read_structure(const std::string& path);

Hypergraph parse_hypergraph(std::istream& in);
MetricSpace parse_metric(std::istream& in);

/// Metric file read with exact decimal values; row-major n x n.
struct ExactMetric {
  int n = 0;
  std::vector<Rational> dist;
  const Rational& operator()(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
  MetricSpace to_metric() const;
};
ExactMetric parse_exact_metric(std::istream& in);
ExactMetric read_exact_metric(const std::string& path);

std::string format_hypergraph(const Hypergraph& g);
std::string format_metric(const MetricSpace& m);
/// Entries written as p/q; readable by both metric parsers.
std::string format_exact_metric(const ExactMetric& m);
std::string format_structure(const Structure& s);
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace ordlab
