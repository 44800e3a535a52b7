#include "ordlab/structure_io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ordlab {

namespace {

// Next meaningful line, or false at end of input.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

struct Header {
  std::string kind;
  std::map<std::string, int> fields;
};

Header parse_header(const std::string& line) {
  std::istringstream is(line);
  Header h;
  is >> h.kind;
  std::string token;
  while (is >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad header field: " + token);
    h.fields[token.substr(0, eq)] = std::stoi(token.substr(eq + 1));
  }
  return h;
}

int field(const Header& h, const std::string& name) {
  auto it = h.fields.find(name);
  if (it == h.fields.end()) throw std::invalid_argument(h.kind + " header is missing " + name + "=");
  return it->second;
}

Hypergraph hypergraph_body(const Header& h, std::istream& in) {
  const int r = field(h, "r"), n = field(h, "n");
  std::vector<std::vector<int>> edges;
  std::string line;
  while (next_line(in, line)) {
    std::istringstream is(line);
    std::vector<int> e;
    int v;
    while (is >> v) e.push_back(v);
    if (!is.eof()) throw std::invalid_argument("hypergraph: bad vertex id in line: " + line);
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, r, std::move(edges));
}

std::vector<std::string> metric_tokens(const Header& h, std::istream& in, int& n) {
  n = field(h, "n");
  std::vector<std::string> tokens;
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("metric: too few rows");
    std::istringstream is(line);
    std::string tok;
    int count = 0;
    while (is >> tok) {
      tokens.push_back(tok);
      ++count;
    }
    if (count != n) throw std::invalid_argument("metric: row " + std::to_string(i) + " has wrong length");
  }
  return tokens;
}

}  // namespace

Structure parse_structure(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("structure file is empty");
  Header h = parse_header(line);
  if (h.kind == "hypergraph" || h.kind == "graph") {
    if (h.kind == "graph") h.fields.emplace("r", 2);
    return hypergraph_body(h, in);
  }
  if (h.kind == "metric") {
    int n = 0;
    auto tokens = metric_tokens(h, in, n);
    std::vector<double> d;
    for (const auto& t : tokens) d.push_back(t.find('/') == std::string::npos ? std::stod(t) : parse_rational(t).get_d());
    return MetricSpace(n, std::move(d));
  }
  if (h.kind == "equiv") {
    const int n = field(h, "n");
    std::vector<int> labels;
    if (n > 0) {
      if (!next_line(in, line)) throw std::invalid_argument("equiv: missing class labels");
      std::istringstream is(line);
      int c;
      while (is >> c) labels.push_back(c);
    }
    if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("equiv: wrong number of labels");
    return EquivStructure(std::move(labels));
  }
  if (h.kind == "vector") return VectorSpace(field(h, "q"), field(h, "d"));
  throw std::invalid_argument("unknown structure kind: " + h.kind);
}

Structure read_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_structure(in);
}

Hypergraph parse_hypergraph(std::istream& in) {
  auto s = parse_structure(in);
  if (!std::holds_alternative<Hypergraph>(s)) throw std::invalid_argument("expected a hypergraph file");
  return std::get<Hypergraph>(s);
}

MetricSpace parse_metric(std::istream& in) {
  auto s = parse_structure(in);
  if (!std::holds_alternative<MetricSpace>(s)) throw std::invalid_argument("expected a metric file");
  return std::get<MetricSpace>(s);
}

MetricSpace ExactMetric::to_metric() const {
  std::vector<double> d;
  d.reserve(dist.size());
  for (const auto& q : dist) d.push_back(q.get_d());
  return MetricSpace(n, std::move(d));
}

ExactMetric parse_exact_metric(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("metric file is empty");
  Header h = parse_header(line);
  if (h.kind != "metric") throw std::invalid_argument("expected a metric file");
  ExactMetric m;
  for (const auto& t : metric_tokens(h, in, m.n)) m.dist.push_back(parse_rational(t));
  return m;
}

ExactMetric read_exact_metric(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_exact_metric(in);
}

std::string format_hypergraph(const Hypergraph& g) {
  std::ostringstream os;
  os << "hypergraph r=" << g.uniformity() << " n=" << g.size() << "\n";
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << "\n";
  }
  return os.str();
}

std::string format_metric(const MetricSpace& m) {
  std::ostringstream os;
  os << "metric n=" << m.size() << "\n" << std::setprecision(17);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j);
    os << "\n";
  }
  return os.str();
}

std::string format_exact_metric(const ExactMetric& m) {
  std::ostringstream os;
  os << "metric n=" << m.n << "\n";
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "\n";
  }
  return os.str();
}

std::string format_structure(const Structure& s) {
  struct {
    std::string operator()(const Hypergraph& g) const { return format_hypergraph(g); }
    std::string operator()(const MetricSpace& m) const { return format_metric(m); }
    std::string operator()(const EquivStructure& e) const {
      std::ostringstream os;
      os << "equiv n=" << e.size() << "\n";
      for (int x = 0; x < e.size(); ++x) os << (x ? " " : "") << e.class_of(x);
      os << "\n";
      return os.str();
    }
    std::string operator()(const VectorSpace& v) const {
      return "vector q=" + std::to_string(v.field_size()) + " d=" + std::to_string(v.dimension()) + "\n";
    }
  } visitor;
  return std::visit(visitor, s);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ordlab
