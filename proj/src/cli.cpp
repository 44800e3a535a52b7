#include "ordlab/cli.hpp"

#include "ordlab/admissibility.hpp"
#include "ordlab/consistency.hpp"
#include "ordlab/experiments.hpp"
#include "ordlab/generators.hpp"
#include "ordlab/numeric.hpp"
#include "ordlab/parallel.hpp"
#include "ordlab/provenance.hpp"
#include "ordlab/samplers.hpp"
#include "ordlab/structure_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace ordlab {

namespace {

using nlohmann::json;

struct Outcome {
  enum class Kind { json, structure, csv, text };
  json params = json::object();
  json result = json::object();
  json verdicts = json::object();
  Kind kind = Kind::json;
  std::string payload;  // bytes of structure, csv and text outputs
};

struct Options {
  // global
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  int workers = 0;
  std::string out;
  std::string format;
  // shared by several commands
  int n = 0;
  int r = 2;
  int g = 3;
  int k = 3;
  int m = 1;
  int nmax = 4;
  int D = -1;
  double a = 0.5;
  double exponent = 0.5;
  double delta = 0.01;
  bool connect = false;
  std::string input;
  std::string pattern;
  std::vector<std::string> forbid;
  std::string construction;
  std::string family;
  std::string kind = "graph";
  std::string mode;
  std::string host;
  std::string structure;
  std::string order;
  std::string sub_order;
  std::string event;
  std::string dist_a;
  std::string dist_b;
  std::string delta_text;
  std::vector<int> subset;
  std::vector<int> ns{20, 40, 80};
  std::vector<std::uint64_t> seeds;
  int seed_count = 10;
  std::string provenance;
};

std::vector<int> parse_int_list(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("not an integer: " + tok);
    out.push_back(v);
  }
  return out;
}

json order_list(const std::vector<LinearOrder>& orders) {
  json j = json::array();
  for (const auto& o : orders) j.push_back(o.to_string());
  return j;
}

int max_degree_of(const Structure& s) {
  const auto* g = std::get_if<Hypergraph>(&s);
  return g ? g->max_degree() : 0;
}

const Hypergraph& as_hypergraph(const Structure& s, const char* what) {
  const auto* g = std::get_if<Hypergraph>(&s);
  if (!g) throw std::invalid_argument(std::string(what) + " needs a hypergraph input");
  return *g;
}

struct Draw {
  std::function<LinearOrder(Rng&)> draw;
  int n = 0;
};

Draw make_draw(const Options& o, json& params) {
  if (o.input.empty()) throw std::invalid_argument("--input is required");
  auto s = std::make_shared<Structure>(read_structure(o.input));
  const int n = universe_size(*s);
  params["construction"] = o.construction;
  params["input"] = o.input;
  const int D = o.D >= 0 ? o.D : max_degree_of(*s);
  if (o.construction == "gauss") {
    const Hypergraph g = as_hypergraph(*s, "gauss");
    params["D"] = D;
    return {[g, D](Rng& rng) { return sample_gaussian_ordering(g, D, rng); }, n};
  }
  if (o.construction == "hyper-gauss") {
    const Hypergraph g = as_hypergraph(*s, "hyper-gauss");
    params["D"] = D;
    return {[g, D](Rng& rng) { return sample_hypergraph_gaussian_ordering(g, D, rng); }, n};
  }
  if (o.construction == "bipartite") {
    const Hypergraph g = as_hypergraph(*s, "bipartite");
    return {[g](Rng& rng) { return sample_bipartite_ordering(g, rng); }, n};
  }
  if (o.construction == "projection") {
    const auto* metric = std::get_if<MetricSpace>(s.get());
    if (!metric) throw std::invalid_argument("projection needs a metric input");
    auto points = std::make_shared<PointSet>(embed_negative_type(*metric, o.exponent));
    params["exponent"] = o.exponent;
    return {[points](Rng& rng) { return sample_projection_ordering(*points, rng); }, n};
  }
  if (o.construction == "uniform") {
    const auto sampler = uniform_sampler();
    return {[sampler, s](Rng& rng) { return sampler.draw(*s, rng); }, n};
  }
  throw std::invalid_argument("unknown construction: " + o.construction);
}

Outcome cmd_gen_girth(const Options& o) {
  Outcome res;
  const GirthParams p{o.n, o.r, o.g, o.a};
  res.params = {{"n", o.n}, {"r", o.r}, {"g", o.g}, {"a", o.a}, {"connect", o.connect}};
  auto gen = large_girth_hypergraph(p, o.seed);
  const Hypergraph h = o.connect ? make_connected(gen.graph) : gen.graph;
  const auto girth = hypergraph_girth(h, o.g);
  res.verdicts["girth_at_least_g"] = !girth.has_value();
  if (o.connect) res.verdicts["connected"] = is_connected(h);
  res.result = {{"vertices", h.size()},
                {"edges", h.edge_count()},
                {"drawn_edges", gen.drawn_edges},
                {"attempts", gen.attempts},
                {"edge_probability", p.edge_probability()},
                {"hyperedges", h.edges()}};
  res.kind = Outcome::Kind::structure;
  res.payload = format_hypergraph(h);
  return res;
}

Outcome cmd_gen_forb(const Options& o) {
  Outcome res;
  const Hypergraph pattern =
      o.pattern.empty() ? make_path(4) : as_hypergraph(read_structure(o.pattern), "forb pattern");
  std::vector<Hypergraph> forbidden;
  for (const auto& path : o.forbid) forbidden.push_back(as_hypergraph(read_structure(path), "forbidden graph"));
  res.params = {{"n", o.n}, {"g", o.g}, {"a", o.a}, {"pattern", format_hypergraph(pattern)}, {"forbid", o.forbid}};
  const auto f = forb_construction(pattern, o.n, o.g, o.a, o.seed);
  const std::size_t m = f.host.edge_count();
  res.verdicts["restricted_count_is_aut_times_m"] = f.restricted.size() == f.pattern_automorphisms * m;
  if (!forbidden.empty()) res.verdicts["forbidden_free"] = !contains_induced(f.graph, forbidden);
  bool copies = true;
  for (std::size_t i = 0; i < std::min<std::size_t>(m, 10); ++i) {
    auto [sub, map] = induced_substructure(f.graph, f.placements[i]);
    copies = copies && is_isomorphic(Structure(sub), Structure(pattern));
  }
  res.verdicts["hyperedges_carry_pattern"] = copies;
  const auto classes = planted_class_counts(pattern, f.placements);
  json observations = {{"pattern_classes", classes}};
  if (classes.size() > 1 && m > 0) {
    const double stat = chi_square_uniform_statistic(classes);
    observations["chi_square"] = stat;
    observations["chi_square_p"] = chi_square_pvalue(stat, static_cast<int>(classes.size()) - 1);
  }
  res.result = {{"vertices", f.graph.size()},
                {"edges", f.graph.edge_count()},
                {"hyperedges", m},
                {"pattern_automorphisms", f.pattern_automorphisms},
                {"restricted_embeddings", f.restricted.size()},
                {"attempts", f.attempts},
                {"observations", observations}};
  res.kind = Outcome::Kind::structure;
  res.payload = format_hypergraph(f.graph);
  return res;
}

Outcome cmd_gen_metric(const Options& o) {
  Outcome res;
  if (o.input.empty()) throw std::invalid_argument("--input is required");
  const ExactMetric x = read_exact_metric(o.input);
  res.params = {{"n", o.n}, {"a", o.a}, {"input", format_exact_metric(x)}};
  const auto mres = metric_construction(x, o.n, o.a, o.seed);
  bool isometric = true;
  for (const auto& place : mres.placements) {
    for (int i = 0; i < x.n; ++i) {
      for (int j = 0; j < x.n; ++j) isometric = isometric && mres.exact(place[i], place[j]) == x(i, j);
    }
  }
  res.verdicts["hyperedges_isometric"] = isometric;
  res.verdicts["triangle_inequality"] = mres.metric_valid;
  res.verdicts["semigroup_membership"] = mres.semigroup_membership;
  res.result = {{"points", o.n},
                {"hyperedges", mres.host.edge_count()},
                {"girth", mres.girth},
                {"beta", mres.beta.get_str()},
                {"restricted_embeddings", mres.restricted.size()},
                {"attempts", mres.attempts}};
  res.kind = Outcome::Kind::structure;
  res.payload = format_exact_metric(mres.exact);
  return res;
}

Outcome cmd_sample(const Options& o) {
  Outcome res;
  const std::uint64_t samples = o.samples ? o.samples : 100000;
  auto d = make_draw(o, res.params);
  res.params["samples"] = samples;
  res.result = sample_distribution(d.n, samples, o.seed, o.workers, d.draw).to_json();
  return res;
}

Outcome cmd_check(const Options& o) {
  Outcome res;
  const auto kind = parse_structure_kind(o.kind);
  res.params = {{"family", o.family}, {"kind", to_string(kind)}, {"nmax", o.nmax}};
  ConsistencyReport report;
  if (o.family == "uniform" || o.family == "degree-sorted") {
    report = check_consistency(o.family == "uniform" ? uniform_family() : degree_sorted_family(), kind, o.nmax,
                               o.workers);
  } else {
    const std::uint64_t samples = o.samples ? o.samples : 20000;
    OrderSampler sampler;
    if (o.family == "gaussian") {
      const int D = o.D >= 0 ? o.D : std::max(o.nmax - 1, 0);
      sampler = gaussian_sampler(D);
      res.params["D"] = D;
    } else if (o.family == "hyper-gauss") {
      const int D = o.D >= 0 ? o.D : (o.nmax - 1) * (o.nmax - 2) / 2;
      sampler = hypergraph_gaussian_sampler(D);
      res.params["D"] = D;
    } else if (o.family == "uniform-sampled") {
      sampler = uniform_sampler();
    } else {
      throw std::invalid_argument("unknown family: " + o.family);
    }
    res.params["samples"] = samples;
    res.params["delta"] = o.delta;
    report = check_consistency(sampler, kind, o.nmax, samples, o.seed, o.workers, o.delta);
  }
  res.verdicts["consistent"] = report.passed();
  res.result = report.to_json();
  return res;
}

OrderDistribution read_distribution(const std::string& path) {
  json j = read_json_file(path);
  if (j.contains("result")) j = j["result"];
  return OrderDistribution::from_json(j);
}

Outcome cmd_tv(const Options& o) {
  Outcome res;
  if (!o.delta_text.empty()) {
    const Rational delta = parse_rational(o.delta_text);
    res.params = {{"delta", delta.get_str()}, {"k", o.k}};
    const Rational bound = tv_bound_from_delta(delta, o.k);
    res.result = {{"bound", bound.get_str()}, {"bound_value", bound.get_d()}};
    return res;
  }
  if (o.dist_a.empty() || o.dist_b.empty()) throw std::invalid_argument("tv needs --a and --b, or --delta and --k");
  res.params = {{"a", o.dist_a}, {"b", o.dist_b}};
  const auto a = read_distribution(o.dist_a);
  const auto b = read_distribution(o.dist_b);
  res.result["tv"] = tv_distance(a, b);
  if (a.is_exact() && b.is_exact()) res.result["tv_exact"] = tv_distance_exact(a, b).get_str();
  return res;
}

Outcome cmd_exp_sweep(const Options& o) {
  Outcome res;
  const Hypergraph pattern =
      o.pattern.empty() ? default_pattern(o.k, o.r) : as_hypergraph(read_structure(o.pattern), "sweep pattern");
  std::vector<std::uint64_t> seeds = o.seeds;
  if (seeds.empty()) {
    for (int i = 0; i < o.seed_count; ++i) seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
  }
  const std::uint64_t samples = o.samples ? o.samples : 200;
  res.params = {{"pattern", format_hypergraph(pattern)}, {"ns", o.ns}, {"seeds", seeds}, {"samples", samples}};
  const auto report = concentration_sweep(pattern, o.ns, seeds, samples, o.workers);
  res.result = report.to_json();
  if (o.format == "csv") {
    std::ostringstream os;
    report.write_csv(os);
    res.kind = Outcome::Kind::csv;
    res.payload = os.str();
  }
  return res;
}

Outcome cmd_exp_deviation(const Options& o) {
  Outcome res;
  if (o.host.empty()) throw std::invalid_argument("--host is required");
  const Hypergraph host = as_hypergraph(read_structure(o.host), "deviation host");
  const Hypergraph pattern = o.pattern.empty() ? default_pattern(o.k, host.uniformity())
                                               : as_hypergraph(read_structure(o.pattern), "deviation pattern");
  const auto mode = parse_deviation_mode(o.mode.empty() ? "sampled" : o.mode);
  const std::uint64_t samples = o.samples ? o.samples : 200;
  res.params = {{"host", o.host}, {"pattern", format_hypergraph(pattern)}, {"mode", to_string(mode)}};
  if (mode != DeviationMode::exact) res.params["samples"] = samples;
  const auto dev = deviation_profile(pattern, host, mode, samples, o.seed, o.workers);
  res.result = {{"delta", dev.delta.get_str()},
                {"delta_value", dev.delta.get_d()},
                {"tv_bound", dev.tv_bound.get_str()},
                {"n_ind", dev.n_ind},
                {"host_orders_tested", dev.host_orders_tested},
                {"worst_host_order", dev.worst_host_order.to_string()},
                {"worst_pattern_order", dev.worst_pattern_order.to_string()},
                {"lower_bound_only", mode != DeviationMode::exact}};
  return res;
}

Outcome cmd_exp_qop(const Options& o) {
  Outcome res;
  if (o.structure.empty()) throw std::invalid_argument("--structure is required");
  const Structure big = read_structure(o.structure);
  const auto family = make_family(o.family.empty() ? "all-orders" : o.family, big);
  const LinearOrder sub_order = LinearOrder::parse(o.sub_order);
  const LinearOrder big_order = LinearOrder::parse(o.order);
  const QopMode mode = o.mode.empty() || o.mode == "automorphisms" ? QopMode::automorphisms : QopMode::embeddings;
  if (!o.mode.empty() && o.mode != "automorphisms" && o.mode != "embeddings") {
    throw std::invalid_argument("unknown qop mode: " + o.mode);
  }
  res.params = {{"structure", o.structure},
                {"subset", o.subset},
                {"sub_order", sub_order.to_string()},
                {"order", big_order.to_string()},
                {"family", family.name()},
                {"mode", mode == QopMode::automorphisms ? "automorphisms" : "embeddings"}};
  Rational q;
  if (mode == QopMode::automorphisms) {
    q = qop_proportion(big, o.subset, sub_order, big_order, family, mode);
  } else {
    // Every induced embedding of the substructure, indexed by subset position.
    auto sub = induced_substructure(big, o.subset);
    std::vector<int> local_of(o.subset.size());
    for (std::size_t i = 0; i < o.subset.size(); ++i) {
      local_of[i] = static_cast<int>(std::find(sub.to_parent.begin(), sub.to_parent.end(), o.subset[i]) -
                                     sub.to_parent.begin());
    }
    std::vector<Embedding> embeddings;
    for (const auto& e : enumerate_embeddings(sub.structure, big)) {
      std::vector<int> map(o.subset.size());
      for (std::size_t i = 0; i < map.size(); ++i) map[i] = e.map[local_of[i]];
      embeddings.push_back({std::move(map)});
    }
    q = qop_proportion(big, o.subset, sub_order, big_order, family, mode, &embeddings);
  }
  res.result = {{"proportion", q.get_str()}, {"proportion_value", q.get_d()}};
  return res;
}

Outcome cmd_exp_extension(const Options& o) {
  Outcome res;
  const LinearOrder pattern = o.pattern.empty() ? default_extension_pattern(o.k, o.m) : LinearOrder::parse(o.pattern);
  res.params = {{"k", o.k}, {"m", o.m}, {"n", o.n}, {"pattern", pattern.to_string()}};
  const auto e = extension_lemma_ratio(o.k, o.m, pattern, o.n);
  res.result = {{"unconditional", e.unconditional.get_str()},
                {"conditional", e.conditional.get_str()},
                {"event_count", e.event_count},
                {"total_orders", e.total_orders}};
  if (o.format.empty() || o.format == "text") {
    res.kind = Outcome::Kind::text;
    res.payload = e.unconditional.get_str() + "\n";
  }
  return res;
}

Outcome cmd_exp_mc(const Options& o) {
  Outcome res;
  const std::uint64_t samples = o.samples ? o.samples : 100000;
  auto d = make_draw(o, res.params);
  const std::vector<int> chain = parse_int_list(o.event, '<');
  if (chain.empty()) throw std::invalid_argument("--event must list elements like 0<1<2");
  for (int x : chain) {
    if (x < 0 || x >= d.n) throw std::invalid_argument("--event names an element outside the universe");
  }
  res.params["event"] = o.event;
  res.params["samples"] = samples;
  auto event = [chain](const LinearOrder& order) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!order.less(chain[i], chain[i + 1])) return false;
    }
    return true;
  };
  res.result = mc_estimate(event, d.n, d.draw, samples, o.seed, o.workers).to_json();
  return res;
}

Outcome cmd_admissible(const Options& o) {
  Outcome res;
  if (o.structure.empty()) throw std::invalid_argument("--structure is required");
  const Structure s = read_structure(o.structure);
  const auto family = make_family(o.family.empty() ? "all-orders" : o.family, s);
  res.params = {{"structure", format_structure(s)}, {"family", family.name()}};
  const auto orders = admissible_orders(s, family);
  res.result = {{"count", orders.size()},
                {"orders", order_list(orders)},
                {"order_transitive", is_order_transitive(s, family)}};
  return res;
}

bool all_true(const json& verdicts) {
  for (const auto& [name, v] : verdicts.items()) {
    if (!v.get<bool>()) return false;
  }
  return true;
}

std::string digest_source(const Outcome& res) {
  return res.kind == Outcome::Kind::json ? res.result.dump() : res.payload;
}

int emit(const Outcome& res, const Options& o, const std::string& command, const std::vector<std::string>& args,
         std::ostream& out) {
  const std::string digest = sha256_hex(digest_source(res));
  json meta = {{"tool", "ordlab"},   {"schema", kResultSchema}, {"version", kVersion},
               {"command", command}, {"argv", args},            {"seed", o.seed},
               {"params", res.params}, {"verdicts", res.verdicts}, {"result_sha256", digest}};
  const json doc = {{"meta", meta}, {"result", res.result}};
  const std::string body = res.kind == Outcome::Kind::json ? doc.dump(2) + "\n" : res.payload;
  if (o.out.empty()) {
    out << body;
  } else {
    write_text_file(o.out, body);
    json prov = {{"schema", kProvenanceSchema}, {"version", kVersion},     {"command", command},
                 {"argv", args},                {"seed", o.seed},          {"params", res.params},
                 {"verdicts", res.verdicts},    {"output", o.out},         {"payload_sha256", digest}};
    if (res.kind != Outcome::Kind::json) prov["result"] = res.result;
    write_text_file(provenance_path(o.out), prov.dump(2) + "\n");
  }
  return all_true(res.verdicts) ? kExitOk : kExitVerificationFailed;
}

// Drops every occurrence of an option and its value from an argument list.
std::vector<std::string> drop_option(const std::vector<std::string>& args, const std::string& name) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == name) {
      ++i;
      continue;
    }
    if (args[i].rfind(name + "=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err, bool workers_given) {
  const json prov = read_json_file(o.provenance);
  if (prov.value("schema", "") != kProvenanceSchema) {
    err << "ordlab: " << o.provenance << " is not a provenance record\n";
    return kExitUsage;
  }
  if (prov.value("version", "") != kVersion) {
    err << "ordlab: provenance was written by version " << prov.value("version", "?") << ", this is " << kVersion
        << "\n";
    return kExitUsage;
  }
  auto args = prov.at("argv").get<std::vector<std::string>>();
  args = drop_option(drop_option(args, "--out"), "--seed");
  if (workers_given) args = drop_option(args, "--workers");

  const auto dir = std::filesystem::temp_directory_path() / ("ordlab-replay-" + sha256_hex(std::to_string(entropy_seed())).substr(0, 16));
  std::filesystem::create_directories(dir);
  const std::string target = (dir / "out").string();
  args.push_back("--seed");
  args.push_back(std::to_string(prov.at("seed").get<std::uint64_t>()));
  args.push_back("--out");
  args.push_back(target);
  if (workers_given) {
    args.push_back("--workers");
    args.push_back(std::to_string(o.workers));
  }
  std::ostringstream sink;
  const int code = run_cli(args, sink, err);
  std::string actual;
  if (std::filesystem::exists(provenance_path(target))) {
    actual = read_json_file(provenance_path(target)).value("payload_sha256", "");
  }
  std::filesystem::remove_all(dir);
  const std::string expected = prov.value("payload_sha256", "");
  const bool identical = !actual.empty() && actual == expected;
  json report = {{"replayed", args},          {"exit_code", code},     {"expected_sha256", expected},
                 {"actual_sha256", actual},   {"identical", identical}};
  out << report.dump(2) << "\n";
  return identical ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ordlab: consistent random orderings of finite structures", "ordlab"};
  app.require_subcommand(1);
  auto* seed_opt = app.add_option("--seed", o.seed, "64-bit seed (drawn from entropy and recorded when omitted)");
  app.add_option("--samples", o.samples, "Number of samples or sampled orders");
  auto* workers_opt = app.add_option("--workers", o.workers, "Worker threads (default: ORDLAB_WORKERS or all cores)");
  app.add_option("--out", o.out, "Output path; a provenance sidecar <out>.prov.json is written next to it");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));

  auto* gen = app.add_subcommand("gen", "Generate structures")->require_subcommand(1)->fallthrough();
  auto* girth = gen->add_subcommand("girth", "Random hypergraph with short cycles removed")->fallthrough();
  girth->add_option("--n", o.n, "Vertices")->required();
  girth->add_option("--r", o.r, "Uniformity");
  girth->add_option("--g", o.g, "Girth lower bound");
  girth->add_option("--a", o.a, "Edge probability constant in (0,1)");
  girth->add_flag("--connect", o.connect, "Join components afterwards");
  auto* forb = gen->add_subcommand("forb", "Plant copies of a pattern on a large-girth hypergraph")->fallthrough();
  forb->add_option("--pattern", o.pattern, "Pattern graph file (default: path on 4 vertices)");
  forb->add_option("--forbid", o.forbid, "Forbidden graph files to verify against");
  forb->add_option("--n", o.n, "Vertices")->required();
  forb->add_option("--g", o.g, "Girth of the host hypergraph")->default_val(4);
  forb->add_option("--a", o.a, "Edge probability constant in (0,1)");
  auto* metric = gen->add_subcommand("metric", "Glue copies of a finite metric space")->fallthrough();
  metric->add_option("--input", o.input, "Metric file of the space to copy")->required();
  metric->add_option("--n", o.n, "Points")->required();
  metric->add_option("--a", o.a, "Edge probability constant in (0,1)");

  auto* sample = app.add_subcommand("sample", "Empirical order distribution of a construction")->fallthrough();
  sample->add_option("--construction", o.construction, "Sampler")
      ->required()
      ->check(CLI::IsMember({"gauss", "bipartite", "projection", "hyper-gauss", "uniform"}));
  sample->add_option("--input", o.input, "Structure file")->required();
  sample->add_option("--D", o.D, "Degree cap (default: max degree)");
  sample->add_option("--exponent", o.exponent, "Power applied to distances before embedding");

  auto* check = app.add_subcommand("check", "Consistency check over all small labelled structures")->fallthrough();
  check->add_option("--family", o.family, "uniform, degree-sorted, gaussian, hyper-gauss or uniform-sampled")
      ->required();
  check->add_option("--kind", o.kind, "graph, hypergraph3, equivalence or vector");
  check->add_option("--nmax", o.nmax, "Largest universe (at most 5)");
  check->add_option("--D", o.D, "Degree cap for the Gaussian samplers");
  check->add_option("--delta", o.delta, "Failure probability behind the sampled threshold");

  auto* tv = app.add_subcommand("tv", "Total variation distance or bound")->fallthrough();
  tv->add_option("--a", o.dist_a, "Distribution JSON");
  tv->add_option("--b", o.dist_b, "Distribution JSON");
  tv->add_option("--delta", o.delta_text, "Deviation (rational) for the bound delta k!/2");
  tv->add_option("--k", o.k, "Pattern size for the bound");

  auto* exp = app.add_subcommand("exp", "Experiments")->require_subcommand(1)->fallthrough();
  auto* sweep = exp->add_subcommand("sweep", "Deviation of ordered embedding counts over G(n,r,1/2)")->fallthrough();
  sweep->add_option("--k", o.k, "Pattern size");
  sweep->add_option("--r", o.r, "Uniformity");
  sweep->add_option("--ns", o.ns, "Host sizes")->delimiter(',');
  sweep->add_option("--seeds", o.seeds, "Explicit seeds")->delimiter(',');
  sweep->add_option("--seed-count", o.seed_count, "Seeds seed, seed+1, ... when --seeds is absent");
  sweep->add_option("--pattern", o.pattern, "Pattern file (default: path)");
  auto* deviation = exp->add_subcommand("deviation", "Largest deviation of ordered counts from 1/k!")->fallthrough();
  deviation->add_option("--host", o.host, "Host hypergraph file")->required();
  deviation->add_option("--pattern", o.pattern, "Pattern file");
  deviation->add_option("--k", o.k, "Pattern size when no pattern file is given");
  deviation->add_option("--mode", o.mode, "exact, sampled or heuristics");
  auto* qop = exp->add_subcommand("qop", "Proportion of maps carrying one order into another")->fallthrough();
  qop->add_option("--structure", o.structure, "Structure file")->required();
  qop->add_option("--subset", o.subset, "Substructure elements")->delimiter(',')->required();
  qop->add_option("--sub-order", o.sub_order, "Order of subset positions, e.g. 1,0")->required();
  qop->add_option("--order", o.order, "Order of the whole structure")->required();
  qop->add_option("--family", o.family, "Admissible family");
  qop->add_option("--mode", o.mode, "automorphisms or embeddings");
  auto* extension = exp->add_subcommand("extension", "Exact extension probability by enumeration")->fallthrough();
  extension->add_option("--k", o.k, "Size of X")->required();
  extension->add_option("--m", o.m, "Size of Y")->required();
  extension->add_option("--n", o.n, "Copies of Y")->required();
  extension->add_option("--pattern", o.pattern, "Order of X+Y as 0..k+m-1 (X first)");
  auto* mc = exp->add_subcommand("mc", "Monte Carlo probability of an order event")->fallthrough();
  mc->add_option("--construction", o.construction, "Sampler")
      ->required()
      ->check(CLI::IsMember({"gauss", "bipartite", "projection", "hyper-gauss", "uniform"}));
  mc->add_option("--input", o.input, "Structure file")->required();
  mc->add_option("--D", o.D, "Degree cap");
  mc->add_option("--exponent", o.exponent, "Power applied to distances before embedding");
  mc->add_option("--event", o.event, "Chain such as 0<1<2")->required();

  auto* admissible = app.add_subcommand("admissible", "List admissible orders")->fallthrough();
  admissible->add_option("--family", o.family, "all-orders, bipartite-parts, convex-equiv or vs-natural");
  admissible->add_option("--structure", o.structure, "Structure file")->required();

  auto* replay = app.add_subcommand("replay", "Re-run a recorded command and compare digests")->fallthrough();
  replay->add_option("provenance", o.provenance, "Provenance JSON")->required();

  std::vector<const char*> argv{"ordlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ordlab: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (workers_opt->count() == 0) o.workers = default_workers();
  if (o.workers < 1) {
    err << "ordlab: --workers must be at least 1\n";
    return kExitUsage;
  }
  if (seed_opt->count() == 0) o.seed = entropy_seed();

  try {
    if (replay->parsed()) return cmd_replay(o, out, err, workers_opt->count() > 0);
    Outcome res;
    std::string command;
    if (girth->parsed()) {
      command = "gen girth";
      res = cmd_gen_girth(o);
    } else if (forb->parsed()) {
      command = "gen forb";
      res = cmd_gen_forb(o);
    } else if (metric->parsed()) {
      command = "gen metric";
      res = cmd_gen_metric(o);
    } else if (sample->parsed()) {
      command = "sample";
      res = cmd_sample(o);
    } else if (check->parsed()) {
      command = "check";
      res = cmd_check(o);
    } else if (tv->parsed()) {
      command = "tv";
      res = cmd_tv(o);
    } else if (sweep->parsed()) {
      command = "exp sweep";
      res = cmd_exp_sweep(o);
    } else if (deviation->parsed()) {
      command = "exp deviation";
      res = cmd_exp_deviation(o);
    } else if (qop->parsed()) {
      command = "exp qop";
      res = cmd_exp_qop(o);
    } else if (extension->parsed()) {
      command = "exp extension";
      res = cmd_exp_extension(o);
    } else if (mc->parsed()) {
      command = "exp mc";
      res = cmd_exp_mc(o);
    } else if (admissible->parsed()) {
      command = "admissible";
      res = cmd_admissible(o);
    }
    if (o.format == "csv" && res.kind != Outcome::Kind::csv) {
      err << "ordlab: csv output is only available for exp sweep\n";
      return kExitUsage;
    }
    return emit(res, o, command, args, out);
  } catch (const std::invalid_argument& e) {
    err << "ordlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "ordlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "ordlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ordlab: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace ordlab
