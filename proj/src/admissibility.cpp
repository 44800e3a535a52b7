#include "ordlab/admissibility.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace ordlab {

namespace {

constexpr std::uint64_t kMaxListedOrders = 2'000'000;

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) out.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

std::vector<int> two_colouring(const Hypergraph& g) {
  if (!g.is_graph()) throw std::invalid_argument("bipartite parts need a graph");
  std::vector<int> colour(static_cast<std::size_t>(g.size()), -1);
  for (int s = 0; s < g.size(); ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          q.push(v);
        } else if (colour[v] == colour[u]) {
          throw std::invalid_argument("bipartite parts: graph is not bipartite");
        }
      }
    }
  }
  return colour;
}

struct Registry {
  std::mutex mu;
  std::map<std::string, FamilyFactory> factories;
  Registry() {
    factories["all-orders"] = [](const Structure&) { return AdmissibleFamily::all_orders(); };
    factories["convex-equiv"] = [](const Structure&) { return AdmissibleFamily::convex_equiv(); };
    factories["vs-natural"] = [](const Structure&) { return AdmissibleFamily::vs_natural(); };
    factories["bipartite-parts"] = [](const Structure& s) {
      const auto* g = std::get_if<Hypergraph>(&s);
      if (!g) throw std::invalid_argument("bipartite parts need a graph");
      return AdmissibleFamily::bipartite_parts(two_colouring(*g));
    };
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

void check_size(int n) {
  if (n > kMaxExactOrderSize) throw std::out_of_range("admissible orders: universe larger than 8");
}

std::vector<LinearOrder> all_orders_of(int n) {
  check_size(n);
  std::vector<LinearOrder> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every concatenation of one arrangement per block, blocks taken in each
// order allowed by `block_orders`.
std::vector<LinearOrder> block_orders(const std::vector<std::vector<int>>& blocks,
                                      const std::vector<std::vector<int>>& block_sequences) {
  std::vector<LinearOrder> out;
  for (const auto& seq : block_sequences) {
    std::vector<std::vector<int>> parts;
    for (int b : seq) parts.push_back(blocks[b]);
    for (auto& p : parts) std::sort(p.begin(), p.end());
    while (true) {
      std::vector<int> perm;
      for (const auto& p : parts) perm.insert(perm.end(), p.begin(), p.end());
      out.emplace_back(std::move(perm));
      // Odometer over the within-block permutations, last block fastest.
      int i = static_cast<int>(parts.size()) - 1;
      while (i >= 0 && !std::next_permutation(parts[i].begin(), parts[i].end())) --i;
      if (i < 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinearOrder> vs_orders(const VectorSpace& v, const std::vector<int>& field_order) {
  const int q = v.field_size();
  const int d = v.dimension();
  if (general_linear_order(q, d) > kMaxListedOrders) {
    throw std::out_of_range("admissible orders: general linear group too large to enumerate");
  }
  std::vector<int> field_rank(static_cast<std::size_t>(q), 0);
  for (int k = 0; k < q - 1; ++k) field_rank[field_order[k]] = k + 1;

  std::set<std::vector<int>> seen;
  std::vector<int> basis;
  std::vector<std::pair<std::vector<int>, int>> keyed(static_cast<std::size_t>(v.size()));
  std::function<void()> rec = [&]() {
    if (static_cast<int>(basis.size()) == d) {
      // Element with coordinates c in the base-q digit order of VectorSpace,
      // read in ordered-basis coordinates; first basis vector is most significant.
      for (int i = 0; i < v.size(); ++i) {
        auto c = v.coords(i);
        std::vector<int> key(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) key[j] = field_rank[c[j]];
        keyed[v.combine(c, basis)] = {std::move(key), 0};
      }
      std::vector<int> perm(static_cast<std::size_t>(v.size()));
      std::iota(perm.begin(), perm.end(), 0);
      std::sort(perm.begin(), perm.end(), [&](int a, int b) { return keyed[a].first < keyed[b].first; });
      seen.insert(std::move(perm));
      return;
    }
    for (int x = 1; x < v.size(); ++x) {
      basis.push_back(x);
      if (v.rank_of(basis) == static_cast<int>(basis.size())) rec();
      basis.pop_back();
    }
  };
  rec();
  std::vector<LinearOrder> out;
  for (const auto& p : seen) out.emplace_back(p);
  return out;
}

bool is_convex(const EquivStructure& e, const LinearOrder& order) {
  std::vector<char> closed(static_cast<std::size_t>(e.size()), 0);
  for (int i = 0; i < order.size(); ++i) {
    const int c = e.class_of(order[i]);
    if (closed[c]) return false;
    if (i + 1 == order.size() || e.class_of(order[i + 1]) != c) closed[c] = 1;
  }
  return true;
}

// Translates an order on subset positions into the substructure's local indexing.
LinearOrder to_local(const LinearOrder& sub_order, std::span<const int> subset, std::span<const int> to_parent) {
  std::map<int, int> position_of;
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) position_of[subset[i]] = sub_order.position(i);
  std::vector<int> local(to_parent.size());
  std::iota(local.begin(), local.end(), 0);
  std::sort(local.begin(), local.end(),
            [&](int a, int b) { return position_of.at(to_parent[a]) < position_of.at(to_parent[b]); });
  return LinearOrder(std::move(local));
}

}  // namespace

AdmissibleFamily AdmissibleFamily::bipartite_parts(std::vector<int> part_of) {
  for (int p : part_of) {
    if (p != 0 && p != 1) throw std::invalid_argument("bipartite parts: labels must be 0 or 1");
  }
  return {Kind::bipartite_parts, std::move(part_of), {}};
}

AdmissibleFamily AdmissibleFamily::vs_natural(std::vector<int> field_order) {
  return {Kind::vs_natural, {}, std::move(field_order)};
}

std::string AdmissibleFamily::name() const {
  switch (kind) {
    case Kind::all_orders: return "ALL_ORDERS";
    case Kind::bipartite_parts: return "BIPARTITE_PARTS";
    case Kind::convex_equiv: return "CONVEX_EQUIV";
    case Kind::vs_natural: return "VS_NATURAL";
  }
  return "?";
}

void register_family(const std::string& name, FamilyFactory factory) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.factories[normalize_name(name)] = std::move(factory);
}

AdmissibleFamily make_family(std::string_view name, const Structure& s) {
  auto& r = registry();
  FamilyFactory factory;
  {
    std::lock_guard lock(r.mu);
    auto it = r.factories.find(normalize_name(name));
    if (it == r.factories.end()) throw std::invalid_argument("unknown admissible family: " + std::string(name));
    factory = it->second;
  }
  return factory(s);
}

std::vector<std::string> registered_families() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, f] : r.factories) names.push_back(name);
  return names;
}

std::uint64_t general_linear_order(int q, int d) {
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= static_cast<std::uint64_t>(q);
  std::uint64_t out = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < d; ++i) {
    out *= qd - qi;
    qi *= static_cast<std::uint64_t>(q);
  }
  return out;
}

std::vector<LinearOrder> admissible_orders(const Structure& s, const AdmissibleFamily& f) {
  const int n = universe_size(s);
  switch (f.kind) {
    case AdmissibleFamily::Kind::all_orders:
      return all_orders_of(n);
    case AdmissibleFamily::Kind::bipartite_parts: {
      check_size(n);
      if (static_cast<int>(f.part_of.size()) != n) throw std::invalid_argument("bipartite parts: wrong label count");
      std::vector<std::vector<int>> blocks(2);
      for (int x = 0; x < n; ++x) blocks[f.part_of[x]].push_back(x);
      return block_orders(blocks, {{0, 1}});
    }
    case AdmissibleFamily::Kind::convex_equiv: {
      const auto* e = std::get_if<EquivStructure>(&s);
      if (!e) throw std::invalid_argument("CONVEX_EQUIV needs an equivalence structure");
      check_size(n);
      auto classes = e->classes();
      std::vector<int> seq(classes.size());
      std::iota(seq.begin(), seq.end(), 0);
      std::vector<std::vector<int>> seqs;
      do {
        seqs.push_back(seq);
      } while (std::next_permutation(seq.begin(), seq.end()));
      return block_orders(classes, seqs);
    }
    case AdmissibleFamily::Kind::vs_natural: {
      const auto* v = std::get_if<VectorSpace>(&s);
      if (!v) throw std::invalid_argument("VS_NATURAL needs a vector space");
      if (v->size() > 64) throw std::out_of_range("VS_NATURAL: more than 64 vectors");
      std::vector<int> field_order = f.field_order;
      if (field_order.empty()) {
        for (int a = 1; a < v->field_size(); ++a) field_order.push_back(a);
      }
      auto sorted = field_order;
      std::sort(sorted.begin(), sorted.end());
      for (int a = 1; a < v->field_size(); ++a) {
        if (static_cast<int>(sorted.size()) != v->field_size() - 1 || sorted[a - 1] != a) {
          throw std::invalid_argument("VS_NATURAL: field order must list 1..q-1 once each");
        }
      }
      return vs_orders(*v, field_order);
    }
  }
  return {};
}

std::uint64_t count_admissible(const Structure& s, const AdmissibleFamily& f) {
  return admissible_orders(s, f).size();
}

bool is_admissible(const Structure& s, const AdmissibleFamily& f, const LinearOrder& order) {
  if (order.size() != universe_size(s)) return false;
  switch (f.kind) {
    case AdmissibleFamily::Kind::all_orders:
      return true;
    case AdmissibleFamily::Kind::bipartite_parts: {
      if (static_cast<int>(f.part_of.size()) != order.size()) throw std::invalid_argument("bipartite parts: wrong label count");
      for (int i = 0; i + 1 < order.size(); ++i) {
        if (f.part_of[order[i]] > f.part_of[order[i + 1]]) return false;
      }
      return true;
    }
    case AdmissibleFamily::Kind::convex_equiv: {
      const auto* e = std::get_if<EquivStructure>(&s);
      if (!e) throw std::invalid_argument("CONVEX_EQUIV needs an equivalence structure");
      return is_convex(*e, order);
    }
    case AdmissibleFamily::Kind::vs_natural: {
      auto all = admissible_orders(s, f);
      return std::binary_search(all.begin(), all.end(), order);
    }
  }
  return false;
}

bool is_order_transitive(const Structure& s, const AdmissibleFamily& f) {
  auto orders = admissible_orders(s, f);
  if (orders.empty()) return false;
  // Aut(s) is a group, so transitivity is the orbit of one order covering all.
  std::set<LinearOrder> orbit;
  for (const auto& pi : automorphisms(s)) {
    auto image = pushforward(orders.front(), pi.map);
    if (std::binary_search(orders.begin(), orders.end(), image)) orbit.insert(std::move(image));
  }
  return orbit.size() == orders.size();
}

AdmissibleFamily restrict_family(const AdmissibleFamily& f, std::span<const int> subset) {
  AdmissibleFamily out = f;
  if (f.kind == AdmissibleFamily::Kind::bipartite_parts) {
    out.part_of.clear();
    for (int x : subset) out.part_of.push_back(f.part_of.at(x));
  }
  return out;
}

std::uint64_t extension_count(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                              const AdmissibleFamily& f) {
  if (sub_order.size() != static_cast<int>(subset.size())) {
    throw std::invalid_argument("extension count: order size does not match the subset");
  }
  auto sub = induced_substructure(big, subset);
  const LinearOrder local = to_local(sub_order, subset, sub.to_parent);
  if (!is_admissible(sub.structure, restrict_family(f, sub.to_parent), local)) {
    throw std::invalid_argument("extension count: order is not admissible on the substructure");
  }
  std::uint64_t count = 0;
  for (const auto& order : admissible_orders(big, f)) count += extends(order, local, sub.to_parent);
  return count;
}

Rational extension_ratio(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                         const AdmissibleFamily& f) {
  const auto num = extension_count(big, subset, sub_order, f);
  const auto den = count_admissible(big, f);
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

bool equal_extension_probe(const Structure& big, std::span<const int> subset, const AdmissibleFamily& f) {
  auto sub = induced_substructure(big, subset);
  const auto local_family = restrict_family(f, sub.to_parent);
  // Tally restrictions of every admissible order of `big` in one pass.
  std::map<LinearOrder, std::uint64_t> tally;
  for (const auto& order : admissible_orders(sub.structure, local_family)) tally[order] = 0;
  for (const auto& order : admissible_orders(big, f)) {
    auto it = tally.find(pull_back(order, sub.to_parent));
    if (it == tally.end()) throw std::logic_error("restriction of an admissible order is not admissible");
    ++it->second;
  }
  std::set<std::uint64_t> counts;
  for (const auto& [order, c] : tally) counts.insert(c);
  return counts.size() <= 1;
}

}  // namespace ordlab
