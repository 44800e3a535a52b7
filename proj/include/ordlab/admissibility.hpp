#pragma once

#include "ordlab/orders.hpp"
#include "ordlab/structures.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ordlab {

/// Which linear orders count as admissible for a structure.
struct AdmissibleFamily {
  enum class Kind { all_orders, bipartite_parts, convex_equiv, vs_natural };
  Kind kind = Kind::all_orders;
  /// bipartite_parts: part label (0 or 1) per vertex; every part-0 vertex sits below every part-1 vertex.
  std::vector<int> part_of;
  /// vs_natural: order of the field elements 1..q-1 placed above 0. Empty means 1 < 2 < ... < q-1.
  std::vector<int> field_order;

  static AdmissibleFamily all_orders() { return {}; }
  static AdmissibleFamily bipartite_parts(std::vector<int> part_of);
  static AdmissibleFamily convex_equiv() { return {Kind::convex_equiv, {}, {}}; }
  static AdmissibleFamily vs_natural(std::vector<int> field_order = {});

  std::string name() const;
};

/// Name -> family factory. Builtins: all-orders, convex-equiv, vs-natural.
/// bipartite-parts needs parts, so the registry derives them from a 2-colouring.
using FamilyFactory = std::function<AdmissibleFamily(const Structure&)>;
void register_family(const std::string& name, FamilyFactory factory);
AdmissibleFamily make_family(std::string_view name, const Structure& s);
std::vector<std::string> registered_families();

/// Complete duplicate-free list in ascending order (lexicographic on elements).
std::vector<LinearOrder> admissible_orders(const Structure& s, const AdmissibleFamily& f);
std::uint64_t count_admissible(const Structure& s, const AdmissibleFamily& f);
bool is_admissible(const Structure& s, const AdmissibleFamily& f, const LinearOrder& order);

/// True iff Aut(s) acts transitively on the admissible orders.
bool is_order_transitive(const Structure& s, const AdmissibleFamily& f);

/// Admissible orders of `big` whose restriction to `subset` equals `sub_order`
/// (local index i of sub_order stands for subset[i]). The induced substructure
/// on `subset` takes the family restricted to it.
std::uint64_t extension_count(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                              const AdmissibleFamily& f);
Rational extension_ratio(const Structure& big, std::span<const int> subset, const LinearOrder& sub_order,
                         const AdmissibleFamily& f);

/// True iff every admissible order of the substructure has the same number of extensions.
bool equal_extension_probe(const Structure& big, std::span<const int> subset, const AdmissibleFamily& f);

/// Family restricted to a subset (parts are carried along; other kinds are unchanged).
AdmissibleFamily restrict_family(const AdmissibleFamily& f, std::span<const int> subset);

/// prod_{i<d} (q^d - q^i).
std::uint64_t general_linear_order(int q, int d);

}  // namespace ordlab
