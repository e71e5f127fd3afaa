#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padic {

inline constexpr long kUnbounded = std::numeric_limits<long>::max();

// Closed index interval [lo, hi]; hi = kUnbounded for co-finite ranges.
struct IndexRange {
  long lo = 1;
  long hi = kUnbounded;

  bool contains(long n) const { return n >= lo && n <= hi; }
  bool empty() const { return hi < lo; }
  bool unbounded() const { return hi == kUnbounded; }
  bool operator==(const IndexRange&) const = default;
  std::string to_string() const;  // "[2, inf)" / "[3, 7]"
};

// Finite union of disjoint, sorted index ranges.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<IndexRange> ranges);
  static IndexSet all_from(long lo) { return IndexSet({IndexRange{lo, kUnbounded}}); }

  const std::vector<IndexRange>& ranges() const& { return r_; }
  // By value on temporaries, so `for (auto r : s.intersect(x).ranges())` is safe.
  std::vector<IndexRange> ranges() && { return std::move(r_); }
  bool contains(long n) const;
  bool empty() const { return r_.empty(); }
  IndexSet intersect(const IndexRange& r) const;
  IndexSet intersect(const IndexSet& o) const;
  // {n : n + k in this}
  IndexSet preimage_of_shift(long k) const;
  bool operator==(const IndexSet&) const = default;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<IndexRange> r_;
};

struct SymbolRef {
  enum class Kind { Concrete, Family };
  Kind kind = Kind::Concrete;
  std::size_t id = 0;
  long index = 0;  // family members only

  static SymbolRef concrete(std::size_t id) { return {Kind::Concrete, id, 0}; }
  static SymbolRef member(std::size_t family, long n) { return {Kind::Family, family, n}; }
  bool is_family() const { return kind == Kind::Family; }
  auto operator<=>(const SymbolRef&) const = default;
};

struct ConcreteNode {
  std::string name;     // ASCII, e.g. "alpha_inf"
  std::string display;  // e.g. "α_∞"
};

struct FamilyNode {
  std::string name;     // ASCII base, e.g. "beta'"
  std::string display;  // e.g. "β′"
  IndexSet domain = IndexSet::all_from(1);
};

struct TargetPattern {
  enum class Kind { Concrete, Shift, Range };
  Kind kind = Kind::Concrete;
  std::size_t id = 0;  // concrete node or family
  long shift = 0;      // Shift: n -> n + shift
  IndexRange range;    // Range: absolute indices

  bool operator==(const TargetPattern&) const = default;
};

// source (a concrete node, or family members with index in source_range)
// -> target pattern.
struct EdgeRule {
  SymbolRef::Kind source_kind = SymbolRef::Kind::Concrete;
  std::size_t source_id = 0;
  IndexRange source_range;
  TargetPattern target;

  bool operator==(const EdgeRule&) const = default;
};

class TransitionGraph;

struct SuccessorSet {
  std::vector<SymbolRef> finite;
  std::vector<std::pair<std::size_t, IndexRange>> ranges;  // family, absolute indices

  bool contains(const SymbolRef& s) const;
  bool empty() const { return finite.empty() && ranges.empty(); }
  std::string to_string(const TransitionGraph& g) const;
};

// Finite index truncation of a structured graph.
struct TruncatedGraph {
  std::vector<SymbolRef> nodes;
  std::map<SymbolRef, std::size_t> position;
  std::vector<std::vector<std::size_t>> adj;

  // Strongly connected components (Tarjan), as lists of node positions.
  std::vector<std::vector<std::size_t>> components() const;
};

class TransitionGraph {
 public:
  std::size_t add_concrete(std::string name, std::string display);
  std::size_t add_family(std::string name, std::string display, IndexSet domain = IndexSet::all_from(1));
  void add_rule(const EdgeRule& r);

  const std::vector<ConcreteNode>& concrete() const { return concrete_; }
  const std::vector<FamilyNode>& families() const { return families_; }
  const std::vector<EdgeRule>& rules() const { return rules_; }

  bool valid(const SymbolRef& s) const;
  SuccessorSet successors(const SymbolRef& s) const;
  bool has_edge(const SymbolRef& a, const SymbolRef& b) const;
  bool is_admissible(std::span<const SymbolRef> word) const;
  // Largest index that appears as a finite constant in any rule.
  long max_rule_constant() const;
  long max_abs_shift() const;

  std::vector<SymbolRef> nodes_up_to(long bound) const;
  TruncatedGraph truncate(long bound) const;

  std::string name(const SymbolRef& s) const;     // "beta'_3", "alpha_inf"
  std::string display(const SymbolRef& s) const;  // "β′₃", "α_∞"
  SymbolRef parse_symbol(std::string_view text) const;
  std::optional<std::size_t> find_family(std::string_view name) const;
  std::optional<std::size_t> find_concrete(std::string_view name) const;

 private:
  std::vector<ConcreteNode> concrete_;
  std::vector<FamilyNode> families_;
  std::vector<EdgeRule> rules_;
};

std::string subscript(long n);

// Strongly connected component of `seed`, computed on the truncations at
// probe_bound and 2*probe_bound and accepted only when the per-family index
// pattern agrees.  Throws Error("inconclusive ...") otherwise.
TransitionGraph irreducible_component(const TransitionGraph& g, const SymbolRef& seed, long probe_bound);

// DOT text for the truncation at `bound`.
std::string to_dot(const TransitionGraph& g, long bound, bool unicode = true);
// DOT portrait of the family-level rules (one node per family / concrete node).
std::string to_dot_portrait(const TransitionGraph& g, bool unicode = true);

}  // namespace padic
