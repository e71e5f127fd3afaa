#include "padic/transition_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "padic/errors.hpp"

namespace padic {

std::string IndexRange::to_string() const {
  if (unbounded()) return "[" + std::to_string(lo) + ", inf)";
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

IndexSet::IndexSet(std::vector<IndexRange> ranges) : r_(std::move(ranges)) { normalize(); }

void IndexSet::normalize() {
  std::erase_if(r_, [](const IndexRange& r) { return r.empty(); });
  std::sort(r_.begin(), r_.end(), [](const IndexRange& a, const IndexRange& b) { return a.lo < b.lo; });
  std::vector<IndexRange> out;
  for (const auto& r : r_) {
    if (!out.empty() && (out.back().hi == kUnbounded || out.back().hi + 1 >= r.lo)) {
      out.back().hi = std::max(out.back().hi, r.hi);
    } else {
      out.push_back(r);
    }
  }
  r_ = std::move(out);
}

bool IndexSet::contains(long n) const {
  return std::any_of(r_.begin(), r_.end(), [n](const IndexRange& r) { return r.contains(n); });
}

IndexSet IndexSet::intersect(const IndexRange& r) const {
  std::vector<IndexRange> out;
  for (const auto& a : r_) out.push_back({std::max(a.lo, r.lo), std::min(a.hi, r.hi)});
  return IndexSet(std::move(out));
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
  std::vector<IndexRange> out;
  for (const auto& r : o.r_)
    for (const auto& a : intersect(r).r_) out.push_back(a);
  return IndexSet(std::move(out));
}

IndexSet IndexSet::preimage_of_shift(long k) const {
  std::vector<IndexRange> out;
  for (const auto& a : r_) out.push_back({a.lo - k, a.unbounded() ? kUnbounded : a.hi - k});
  return IndexSet(std::move(out));
}

std::string IndexSet::to_string() const {
  if (r_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < r_.size(); ++i) s += (i ? " u " : "") + r_[i].to_string();
  return s;
}

bool SuccessorSet::contains(const SymbolRef& s) const {
  if (std::find(finite.begin(), finite.end(), s) != finite.end()) return true;
  if (!s.is_family()) return false;
  return std::any_of(ranges.begin(), ranges.end(),
                     [&](const auto& fr) { return fr.first == s.id && fr.second.contains(s.index); });
}

std::string SuccessorSet::to_string(const TransitionGraph& g) const {
  std::vector<std::string> parts;
  for (const auto& s : finite) parts.push_back(g.name(s));
  for (const auto& [fam, r] : ranges) {
    const std::string& n = g.families()[fam].name;
    if (r.unbounded())
      parts.push_back(n + "_n (n >= " + std::to_string(r.lo) + ")");
    else
      parts.push_back(n + "_n (" + std::to_string(r.lo) + " <= n <= " + std::to_string(r.hi) + ")");
  }
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

std::vector<std::vector<std::size_t>> TruncatedGraph::components() const {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  G g(nodes.size());
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (std::size_t v : adj[u]) boost::add_edge(u, v, g);
  std::vector<int> comp(nodes.size());
  int count = nodes.empty() ? 0 : boost::strong_components(g, comp.data());
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(count));
  for (std::size_t u = 0; u < nodes.size(); ++u) out[static_cast<std::size_t>(comp[u])].push_back(u);
  return out;
}

std::size_t TransitionGraph::add_concrete(std::string name, std::string display) {
  concrete_.push_back({std::move(name), std::move(display)});
  return concrete_.size() - 1;
}

std::size_t TransitionGraph::add_family(std::string name, std::string display, IndexSet domain) {
  families_.push_back({std::move(name), std::move(display), std::move(domain)});
  return families_.size() - 1;
}

void TransitionGraph::add_rule(const EdgeRule& r) {
  bool src_ok = r.source_kind == SymbolRef::Kind::Concrete ? r.source_id < concrete_.size()
                                                            : r.source_id < families_.size();
  bool tgt_ok = r.target.kind == TargetPattern::Kind::Concrete ? r.target.id < concrete_.size()
                                                                : r.target.id < families_.size();
  if (!src_ok || !tgt_ok) throw Error("edge rule refers to an unknown node");
  // Every instantiation must land on a valid symbol.
  if (r.source_kind == SymbolRef::Kind::Family && r.target.kind == TargetPattern::Kind::Shift) {
    IndexSet src = families_[r.source_id].domain.intersect(r.source_range);
    IndexSet ok = families_[r.target.id].domain.preimage_of_shift(r.target.shift);
    if (!(src.intersect(ok) == src))
      throw Error("edge rule from " + families_[r.source_id].name + " leaves the domain of " +
                  families_[r.target.id].name);
  }
  rules_.push_back(r);
}

bool TransitionGraph::valid(const SymbolRef& s) const {
  if (!s.is_family()) return s.id < concrete_.size();
  return s.id < families_.size() && families_[s.id].domain.contains(s.index);
}

SuccessorSet TransitionGraph::successors(const SymbolRef& s) const {
  if (!valid(s)) throw Error("successors: unknown symbol");
  SuccessorSet out;
  for (const auto& r : rules_) {
    if (r.source_kind != s.kind || r.source_id != s.id) continue;
    if (s.is_family() && !r.source_range.contains(s.index)) continue;
    switch (r.target.kind) {
      case TargetPattern::Kind::Concrete:
        out.finite.push_back(SymbolRef::concrete(r.target.id));
        break;
      case TargetPattern::Kind::Shift:
        out.finite.push_back(SymbolRef::member(r.target.id, s.index + r.target.shift));
        break;
      case TargetPattern::Kind::Range:
        for (const auto& piece : families_[r.target.id].domain.intersect(r.target.range).ranges())
          out.ranges.emplace_back(r.target.id, piece);
        break;
    }
  }
  std::sort(out.finite.begin(), out.finite.end());
  out.finite.erase(std::unique(out.finite.begin(), out.finite.end()), out.finite.end());
  return out;
}

bool TransitionGraph::has_edge(const SymbolRef& a, const SymbolRef& b) const {
  return valid(b) && successors(a).contains(b);
}

bool TransitionGraph::is_admissible(std::span<const SymbolRef> word) const {
  for (const auto& s : word)
    if (!valid(s)) return false;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (!has_edge(word[i], word[i + 1])) return false;
  return true;
}

long TransitionGraph::max_rule_constant() const {
  long m = 1;
  for (const auto& r : rules_) {
    if (r.source_kind == SymbolRef::Kind::Family) {
      m = std::max(m, r.source_range.lo);
      if (!r.source_range.unbounded()) m = std::max(m, r.source_range.hi);
    }
    if (r.target.kind == TargetPattern::Kind::Range) {
      m = std::max(m, r.target.range.lo);
      if (!r.target.range.unbounded()) m = std::max(m, r.target.range.hi);
    }
  }
  for (const auto& f : families_)
    for (const auto& r : f.domain.ranges()) {
      m = std::max(m, r.lo);
      if (!r.unbounded()) m = std::max(m, r.hi);
    }
  return m;
}

long TransitionGraph::max_abs_shift() const {
  long m = 0;
  for (const auto& r : rules_)
    if (r.target.kind == TargetPattern::Kind::Shift) m = std::max(m, std::abs(r.target.shift));
  return m;
}

std::vector<SymbolRef> TransitionGraph::nodes_up_to(long bound) const {
  std::vector<SymbolRef> out;
  for (std::size_t i = 0; i < concrete_.size(); ++i) out.push_back(SymbolRef::concrete(i));
  // Index-major order: all families at n = 1, then n = 2, ...
  for (long n = 1; n <= bound; ++n)
    for (std::size_t f = 0; f < families_.size(); ++f)
      if (families_[f].domain.contains(n)) out.push_back(SymbolRef::member(f, n));
  return out;
}

TruncatedGraph TransitionGraph::truncate(long bound) const {
  TruncatedGraph t;
  t.nodes = nodes_up_to(bound);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) t.position[t.nodes[i]] = i;
  t.adj.resize(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    SuccessorSet s = successors(t.nodes[i]);
    std::set<std::size_t> targets;
    for (const auto& x : s.finite) {
      auto it = t.position.find(x);
      if (it != t.position.end()) targets.insert(it->second);
    }
    for (const auto& [fam, r] : s.ranges)
      for (long n = r.lo; n <= std::min(r.hi, bound); ++n) {
        auto it = t.position.find(SymbolRef::member(fam, n));
        if (it != t.position.end()) targets.insert(it->second);
      }
    t.adj[i].assign(targets.begin(), targets.end());
  }
  return t;
}

std::string subscript(long n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(n), out;
  for (char c : s) out += c == '-' ? std::string("₋") : std::string(digits[c - '0']);
  return out;
}

std::string TransitionGraph::name(const SymbolRef& s) const {
  if (!s.is_family()) return concrete_.at(s.id).name;
  return families_.at(s.id).name + "_" + std::to_string(s.index);
}

std::string TransitionGraph::display(const SymbolRef& s) const {
  if (!s.is_family()) return concrete_.at(s.id).display;
  return families_.at(s.id).display + subscript(s.index);
}

std::optional<std::size_t> TransitionGraph::find_family(std::string_view n) const {
  for (std::size_t i = 0; i < families_.size(); ++i)
    if (families_[i].name == n || families_[i].display == n) return i;
  return std::nullopt;
}

std::optional<std::size_t> TransitionGraph::find_concrete(std::string_view n) const {
  for (std::size_t i = 0; i < concrete_.size(); ++i)
    if (concrete_[i].name == n || concrete_[i].display == n) return i;
  return std::nullopt;
}

namespace {

// Strips a trailing run of Unicode subscript digits; returns the index.
std::optional<long> strip_subscript(std::string& s) {
  static const std::string digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string tail;
  bool any = false;
  for (;;) {
    bool hit = false;
    for (int d = 0; d < 10; ++d)
      if (s.size() >= digits[d].size() && s.ends_with(digits[d])) {
        tail.insert(tail.begin(), static_cast<char>('0' + d));
        s.erase(s.size() - digits[d].size());
        hit = any = true;
        break;
      }
    if (!hit) break;
  }
  if (!any) return std::nullopt;
  return std::stol(tail);
}

}  // namespace

SymbolRef TransitionGraph::parse_symbol(std::string_view text) const {
  std::string t(text);
  if (auto c = find_concrete(t)) return SymbolRef::concrete(*c);
  auto us = t.rfind('_');
  if (us != std::string::npos && us + 1 < t.size() &&
      std::all_of(t.begin() + static_cast<long>(us) + 1, t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (auto f = find_family(t.substr(0, us))) {
      SymbolRef s = SymbolRef::member(*f, std::stol(t.substr(us + 1)));
      if (valid(s)) return s;
    }
  }
  std::string base = t;
  if (auto n = strip_subscript(base))
    if (auto f = find_family(base)) {
      SymbolRef s = SymbolRef::member(*f, *n);
      if (valid(s)) return s;
    }
  throw ParseError("unknown symbol: " + t);
}

namespace {

// Per-family index pattern of a set of symbols inside a truncation at `bound`:
// maximal runs, where a run ending within `margin` of the bound is read as
// co-finite.
std::vector<IndexRange> pattern(const std::vector<long>& idx, long bound) {
  long margin = std::max<long>(2, bound / 4);
  std::vector<IndexRange> runs;
  for (long n : idx) {
    if (!runs.empty() && runs.back().hi + 1 == n)
      runs.back().hi = n;
    else
      runs.push_back({n, n});
  }
  for (auto& r : runs)
    if (r.hi > bound - margin) r.hi = kUnbounded;
  return runs;
}

struct ComponentShape {
  std::set<std::size_t> concrete;
  std::map<std::size_t, std::vector<IndexRange>> families;
  bool operator==(const ComponentShape&) const = default;
};

ComponentShape component_shape(const TransitionGraph& g, const SymbolRef& seed, long bound) {
  TruncatedGraph t = g.truncate(bound);
  auto it = t.position.find(seed);
  if (it == t.position.end()) throw Error("seed symbol outside the truncation");
  ComponentShape shape;
  for (const auto& comp : t.components()) {
    if (std::find(comp.begin(), comp.end(), it->second) == comp.end()) continue;
    // A lone node without a self-loop is its own (trivial) component.
    std::map<std::size_t, std::vector<long>> idx;
    for (std::size_t u : comp) {
      const SymbolRef& s = t.nodes[u];
      if (s.is_family())
        idx[s.id].push_back(s.index);
      else
        shape.concrete.insert(s.id);
    }
    for (auto& [f, v] : idx) {
      std::sort(v.begin(), v.end());
      shape.families[f] = pattern(v, bound);
    }
  }
  return shape;
}

std::string describe(const TransitionGraph& g, const ComponentShape& s) {
  std::string out = "{";
  for (std::size_t c : s.concrete) out += g.concrete()[c].name + " ";
  for (const auto& [f, rs] : s.families)
    out += g.families()[f].name + IndexSet(rs).to_string() + " ";
  return out + "}";
}

}  // namespace

TransitionGraph irreducible_component(const TransitionGraph& g, const SymbolRef& seed, long probe_bound) {
  if (!g.valid(seed)) throw Error("irreducible_component: unknown seed");
  long bound = std::max(probe_bound, seed.is_family() ? seed.index : 1);
  ComponentShape a = component_shape(g, seed, bound);
  ComponentShape b = component_shape(g, seed, 2 * bound);
  if (!(a == b))
    throw Error("inconclusive component pattern: bound " + std::to_string(bound) + " gives " + describe(g, a) +
                ", bound " + std::to_string(2 * bound) + " gives " + describe(g, b));

  TransitionGraph out;
  std::map<std::size_t, std::size_t> cmap, fmap;
  for (std::size_t c : a.concrete) cmap[c] = out.add_concrete(g.concrete()[c].name, g.concrete()[c].display);
  for (const auto& [f, rs] : a.families) {
    IndexSet dom = g.families()[f].domain.intersect(IndexSet(rs));
    fmap[f] = out.add_family(g.families()[f].name, g.families()[f].display, dom);
  }
  for (const auto& r : g.rules()) {
    bool src_family = r.source_kind == SymbolRef::Kind::Family;
    if (src_family ? !fmap.contains(r.source_id) : !cmap.contains(r.source_id)) continue;
    bool tgt_concrete = r.target.kind == TargetPattern::Kind::Concrete;
    if (tgt_concrete ? !cmap.contains(r.target.id) : !fmap.contains(r.target.id)) continue;
    std::size_t src_id = src_family ? fmap[r.source_id] : cmap[r.source_id];
    std::size_t tgt_id = tgt_concrete ? cmap[r.target.id] : fmap[r.target.id];
    IndexSet src = src_family ? out.families()[src_id].domain.intersect(r.source_range) : IndexSet({IndexRange{}});

    switch (r.target.kind) {
      case TargetPattern::Kind::Concrete:
      case TargetPattern::Kind::Range: {
        EdgeRule nr = r;
        nr.source_id = src_id;
        nr.target.id = tgt_id;
        if (r.target.kind == TargetPattern::Kind::Range &&
            out.families()[tgt_id].domain.intersect(r.target.range).empty())
          break;
        if (!src_family) {
          out.add_rule(nr);
          break;
        }
        for (const auto& piece : src.ranges()) {
          nr.source_range = piece;
          out.add_rule(nr);
        }
        break;
      }
      case TargetPattern::Kind::Shift: {
        if (!src_family) break;  // shifts need an indexed source
        IndexSet ok = src.intersect(out.families()[tgt_id].domain.preimage_of_shift(r.target.shift));
        for (const auto& piece : ok.ranges()) {
          EdgeRule nr = r;
          nr.source_id = src_id;
          nr.target.id = tgt_id;
          nr.source_range = piece;
          out.add_rule(nr);
        }
        break;
      }
    }
  }
  return out;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const TransitionGraph& g, long bound, bool unicode) {
  TruncatedGraph t = g.truncate(bound);
  std::ostringstream os;
  os << "digraph truncation {\n  rankdir=LR;\n";
  for (const auto& s : t.nodes)
    os << "  " << quote(g.name(s)) << " [label=" << quote(unicode ? g.display(s) : g.name(s)) << "];\n";
  for (std::size_t u = 0; u < t.nodes.size(); ++u)
    for (std::size_t v : t.adj[u]) os << "  " << quote(g.name(t.nodes[u])) << " -> " << quote(g.name(t.nodes[v])) << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot_portrait(const TransitionGraph& g, bool unicode) {
  std::ostringstream os;
  os << "digraph portrait {\n  rankdir=LR;\n";
  auto label = [&](bool family, std::size_t id) {
    if (family) return unicode ? g.families()[id].display + "_n" : g.families()[id].name + "_n";
    return unicode ? g.concrete()[id].display : g.concrete()[id].name;
  };
  auto key = [&](bool family, std::size_t id) {
    return family ? g.families()[id].name + "_n" : g.concrete()[id].name;
  };
  for (std::size_t i = 0; i < g.concrete().size(); ++i)
    os << "  " << quote(key(false, i)) << " [shape=box,label=" << quote(label(false, i)) << "];\n";
  for (std::size_t i = 0; i < g.families().size(); ++i)
    os << "  " << quote(key(true, i)) << " [shape=ellipse,label="
       << quote(label(true, i) + " " + g.families()[i].domain.to_string()) << "];\n";
  for (const auto& r : g.rules()) {
    bool sf = r.source_kind == SymbolRef::Kind::Family;
    std::string edge_label;
    if (sf) edge_label = "n in " + r.source_range.to_string();
    if (r.target.kind == TargetPattern::Kind::Shift)
      edge_label += std::string(edge_label.empty() ? "" : ", ") + "n -> n" +
                    (r.target.shift >= 0 ? "+" : "") + std::to_string(r.target.shift);
    if (r.target.kind == TargetPattern::Kind::Range)
      edge_label += std::string(edge_label.empty() ? "" : ", ") + "all m in " + r.target.range.to_string();
    os << "  " << quote(key(sf, r.source_id)) << " -> "
       << quote(key(r.target.kind != TargetPattern::Kind::Concrete, r.target.id));
    if (!edge_label.empty()) os << " [label=" << quote(edge_label) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace padic
