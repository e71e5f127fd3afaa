#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padic/disk.hpp"
#include "padic/family.hpp"
#include "padic/orbit.hpp"
#include "padic/rational_map.hpp"
#include "padic/transition_graph.hpp"

namespace padic {

struct SingletonSymbol {
  std::string name;
  std::string display;
  ProjectivePoint point;
};

struct IsolatedDisk {
  std::string name;
  std::string display;
  Disk disk;
};

// An indexed family n -> template.disk(n), n in domain.
struct FamilySymbol {
  std::string name;
  std::string display;
  FamilyTemplate tmpl;
  IndexSet domain = IndexSet::all_from(1);
  // v(f') on the member disk, when it is affine in n.
  std::optional<AffineForm> ratio_exp;
};

// Symbols of a Markov partition of the Julia set.  Concrete graph nodes are
// the singletons followed by the isolated disks; graph families are in the
// same order as `families`.
struct PartitionModel {
  unsigned long prime = 2;
  // The partition is for the iterate f^iterate (1 for prefixed maps).
  unsigned iterate = 1;
  std::vector<SingletonSymbol> singletons;
  std::vector<IsolatedDisk> isolated;
  std::vector<FamilySymbol> families;
  std::vector<Disk> julia_region;
  BasinCertificates basins;
  TransitionGraph graph;
  std::vector<std::string> notes;

  SymbolRef singleton_ref(std::size_t i) const { return SymbolRef::concrete(i); }
  SymbolRef isolated_ref(std::size_t i) const { return SymbolRef::concrete(singletons.size() + i); }
  bool is_singleton(const SymbolRef& s) const { return !s.is_family() && s.id < singletons.size(); }
  // The disk (or point) underlying a symbol.
  Disk disk_of(const SymbolRef& s) const;
  std::string name(const SymbolRef& s) const { return graph.name(s); }
  std::string display(const SymbolRef& s) const { return graph.display(s); }
  std::size_t concrete_count() const { return singletons.size() + isolated.size(); }
  // Rebuild graph nodes (not rules) from the symbol lists.
  void rebuild_nodes();
};

struct BuildOptions {
  long depth = 40;         // refinement depth around special points
  long margin = 10;        // levels near the depth that are ignored
  long max_period = 6;     // longest level period searched for
  long n_check = 12;       // members checked concretely per family
  OrbitOptions orbit;
};

// The map the partition is built for (f itself, or the iterate).
RationalMap partition_map(const PartitionModel& model, const RationalMap& f);

PartitionModel build_partition(const RationalMap& f, const BuildOptions& opts = {});

// Successor rules derived from the images of the symbols (replaces the rules
// of model.graph).
void infer_transitions(PartitionModel& model, const RationalMap& f, const BuildOptions& opts = {});

struct CompatibilityFailure {
  std::string symbol;
  std::string what;
};

struct CompatibilityReport {
  std::vector<CompatibilityFailure> failures;
  std::vector<std::string> notes;
  std::size_t concrete_checks = 0;
  std::size_t symbolic_checks = 0;
  bool ok() const { return failures.empty(); }
};

// Images of singletons, isolated disks and family members (n <= n_check
// concretely, every n symbolically for single-target shift rules) against the
// declared successors.
CompatibilityReport check_compatibility(const PartitionModel& model, const RationalMap& f,
                                        const BuildOptions& opts = {});

// The symbol containing x, if any.
std::optional<SymbolRef> lookup(const PartitionModel& model, const PadicNumber& x);
std::optional<SymbolRef> lookup(const PartitionModel& model, const ProjectivePoint& x);
// The symbol whose disk contains the whole ball (nullopt when the ball meets
// several symbols, a singleton, or lies outside all of them).
std::optional<SymbolRef> lookup_ball(const PartitionModel& model, const Disk& ball);

// Successor set of the ball f(symbol) read off the model.
struct Decomposition {
  SuccessorSet successors;
  std::vector<std::string> problems;  // partial overlaps, uncovered Julia parts
};
Decomposition decompose(const PartitionModel& model, const RationalMap& g, const Disk& image, long depth_slack = 12);

struct CodeSequence {
  std::vector<SymbolRef> symbols;
  std::size_t horizon = 0;
  std::size_t exact_steps = 0;  // steps computed by exact iteration
};

struct CodeOptions {
  std::size_t exact_bits = 4096;  // switch to disk arithmetic above this size
};

CodeSequence code_point(const PartitionModel& model, const RationalMap& f, const PadicNumber& x, std::size_t length,
                        const CodeOptions& opts = {});

// prefix followed by period repeated forever (period non-empty).
struct InfiniteWord {
  std::vector<SymbolRef> prefix;
  std::vector<SymbolRef> period;

  SymbolRef at(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()];
  }
};

struct DecodeResult {
  PadicNumber value;
  bool exact = false;
  long precision = 0;      // value is the center of a ball of this radius exponent
  std::size_t symbols_used = 0;
};

DecodeResult decode_word(const PartitionModel& model, const RationalMap& f, const InfiniteWord& word,
                         long precision_exp, std::size_t max_symbols = 4096);

// Residue balls of radius `level` that meet the points whose first `level`
// iterates stay in the Julia region.
std::vector<Disk> julia_residues(const PartitionModel& model, const RationalMap& f, long level);

}  // namespace padic
