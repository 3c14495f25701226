#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftseq/graph.hpp"

namespace shiftseq {

enum class Quantity { follower, extender };

std::string quantity_name(Quantity q);

struct EngineOptions {
  // Hard cap on the number of distinct subset states / pair relations the
  // closures may hold. Exceeding it raises ClosureBudgetExceeded.
  std::uint64_t closure_budget = 1'000'000;
};

constexpr std::uint32_t kDeadState = std::numeric_limits<std::uint32_t>::max();

// Deterministic subset automaton obtained from the subset construction:
// states are the nonempty vertex sets reachable from the full set V, and
// classes are right-language equivalence classes (Moore refinement against a
// single dead class).
struct SubsetSpace {
  std::vector<Bitset> states;                            // discovery (BFS) order, [0] = V
  std::unordered_map<Bitset, std::uint32_t, Bitset::Hash> ids;
  std::vector<std::vector<std::uint32_t>> step;          // [state][label], kDeadState if empty
  std::vector<std::uint32_t> cls;                        // class per state
  std::uint32_t class_count = 0;

  std::optional<std::uint32_t> id_of(const Bitset& s) const {
    auto it = ids.find(s);
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }
};

SubsetSpace build_forward_subsets(const LabeledGraph& g, const EngineOptions& opts = {});
SubsetSpace build_backward_subsets(const LabeledGraph& g, const EngineOptions& opts = {});

// Reachable pair relations P(w) (bitsets of V*V bits, row-major), classified
// by their extension signature: two relations are equivalent iff they hit
// exactly the same rectangles A x B with A in the forward closure and B in
// the backward closure.
struct RelationSpace {
  std::uint32_t vertex_count = 0;
  std::vector<Bitset> states;                            // [0] = identity relation
  std::unordered_map<Bitset, std::uint32_t, Bitset::Hash> ids;
  std::vector<std::vector<std::uint32_t>> step;
  std::vector<std::uint32_t> cls;
  std::uint32_t class_count = 0;       // classes over all reachable relations
  std::uint32_t word_class_count = 0;  // classes realized by nonempty words

  std::optional<std::uint32_t> id_of(const Bitset& r) const {
    auto it = ids.find(r);
    if (it == ids.end()) return std::nullopt;
    return it->second;
  }
};

Bitset identity_relation(std::uint32_t vertex_count);
Bitset compose_relation(const LabeledGraph& g, const Bitset& relation, LabelId l);

RelationSpace build_relations(const LabeledGraph& g, const SubsetSpace& forward,
                              const SubsetSpace& backward,
                              const EngineOptions& opts = {});

// Global classification of subset states and pair relations.
struct EquivalenceIndex {
  SubsetSpace forward;
  SubsetSpace backward;
  RelationSpace relations;

  const std::vector<Bitset>& forward_closure() const { return forward.states; }
  const std::vector<Bitset>& backward_closure() const { return backward.states; }

  std::optional<std::uint32_t> subset_class(const Bitset& s) const;
  std::optional<std::uint32_t> relation_class(const Bitset& r) const;
};

EquivalenceIndex classify(const LabeledGraph& g, const EngineOptions& opts = {});

// The family of all tau(w) (resp. iota(w)) subsets, in discovery order with
// the full vertex set first.
std::vector<Bitset> forward_subset_closure(const LabeledGraph& g,
                                           const EngineOptions& opts = {});
std::vector<Bitset> backward_subset_closure(const LabeledGraph& g,
                                            const EngineOptions& opts = {});

struct PeriodicityInfo {
  bool certified = false;
  // Layer-orbit values: the layer family at length l equals the one at
  // l + period for every l >= preperiod. Valid only when certified.
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  // Minimal values for the count sequence itself; count_period divides the
  // layer period.
  std::uint64_t count_preperiod = 0;
  std::uint64_t count_period = 0;
};

struct SequenceReport {
  Quantity quantity = Quantity::follower;
  std::vector<std::uint64_t> counts;  // counts[i] = value at length i + 1
  bool certified = false;
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  std::uint64_t count_preperiod = 0;
  std::uint64_t count_period = 0;
  std::uint64_t liminf = 0;
  std::uint64_t limsup = 0;

  std::uint64_t at(std::uint64_t length) const { return counts.at(length - 1); }
};

// Layer-by-layer computation of one count sequence. Layers evolve by a
// deterministic self-map of state families, so the first recurrence of a
// layer certifies exact eventual periodicity; lengths past the recurrence
// are folded into the cycle instead of being recomputed.
class SequenceAnalyzer {
public:
  SequenceAnalyzer(const LabeledGraph& g, Quantity quantity,
                   EngineOptions opts = {});

  const LabeledGraph& graph() const { return graph_; }
  Quantity quantity() const { return quantity_; }
  // For follower analyzers only the forward space is populated.
  const EquivalenceIndex& index() const { return *index_; }

  // Ensures layers for all lengths <= lmax are available (directly or via
  // the certified cycle).
  void advance_to(std::uint64_t lmax);

  bool recurrence_found() const { return recurrence_found_; }
  std::uint64_t layer_preperiod() const { return mu_; }
  std::uint64_t layer_period() const { return lambda_; }

  std::uint64_t count_at(std::uint64_t length);
  // Sorted distinct class ids present in the layer at `length`.
  const std::vector<std::uint32_t>& layer_classes(std::uint64_t length);

  PeriodicityInfo periodicity(std::uint64_t lmax);
  SequenceReport report(std::uint64_t lmax);

  // Layer-class containment: classes(l) included in classes(l + k) for every
  // l in [lo, hi].
  bool nested_growth(std::uint64_t k, std::uint64_t lo, std::uint64_t hi);

private:
  std::uint64_t stored_index(std::uint64_t length);
  void advance_one();

  LabeledGraph graph_;
  Quantity quantity_;
  EngineOptions opts_;
  std::shared_ptr<EquivalenceIndex> index_;

  // Step table and class array of the active space.
  const std::vector<std::vector<std::uint32_t>>* step_ = nullptr;
  const std::vector<std::uint32_t>* state_cls_ = nullptr;

  std::vector<std::vector<std::uint32_t>> layers_;        // sorted state ids
  std::vector<std::vector<std::uint32_t>> layer_classes_; // sorted class ids
  std::unordered_map<std::string, std::uint64_t> seen_;   // packed layer -> index
  bool recurrence_found_ = false;
  std::uint64_t mu_ = 0;
  std::uint64_t lambda_ = 0;
};

SequenceReport follower_sequence(const PresentedShift& shift, std::uint64_t lmax,
                                 const EngineOptions& opts = {});
SequenceReport extender_sequence(const PresentedShift& shift, std::uint64_t lmax,
                                 const EngineOptions& opts = {});

PeriodicityInfo detect_periodicity(const LabeledGraph& g, Quantity quantity,
                                   std::uint64_t lmax, const EngineOptions& opts = {});

bool verify_nested_growth(const PresentedShift& shift, Quantity quantity,
                          std::uint64_t k, std::uint64_t lo, std::uint64_t hi,
                          const EngineOptions& opts = {});

struct PumpDecomposition {
  Word x, y, z;
};

// Splits w = xyz with |y| >= 1 such that x y^i z keeps the extender class of
// w; found by scanning prefixes for the first repeated relation class and
// verified for i in {0,1,2,3}. Requires |w| >= p where p is one more than
// the number of relation classes realized by nonempty words.
PumpDecomposition pump_decomposition(const PresentedShift& shift, const Word& w,
                                     const EngineOptions& opts = {});

struct WordClasses {
  std::uint32_t follower_class = 0;
  std::uint32_t extender_class = 0;
};

WordClasses word_class(const PresentedShift& shift, const Word& w,
                       const EngineOptions& opts = {});

// Exact right-language equivalence of two vertex sets, decided by searching
// the product of subset runs for an emptiness mismatch.
bool right_language_equivalent(const LabeledGraph& g, const Bitset& a,
                               const Bitset& b, const EngineOptions& opts = {});

// No two distinct vertices have the same follower behavior.
bool is_follower_separated(const LabeledGraph& g, const EngineOptions& opts = {});
// No two distinct path-connected vertex pairs share an extension signature.
bool is_extender_separated(const LabeledGraph& g, const EngineOptions& opts = {});

// Serialization of reports (documented schema) and CSV/table rendering.
std::string report_to_json(const SequenceReport& report);
std::string report_to_csv(const SequenceReport& report);
std::string report_render(const SequenceReport& report);

}  // namespace shiftseq
