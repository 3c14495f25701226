#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftseq/bitset.hpp"
#include "shiftseq/errors.hpp"

namespace shiftseq {

using Vertex = std::uint32_t;
using LabelId = std::uint32_t;

// Edge label. Opaque nonempty string, compared by exact equality.
class Label {
public:
  explicit Label(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw InvalidGraphError("empty edge label");
  }

  const std::string& str() const { return text_; }

  friend auto operator<=>(const Label&, const Label&) = default;

  struct Hash {
    std::size_t operator()(const Label& l) const {
      return std::hash<std::string>{}(l.text_);
    }
  };

private:
  std::string text_;
};

// A word is a finite sequence of labels.
using Word = std::vector<Label>;

// Parses "p,b,a,a,c_1" into a Word. Single-character convenience: a string
// without commas is split into one-character labels.
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

struct Edge {
  Vertex from;
  Label label;
  Vertex to;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Finite directed multigraph with labeled edges, the presentation of a sofic
// shift. Parallel edges with distinct labels are allowed; exact duplicate
// (from,label,to) triples are rejected. Edges are kept sorted by
// (from,label,to) so serialization is canonical.
class LabeledGraph {
public:
  LabeledGraph(std::uint32_t vertex_count, std::vector<Edge> edges);

  std::uint32_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Sorted distinct labels occurring on edges.
  const std::vector<Label>& alphabet() const { return alphabet_; }
  std::uint32_t label_count() const {
    return static_cast<std::uint32_t>(alphabet_.size());
  }
  std::optional<LabelId> label_id(const Label& l) const;
  const Label& label_at(LabelId id) const { return alphabet_[id]; }

  // Vertices reachable from v by one edge labeled `l` (and the reverse).
  const Bitset& targets_of(Vertex v, LabelId l) const {
    return succ_[l][v];
  }
  const Bitset& sources_of(Vertex v, LabelId l) const {
    return pred_[l][v];
  }

  Bitset forward_image(const Bitset& set, LabelId l) const;
  Bitset backward_image(const Bitset& set, LabelId l) const;

  bool has_edge(Vertex from, const Label& l, Vertex to) const;
  bool is_essential() const;

  // Same graph with every edge reversed.
  LabeledGraph reversed() const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

private:
  std::uint32_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Label> alphabet_;
  std::unordered_map<Label, LabelId, Label::Hash> label_ids_;
  std::vector<std::vector<Bitset>> succ_;  // [label][vertex] -> target set
  std::vector<std::vector<Bitset>> pred_;  // [label][vertex] -> source set
};

// Maximal subgraph in which every vertex has an outgoing and an incoming
// edge, with vertex indices re-packed in ascending order. Idempotent.
// Throws EmptyShift when nothing survives. When `removed` is non-null it
// receives the deleted vertices (original indices, ascending), and
// `old_to_new` (when non-null) the index mapping for survivors.
LabeledGraph trim_to_essential(const LabeledGraph& g,
                               std::vector<Vertex>* removed = nullptr,
                               std::vector<std::optional<Vertex>>* old_to_new = nullptr);

inline LabeledGraph validate_essential(const LabeledGraph& g) {
  return trim_to_essential(g);
}

// Structural predicates. All of them require an essential graph.
bool is_right_resolving(const LabeledGraph& g);
bool is_left_resolving(const LabeledGraph& g);
bool is_irreducible(const LabeledGraph& g);

// Least N such that every ordered vertex pair is joined by a path of every
// length >= N; absent when the graph is not primitive. Certified by boolean
// matrix iteration up to the Wielandt bound (V-1)^2 + 1.
std::optional<std::uint32_t> primitivity_distance(const LabeledGraph& g);

struct SyncStatus {
  bool right = false;
  bool left = false;

  bool bi() const { return right && left; }

  friend bool operator==(const SyncStatus&, const SyncStatus&) = default;
};

// right <=> all paths labeled w end at one vertex; left <=> they all start
// at one vertex. Throws WordNotInLanguage when no path is labeled w.
SyncStatus synchronizing_status(const LabeledGraph& g, const Word& w);

// Set of terminal (resp. initial) vertices of paths labeled w. Empty when w
// is not in the language.
Bitset terminal_set(const LabeledGraph& g, const Word& w);
Bitset initial_set(const LabeledGraph& g, const Word& w);

struct SyncLoop {
  Vertex vertex;
  Label label;

  friend bool operator==(const SyncLoop&, const SyncLoop&) = default;
};

// A presentation together with an optional designated self-loop carrying a
// bi-synchronizing letter, plus a free-form record of how it was built.
struct PresentedShift {
  LabeledGraph graph;
  std::optional<SyncLoop> sync_loop;
  std::string provenance;
};

// Checks the sync_loop invariant: the edge exists, is a self-loop, and its
// letter is bi-synchronizing. Throws InvalidGraph on violation.
void validate_presented(const PresentedShift& shift);

// Trims the underlying graph and remaps the sync loop. Throws InvalidGraph
// if the designated sync vertex is trimmed away.
PresentedShift trim_shift(const PresentedShift& shift,
                          std::vector<Vertex>* removed = nullptr);

void require_essential(const LabeledGraph& g);

}  // namespace shiftseq
