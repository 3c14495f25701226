#include "shiftseq/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace shiftseq {

Word parse_word(const std::string& text) {
  Word w;
  if (text.empty()) return w;
  if (text.find(',') == std::string::npos && text.size() > 1) {
    bool multi = false;
    for (char c : text)
      if (c == '_' || c == '#') multi = true;
    if (!multi) {
      for (char c : text) w.emplace_back(std::string(1, c));
      return w;
    }
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) w.emplace_back(item);
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += w[i].str();
  }
  return out;
}

LabeledGraph::LabeledGraph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.from >= vertex_count_ || e.to >= vertex_count_)
      throw InvalidGraphError("edge endpoint out of range: " +
                              std::to_string(e.from) + " -" + e.label.str() +
                              "-> " + std::to_string(e.to));
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1])
      throw InvalidGraphError("duplicate edge " + std::to_string(edges_[i].from) +
                              " -" + edges_[i].label.str() + "-> " +
                              std::to_string(edges_[i].to));
  }
  for (const Edge& e : edges_) {
    if (label_ids_.emplace(e.label, 0).second) alphabet_.push_back(e.label);
  }
  std::sort(alphabet_.begin(), alphabet_.end());
  for (LabelId i = 0; i < alphabet_.size(); ++i) label_ids_[alphabet_[i]] = i;

  succ_.assign(alphabet_.size(), std::vector<Bitset>(vertex_count_, Bitset(vertex_count_)));
  pred_.assign(alphabet_.size(), std::vector<Bitset>(vertex_count_, Bitset(vertex_count_)));
  for (const Edge& e : edges_) {
    LabelId l = label_ids_.at(e.label);
    succ_[l][e.from].set(e.to);
    pred_[l][e.to].set(e.from);
  }
}

std::optional<LabelId> LabeledGraph::label_id(const Label& l) const {
  auto it = label_ids_.find(l);
  if (it == label_ids_.end()) return std::nullopt;
  return it->second;
}

Bitset LabeledGraph::forward_image(const Bitset& set, LabelId l) const {
  Bitset out(vertex_count_);
  set.for_each([&](Vertex v) { out |= succ_[l][v]; });
  return out;
}

Bitset LabeledGraph::backward_image(const Bitset& set, LabelId l) const {
  Bitset out(vertex_count_);
  set.for_each([&](Vertex v) { out |= pred_[l][v]; });
  return out;
}

bool LabeledGraph::has_edge(Vertex from, const Label& l, Vertex to) const {
  auto id = label_id(l);
  return id && from < vertex_count_ && to < vertex_count_ &&
         succ_[*id][from].test(to);
}

bool LabeledGraph::is_essential() const {
  if (vertex_count_ == 0) return false;
  std::vector<bool> has_out(vertex_count_, false), has_in(vertex_count_, false);
  for (const Edge& e : edges_) {
    has_out[e.from] = true;
    has_in[e.to] = true;
  }
  for (Vertex v = 0; v < vertex_count_; ++v)
    if (!has_out[v] || !has_in[v]) return false;
  return true;
}

LabeledGraph LabeledGraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const Edge& e : edges_) rev.push_back({e.to, e.label, e.from});
  return LabeledGraph(vertex_count_, std::move(rev));
}

LabeledGraph trim_to_essential(const LabeledGraph& g, std::vector<Vertex>* removed,
                               std::vector<std::optional<Vertex>>* old_to_new) {
  std::uint32_t n = g.vertex_count();
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint32_t> out(n, 0), in(n, 0);
    for (const Edge& e : g.edges()) {
      if (alive[e.from] && alive[e.to]) {
        ++out[e.from];
        ++in[e.to];
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && (out[v] == 0 || in[v] == 0)) {
        alive[v] = false;
        changed = true;
      }
    }
  }

  std::vector<std::optional<Vertex>> remap(n);
  std::uint32_t kept = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v]) {
      remap[v] = kept++;
    } else if (removed) {
      removed->push_back(v);
    }
  }
  if (old_to_new) *old_to_new = remap;
  if (kept == 0) throw EmptyShiftError("no bi-infinite walk survives trimming");

  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (remap[e.from] && remap[e.to])
      edges.push_back({*remap[e.from], e.label, *remap[e.to]});
  return LabeledGraph(kept, std::move(edges));
}

void require_essential(const LabeledGraph& g) {
  if (!g.is_essential())
    throw InvalidGraphError("analysis requires an essential graph; trim first");
}

bool is_right_resolving(const LabeledGraph& g) {
  // Edges are sorted by (from, label, to): duplicate (from, label) pairs are
  // adjacent.
  const auto& es = g.edges();
  for (std::size_t i = 1; i < es.size(); ++i)
    if (es[i].from == es[i - 1].from && es[i].label == es[i - 1].label)
      return false;
  return true;
}

bool is_left_resolving(const LabeledGraph& g) {
  std::vector<std::pair<Vertex, Label>> in;
  in.reserve(g.edges().size());
  for (const Edge& e : g.edges()) in.emplace_back(e.to, e.label);
  std::sort(in.begin(), in.end());
  return std::adjacent_find(in.begin(), in.end()) == in.end();
}

namespace {

Bitset reach(const std::vector<Bitset>& adj, Vertex start) {
  std::uint32_t n = static_cast<std::uint32_t>(adj.size());
  Bitset seen(n);
  seen.set(start);
  std::deque<Vertex> queue{start};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    adj[v].for_each([&](Vertex w) {
      if (!seen.test(w)) {
        seen.set(w);
        queue.push_back(w);
      }
    });
  }
  return seen;
}

std::vector<Bitset> label_blind_adjacency(const LabeledGraph& g, bool forward) {
  std::vector<Bitset> adj(g.vertex_count(), Bitset(g.vertex_count()));
  for (const Edge& e : g.edges()) {
    if (forward)
      adj[e.from].set(e.to);
    else
      adj[e.to].set(e.from);
  }
  return adj;
}

}  // namespace

bool is_irreducible(const LabeledGraph& g) {
  require_essential(g);
  std::uint32_t n = g.vertex_count();
  return reach(label_blind_adjacency(g, true), 0).count() == n &&
         reach(label_blind_adjacency(g, false), 0).count() == n;
}

std::optional<std::uint32_t> primitivity_distance(const LabeledGraph& g) {
  require_essential(g);
  std::uint32_t n = g.vertex_count();
  std::vector<Bitset> adj = label_blind_adjacency(g, true);
  std::vector<Bitset> cur = adj;
  auto all_ones = [&](const std::vector<Bitset>& m) {
    for (const Bitset& row : m)
      if (row.count() != n) return false;
    return true;
  };
  // Primitive matrices reach all-ones within the Wielandt bound; essential
  // graphs then stay there.
  std::uint64_t cap = static_cast<std::uint64_t>(n - 1) * (n - 1) + 1;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (all_ones(cur)) return static_cast<std::uint32_t>(k);
    std::vector<Bitset> next(n, Bitset(n));
    for (Vertex i = 0; i < n; ++i)
      cur[i].for_each([&](Vertex j) { next[i] |= adj[j]; });
    cur = std::move(next);
  }
  return std::nullopt;
}

Bitset terminal_set(const LabeledGraph& g, const Word& w) {
  Bitset cur = Bitset::all(g.vertex_count());
  for (const Label& l : w) {
    auto id = g.label_id(l);
    if (!id) return Bitset(g.vertex_count());
    cur = g.forward_image(cur, *id);
    if (cur.none()) return cur;
  }
  return cur;
}

Bitset initial_set(const LabeledGraph& g, const Word& w) {
  Bitset cur = Bitset::all(g.vertex_count());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto id = g.label_id(*it);
    if (!id) return Bitset(g.vertex_count());
    cur = g.backward_image(cur, *id);
    if (cur.none()) return cur;
  }
  return cur;
}

SyncStatus synchronizing_status(const LabeledGraph& g, const Word& w) {
  require_essential(g);
  Bitset tau = terminal_set(g, w);
  if (tau.none())
    throw WordNotInLanguageError("no path labeled " + word_to_string(w));
  Bitset iota = initial_set(g, w);
  return SyncStatus{tau.count() == 1, iota.count() == 1};
}

void validate_presented(const PresentedShift& shift) {
  if (!shift.sync_loop) return;
  const SyncLoop& sl = *shift.sync_loop;
  if (!shift.graph.has_edge(sl.vertex, sl.label, sl.vertex))
    throw InvalidGraphError("sync_loop edge " + std::to_string(sl.vertex) + " -" +
                            sl.label.str() + "-> " + std::to_string(sl.vertex) +
                            " is not a self-loop of the graph");
  if (!synchronizing_status(shift.graph, {sl.label}).bi())
    throw InvalidGraphError("sync_loop letter " + sl.label.str() +
                            " is not bi-synchronizing");
}

PresentedShift trim_shift(const PresentedShift& shift, std::vector<Vertex>* removed) {
  std::vector<std::optional<Vertex>> remap;
  LabeledGraph trimmed = trim_to_essential(shift.graph, removed, &remap);
  std::optional<SyncLoop> loop = shift.sync_loop;
  if (loop) {
    if (!remap[loop->vertex])
      throw InvalidGraphError("sync_loop vertex was trimmed away");
    loop->vertex = *remap[loop->vertex];
  }
  PresentedShift out{std::move(trimmed), std::move(loop), shift.provenance};
  validate_presented(out);
  return out;
}

}  // namespace shiftseq
