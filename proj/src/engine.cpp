#include "shiftseq/engine.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <unordered_set>

namespace shiftseq {

std::string quantity_name(Quantity q) {
  return q == Quantity::follower ? "follower" : "extender";
}

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

std::string pack_ids(const std::vector<std::uint32_t>& ids) {
  std::string out;
  out.reserve(ids.size() * 4);
  for (std::uint32_t v : ids) append_u32(out, v);
  return out;
}

// Coarsest partition separating dead from live and refined under all label
// transitions (Moore fixed point). `step` entries use kDeadState for the
// dead sink.
std::pair<std::vector<std::uint32_t>, std::uint32_t> refine_language_classes(
    const std::vector<std::vector<std::uint32_t>>& step, std::uint32_t label_count) {
  std::size_t n = step.size();
  std::vector<std::uint32_t> cls(n, 0);
  std::uint32_t count = n == 0 ? 0 : 1;
  for (;;) {
    std::unordered_map<std::string, std::uint32_t> sig_ids;
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::string key;
      key.reserve((label_count + 1) * 4);
      append_u32(key, cls[i]);
      for (std::uint32_t l = 0; l < label_count; ++l) {
        std::uint32_t t = step[i][l];
        append_u32(key, t == kDeadState ? kDeadState : cls[t]);
      }
      auto [it, fresh] = sig_ids.emplace(std::move(key),
                                         static_cast<std::uint32_t>(sig_ids.size()));
      (void)fresh;
      next[i] = it->second;
    }
    std::uint32_t new_count = static_cast<std::uint32_t>(sig_ids.size());
    cls = std::move(next);
    if (new_count == count) return {cls, count};
    count = new_count;
  }
}

SubsetSpace build_subsets_impl(const LabeledGraph& g, bool forward,
                               const EngineOptions& opts) {
  require_essential(g);
  SubsetSpace s;
  Bitset root = Bitset::all(g.vertex_count());
  s.ids.emplace(root, 0);
  s.states.push_back(std::move(root));
  for (std::uint32_t qi = 0; qi < s.states.size(); ++qi) {
    s.step.emplace_back(g.label_count(), kDeadState);
    for (LabelId l = 0; l < g.label_count(); ++l) {
      Bitset img = forward ? g.forward_image(s.states[qi], l)
                           : g.backward_image(s.states[qi], l);
      if (img.none()) continue;
      auto it = s.ids.find(img);
      if (it == s.ids.end()) {
        if (s.states.size() >= opts.closure_budget)
          throw ClosureBudgetError("subset closure exceeds " +
                                   std::to_string(opts.closure_budget) + " states");
        std::uint32_t id = static_cast<std::uint32_t>(s.states.size());
        it = s.ids.emplace(img, id).first;
        s.states.push_back(std::move(img));
      }
      s.step[qi][l] = it->second;
    }
  }
  auto [cls, count] = refine_language_classes(s.step, g.label_count());
  s.cls = std::move(cls);
  s.class_count = count;
  return s;
}

}  // namespace

SubsetSpace build_forward_subsets(const LabeledGraph& g, const EngineOptions& opts) {
  return build_subsets_impl(g, true, opts);
}

SubsetSpace build_backward_subsets(const LabeledGraph& g, const EngineOptions& opts) {
  return build_subsets_impl(g, false, opts);
}

std::vector<Bitset> forward_subset_closure(const LabeledGraph& g,
                                           const EngineOptions& opts) {
  return build_forward_subsets(g, opts).states;
}

std::vector<Bitset> backward_subset_closure(const LabeledGraph& g,
                                            const EngineOptions& opts) {
  return build_backward_subsets(g, opts).states;
}

Bitset identity_relation(std::uint32_t vertex_count) {
  Bitset r(vertex_count * vertex_count);
  for (std::uint32_t v = 0; v < vertex_count; ++v) r.set(v * vertex_count + v);
  return r;
}

Bitset compose_relation(const LabeledGraph& g, const Bitset& relation, LabelId l) {
  std::uint32_t n = g.vertex_count();
  Bitset out(n * n);
  relation.for_each([&](std::uint32_t bit) {
    std::uint32_t from = bit / n;
    std::uint32_t mid = bit % n;
    const Bitset& targets = g.targets_of(mid, l);
    if (targets.any()) out.or_shifted(targets, from * n);
  });
  return out;
}

RelationSpace build_relations(const LabeledGraph& g, const SubsetSpace& forward,
                              const SubsetSpace& backward, const EngineOptions& opts) {
  require_essential(g);
  std::uint32_t n = g.vertex_count();
  RelationSpace rs;
  rs.vertex_count = n;
  Bitset ident = identity_relation(n);
  rs.ids.emplace(ident, 0);
  rs.states.push_back(std::move(ident));
  for (std::uint32_t qi = 0; qi < rs.states.size(); ++qi) {
    rs.step.emplace_back(g.label_count(), kDeadState);
    for (LabelId l = 0; l < g.label_count(); ++l) {
      Bitset img = compose_relation(g, rs.states[qi], l);
      if (img.none()) continue;
      auto it = rs.ids.find(img);
      if (it == rs.ids.end()) {
        if (rs.states.size() >= opts.closure_budget)
          throw ClosureBudgetError("relation closure exceeds " +
                                   std::to_string(opts.closure_budget) + " states");
        std::uint32_t id = static_cast<std::uint32_t>(rs.states.size());
        it = rs.ids.emplace(img, id).first;
        rs.states.push_back(std::move(img));
      }
      rs.step[qi][l] = it->second;
    }
  }

  // Extension signature: which rectangles A x B (A from the forward closure,
  // B from the backward closure) does the relation hit. Signature equality
  // decides extender-set equality on a finite essential presentation.
  std::uint32_t fcn = static_cast<std::uint32_t>(forward.states.size());
  std::uint32_t bcn = static_cast<std::uint32_t>(backward.states.size());
  std::unordered_map<Bitset, std::uint32_t, Bitset::Hash> sig_ids;
  rs.cls.resize(rs.states.size());
  std::vector<Bitset> images(fcn);
  for (std::uint32_t r = 0; r < rs.states.size(); ++r) {
    for (auto& img : images) img = Bitset(n);
    rs.states[r].for_each([&](std::uint32_t bit) {
      std::uint32_t from = bit / n;
      std::uint32_t to = bit % n;
      for (std::uint32_t ai = 0; ai < fcn; ++ai)
        if (forward.states[ai].test(from)) images[ai].set(to);
    });
    Bitset sig(fcn * bcn);
    for (std::uint32_t ai = 0; ai < fcn; ++ai) {
      if (images[ai].none()) continue;
      for (std::uint32_t bi = 0; bi < bcn; ++bi)
        if (images[ai].intersects(backward.states[bi])) sig.set(ai * bcn + bi);
    }
    auto [it, fresh] =
        sig_ids.emplace(std::move(sig), static_cast<std::uint32_t>(sig_ids.size()));
    (void)fresh;
    rs.cls[r] = it->second;
  }
  rs.class_count = static_cast<std::uint32_t>(sig_ids.size());

  // Classes realized by nonempty words: reachable in >= 1 steps from the
  // identity relation.
  std::vector<bool> seen(rs.states.size(), false);
  std::deque<std::uint32_t> queue;
  for (LabelId l = 0; l < g.label_count(); ++l) {
    std::uint32_t t = rs.step[0][l];
    if (t != kDeadState && !seen[t]) {
      seen[t] = true;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    std::uint32_t r = queue.front();
    queue.pop_front();
    for (LabelId l = 0; l < g.label_count(); ++l) {
      std::uint32_t t = rs.step[r][l];
      if (t != kDeadState && !seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::unordered_set<std::uint32_t> word_classes;
  for (std::uint32_t r = 0; r < rs.states.size(); ++r)
    if (seen[r]) word_classes.insert(rs.cls[r]);
  rs.word_class_count = static_cast<std::uint32_t>(word_classes.size());
  return rs;
}

std::optional<std::uint32_t> EquivalenceIndex::subset_class(const Bitset& s) const {
  auto id = forward.id_of(s);
  if (!id) return std::nullopt;
  return forward.cls[*id];
}

std::optional<std::uint32_t> EquivalenceIndex::relation_class(const Bitset& r) const {
  auto id = relations.id_of(r);
  if (!id) return std::nullopt;
  return relations.cls[*id];
}

EquivalenceIndex classify(const LabeledGraph& g, const EngineOptions& opts) {
  EquivalenceIndex idx;
  idx.forward = build_forward_subsets(g, opts);
  idx.backward = build_backward_subsets(g, opts);
  idx.relations = build_relations(g, idx.forward, idx.backward, opts);
  return idx;
}

SequenceAnalyzer::SequenceAnalyzer(const LabeledGraph& g, Quantity quantity,
                                   EngineOptions opts)
    : graph_(g), quantity_(quantity), opts_(opts) {
  require_essential(graph_);
  index_ = std::make_shared<EquivalenceIndex>();
  index_->forward = build_forward_subsets(graph_, opts_);
  if (quantity_ == Quantity::extender) {
    index_->backward = build_backward_subsets(graph_, opts_);
    index_->relations =
        build_relations(graph_, index_->forward, index_->backward, opts_);
    step_ = &index_->relations.step;
    state_cls_ = &index_->relations.cls;
  } else {
    step_ = &index_->forward.step;
    state_cls_ = &index_->forward.cls;
  }
  layers_.push_back({0});
  layer_classes_.push_back({(*state_cls_)[0]});
  seen_.emplace(pack_ids(layers_[0]), 0);
}

void SequenceAnalyzer::advance_one() {
  const std::vector<std::uint32_t>& prev = layers_.back();
  std::vector<std::uint32_t> next;
  next.reserve(prev.size() * 2);
  std::uint32_t labels = graph_.label_count();
  for (std::uint32_t s : prev) {
    const auto& row = (*step_)[s];
    for (std::uint32_t l = 0; l < labels; ++l)
      if (row[l] != kDeadState) next.push_back(row[l]);
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());

  std::vector<std::uint32_t> classes;
  classes.reserve(next.size());
  for (std::uint32_t s : next) classes.push_back((*state_cls_)[s]);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  std::string key = pack_ids(next);
  std::uint64_t index = layers_.size();
  layers_.push_back(std::move(next));
  layer_classes_.push_back(std::move(classes));
  auto it = seen_.find(key);
  if (it != seen_.end()) {
    recurrence_found_ = true;
    mu_ = it->second;
    lambda_ = index - it->second;
  } else {
    seen_.emplace(std::move(key), index);
  }
}

void SequenceAnalyzer::advance_to(std::uint64_t lmax) {
  while (!recurrence_found_ && layers_.size() <= lmax) advance_one();
}

std::uint64_t SequenceAnalyzer::stored_index(std::uint64_t length) {
  advance_to(length);
  if (length < layers_.size()) return length;
  return mu_ + (length - mu_) % lambda_;
}

std::uint64_t SequenceAnalyzer::count_at(std::uint64_t length) {
  return layer_classes_[stored_index(length)].size();
}

const std::vector<std::uint32_t>& SequenceAnalyzer::layer_classes(std::uint64_t length) {
  return layer_classes_[stored_index(length)];
}

PeriodicityInfo SequenceAnalyzer::periodicity(std::uint64_t lmax) {
  advance_to(lmax);
  PeriodicityInfo info;
  info.certified = recurrence_found_ && mu_ + lambda_ <= lmax;
  if (!info.certified) return info;
  info.preperiod = mu_;
  info.period = lambda_;

  // Minimal period of the counts divides the layer period; scan divisors.
  std::uint64_t best = lambda_;
  for (std::uint64_t d = 1; d <= lambda_ / 2; ++d) {
    if (lambda_ % d != 0) continue;
    bool ok = true;
    for (std::uint64_t ell = std::max<std::uint64_t>(mu_, 1);
         ell < std::max<std::uint64_t>(mu_, 1) + lambda_ && ok; ++ell)
      ok = count_at(ell) == count_at(ell + d);
    if (ok) {
      best = d;
      break;
    }
  }
  info.count_period = best;
  std::uint64_t start = std::max<std::uint64_t>(mu_, 1);
  while (start > 1 && count_at(start - 1) == count_at(start - 1 + best)) --start;
  info.count_preperiod = start;
  return info;
}

SequenceReport SequenceAnalyzer::report(std::uint64_t lmax) {
  advance_to(lmax);
  SequenceReport rep;
  rep.quantity = quantity_;
  rep.counts.reserve(lmax);
  for (std::uint64_t ell = 1; ell <= lmax; ++ell) rep.counts.push_back(count_at(ell));
  PeriodicityInfo info = periodicity(lmax);
  rep.certified = info.certified;
  rep.preperiod = info.preperiod;
  rep.period = info.period;
  rep.count_preperiod = info.count_preperiod;
  rep.count_period = info.count_period;
  if (rep.certified) {
    std::uint64_t start = std::max<std::uint64_t>(mu_, 1);
    std::uint64_t mn = count_at(start), mx = count_at(start);
    for (std::uint64_t ell = start; ell < start + lambda_; ++ell) {
      mn = std::min(mn, count_at(ell));
      mx = std::max(mx, count_at(ell));
    }
    rep.liminf = mn;
    rep.limsup = mx;
  } else if (lmax > 0) {
    // Best effort over the tail half of the observed range.
    std::uint64_t start = lmax / 2 + 1;
    std::uint64_t mn = rep.counts[start - 1], mx = rep.counts[start - 1];
    for (std::uint64_t ell = start; ell <= lmax; ++ell) {
      mn = std::min(mn, rep.counts[ell - 1]);
      mx = std::max(mx, rep.counts[ell - 1]);
    }
    rep.liminf = mn;
    rep.limsup = mx;
  }
  return rep;
}

bool SequenceAnalyzer::nested_growth(std::uint64_t k, std::uint64_t lo,
                                     std::uint64_t hi) {
  if (k == 0) return true;
  advance_to(hi + k);
  for (std::uint64_t ell = lo; ell <= hi; ++ell) {
    const auto& small = layer_classes(ell);
    const auto& big = layer_classes(ell + k);
    if (!std::includes(big.begin(), big.end(), small.begin(), small.end()))
      return false;
  }
  return true;
}

SequenceReport follower_sequence(const PresentedShift& shift, std::uint64_t lmax,
                                 const EngineOptions& opts) {
  SequenceAnalyzer a(shift.graph, Quantity::follower, opts);
  return a.report(lmax);
}

SequenceReport extender_sequence(const PresentedShift& shift, std::uint64_t lmax,
                                 const EngineOptions& opts) {
  SequenceAnalyzer a(shift.graph, Quantity::extender, opts);
  return a.report(lmax);
}

PeriodicityInfo detect_periodicity(const LabeledGraph& g, Quantity quantity,
                                   std::uint64_t lmax, const EngineOptions& opts) {
  SequenceAnalyzer a(g, quantity, opts);
  return a.periodicity(lmax);
}

bool verify_nested_growth(const PresentedShift& shift, Quantity quantity,
                          std::uint64_t k, std::uint64_t lo, std::uint64_t hi,
                          const EngineOptions& opts) {
  if (k < 1) throw InvalidSpecError("nested growth requires k >= 1");
  SequenceAnalyzer a(shift.graph, quantity, opts);
  return a.nested_growth(k, lo, hi);
}

PumpDecomposition pump_decomposition(const PresentedShift& shift, const Word& w,
                                     const EngineOptions& opts) {
  const LabeledGraph& g = shift.graph;
  require_essential(g);
  EquivalenceIndex idx = classify(g, opts);
  const RelationSpace& rs = idx.relations;
  std::uint64_t p = static_cast<std::uint64_t>(rs.word_class_count) + 1;
  if (w.size() < p)
    throw WordTooShortError("word of length " + std::to_string(w.size()) +
                            " is shorter than p = " + std::to_string(p));

  auto step_label = [&](std::uint32_t state, const Label& l) -> std::uint32_t {
    auto id = g.label_id(l);
    if (!id) return kDeadState;
    return rs.step[state][*id];
  };

  // Scan prefixes for the first repeated relation class.
  std::unordered_map<std::uint32_t, std::size_t> first_seen;
  std::uint32_t state = 0;
  std::size_t j1 = 0, j2 = 0;
  std::vector<std::uint32_t> prefix_state(w.size() + 1);
  prefix_state[0] = 0;
  for (std::size_t j = 1; j <= w.size(); ++j) {
    state = step_label(state, w[j - 1]);
    if (state == kDeadState)
      throw WordNotInLanguageError("no path labeled " + word_to_string(w));
    prefix_state[j] = state;
    if (j2 == 0) {
      std::uint32_t c = rs.cls[state];
      auto [it, fresh] = first_seen.emplace(c, j);
      if (!fresh) {
        j1 = it->second;
        j2 = j;
      }
    }
  }
  if (j2 == 0)
    throw Error("InternalError",
                "no repeated prefix class in a word of length >= p");

  PumpDecomposition out;
  out.x.assign(w.begin(), w.begin() + j1);
  out.y.assign(w.begin() + j1, w.begin() + j2);
  out.z.assign(w.begin() + j2, w.end());

  std::uint32_t target = rs.cls[prefix_state[w.size()]];
  for (int reps = 0; reps <= 3; ++reps) {
    std::uint32_t s = 0;
    auto walk = [&](const Word& part) {
      for (const Label& l : part) {
        if (s == kDeadState) return;
        s = step_label(s, l);
      }
    };
    walk(out.x);
    for (int r = 0; r < reps; ++r) walk(out.y);
    walk(out.z);
    if (s == kDeadState || rs.cls[s] != target)
      throw Error("InternalError", "pump verification failed at i = " +
                                       std::to_string(reps));
  }
  return out;
}

WordClasses word_class(const PresentedShift& shift, const Word& w,
                       const EngineOptions& opts) {
  const LabeledGraph& g = shift.graph;
  require_essential(g);
  EquivalenceIndex idx = classify(g, opts);
  std::uint32_t sub = 0, rel = 0;
  for (const Label& l : w) {
    auto id = g.label_id(l);
    if (!id || sub == kDeadState)
      throw WordNotInLanguageError("no path labeled " + word_to_string(w));
    sub = idx.forward.step[sub][*id];
    rel = idx.relations.step[rel][*id];
    if (sub == kDeadState || rel == kDeadState)
      throw WordNotInLanguageError("no path labeled " + word_to_string(w));
  }
  return WordClasses{idx.forward.cls[sub], idx.relations.cls[rel]};
}

namespace {

struct BitsetPair {
  Bitset a, b;

  friend bool operator==(const BitsetPair&, const BitsetPair&) = default;

  struct Hash {
    std::size_t operator()(const BitsetPair& p) const {
      return Bitset::Hash{}(p.a) * 0x9e3779b97f4a7c15ULL + Bitset::Hash{}(p.b);
    }
  };
};

}  // namespace

bool right_language_equivalent(const LabeledGraph& g, const Bitset& a,
                               const Bitset& b, const EngineOptions& opts) {
  require_essential(g);
  if (a == b) return true;
  std::unordered_set<BitsetPair, BitsetPair::Hash> visited;
  std::deque<BitsetPair> queue;
  queue.push_back({a, b});
  visited.insert(queue.back());
  while (!queue.empty()) {
    BitsetPair cur = std::move(queue.front());
    queue.pop_front();
    for (LabelId l = 0; l < g.label_count(); ++l) {
      Bitset ia = g.forward_image(cur.a, l);
      Bitset ib = g.forward_image(cur.b, l);
      bool ea = ia.none(), eb = ib.none();
      if (ea != eb) return false;
      if (ea) continue;
      BitsetPair next{std::move(ia), std::move(ib)};
      if (visited.insert(next).second) {
        if (visited.size() > opts.closure_budget)
          throw ClosureBudgetError("language-equivalence search exceeds budget");
        queue.push_back(std::move(next));
      }
    }
  }
  return true;
}

bool is_follower_separated(const LabeledGraph& g, const EngineOptions& opts) {
  require_essential(g);
  std::uint32_t n = g.vertex_count();
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      Bitset a(n), b(n);
      a.set(i);
      b.set(j);
      if (right_language_equivalent(g, a, b, opts)) return false;
    }
  }
  return true;
}

bool is_extender_separated(const LabeledGraph& g, const EngineOptions& opts) {
  require_essential(g);
  std::uint32_t n = g.vertex_count();
  SubsetSpace fwd = build_forward_subsets(g, opts);
  SubsetSpace bwd = build_backward_subsets(g, opts);

  // Membership profile of each vertex across the two closures; the signature
  // of the singleton relation {(I,T)} is exactly the pair of profiles.
  auto profiles = [n](const SubsetSpace& space) {
    std::vector<Bitset> prof(n, Bitset(static_cast<std::uint32_t>(space.states.size())));
    for (std::uint32_t s = 0; s < space.states.size(); ++s)
      space.states[s].for_each([&](Vertex v) { prof[v].set(s); });
    return prof;
  };
  std::vector<Bitset> fprof = profiles(fwd);
  std::vector<Bitset> bprof = profiles(bwd);

  // Pairs joined by a path of length >= 1.
  std::vector<Bitset> adj(n, Bitset(n));
  for (const Edge& e : g.edges()) adj[e.from].set(e.to);
  std::vector<Bitset> connected(n, Bitset(n));
  for (Vertex v = 0; v < n; ++v) {
    std::deque<Vertex> queue;
    adj[v].for_each([&](Vertex w) {
      connected[v].set(w);
      queue.push_back(w);
    });
    while (!queue.empty()) {
      Vertex w = queue.front();
      queue.pop_front();
      adj[w].for_each([&](Vertex t) {
        if (!connected[v].test(t)) {
          connected[v].set(t);
          queue.push_back(t);
        }
      });
    }
  }

  std::unordered_set<BitsetPair, BitsetPair::Hash> seen;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex t = 0; t < n; ++t) {
      if (!connected[i].test(t)) continue;
      if (!seen.insert(BitsetPair{fprof[i], bprof[t]}).second) return false;
    }
  }
  return true;
}

}  // namespace shiftseq
