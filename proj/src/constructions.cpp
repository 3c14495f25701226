#include "shiftseq/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace shiftseq {

namespace {

std::string set_to_string(const std::vector<std::uint32_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace

GnsSpec GnsSpec::make(std::uint32_t n, std::vector<std::uint32_t> s) {
  std::sort(s.begin(), s.end());
  if (s.empty()) throw InvalidSpecError("S must be nonempty");
  std::uint32_t i_star = s.front();
  return make(n, std::move(s), i_star);
}

GnsSpec GnsSpec::make(std::uint32_t n, std::vector<std::uint32_t> s,
                      std::uint32_t i_star) {
  std::sort(s.begin(), s.end());
  GnsSpec spec{n, std::move(s), i_star};
  spec.validate();
  return spec;
}

void GnsSpec::validate() const {
  if (n < 1) throw InvalidSpecError("n must be >= 1");
  if (s.empty()) throw InvalidSpecError("S must be nonempty");
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end())
    throw InvalidSpecError("S must be sorted and distinct");
  for (std::uint32_t i : s)
    if (i >= n) throw InvalidSpecError("S must be a subset of {0..n-1}");
  if (std::find(s.begin(), s.end(), i_star) == s.end())
    throw InvalidSpecError("i* must be an element of S");
}

std::string GnsSpec::describe() const {
  return "gns(n=" + std::to_string(n) + ",S=" + set_to_string(s) +
         ",i*=" + std::to_string(i_star) + ")";
}

GnsLayout gns_layout(const GnsSpec& spec) {
  GnsLayout layout;
  layout.x1 = 2 + 3 * spec.n;
  layout.vertex_count = 3 * spec.n + 2 * static_cast<std::uint32_t>(spec.s.size()) + 1;
  return layout;
}

PresentedShift build_gns(const GnsSpec& spec) {
  spec.validate();
  std::uint32_t n = spec.n;
  GnsLayout layout = gns_layout(spec);
  const Vertex start = layout.start;
  const Vertex q = layout.q_anchor;
  auto loop = [&](std::uint32_t which, std::uint32_t pos) -> Vertex {
    return layout.loop1_base + which * n + pos % n;
  };
  const Vertex x1 = layout.x1;
  auto exit_pos = [&](std::uint32_t i) { return (i + 2 * n - 2) % n; };

  Vertex next = x1 + 1;
  std::vector<Edge> edges;
  edges.push_back({start, Label("p"), q});
  edges.push_back({q, Label("q"), q});
  edges.push_back({q, Label("b"), loop(0, 0)});
  for (std::uint32_t t = 0; t < 3; ++t)
    for (std::uint32_t j = 0; j < n; ++j)
      edges.push_back({loop(t, j), Label("a"), loop(t, j + 1)});
  for (std::uint32_t i : spec.s) {
    if (i == spec.i_star) continue;
    Label ci("c_" + std::to_string(i));
    Vertex di = next++;
    Vertex ei = next++;
    edges.push_back({loop(0, exit_pos(i)), ci, di});
    edges.push_back({di, Label("d_" + std::to_string(i)), start});
    edges.push_back({loop(1, exit_pos(i)), ci, ei});
    edges.push_back({ei, Label("e_" + std::to_string(i)), start});
  }
  Label cstar("c_" + std::to_string(spec.i_star));
  edges.push_back({loop(0, exit_pos(spec.i_star)), cstar, x1});
  edges.push_back({x1, Label("b"), loop(1, 0)});
  edges.push_back({loop(1, exit_pos(spec.i_star)), cstar, loop(2, 0)});
  for (std::uint32_t i : spec.s)
    edges.push_back({loop(2, exit_pos(i)), Label("c_" + std::to_string(i)), start});

  PresentedShift shift{LabeledGraph(layout.vertex_count, std::move(edges)),
                       SyncLoop{q, Label("q")}, spec.describe()};
  validate_presented(shift);
  return shift;
}

namespace {

std::set<Label> label_set(const LabeledGraph& g) {
  return {g.alphabet().begin(), g.alphabet().end()};
}

PresentedShift with_label_suffix(const PresentedShift& shift, const std::string& suffix) {
  std::vector<Edge> edges;
  edges.reserve(shift.graph.edges().size());
  for (const Edge& e : shift.graph.edges())
    edges.push_back({e.from, Label(e.label.str() + suffix), e.to});
  std::optional<SyncLoop> loop = shift.sync_loop;
  if (loop) loop->label = Label(loop->label.str() + suffix);
  return PresentedShift{LabeledGraph(shift.graph.vertex_count(), std::move(edges)),
                        std::move(loop), shift.provenance};
}

void check_join_hypotheses(const PresentedShift& shift, const std::string& who) {
  const LabeledGraph& g = shift.graph;
  if (!g.is_essential())
    throw HypothesisViolatedError(who + " is not essential");
  if (!is_irreducible(g))
    throw HypothesisViolatedError(who + " is not irreducible");
  if (!is_right_resolving(g))
    throw HypothesisViolatedError(who + " is not right-resolving");
  if (!is_left_resolving(g))
    throw HypothesisViolatedError(who + " is not left-resolving");
  if (!primitivity_distance(g))
    throw HypothesisViolatedError(who + " is not primitive");
  if (!shift.sync_loop)
    throw HypothesisViolatedError(who + " has no designated sync self-loop");
  try {
    validate_presented(shift);
  } catch (const Error& e) {
    throw HypothesisViolatedError(who + ": " + e.what());
  }
  if (!is_extender_separated(g))
    throw HypothesisViolatedError(who + " is not extender-separated");
}

PresentedShift join_with_counter(const PresentedShift& a, const PresentedShift& b,
                                 std::uint32_t& fresh_counter) {
  check_join_hypotheses(a, "graph1");
  check_join_hypotheses(b, "graph2");

  PresentedShift left = a;
  PresentedShift right = b;
  std::set<Label> la = label_set(left.graph);
  {
    // Disjoin overlapping alphabets by suffixing the second graph.
    std::uint32_t k = 2;
    while (true) {
      std::set<Label> lb = label_set(right.graph);
      std::vector<Label> common;
      std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(),
                            std::back_inserter(common));
      if (common.empty()) break;
      right = with_label_suffix(b, "#" + std::to_string(k));
      ++k;
      if (k > 64)
        throw HypothesisViolatedError("cannot make label sets disjoint");
    }
  }

  std::set<Label> all = label_set(left.graph);
  for (const Label& l : right.graph.alphabet()) all.insert(l);
  Label xl("x"), yl("y");
  {
    std::uint32_t k = fresh_counter;
    while (true) {
      xl = Label("x#" + std::to_string(k));
      yl = Label("y#" + std::to_string(k));
      if (!all.count(xl) && !all.count(yl)) {
        fresh_counter = k + 1;
        break;
      }
      ++k;
    }
  }

  std::uint32_t v1 = left.graph.vertex_count();
  std::uint32_t v2 = right.graph.vertex_count();
  std::vector<Edge> edges = left.graph.edges();
  for (const Edge& e : right.graph.edges())
    edges.push_back({e.from + v1, e.label, e.to + v1});
  Vertex anchor1 = left.sync_loop->vertex;
  Vertex anchor2 = right.sync_loop->vertex + v1;
  edges.push_back({anchor1, xl, anchor2});
  edges.push_back({anchor2, yl, anchor1});

  PresentedShift out{LabeledGraph(v1 + v2, std::move(edges)), left.sync_loop,
                     "join(" + a.provenance + "," + b.provenance + ")"};
  check_join_hypotheses(out, "join result");
  return out;
}

}  // namespace

PresentedShift join(const PresentedShift& a, const PresentedShift& b) {
  std::uint32_t counter = 1;
  return join_with_counter(a, b, counter);
}

void PartitionSpec::validate() const {
  if (n < 1) throw InvalidSpecError("n must be >= 1");
  if (partition.size() < 2)
    throw InvalidSpecError("partition must have k >= 2 blocks");
  if (rates.size() != partition.size())
    throw InvalidSpecError("one rate per partition block required");
  if (rates.front() != 0) throw InvalidSpecError("r_1 must be 0");
  for (std::size_t i = 1; i < rates.size(); ++i)
    if (rates[i] <= rates[i - 1])
      throw InvalidSpecError("rates must be strictly increasing");
  std::vector<bool> covered(n, false);
  for (const auto& block : partition) {
    if (block.empty()) throw InvalidSpecError("partition blocks must be nonempty");
    for (std::uint32_t i : block) {
      if (i >= n) throw InvalidSpecError("partition element out of range");
      if (covered[i]) throw InvalidSpecError("partition blocks must be disjoint");
      covered[i] = true;
    }
  }
  for (std::uint32_t i = 0; i < n; ++i)
    if (!covered[i]) throw InvalidSpecError("partition must cover {0..n-1}");
}

std::string PartitionSpec::describe() const {
  std::string out = "n=" + std::to_string(n) + ",A=[";
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) out += ',';
    out += set_to_string(partition[i]);
  }
  out += "],r=[";
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(rates[i]);
  }
  return out + "]";
}

namespace {

// Suffix union A_i ∪ ... ∪ A_k, sorted.
std::vector<std::uint32_t> suffix_union(const PartitionSpec& spec, std::size_t from) {
  std::vector<std::uint32_t> s;
  for (std::size_t j = from; j < spec.partition.size(); ++j)
    s.insert(s.end(), spec.partition[j].begin(), spec.partition[j].end());
  std::sort(s.begin(), s.end());
  return s;
}

PresentedShift balanced_join(const std::vector<PresentedShift>& copies, std::size_t lo,
                             std::size_t hi, std::uint32_t& counter) {
  if (lo == hi) return copies[lo];
  // Left subtree takes the larger half.
  std::size_t count = hi - lo + 1;
  std::size_t mid = lo + (count + 1) / 2 - 1;
  PresentedShift left = balanced_join(copies, lo, mid, counter);
  PresentedShift right = balanced_join(copies, mid + 1, hi, counter);
  return join_with_counter(left, right, counter);
}

PresentedShift build_partition_target(const PartitionSpec& spec) {
  spec.validate();
  std::vector<PresentedShift> copies;
  for (std::size_t j = 1; j < spec.partition.size(); ++j) {
    std::uint32_t multiplicity = spec.rates[j] - spec.rates[j - 1];
    GnsSpec constituent = GnsSpec::make(spec.n, suffix_union(spec, j));
    for (std::uint32_t c = 0; c < multiplicity; ++c) copies.push_back(build_gns(constituent));
  }
  std::string provenance = "target(" + spec.describe() + ",order=balanced)";
  if (copies.size() == 1) {
    PresentedShift out = copies.front();
    out.provenance = provenance;
    return out;
  }
  for (std::size_t c = 0; c < copies.size(); ++c) {
    PresentedShift relabeled =
        with_label_suffix(copies[c], "#" + std::to_string(c + 1));
    copies[c] = std::move(relabeled);
  }
  std::uint32_t counter = 1;
  PresentedShift out = balanced_join(copies, 0, copies.size() - 1, counter);
  out.provenance = std::move(provenance);
  return out;
}

}  // namespace

PresentedShift build_follower_target(const PartitionSpec& spec) {
  return build_partition_target(spec);
}

PresentedShift build_extender_target(const PartitionSpec& spec) {
  return build_partition_target(spec);
}

std::uint64_t follower_target_baseline(const PartitionSpec& spec) {
  spec.validate();
  std::uint64_t m = 0;
  std::uint64_t tail = 0;
  for (std::size_t j = 1; j < spec.partition.size(); ++j) tail += spec.partition[j].size();
  for (std::size_t i = 1; i < spec.partition.size(); ++i) {
    std::uint64_t mult = spec.rates[i] - spec.rates[i - 1];
    m += mult * (3ULL * spec.n + 3 * tail + 3);
    tail -= spec.partition[i].size();
  }
  return m;
}

BoundReport lower_bound_check(const SequenceReport& follower,
                              const SequenceReport& extender) {
  if (follower.quantity != Quantity::follower || extender.quantity != Quantity::extender)
    throw UncertifiedInputError("reports passed in the wrong order");
  if (!follower.certified || !extender.certified)
    throw UncertifiedInputError("both reports must carry certified periodicity");

  BoundReport rep;
  rep.m = follower.liminf;
  rep.r = follower.limsup - follower.liminf;
  rep.n = follower.count_period;
  rep.m_prime = extender.liminf;
  rep.r_prime = extender.limsup - extender.liminf;
  rep.n_prime = extender.count_period;

  const double inf = std::numeric_limits<double>::infinity();
  auto log2_or_neg_inf = [&](double v) { return v <= 0 ? -inf : std::log2(v); };
  auto sqrt_or_neg_inf = [&](double v) { return v < 0 ? -inf : std::sqrt(v); };

  auto add = [&](std::string name, double lhs, double rhs) {
    rep.inequalities.push_back({std::move(name), lhs > rhs, lhs, rhs});
  };
  double m = static_cast<double>(rep.m);
  double mp = static_cast<double>(rep.m_prime);
  add("m > log2(r)", m, log2_or_neg_inf(static_cast<double>(rep.r)));
  add("m > (1/2) log2(log2(n))", m,
      0.5 * log2_or_neg_inf(log2_or_neg_inf(static_cast<double>(rep.n))));
  add("m' > sqrt(log2(r'))", mp,
      sqrt_or_neg_inf(log2_or_neg_inf(static_cast<double>(rep.r_prime))));
  add("m' > sqrt((1/2) log2(log2(n')))", mp,
      sqrt_or_neg_inf(0.5 * log2_or_neg_inf(
                                log2_or_neg_inf(static_cast<double>(rep.n_prime)))));
  return rep;
}

}  // namespace shiftseq
