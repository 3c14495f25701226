#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftseq/engine.hpp"
#include "shiftseq/graph.hpp"

namespace shiftseq {

// Parameters of the three-loop graph family: n is the loop length, S the set
// of residues that receive the extra follower/extender set, i_star the
// residue whose exit chains the loops together.
struct GnsSpec {
  std::uint32_t n = 1;
  std::vector<std::uint32_t> s;  // sorted distinct residues in [0, n)
  std::uint32_t i_star = 0;

  static GnsSpec make(std::uint32_t n, std::vector<std::uint32_t> s);
  static GnsSpec make(std::uint32_t n, std::vector<std::uint32_t> s,
                      std::uint32_t i_star);

  void validate() const;
  std::string describe() const;
};

// Builds the graph: Start -p-> Q (self-loop q), Q -b-> loop1, exits c_i at
// the (i-2 mod n)-th loop vertices; i != i_star returns to Start через d_i/e_i,
// i_star chains loop1 -> loop2 -> loop3; loop3 exits return to Start. The
// word b a^(l-2) c_i is in the language iff l = i (mod n) with i in S.
// Vertices: 3n + 2|S| + 1, edges: 3n + 5|S| + 2, sync loop (Q, q).
PresentedShift build_gns(const GnsSpec& spec);

// Tagged vertex roles of a gns graph, for tests and provenance.
struct GnsLayout {
  Vertex start = 0;
  Vertex q_anchor = 1;
  Vertex loop1_base = 2;  // loop t occupies [base + (t-1)n, base + tn)
  Vertex x1;              // 2 + 3n
  std::uint32_t vertex_count;
};
GnsLayout gns_layout(const GnsSpec& spec);

// Disjoint union of two presentations plus a fresh-labeled edge x from the
// first sync anchor to the second and y back. Both inputs must be essential,
// irreducible, right- and left-resolving, primitive, extender-separated and
// carry a bi-synchronizing self-loop; the result is verified to satisfy the
// same battery. Overlapping label sets are disjoined by suffixing "#k".
PresentedShift join(const PresentedShift& a, const PresentedShift& b);

// Prescribed oscillation scheme: partition A_1..A_k of {0..n-1} and rates
// 0 = r_1 < r_2 < ... < r_k.
struct PartitionSpec {
  std::uint32_t n = 1;
  std::vector<std::vector<std::uint32_t>> partition;
  std::vector<std::uint32_t> rates;

  void validate() const;
  std::string describe() const;
};

// Balanced join of r_2 copies of gns(n, A_2 ∪ ... ∪ A_k), then r_{j+1} - r_j
// copies of each later union. One code path serves both count quantities;
// the follower guarantee is order-independent and the balanced order keeps
// the extender constant small.
PresentedShift build_follower_target(const PartitionSpec& spec);
PresentedShift build_extender_target(const PartitionSpec& spec);

// Closed-form baseline value of the follower sequence on residues in A_1.
std::uint64_t follower_target_baseline(const PartitionSpec& spec);

struct BoundReport {
  std::uint64_t m = 0, r = 0, n = 0;           // follower liminf, spread, least period
  std::uint64_t m_prime = 0, r_prime = 0, n_prime = 0;  // extender analogues

  struct Inequality {
    std::string name;
    bool holds = false;
    double lhs = 0;
    double rhs = 0;
  };
  std::vector<Inequality> inequalities;

  bool all_hold() const {
    for (const auto& q : inequalities)
      if (!q.holds) return false;
    return true;
  }
};

// Evaluates the four liminf lower bounds from certified reports. Throws
// UncertifiedInput when either report lacks certification.
BoundReport lower_bound_check(const SequenceReport& follower,
                              const SequenceReport& extender);

}  // namespace shiftseq
