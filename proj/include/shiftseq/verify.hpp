#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftseq/constructions.hpp"
#include "shiftseq/engine.hpp"

namespace shiftseq {

// One end-to-end verification run. Lines record expected vs computed values
// for every checked length, so repeated runs are byte-identical.
struct SuiteResult {
  std::string suite;
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& line) {
    lines.push_back((ok ? "ok   " : "FAIL ") + line);
    pass = pass && ok;
  }
  void note(const std::string& line) { lines.push_back("     " + line); }
};

// Residue-rule count values of a single gns graph, both quantities.
SuiteResult verify_counts(const GnsSpec& spec, std::uint64_t lmax,
                          const EngineOptions& opts = {});

// Additivity of the two count sequences under the join of two gns graphs.
SuiteResult verify_join(const GnsSpec& a, const GnsSpec& b, std::uint64_t lmax,
                        const EngineOptions& opts = {});

// Partition builder, follower side: measured values equal baseline + rate by
// residue from length n + 2, with the closed-form baseline and its bound.
SuiteResult verify_partition_follower(const PartitionSpec& spec, std::uint64_t lmax,
                                      const EngineOptions& opts = {});

// Partition builder, extender side: oscillation by residue on the certified
// tail, liminf bound, periodicity onset bound.
SuiteResult verify_partition_extender(const PartitionSpec& spec,
                                      std::optional<std::uint64_t> lmax,
                                      const EngineOptions& opts = {});

// The four liminf lower bounds on a gns graph.
SuiteResult verify_bounds(const GnsSpec& spec, std::uint64_t lmax,
                          const EngineOptions& opts = {});

// Certified periodicity, count-period divisibility, nested layer growth.
SuiteResult verify_periodic(const GnsSpec& spec, std::uint64_t lmax,
                            const EngineOptions& opts = {});

// Non-monotonicity of the product with the Sturmian shift.
SuiteResult verify_nonsofic(const GnsSpec& spec, Quantity quantity, std::uint64_t lmax,
                            const EngineOptions& opts = {});

std::string render_suite(const SuiteResult& result);

}  // namespace shiftseq
