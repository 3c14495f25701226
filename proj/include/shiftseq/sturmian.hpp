#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftseq/constructions.hpp"
#include "shiftseq/engine.hpp"

namespace shiftseq {

// Aperiodic binary shift of factor complexity l + 1, realized by the
// substitution 0 -> 01, 1 -> 0. Factor enumeration grows the generated
// prefix by substitution steps until two consecutive steps yield identical
// factor sets.
struct SturmianModel {
  std::uint64_t prefix_budget = 1ULL << 20;
};

// Distinct length-l factors of the generated word, sorted.
// Throws BudgetExceeded if the factor set does not stabilize within the
// prefix budget. The result always has exactly l + 1 members.
std::vector<std::string> sturmian_factors(const SturmianModel& model, std::uint32_t ell);

// Analytic counts (l + 1, l + 1); empirical_distinction is the verifying
// oracle for them.
std::pair<std::uint64_t, std::uint64_t> sturmian_counts(std::uint32_t ell);

// Number of distinct follower sets of length-l factors when followers are
// truncated to the given depth. Nondecreasing in depth, reaches l + 1 once
// the depth suffices.
std::uint64_t empirical_distinction(const SturmianModel& model, std::uint32_t ell,
                                    std::uint32_t depth);

struct ProductReport {
  std::vector<std::uint64_t> counts_x;
  std::vector<std::uint64_t> counts_y;        // l + 1
  std::vector<std::uint64_t> counts_product;  // componentwise product
  std::vector<std::uint64_t> nonmonotone_witnesses;  // l with product[l] > product[l+1]
  bool unbounded_within_horizon = false;
};

// Counts of the direct product of a certified sofic shift with the Sturmian
// shift. The product itself has no finite presentation, so counts come from
// the certified sofic sequence times l + 1.
ProductReport product_counts(const SequenceReport& report_x, std::uint64_t lmax);

std::string product_report_to_json(const ProductReport& report);

// Least l with l > m - 1, l mod n in S and (l + 1) mod n not in S, where m
// is the certified liminf of the requested sequence of gns(spec). Throws
// NoSuchLength when S = {0..n-1}.
std::uint64_t find_nonmonotone_length(const GnsSpec& spec, Quantity quantity,
                                      const EngineOptions& opts = {});

}  // namespace shiftseq
