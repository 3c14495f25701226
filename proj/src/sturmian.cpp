#include "shiftseq/sturmian.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace shiftseq {

namespace {

std::string substitute(const std::string& w) {
  std::string out;
  out.reserve(w.size() * 2);
  for (char c : w) {
    if (c == '0')
      out += "01";
    else
      out += '0';
  }
  return out;
}

std::set<std::string> factor_set(const std::string& w, std::uint32_t ell) {
  std::set<std::string> out;
  if (w.size() < ell) return out;
  for (std::size_t i = 0; i + ell <= w.size(); ++i) out.insert(w.substr(i, ell));
  return out;
}

// Grows the generated prefix until the length-l factor set is stable across
// one substitution step.
std::set<std::string> stable_factors(const SturmianModel& model, std::uint32_t ell) {
  if (ell < 1) throw InvalidSpecError("factor length must be >= 1");
  std::string w = "0";
  std::set<std::string> prev;
  bool have_prev = false;
  while (true) {
    if (w.size() > model.prefix_budget)
      throw PrefixBudgetError("factor collection did not stabilize within " +
                              std::to_string(model.prefix_budget) + " letters");
    std::string next = substitute(w);
    std::set<std::string> factors = factor_set(next, ell);
    if (have_prev && next.size() >= ell && factors == prev) return factors;
    prev = std::move(factors);
    have_prev = next.size() >= ell;
    w = std::move(next);
  }
}

}  // namespace

std::vector<std::string> sturmian_factors(const SturmianModel& model, std::uint32_t ell) {
  std::set<std::string> factors = stable_factors(model, ell);
  if (factors.size() != ell + 1ULL)
    throw Error("InternalError",
                "factor count " + std::to_string(factors.size()) + " at length " +
                    std::to_string(ell) + " is not l + 1");
  return {factors.begin(), factors.end()};
}

std::pair<std::uint64_t, std::uint64_t> sturmian_counts(std::uint32_t ell) {
  if (ell < 1) throw InvalidSpecError("length must be >= 1");
  return {ell + 1ULL, ell + 1ULL};
}

std::uint64_t empirical_distinction(const SturmianModel& model, std::uint32_t ell,
                                    std::uint32_t depth) {
  if (ell < 1 || depth < 1)
    throw InvalidSpecError("length and depth must be >= 1");
  std::set<std::string> long_factors = stable_factors(model, ell + depth);
  std::map<std::string, std::set<std::string>> followers;
  for (const std::string& f : long_factors)
    followers[f.substr(0, ell)].insert(f.substr(ell));
  std::set<std::set<std::string>> distinct;
  for (const auto& [word, cont] : followers) distinct.insert(cont);
  return distinct.size();
}

ProductReport product_counts(const SequenceReport& report_x, std::uint64_t lmax) {
  if (!report_x.certified)
    throw UncertifiedInputError("product counts need a certified sofic sequence");
  if (lmax < 1 || lmax > report_x.counts.size())
    throw InvalidSpecError("lmax outside the computed range of the input report");

  ProductReport rep;
  for (std::uint64_t ell = 1; ell <= lmax; ++ell) {
    std::uint64_t cx = report_x.counts[ell - 1];
    rep.counts_x.push_back(cx);
    rep.counts_y.push_back(ell + 1);
    rep.counts_product.push_back(cx * (ell + 1));
  }
  for (std::uint64_t ell = 1; ell + 1 <= lmax; ++ell)
    if (rep.counts_product[ell - 1] > rep.counts_product[ell])
      rep.nonmonotone_witnesses.push_back(ell);

  // Growth evidence: the tail half strictly tops everything seen before it.
  std::uint64_t half = lmax / 2;
  if (half >= 1 && half < lmax) {
    std::uint64_t head = *std::max_element(rep.counts_product.begin(),
                                           rep.counts_product.begin() + half);
    std::uint64_t tail = *std::max_element(rep.counts_product.begin() + half,
                                           rep.counts_product.end());
    rep.unbounded_within_horizon = tail > head;
  }
  return rep;
}

std::string product_report_to_json(const ProductReport& report) {
  nlohmann::ordered_json j;
  j["counts_x"] = report.counts_x;
  j["counts_y"] = report.counts_y;
  j["counts_product"] = report.counts_product;
  j["nonmonotone_witnesses"] = report.nonmonotone_witnesses;
  j["unbounded_within_horizon"] = report.unbounded_within_horizon;
  return j.dump(2) + "\n";
}

std::uint64_t find_nonmonotone_length(const GnsSpec& spec, Quantity quantity,
                                      const EngineOptions& opts) {
  spec.validate();
  if (spec.s.size() == spec.n)
    throw NoSuchLengthError("S covers every residue; (l+1) mod n is never outside S");

  PresentedShift shift = build_gns(spec);
  SequenceAnalyzer analyzer(shift.graph, quantity, opts);
  // Certify; the layer orbit of these graphs closes quickly.
  std::uint64_t horizon = 16ULL * spec.n + 64;
  analyzer.advance_to(horizon);
  PeriodicityInfo info = analyzer.periodicity(horizon);
  if (!info.certified)
    throw UncertifiedInputError("sequence did not certify within the horizon");
  std::uint64_t start = std::max<std::uint64_t>(info.preperiod, 1);
  std::uint64_t m = analyzer.count_at(start);
  for (std::uint64_t ell = start; ell < start + info.period; ++ell)
    m = std::min(m, analyzer.count_at(ell));

  auto in_s = [&](std::uint64_t ell) {
    return std::find(spec.s.begin(), spec.s.end(), ell % spec.n) != spec.s.end();
  };
  for (std::uint64_t ell = m; ell < m + spec.n; ++ell)
    if (in_s(ell) && !in_s(ell + 1)) return ell;
  throw NoSuchLengthError("no length satisfies the residue conditions");
}

}  // namespace shiftseq
