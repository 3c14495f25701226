#include "shiftseq/verify.hpp"

#include <algorithm>
#include <sstream>

#include "shiftseq/sturmian.hpp"

namespace shiftseq {

namespace {

bool residue_in(const std::vector<std::uint32_t>& s, std::uint64_t ell,
                std::uint32_t n) {
  return std::find(s.begin(), s.end(), ell % n) != s.end();
}

std::string eq_line(const std::string& what, std::uint64_t expected,
                    std::uint64_t computed) {
  return what + " expected=" + std::to_string(expected) +
         " computed=" + std::to_string(computed);
}

}  // namespace

SuiteResult verify_counts(const GnsSpec& spec, std::uint64_t lmax,
                          const EngineOptions& opts) {
  SuiteResult result{"thm-counts"};
  result.note(spec.describe() + " lmax=" + std::to_string(lmax));
  PresentedShift shift = build_gns(spec);
  std::uint64_t n = spec.n, s = spec.s.size();

  SequenceReport f = follower_sequence(shift, lmax, opts);
  for (std::uint64_t ell = n + 2; ell <= lmax; ++ell) {
    std::uint64_t expected = 3 * n + 3 * s + (residue_in(spec.s, ell, spec.n) ? 4 : 3);
    result.check(f.at(ell) == expected,
                 eq_line("F l=" + std::to_string(ell), expected, f.at(ell)));
  }
  SequenceReport e = extender_sequence(shift, lmax, opts);
  std::uint64_t base = (3 * n + 2 * s + 1) * (3 * n + 2 * s + 1) + s;
  for (std::uint64_t ell = 3 * n + 3; ell <= lmax; ++ell) {
    std::uint64_t expected = base + (residue_in(spec.s, ell, spec.n) ? 3 : 2);
    result.check(e.at(ell) == expected,
                 eq_line("E l=" + std::to_string(ell), expected, e.at(ell)));
  }
  return result;
}

SuiteResult verify_join(const GnsSpec& a, const GnsSpec& b, std::uint64_t lmax,
                        const EngineOptions& opts) {
  SuiteResult result{"thm-join"};
  result.note(a.describe() + " + " + b.describe() + " lmax=" + std::to_string(lmax));
  PresentedShift sa = build_gns(a);
  PresentedShift sb = build_gns(b);
  PresentedShift joined = join(sa, sb);

  auto za = primitivity_distance(sa.graph);
  auto zb = primitivity_distance(sb.graph);
  result.check(za && zb, "both graphs primitive");
  std::uint64_t threshold = 2ULL * std::max(*za, *zb);
  result.note("primitivity distances " + std::to_string(*za) + ", " +
              std::to_string(*zb) + "; extender formula checked for l > " +
              std::to_string(threshold));

  SequenceReport fa = follower_sequence(sa, lmax, opts);
  SequenceReport fb = follower_sequence(sb, lmax, opts);
  SequenceReport fj = follower_sequence(joined, lmax, opts);
  for (std::uint64_t ell = 1; ell <= lmax; ++ell)
    result.check(fj.at(ell) == fa.at(ell) + fb.at(ell),
                 eq_line("F l=" + std::to_string(ell), fa.at(ell) + fb.at(ell),
                         fj.at(ell)));

  SequenceReport ea = extender_sequence(sa, lmax, opts);
  SequenceReport eb = extender_sequence(sb, lmax, opts);
  SequenceReport ej = extender_sequence(joined, lmax, opts);
  std::uint64_t cross =
      2ULL * sa.graph.vertex_count() * sb.graph.vertex_count();
  for (std::uint64_t ell = threshold + 1; ell <= lmax; ++ell)
    result.check(ej.at(ell) == ea.at(ell) + eb.at(ell) + cross,
                 eq_line("E l=" + std::to_string(ell),
                         ea.at(ell) + eb.at(ell) + cross, ej.at(ell)));
  return result;
}

SuiteResult verify_partition_follower(const PartitionSpec& spec, std::uint64_t lmax,
                                      const EngineOptions& opts) {
  SuiteResult result{"thm-partition-F"};
  result.note("target(" + spec.describe() + ") lmax=" + std::to_string(lmax));
  PresentedShift shift = build_follower_target(spec);
  SequenceReport f = follower_sequence(shift, lmax, opts);

  std::uint64_t m = follower_target_baseline(spec);
  std::uint64_t rk = spec.rates.back();
  result.check(m < (6ULL * spec.n + 3) * rk,
               "baseline m=" + std::to_string(m) + " < (6n+3)r_k=" +
                   std::to_string((6ULL * spec.n + 3) * rk));

  std::vector<std::uint64_t> rate_of(spec.n);
  for (std::size_t j = 0; j < spec.partition.size(); ++j)
    for (std::uint32_t i : spec.partition[j]) rate_of[i] = spec.rates[j];
  for (std::uint64_t ell = spec.n + 2; ell <= lmax; ++ell) {
    std::uint64_t expected = m + rate_of[ell % spec.n];
    result.check(f.at(ell) == expected,
                 eq_line("F l=" + std::to_string(ell), expected, f.at(ell)));
  }
  return result;
}

SuiteResult verify_partition_extender(const PartitionSpec& spec,
                                      std::optional<std::uint64_t> lmax_opt,
                                      const EngineOptions& opts) {
  SuiteResult result{"thm-partition-E"};
  std::uint64_t rk = spec.rates.back();
  std::uint64_t onset_bound = 14ULL * rk * spec.n - 1;
  std::uint64_t lmax = lmax_opt.value_or(onset_bound + 4 * spec.n + 8);
  result.note("target(" + spec.describe() + ") lmax=" + std::to_string(lmax));

  PresentedShift shift = build_extender_target(spec);
  SequenceAnalyzer analyzer(shift.graph, Quantity::extender, opts);
  SequenceReport e = analyzer.report(lmax);

  result.check(e.certified, "periodicity certified");
  if (!e.certified) return result;
  result.check(e.preperiod <= onset_bound,
               "onset " + std::to_string(e.preperiod) + " <= 14 r_k n - 1 = " +
                   std::to_string(onset_bound));
  std::uint64_t cap = 39ULL * spec.n * spec.n * rk * rk;
  result.check(e.liminf <= cap, "liminf m'=" + std::to_string(e.liminf) +
                                    " <= 39 n^2 r_k^2 = " + std::to_string(cap));

  std::vector<std::uint64_t> rate_of(spec.n);
  for (std::size_t j = 0; j < spec.partition.size(); ++j)
    for (std::uint32_t i : spec.partition[j]) rate_of[i] = spec.rates[j];
  std::uint64_t start = std::max<std::uint64_t>(e.preperiod, 1);
  for (std::uint64_t ell = start; ell <= lmax; ++ell) {
    std::uint64_t expected = e.liminf + rate_of[ell % spec.n];
    result.check(e.at(ell) == expected,
                 eq_line("E l=" + std::to_string(ell), expected, e.at(ell)));
  }
  return result;
}

SuiteResult verify_bounds(const GnsSpec& spec, std::uint64_t lmax,
                          const EngineOptions& opts) {
  SuiteResult result{"thm-bounds"};
  result.note(spec.describe() + " lmax=" + std::to_string(lmax));
  PresentedShift shift = build_gns(spec);
  SequenceReport f = follower_sequence(shift, lmax, opts);
  SequenceReport e = extender_sequence(shift, lmax, opts);
  result.check(f.certified && e.certified, "both sequences certified");
  if (!(f.certified && e.certified)) return result;
  BoundReport bounds = lower_bound_check(f, e);
  result.note("m=" + std::to_string(bounds.m) + " r=" + std::to_string(bounds.r) +
              " n=" + std::to_string(bounds.n) + " m'=" + std::to_string(bounds.m_prime) +
              " r'=" + std::to_string(bounds.r_prime) +
              " n'=" + std::to_string(bounds.n_prime));
  for (const auto& q : bounds.inequalities) {
    std::ostringstream line;
    line << q.name << " (lhs=" << q.lhs << " rhs=" << q.rhs << ")";
    result.check(q.holds, line.str());
  }
  return result;
}

SuiteResult verify_periodic(const GnsSpec& spec, std::uint64_t lmax,
                            const EngineOptions& opts) {
  SuiteResult result{"thm-periodic"};
  result.note(spec.describe() + " lmax=" + std::to_string(lmax));
  PresentedShift shift = build_gns(spec);
  for (Quantity q : {Quantity::follower, Quantity::extender}) {
    SequenceAnalyzer analyzer(shift.graph, q, opts);
    PeriodicityInfo info = analyzer.periodicity(lmax);
    std::string tag = quantity_name(q);
    result.check(info.certified, tag + " certified");
    if (!info.certified) continue;
    result.note(tag + " layer (preperiod " + std::to_string(info.preperiod) +
                ", period " + std::to_string(info.period) + "), counts (preperiod " +
                std::to_string(info.count_preperiod) + ", period " +
                std::to_string(info.count_period) + ")");
    result.check(info.period % info.count_period == 0,
                 tag + " count period divides layer period");
    std::uint64_t hi = lmax > info.period ? lmax - info.period : info.preperiod;
    result.check(analyzer.nested_growth(info.period, info.preperiod, hi),
                 tag + " classes nested at the layer period");
  }
  return result;
}

SuiteResult verify_nonsofic(const GnsSpec& spec, Quantity quantity, std::uint64_t lmax,
                            const EngineOptions& opts) {
  SuiteResult result{"thm-nonsofic"};
  result.note(spec.describe() + " x sturmian, " + quantity_name(quantity) +
              " lmax=" + std::to_string(lmax));
  std::uint64_t witness = find_nonmonotone_length(spec, quantity, opts);
  result.note("first admissible decrease length " + std::to_string(witness));

  PresentedShift shift = build_gns(spec);
  SequenceAnalyzer analyzer(shift.graph, quantity, opts);
  SequenceReport rep = analyzer.report(lmax + 1);
  result.check(rep.certified, "sofic factor certified");
  ProductReport prod = product_counts(rep, lmax + 1);

  result.check(std::find(prod.nonmonotone_witnesses.begin(),
                         prod.nonmonotone_witnesses.end(),
                         witness) != prod.nonmonotone_witnesses.end(),
               "product decreases at l=" + std::to_string(witness));
  result.check(prod.unbounded_within_horizon, "product counts keep growing");

  // Once decreases start they recur precisely where the sofic factor drops.
  bool recur = true;
  for (std::uint64_t ell = witness; ell + 1 <= lmax; ++ell) {
    bool drops = rep.at(ell) > rep.at(ell + 1);
    bool witnessed = std::find(prod.nonmonotone_witnesses.begin(),
                               prod.nonmonotone_witnesses.end(),
                               ell) != prod.nonmonotone_witnesses.end();
    if (drops != witnessed) recur = false;
  }
  result.check(recur, "decreases recur exactly at the sofic drop lengths");

  std::uint64_t m = rep.liminf;
  if (witness + 1 <= lmax) {
    result.check(prod.counts_product[witness - 1] == (m + 1) * (witness + 1),
                 eq_line("product at witness", (m + 1) * (witness + 1),
                         prod.counts_product[witness - 1]));
    result.check(prod.counts_product[witness] == m * (witness + 2),
                 eq_line("product one past witness", m * (witness + 2),
                         prod.counts_product[witness]));
  }
  return result;
}

std::string render_suite(const SuiteResult& result) {
  std::ostringstream out;
  out << "suite " << result.suite << "\n";
  for (const std::string& line : result.lines) out << "  " << line << "\n";
  out << (result.pass ? "PASS" : "FAIL") << " " << result.suite << "\n";
  return out.str();
}

}  // namespace shiftseq
