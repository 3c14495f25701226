#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shiftseq/constructions.hpp"
#include "shiftseq/engine.hpp"
#include "shiftseq/graph_io.hpp"
#include "shiftseq/sturmian.hpp"
#include "shiftseq/verify.hpp"

namespace {

using namespace shiftseq;

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidSpecError("empty entry in list: " + text);
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (out.empty()) throw InvalidSpecError("empty list: " + text);
  return out;
}

PartitionSpec parse_partition_spec(std::uint32_t n, const std::string& partition,
                                   const std::string& rates) {
  PartitionSpec spec;
  spec.n = n;
  std::stringstream ss(partition);
  std::string block;
  while (std::getline(ss, block, '|')) spec.partition.push_back(parse_u32_list(block));
  spec.rates = parse_u32_list(rates);
  spec.validate();
  return spec;
}

Quantity parse_quantity(const std::string& text) {
  if (text == "follower") return Quantity::follower;
  if (text == "extender") return Quantity::extender;
  throw InvalidSpecError("quantity must be follower or extender: " + text);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidGraphError("cannot write " + out_path);
  out << text;
}

PresentedShift load_trimmed(const std::string& path) {
  PresentedShift shift = load_shift(path);
  std::vector<Vertex> removed;
  if (shift.graph.is_essential()) return shift;
  PresentedShift trimmed = trim_shift(shift, &removed);
  std::cerr << "note: trimmed " << removed.size()
            << " stranded vertex(es) before analysis\n";
  return trimmed;
}

int run(int argc, char** argv) {
  CLI::App app{"follower/extender set sequences of sofic shifts"};
  app.require_subcommand(1);
  EngineOptions engine_opts;
  app.add_option("--closure-budget", engine_opts.closure_budget,
                 "cap on subset/relation closure sizes");

  // construct gns
  auto* construct = app.add_subcommand("construct", "build a presentation");
  auto* gns = construct->add_subcommand("gns", "three-loop residue graph");
  std::uint32_t gns_n = 1;
  std::string gns_s;
  std::int64_t gns_istar = -1;
  std::string gns_out;
  gns->add_option("--n", gns_n, "loop length n")->required();
  gns->add_option("--s", gns_s, "residues, e.g. 0,3")->required();
  gns->add_option("--istar", gns_istar, "chaining residue (default min S)");
  gns->add_option("--out", gns_out, "output graph file");

  // predicates
  auto* predicates = app.add_subcommand("predicates", "structural predicates");
  std::string pred_graph, pred_word, pred_out;
  predicates->add_option("graph", pred_graph, "graph JSON file")->required();
  predicates->add_option("--word", pred_word, "word for synchronizing status");
  predicates->add_option("--out", pred_out, "output JSON file");

  // sequence
  auto* sequence = app.add_subcommand("sequence", "count sequence of a graph");
  std::string seq_graph, seq_quantity = "follower", seq_out, seq_csv;
  std::uint64_t seq_lmax = 50;
  sequence->add_option("graph", seq_graph, "graph JSON file")->required();
  sequence->add_option("--quantity", seq_quantity, "follower|extender");
  sequence->add_option("--lmax", seq_lmax, "largest length")->required();
  sequence->add_option("--out", seq_out, "report JSON file");
  sequence->add_option("--csv", seq_csv, "CSV file of (length,count)");

  // pump
  auto* pump = app.add_subcommand("pump", "pumping decomposition of a word");
  std::string pump_graph, pump_word;
  pump->add_option("graph", pump_graph, "graph JSON file")->required();
  pump->add_option("--word", pump_word, "comma-separated labels")->required();

  // join
  auto* join_cmd = app.add_subcommand("join", "join two presentations");
  std::string join_a, join_b, join_out;
  join_cmd->add_option("graph1", join_a, "first graph file")->required();
  join_cmd->add_option("graph2", join_b, "second graph file")->required();
  join_cmd->add_option("--out", join_out, "output graph file");

  // target
  auto* target = app.add_subcommand("target", "partition-driven construction");
  std::string target_quantity, target_partition, target_rates, target_out;
  std::uint32_t target_n = 1;
  target->add_option("quantity", target_quantity, "follower|extender")->required();
  target->add_option("--n", target_n, "period n")->required();
  target->add_option("--partition", target_partition, "blocks, e.g. 0,2|1|3")
      ->required();
  target->add_option("--rates", target_rates, "rates, e.g. 0,1,2")->required();
  target->add_option("--out", target_out, "output graph file");

  // sturmian
  auto* sturmian = app.add_subcommand("sturmian", "factor counts of the sturmian shift");
  std::uint64_t st_lmax = 40, st_prefix_budget = 1ULL << 20;
  std::string st_out;
  sturmian->add_option("--lmax", st_lmax, "largest length")->required();
  sturmian->add_option("--prefix-budget", st_prefix_budget, "prefix letters cap");
  sturmian->add_option("--out", st_out, "output JSON file");

  // product
  auto* product = app.add_subcommand("product", "product with the sturmian shift");
  std::string product_graph, product_quantity = "extender", product_out;
  std::uint64_t product_lmax = 100;
  product->add_option("graph", product_graph, "graph JSON file")->required();
  product->add_option("--quantity", product_quantity, "follower|extender");
  product->add_option("--lmax", product_lmax, "largest length")->required();
  product->add_option("--out", product_out, "output JSON file");

  // verify
  auto* verify = app.add_subcommand("verify", "end-to-end verification suites");
  std::string suite;
  verify->add_option("suite", suite,
                     "thm-counts|thm-join|thm-partition-F|thm-partition-E|"
                     "thm-bounds|thm-periodic|thm-nonsofic")
      ->required();
  std::uint32_t v_n = 1, v_n2 = 1;
  std::string v_s, v_s2, v_partition, v_rates, v_quantity = "extender";
  std::int64_t v_istar = -1, v_istar2 = -1;
  std::optional<std::uint64_t> v_lmax;
  verify->add_option("--n", v_n, "gns n / partition n");
  verify->add_option("--s", v_s, "gns residues");
  verify->add_option("--istar", v_istar, "gns chaining residue");
  verify->add_option("--n2", v_n2, "second gns n (thm-join)");
  verify->add_option("--s2", v_s2, "second gns residues (thm-join)");
  verify->add_option("--istar2", v_istar2, "second gns chaining residue");
  verify->add_option("--partition", v_partition, "partition blocks");
  verify->add_option("--rates", v_rates, "partition rates");
  verify->add_option("--quantity", v_quantity, "thm-nonsofic quantity");
  std::uint64_t v_lmax_raw = 0;
  auto* lmax_opt = verify->add_option("--lmax", v_lmax_raw, "largest length");

  CLI11_PARSE(app, argc, argv);

  auto make_gns_spec = [](std::uint32_t n, const std::string& s, std::int64_t istar) {
    if (istar < 0) return GnsSpec::make(n, parse_u32_list(s));
    return GnsSpec::make(n, parse_u32_list(s), static_cast<std::uint32_t>(istar));
  };

  if (gns->parsed()) {
    PresentedShift shift = build_gns(make_gns_spec(gns_n, gns_s, gns_istar));
    emit(shift_to_json(shift), gns_out);
    return 0;
  }

  if (predicates->parsed()) {
    PresentedShift shift = load_shift(pred_graph);
    std::vector<Vertex> removed;
    if (!shift.graph.is_essential()) shift = trim_shift(shift, &removed);
    nlohmann::ordered_json j;
    j["vertices"] = shift.graph.vertex_count();
    j["trimmed_vertices"] = removed;
    j["right_resolving"] = is_right_resolving(shift.graph);
    j["left_resolving"] = is_left_resolving(shift.graph);
    j["irreducible"] = is_irreducible(shift.graph);
    auto prim = primitivity_distance(shift.graph);
    if (prim)
      j["primitivity_distance"] = *prim;
    else
      j["primitivity_distance"] = nullptr;
    j["follower_separated"] = is_follower_separated(shift.graph, engine_opts);
    j["extender_separated"] = is_extender_separated(shift.graph, engine_opts);
    if (!pred_word.empty()) {
      SyncStatus st = synchronizing_status(shift.graph, parse_word(pred_word));
      j["word"] = pred_word;
      j["synchronizing"] = {{"right", st.right}, {"left", st.left}, {"bi", st.bi()}};
    }
    emit(j.dump(2) + "\n", pred_out);
    return 0;
  }

  if (sequence->parsed()) {
    PresentedShift shift = load_trimmed(seq_graph);
    Quantity q = parse_quantity(seq_quantity);
    SequenceReport rep = q == Quantity::follower
                             ? follower_sequence(shift, seq_lmax, engine_opts)
                             : extender_sequence(shift, seq_lmax, engine_opts);
    if (!seq_csv.empty()) emit(report_to_csv(rep), seq_csv);
    if (!seq_out.empty())
      emit(report_to_json(rep), seq_out);
    else if (seq_csv.empty())
      emit(report_render(rep), "");
    return 0;
  }

  if (pump->parsed()) {
    PresentedShift shift = load_trimmed(pump_graph);
    PumpDecomposition d = pump_decomposition(shift, parse_word(pump_word), engine_opts);
    nlohmann::ordered_json j;
    j["x"] = word_to_string(d.x);
    j["y"] = word_to_string(d.y);
    j["z"] = word_to_string(d.z);
    emit(j.dump(2) + "\n", "");
    return 0;
  }

  if (join_cmd->parsed()) {
    PresentedShift joined = join(load_trimmed(join_a), load_trimmed(join_b));
    emit(shift_to_json(joined), join_out);
    return 0;
  }

  if (target->parsed()) {
    PartitionSpec spec = parse_partition_spec(target_n, target_partition, target_rates);
    PresentedShift shift = parse_quantity(target_quantity) == Quantity::follower
                               ? build_follower_target(spec)
                               : build_extender_target(spec);
    emit(shift_to_json(shift), target_out);
    return 0;
  }

  if (sturmian->parsed()) {
    SturmianModel model{st_prefix_budget};
    nlohmann::ordered_json j;
    j["factor_counts"] = nlohmann::ordered_json::array();
    for (std::uint32_t ell = 1; ell <= st_lmax; ++ell) {
      auto counts = sturmian_counts(ell);
      j["factor_counts"].push_back(
          {{"length", ell},
           {"factors", sturmian_factors(model, ell).size()},
           {"follower", counts.first},
           {"extender", counts.second}});
    }
    emit(j.dump(2) + "\n", st_out);
    return 0;
  }

  if (product->parsed()) {
    PresentedShift shift = load_trimmed(product_graph);
    Quantity q = parse_quantity(product_quantity);
    SequenceReport rep = q == Quantity::follower
                             ? follower_sequence(shift, product_lmax, engine_opts)
                             : extender_sequence(shift, product_lmax, engine_opts);
    emit(product_report_to_json(product_counts(rep, product_lmax)), product_out);
    return 0;
  }

  if (verify->parsed()) {
    if (lmax_opt->count() > 0) v_lmax = v_lmax_raw;
    SuiteResult result;
    if (suite == "thm-counts") {
      result = verify_counts(make_gns_spec(v_n, v_s, v_istar), v_lmax.value_or(60),
                             engine_opts);
    } else if (suite == "thm-join") {
      result = verify_join(make_gns_spec(v_n, v_s, v_istar),
                           make_gns_spec(v_n2, v_s2, v_istar2), v_lmax.value_or(60),
                           engine_opts);
    } else if (suite == "thm-partition-F") {
      result = verify_partition_follower(
          parse_partition_spec(v_n, v_partition, v_rates), v_lmax.value_or(80),
          engine_opts);
    } else if (suite == "thm-partition-E") {
      result = verify_partition_extender(
          parse_partition_spec(v_n, v_partition, v_rates), v_lmax, engine_opts);
    } else if (suite == "thm-bounds") {
      result = verify_bounds(make_gns_spec(v_n, v_s, v_istar), v_lmax.value_or(80),
                             engine_opts);
    } else if (suite == "thm-periodic") {
      result = verify_periodic(make_gns_spec(v_n, v_s, v_istar), v_lmax.value_or(80),
                               engine_opts);
    } else if (suite == "thm-nonsofic") {
      result = verify_nonsofic(make_gns_spec(v_n, v_s, v_istar),
                               parse_quantity(v_quantity), v_lmax.value_or(200),
                               engine_opts);
    } else {
      std::cerr << "error: unknown suite " << suite << "\n";
      return 2;
    }
    std::cout << render_suite(result);
    return result.pass ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
