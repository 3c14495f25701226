#include "shiftseq/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace shiftseq {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string shift_to_json(const PresentedShift& shift) {
  ordered_json j;
  j["vertices"] = shift.graph.vertex_count();
  j["edges"] = ordered_json::array();
  for (const Edge& e : shift.graph.edges()) {
    ordered_json je;
    je["from"] = e.from;
    je["label"] = e.label.str();
    je["to"] = e.to;
    j["edges"].push_back(std::move(je));
  }
  if (shift.sync_loop) {
    ordered_json js;
    js["vertex"] = shift.sync_loop->vertex;
    js["label"] = shift.sync_loop->label.str();
    j["sync_loop"] = std::move(js);
  } else {
    j["sync_loop"] = nullptr;
  }
  j["provenance"] = shift.provenance;
  return j.dump(2) + "\n";
}

PresentedShift shift_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidGraphError(std::string("malformed JSON: ") + e.what());
  }
  try {
    std::uint32_t vertices = j.at("vertices").get<std::uint32_t>();
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      edges.push_back({je.at("from").get<Vertex>(),
                       Label(je.at("label").get<std::string>()),
                       je.at("to").get<Vertex>()});
    }
    std::optional<SyncLoop> loop;
    if (j.contains("sync_loop") && !j.at("sync_loop").is_null()) {
      const auto& js = j.at("sync_loop");
      loop = SyncLoop{js.at("vertex").get<Vertex>(),
                      Label(js.at("label").get<std::string>())};
    }
    std::string provenance = j.value("provenance", std::string{});
    PresentedShift shift{LabeledGraph(vertices, std::move(edges)), std::move(loop),
                         std::move(provenance)};
    validate_presented(shift);
    return shift;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidGraphError(std::string("bad graph document: ") + e.what());
  }
}

PresentedShift load_shift(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidGraphError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return shift_from_json(ss.str());
}

void save_shift(const PresentedShift& shift, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidGraphError("cannot write " + path);
  out << shift_to_json(shift);
}

}  // namespace shiftseq
