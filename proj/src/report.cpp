#include <sstream>

#include <json.hpp>

#include "shiftseq/engine.hpp"

namespace shiftseq {

std::string report_to_json(const SequenceReport& report) {
  nlohmann::ordered_json j;
  j["quantity"] = quantity_name(report.quantity);
  j["counts"] = report.counts;
  j["preperiod"] = report.preperiod;
  j["period"] = report.period;
  j["certified"] = report.certified;
  j["liminf"] = report.liminf;
  j["limsup"] = report.limsup;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const SequenceReport& report) {
  std::ostringstream out;
  out << "length,count\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i)
    out << i + 1 << ',' << report.counts[i] << '\n';
  return out.str();
}

std::string report_render(const SequenceReport& report) {
  std::ostringstream out;
  out << "# " << quantity_name(report.quantity) << " set sequence\n";
  out << "length  count\n";
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    std::string len = std::to_string(i + 1);
    out << len << std::string(len.size() < 6 ? 6 - len.size() : 1, ' ') << "  "
        << report.counts[i] << '\n';
  }
  if (report.certified) {
    out << "certified: yes (layer preperiod " << report.preperiod << ", layer period "
        << report.period << "; count period " << report.count_period << " from length "
        << report.count_preperiod << ")\n";
  } else {
    out << "certified: no (no layer recurrence within the computed horizon)\n";
  }
  out << "liminf " << report.liminf << ", limsup " << report.limsup << "\n";
  return out.str();
}

}  // namespace shiftseq
