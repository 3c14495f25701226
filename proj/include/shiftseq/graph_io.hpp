#pragma once

#include <string>

#include "shiftseq/graph.hpp"

namespace shiftseq {

// Canonical JSON form:
//   {"vertices": N,
//    "edges": [{"from": i, "label": "a", "to": j}, ...],   // sorted
//    "sync_loop": {"vertex": i, "label": "q"} | null,
//    "provenance": "..."}
// Edges are sorted by (from, label, to), so serialize(parse(s)) == s for
// canonical inputs and construct -> serialize -> parse -> serialize is
// byte-identical.
std::string shift_to_json(const PresentedShift& shift);
PresentedShift shift_from_json(const std::string& text);

PresentedShift load_shift(const std::string& path);
void save_shift(const PresentedShift& shift, const std::string& path);

}  // namespace shiftseq
