#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qpn/network.hpp"

namespace qpn {

// Network files are JSON objects:
//
//   {
//     "nodes": ["A", "B", "C"],
//     "arcs": [{"from": "A", "to": "C", "sign": "+"}, ...],
//     "synergies": [{"pair": ["A", "B"], "child": "C", "value": true, "sign": "-"}, ...]
//   }
//
// "synergies" may be omitted. Syntax errors are reported as "line:column: message";
// structurally invalid networks (cycles, duplicate arcs, bad synergies) are rejected.
Network parse_network(std::string_view text);
Network load_network(const std::filesystem::path& path);

std::string network_to_json(const Network& net);
void save_network(const Network& net, const std::filesystem::path& path);

}  // namespace qpn
