#include "qpn/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpn {

namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the position just past the offending character.
  if (column > 1) --column;
  return std::to_string(line) + ":" + std::to_string(column);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

std::string string_at(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

Sign sign_at(const json& obj, const std::string& where) {
  const std::string text = string_at(obj, "sign", where);
  const auto s = parse_sign(text);
  if (!s) throw InputError(where + ": unknown sign \"" + text + "\"");
  return *s;
}

}  // namespace

Network parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (const auto colon = what.find(": "); colon != std::string::npos) {
      what = what.substr(colon + 2);
    }
    throw InputError(line_column(text, e.byte) + ": " + what);
  }
  if (!doc.is_object()) throw InputError("network: expected a JSON object");

  Network net;
  const json& nodes = member(doc, "nodes", "network");
  if (!nodes.is_array()) throw InputError("network: \"nodes\" must be an array");
  for (const auto& n : nodes) {
    if (!n.is_string()) throw InputError("network: node labels must be strings");
    net.add_node(n.get<std::string>());
  }

  const json& arcs = member(doc, "arcs", "network");
  if (!arcs.is_array()) throw InputError("network: \"arcs\" must be an array");
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arc " + std::to_string(i);
    net.add_arc(string_at(arcs[i], "from", where), string_at(arcs[i], "to", where),
                sign_at(arcs[i], where));
  }

  if (doc.contains("synergies")) {
    const json& syn = doc.at("synergies");
    if (!syn.is_array()) throw InputError("network: \"synergies\" must be an array");
    for (std::size_t i = 0; i < syn.size(); ++i) {
      const std::string where = "synergy " + std::to_string(i);
      const json& pair = member(syn[i], "pair", where);
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw InputError(where + ": \"pair\" must hold two node labels");
      }
      const json& value = member(syn[i], "value", where);
      if (!value.is_boolean()) throw InputError(where + ": \"value\" must be true or false");
      net.add_synergy(pair[0].get<std::string>(), pair[1].get<std::string>(),
                      string_at(syn[i], "child", where), value.get<bool>(),
                      sign_at(syn[i], where));
    }
  }

  if (const auto problems = validate(net); !problems.empty()) {
    std::string msg = "invalid network:";
    for (const auto& p : problems) msg += " " + p.rule + " (" + p.detail + ");";
    msg.pop_back();
    throw InputError(msg);
  }
  return net;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ":" + e.what());
  }
}

std::string network_to_json(const Network& net) {
  json doc;
  doc["nodes"] = net.labels();
  doc["arcs"] = json::array();
  for (const auto& a : net.arcs()) {
    doc["arcs"].push_back(
        {{"from", net.label(a.tail)}, {"to", net.label(a.head)}, {"sign", std::string(glyph(a.sign))}});
  }
  if (!net.synergies().empty()) {
    doc["synergies"] = json::array();
    for (const auto& s : net.synergies()) {
      doc["synergies"].push_back({{"pair", {net.label(s.first), net.label(s.second)}},
                                  {"child", net.label(s.child)},
                                  {"value", s.child_value},
                                  {"sign", std::string(glyph(s.sign))}});
    }
  }
  return doc.dump(2) + "\n";
}

void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << network_to_json(net);
}

}  // namespace qpn
