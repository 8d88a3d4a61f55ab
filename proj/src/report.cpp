#include "qpn/report.hpp"

#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qpn {

namespace {

using nlohmann::json;

std::string joined(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

const ResolverChainSign& chain_of(const Explanation& e, const BranchTerm& t) {
  for (const auto& c : e.chain_signs) {
    if (c.resolver == t.resolver && c.chain_index == t.chain_index) return c;
  }
  throw InternalError("branch term without a chain");
}

std::string term_text(const Explanation& e, const BranchTerm& t) {
  return t.resolver + ":" + std::string(glyph(t.term)) + " via " +
         joined(chain_of(e, t).path, "->");
}

std::string side_text(const Explanation& e, const std::vector<BranchTerm>& terms) {
  std::vector<std::string> parts;
  for (const auto& t : terms) parts.push_back(term_text(e, t));
  return joined(parts, " (+) ");
}

std::string branch_text(const Explanation& e, const Branch& b) {
  const std::string target = "sign[" + e.pivot + "]=";
  if (!b.conditional()) return target + std::string(glyph(b.pivot_sign(true)));
  return "if |" + side_text(e, b.positive) + "| >= |" + side_text(e, b.negative) +
         "| then " + target + "+ else " + target + "-";
}

std::string assignment_text(const Branch& b) {
  std::vector<std::string> parts;
  for (const auto& [label, s] : b.assignment) parts.push_back(label + "=" + std::string(glyph(s)));
  return joined(parts, ", ");
}

json term_json(const Explanation& e, const BranchTerm& t) {
  return {{"resolver", t.resolver},
          {"chain", t.chain_index},
          {"path", chain_of(e, t).path},
          {"resolver_sign", std::string(glyph(t.resolver_sign))},
          {"chain_sign", std::string(glyph(t.chain_sign))},
          {"term", std::string(glyph(t.term))}};
}

json to_json(const Explanation& e) {
  json j;
  j["evidence"] = {{"node", e.evidence}, {"sign", std::string(glyph(e.evidence_sign))}};
  j["interest"] = e.interest;
  j["pivot"] = e.pivot;
  j["candidates"] = e.candidates;
  j["relevant_nodes"] = e.relevant_nodes;
  j["pruned_nodes"] = e.pruned_nodes;
  j["boundary"] = e.boundary ? json(*e.boundary) : json(nullptr);
  j["frontier"] = e.frontier;
  j["chain_signs"] = json::array();
  for (const auto& c : e.chain_signs) {
    j["chain_signs"].push_back({{"resolver", c.resolver},
                                {"chain", c.chain_index},
                                {"path", c.path},
                                {"sign", std::string(glyph(c.sign))}});
  }
  j["branches"] = json::array();
  for (const auto& b : e.branches) {
    json jb;
    jb["assignment"] = json::object();
    for (const auto& [label, s] : b.assignment) jb["assignment"][label] = std::string(glyph(s));
    jb["positive"] = json::array();
    for (const auto& t : b.positive) jb["positive"].push_back(term_json(e, t));
    jb["negative"] = json::array();
    for (const auto& t : b.negative) jb["negative"].push_back(term_json(e, t));
    jb["conditional"] = b.conditional();
    if (b.conditional()) {
      jb["pivot_sign"] = {{"positive_at_least_as_strong", "+"}, {"otherwise", "-"}};
    } else {
      jb["pivot_sign"] = std::string(glyph(b.pivot_sign(true)));
    }
    jb["text"] = branch_text(e, b);
    j["branches"].push_back(std::move(jb));
  }
  j["pivot_to_interest"] = std::string(glyph(e.pivot_to_interest));
  j["notes"] = e.notes;
  j["children"] = json::array();
  for (const auto& c : e.children) j["children"].push_back(to_json(c));
  return j;
}

}  // namespace

void write_explanation(std::ostream& os, const Explanation& e, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << "evidence: " << e.evidence << "=" << e.evidence_sign << ", interest: " << e.interest
     << '\n';
  os << pad << "relevant network: " << joined(e.relevant_nodes, " ") << '\n';
  os << pad << "pivot: " << e.pivot << " (candidates " << joined(e.candidates, " ") << ")\n";
  os << pad << "pruned network: " << joined(e.pruned_nodes, " ") << '\n';
  os << pad << "boundary node: " << e.boundary.value_or("none") << '\n';
  os << pad << "resolution frontier: " << joined(e.frontier, " ") << '\n';
  for (const auto& c : e.chain_signs) {
    os << pad << "  " << c.resolver << " #" << c.chain_index << ": " << joined(c.path, "->")
       << " (" << c.sign << ")\n";
  }
  for (const auto& b : e.branches) {
    if (e.branches.size() > 1) os << pad << "when " << assignment_text(b) << ":\n";
    os << pad << "  " << branch_text(e, b) << '\n';
  }
  os << pad << "sign[" << e.interest << "] = sign[" << e.pivot << "] (x) " << e.pivot_to_interest
     << '\n';
  for (const auto& n : e.notes) os << pad << "note: " << n << '\n';
  for (const auto& c : e.children) {
    os << pad << "explaining sign[" << c.interest << "]:\n";
    write_explanation(os, c, indent + 1);
  }
}

std::string explanation_text(const Explanation& e) {
  std::ostringstream os;
  write_explanation(os, e);
  return os.str();
}

std::string explanation_json(const Explanation& e) { return to_json(e).dump(2) + "\n"; }

}  // namespace qpn
