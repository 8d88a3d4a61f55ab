#include "qpn/influence_graph.hpp"

#include <algorithm>

namespace qpn {

std::vector<IntercausalEdge> induce_intercausal(const Network& net,
                                                std::span<const Observation> observations) {
  std::vector<IntercausalEdge> out;
  const auto& synergies = net.synergies();
  for (std::size_t s = 0; s < synergies.size(); ++s) {
    const auto& syn = synergies[s];
    const bool matched = std::any_of(observations.begin(), observations.end(), [&](auto& o) {
      return o.node == syn.child && o.value == syn.child_value;
    });
    if (matched) out.push_back({syn.first, syn.second, syn.sign, s});
  }
  return out;
}

InfluenceGraph::InfluenceGraph(const Network& net, std::span<const Observation> observations)
    : net_(&net), intercausal_(induce_intercausal(net, observations)), links_(net.size()) {
  for (NodeIndex v = 0; v < net.size(); ++v) {
    for (auto arc : net.out_arcs(v)) {
      const auto& a = net.arcs()[arc];
      links_[v].push_back({a.head, a.sign, LinkKind::to_child, a.head});
    }
    for (auto arc : net.in_arcs(v)) {
      const auto& a = net.arcs()[arc];
      links_[v].push_back({a.tail, a.sign, LinkKind::to_parent, a.tail});
    }
  }
  for (const auto& edge : intercausal_) {
    const NodeIndex child = net.synergies()[edge.synergy].child;
    links_[edge.first].push_back({edge.second, edge.sign, LinkKind::intercausal, child});
    links_[edge.second].push_back({edge.first, edge.sign, LinkKind::intercausal, child});
  }
  for (auto& list : links_) {
    std::stable_sort(list.begin(), list.end(), [&](const Link& a, const Link& b) {
      return net.label_less(a.to, b.to);
    });
  }
}

std::vector<NodeIndex> Chain::nodes() const {
  std::vector<NodeIndex> out{start};
  for (const auto& l : links) out.push_back(l.to);
  return out;
}

Sign Chain::sign() const {
  Sign s = Sign::plus;
  for (const auto& l : links) s *= l.sign;
  return s;
}

namespace {

class ExistenceSearch {
 public:
  ExistenceSearch(const InfluenceGraph& graph, NodeIndex to, const NodeMask& blocked,
                  std::optional<LinkKind> departure)
      : graph_(graph),
        to_(to),
        blocked_(blocked),
        departure_(departure),
        failed_(2 * graph.network().size()) {}

  bool from(NodeIndex v, std::optional<LinkKind> arrival, const NodeMask& used) {
    for (const auto& link : graph_.links(v)) {
      if (!may_continue(arrival, link.kind)) continue;
      if (used.test(link.to) || used.test(link.via)) continue;
      if (link.to == to_) {
        if (!departure_ || may_continue(link.kind, *departure_)) return true;
        continue;
      }
      if (blocked_.test(link.to)) continue;
      NodeMask next = used;
      next.set(link.to).set(link.via);
      auto& failures = failed_[2 * link.to + (link.kind == LinkKind::to_child ? 1 : 0)];
      const bool dominated = std::any_of(failures.begin(), failures.end(),
                                         [&](const NodeMask& m) { return m.is_subset_of(next); });
      if (dominated) continue;
      if (from(link.to, link.kind, next)) return true;
      failures.push_back(next);
    }
    return false;
  }

 private:
  const InfluenceGraph& graph_;
  NodeIndex to_;
  const NodeMask& blocked_;
  std::optional<LinkKind> departure_;
  std::vector<std::vector<NodeMask>> failed_;
};

}  // namespace

bool exists_chain(const InfluenceGraph& graph, NodeIndex from, NodeIndex to,
                  const NodeMask& blocked, const NodeMask& avoid,
                  std::optional<LinkKind> departure) {
  if (avoid.test(from) || avoid.test(to)) return false;
  if (from == to) return true;
  NodeMask used = avoid;
  used.set(from);
  ExistenceSearch search(graph, to, blocked, departure);
  return search.from(from, std::nullopt, used);
}

}  // namespace qpn
