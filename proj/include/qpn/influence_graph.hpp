#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qpn/network.hpp"

namespace qpn {

// Undirected qualitative link induced between two parents of an observed child whose
// value matches a product synergy.
struct IntercausalEdge {
  NodeIndex first;
  NodeIndex second;
  Sign sign;
  std::size_t synergy;  // index into Network::synergies()
};

std::vector<IntercausalEdge> induce_intercausal(const Network& net,
                                                std::span<const Observation> observations);

enum class LinkKind { to_child, to_parent, intercausal };

// A traversable link out of a node.
struct Link {
  NodeIndex to;
  Sign sign;
  LinkKind kind;
  NodeIndex via;  // observed common child for intercausal links; `to` otherwise
};

// A chain that arrived at a node through `arrival` may leave through `departure`
// unless the node would be head-to-head on the chain.
constexpr bool may_continue(std::optional<LinkKind> arrival, LinkKind departure) noexcept {
  return !(arrival == LinkKind::to_child && departure == LinkKind::to_parent);
}

// The network's arcs, traversable in both directions, plus the intercausal edges
// induced by a set of observations. Links are ordered by the neighbour's label.
//
// A chain in this graph is simple, never passes an observed node or a head-to-head
// node, and may use an intercausal link only if its common child is not already on the
// chain; this is the trail notion used by sign propagation.
class InfluenceGraph {
 public:
  InfluenceGraph(const Network& net, std::span<const Observation> observations);

  [[nodiscard]] const Network& network() const noexcept { return *net_; }
  [[nodiscard]] const std::vector<Link>& links(NodeIndex v) const { return links_.at(v); }
  [[nodiscard]] const std::vector<IntercausalEdge>& intercausal() const noexcept {
    return intercausal_;
  }

 private:
  const Network* net_;
  std::vector<IntercausalEdge> intercausal_;
  std::vector<std::vector<Link>> links_;
};

// A chain as its start node plus the links followed.
struct Chain {
  NodeIndex start;
  std::vector<Link> links;

  [[nodiscard]] NodeIndex end() const { return links.empty() ? start : links.back().to; }
  [[nodiscard]] std::vector<NodeIndex> nodes() const;
  // Product of the link signs.
  [[nodiscard]] Sign sign() const;
};

// Whether some chain runs from `from` to `to` avoiding `avoid` and never entering a node
// in `blocked` (other than `to`), arriving at `to` in a way that lets the chain continue
// along `departure`.
bool exists_chain(const InfluenceGraph& graph, NodeIndex from, NodeIndex to,
                  const NodeMask& blocked, const NodeMask& avoid,
                  std::optional<LinkKind> departure);

}  // namespace qpn
