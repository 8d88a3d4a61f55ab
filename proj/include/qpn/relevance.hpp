#pragma once

#include <vector>

#include "qpn/network.hpp"

namespace qpn {

struct RelevanceClass {
  bool structural = false;
  bool computational = false;
  bool dynamic = false;
  friend bool operator==(const RelevanceClass&, const RelevanceClass&) = default;
};

// Requisite nodes for `interest` given `observed`, by Shachter's Bayes-ball: the nodes
// whose conditional probabilities are needed plus the observed nodes whose values are.
NodeMask bayes_ball(const Network& net, const NodeMask& observed, NodeIndex interest);

// Requisite nodes that lie on no chain from the evidence to the interest node left
// unblocked by the previous observations.
NodeMask nuisance_nodes(const Network& net, const Query& query, const NodeMask& requisite);

enum class RelevanceOutcome { ok, disconnected };

struct RelevantNetwork {
  RelevanceOutcome outcome = RelevanceOutcome::disconnected;
  NodeMask nodes;   // over the input network
  Network network;  // the induced sub-network; empty when disconnected
};

// The sub-network made of every node on an unblocked chain from the evidence to the
// interest node, with the arcs and synergies among them: requisite pruning followed by
// nuisance removal, keeping the evidence node.
RelevantNetwork relevant_network(const Network& net, const Query& query);

// Structural, computational and dynamic relevance of every node to the interest node.
std::vector<RelevanceClass> classify(const Network& net, const Query& query);

}  // namespace qpn
