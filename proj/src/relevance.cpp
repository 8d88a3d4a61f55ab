#include "qpn/relevance.hpp"

#include <deque>

#include "qpn/dsep.hpp"

namespace qpn {

NodeMask bayes_ball(const Network& net, const NodeMask& observed, NodeIndex interest) {
  if (interest >= net.size()) throw InputError("interest node is not in the network");
  if (observed.test(interest)) throw InputError("interest node must not be observed");
  NodeMask top(net.size());
  NodeMask bottom(net.size());
  NodeMask visited(net.size());
  // (node, ball arrives from a child)
  std::deque<std::pair<NodeIndex, bool>> schedule{{interest, true}};
  while (!schedule.empty()) {
    auto [v, from_child] = schedule.front();
    schedule.pop_front();
    visited.set(v);
    const bool obs = observed.test(v);
    if (from_child && !obs) {
      if (!top.test(v)) {
        top.set(v);
        for (NodeIndex p : net.parents(v)) schedule.emplace_back(p, true);
      }
      if (!bottom.test(v)) {
        bottom.set(v);
        for (NodeIndex c : net.children(v)) schedule.emplace_back(c, false);
      }
    } else if (!from_child) {
      if (obs && !top.test(v)) {
        top.set(v);
        for (NodeIndex p : net.parents(v)) schedule.emplace_back(p, true);
      }
      if (!obs && !bottom.test(v)) {
        bottom.set(v);
        for (NodeIndex c : net.children(v)) schedule.emplace_back(c, false);
      }
    }
  }
  return top | (visited & observed);
}

namespace {

NodeMask chain_nodes(const Network& net, const Query& query) {
  return nodes_on_active_chains(net, query.evidence.node, query.interest,
                                prior_observed_mask(net, query));
}

}  // namespace

NodeMask nuisance_nodes(const Network& net, const Query& query, const NodeMask& requisite) {
  check_query(net, query);
  NodeMask out = requisite;
  for (NodeIndex v : chain_nodes(net, query).indices()) out.reset(v);
  return out;
}

RelevantNetwork relevant_network(const Network& net, const Query& query) {
  check_query(net, query);
  NodeMask keep =
      bayes_ball(net, all_observed_mask(net, query), query.interest).set(query.evidence.node);
  for (NodeIndex v : nuisance_nodes(net, query, keep).indices()) keep.reset(v);
  if (!keep.test(query.interest)) {
    return {RelevanceOutcome::disconnected, net.empty_mask(), Network{}};
  }
  return {RelevanceOutcome::ok, keep, net.subnetwork(keep)};
}

std::vector<RelevanceClass> classify(const Network& net, const Query& query) {
  check_query(net, query);
  const NodeMask observed = all_observed_mask(net, query);
  const NodeMask requisite = bayes_ball(net, observed, query.interest);
  const auto relevant = relevant_network(net, query);
  std::vector<RelevanceClass> out(net.size());
  for (NodeIndex v = 0; v < net.size(); ++v) {
    out[v].structural =
        v == query.interest || !d_separated(net, v, query.interest, observed);
    out[v].computational = requisite.test(v);
    out[v].dynamic = relevant.nodes.test(v);
  }
  return out;
}

}  // namespace qpn
