#include "qpn/propagation.hpp"

#include <algorithm>
#include <ostream>

namespace qpn {

namespace {

class Propagator {
 public:
  Propagator(const InfluenceGraph& graph, const NodeMask& blocked,
             const PropagationOptions& options)
      : graph_(graph),
        blocked_(blocked),
        options_(options),
        n_(graph.network().size()),
        signs_(n_, Sign::zero),
        seen_(n_ * 2 * 4) {
    trace_.visits.assign(n_, 0);
    trace_.sign_changes.assign(n_, 0);
  }

  PropagationResult run(NodeIndex source, Sign seed) {
    NodeMask trail(n_);
    trail.set(source);
    receive(source, source, seed, std::nullopt, trail);
    return {std::move(signs_), std::move(trace_)};
  }

 private:
  void receive(NodeIndex from, NodeIndex to, Sign message, std::optional<LinkKind> arrival,
               const NodeMask& trail) {
    trace_.messages.push_back({from, to, message});
    ++trace_.visits[to];
    const Sign updated = signs_[to] + message;
    if (updated != signs_[to]) {
      signs_[to] = updated;
      ++trace_.sign_changes[to];
    }
    for (const Link* link : ordered_links(to)) {
      if (!may_continue(arrival, link->kind)) continue;
      const NodeIndex next = link->to;
      if (next == from || trail.test(next) || trail.test(link->via) || blocked_.test(next)) {
        continue;
      }
      const Sign forwarded = message * link->sign;
      if (forwarded == Sign::zero) continue;
      NodeMask next_trail = trail;
      next_trail.set(next).set(link->via);
      if (dominated(next, link->kind, forwarded, next_trail)) continue;
      receive(to, next, forwarded, link->kind, next_trail);
    }
  }

  // Records the state and reports whether an equivalent visit over a subset of nodes
  // already happened; that visit covered every continuation available now.
  bool dominated(NodeIndex v, LinkKind arrival, Sign message, const NodeMask& trail) {
    const std::size_t direction = arrival == LinkKind::to_child ? 1 : 0;
    auto& masks = seen_[(v * 2 + direction) * 4 + static_cast<std::size_t>(message)];
    for (const auto& m : masks) {
      if (m.is_subset_of(trail)) return true;
    }
    masks.push_back(trail);
    return false;
  }

  std::vector<const Link*> ordered_links(NodeIndex v) const {
    std::vector<const Link*> out;
    for (const auto& l : graph_.links(v)) out.push_back(&l);
    if (!options_.visit_rank.empty()) {
      std::stable_sort(out.begin(), out.end(), [&](const Link* a, const Link* b) {
        return options_.visit_rank[a->to] < options_.visit_rank[b->to];
      });
    }
    return out;
  }

  const InfluenceGraph& graph_;
  const NodeMask& blocked_;
  const PropagationOptions& options_;
  std::size_t n_;
  SignMap signs_;
  PropagationTrace trace_;
  std::vector<std::vector<NodeMask>> seen_;
};

}  // namespace

PropagationResult propagate_from(const Network& net, NodeIndex source, Sign seed,
                                 std::span<const Observation> observations,
                                 const PropagationOptions& options) {
  if (source >= net.size()) throw InputError("propagation source is not in the network");
  if (!options.visit_rank.empty() && options.visit_rank.size() != net.size()) {
    throw InputError("visit rank must cover every node");
  }
  NodeMask blocked(net.size());
  for (const auto& o : observations) {
    if (o.node >= net.size()) throw InputError("observation names a node outside the network");
    blocked.set(o.node);
  }
  blocked.reset(source);
  const InfluenceGraph graph(net, observations);
  return Propagator(graph, blocked, options).run(source, seed);
}

PropagationResult propagate(const Network& net, const Query& query,
                            const PropagationOptions& options) {
  check_query(net, query);
  const auto observations = all_observations(query);
  return propagate_from(net, query.evidence.node, sign_of(query.evidence.value), observations,
                        options);
}

Sign net_influence(const Network& net, NodeIndex source, Sign seed, NodeIndex target,
                   std::span<const Observation> observations) {
  if (target >= net.size()) throw InputError("target is not in the network");
  return propagate_from(net, source, seed, observations).signs[target];
}

void write_trace(std::ostream& os, const Network& net, const PropagationTrace& trace) {
  for (const auto& m : trace.messages) {
    os << net.label(m.from) << " -> " << net.label(m.to) << " : " << m.sign << '\n';
  }
}

}  // namespace qpn
