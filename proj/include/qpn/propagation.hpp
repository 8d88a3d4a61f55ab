#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "qpn/influence_graph.hpp"
#include "qpn/network.hpp"

namespace qpn {

struct Message {
  NodeIndex from;
  NodeIndex to;
  Sign sign;
};

struct PropagationTrace {
  std::vector<std::size_t> visits;        // messages received per node
  std::vector<std::size_t> sign_changes;  // sign updates per node; never exceeds 2
  std::vector<Message> messages;          // in send order; the seed is logged as v -> v
};

struct PropagationResult {
  SignMap signs;
  PropagationTrace trace;
};

struct PropagationOptions {
  // Optional neighbour-visit priority (lower first), indexed by node. Empty means the
  // default ascending-label order. The resulting signs do not depend on it.
  std::vector<std::size_t> visit_rank;
};

// Sign propagation for a single new observation.
//
// Every node starts at '0'; the evidence node is seeded with '+' (true) or '-' (false).
// Messages travel along simple chains of the influence graph built from all
// observations: they never enter an observed node, never pass a head-to-head node, and
// cross between co-parents only over induced intercausal edges. A node's sign is the
// sign-sum of the messages it receives, and each message is the sign-product of the
// link signs along the chain it followed. A partial chain is abandoned when an earlier
// one reached the same node in the same direction with the same message over a subset
// of its nodes, so the result equals the sign-sum over all such chains.
PropagationResult propagate(const Network& net, const Query& query,
                            const PropagationOptions& options = {});

// Propagates `seed` from `source` with `observations` as the fixed context; the source
// itself is never treated as observed.
PropagationResult propagate_from(const Network& net, NodeIndex source, Sign seed,
                                 std::span<const Observation> observations,
                                 const PropagationOptions& options = {});

// Sign at `target` after seeding `source`; with seed '+' this is the net influence of
// source on target.
Sign net_influence(const Network& net, NodeIndex source, Sign seed, NodeIndex target,
                   std::span<const Observation> observations);

// One line per message: "from -> to : sign".
void write_trace(std::ostream& os, const Network& net, const PropagationTrace& trace);

}  // namespace qpn
