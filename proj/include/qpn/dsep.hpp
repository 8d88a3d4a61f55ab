#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qpn/network.hpp"

namespace qpn {

// True iff the chain is blocked given `observed`: some interior node is observed and not
// head-to-head on the chain, or is head-to-head, unobserved, and has no observed
// descendant. Throws InputError if `chain` is not a simple trail of `net`.
bool chain_blocked(const Network& net, std::span<const NodeIndex> chain,
                   const NodeMask& observed);

// True iff every trail between x and y is blocked given `observed`. Observed endpoints
// are d-separated from everything.
bool d_separated(const Network& net, NodeIndex x, NodeIndex y, const NodeMask& observed);

// Every node that lies on some simple trail from `from` to `to` left unblocked by
// `observed` (endpoints included when such a trail exists). Exact; the search prunes
// partial trails by subset dominance rather than enumerating them all.
NodeMask nodes_on_active_chains(const Network& net, NodeIndex from, NodeIndex to,
                                const NodeMask& observed);

// One unblocked simple trail from `from` to `to`, if any.
std::optional<std::vector<NodeIndex>> find_active_chain(const Network& net, NodeIndex from,
                                                        NodeIndex to,
                                                        const NodeMask& observed);

}  // namespace qpn
