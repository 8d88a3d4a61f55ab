#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpn/network.hpp"

namespace qpn {

// Nodes whose removal splits the undirected view of the network into more pieces.
NodeMask articulation_nodes(const Network& net);

// Unobserved articulation nodes of a relevant network ordered from the evidence towards
// the interest node, followed by the interest node. Every unblocked chain from the
// evidence to the interest node visits them in this order.
std::vector<NodeIndex> candidate_order(const Network& relevant, const Query& query);

enum class PivotOutcome { found, no_ambiguity };

struct PivotSearch {
  PivotOutcome outcome = PivotOutcome::no_ambiguity;
  NodeIndex pivot = 0;
  std::vector<NodeIndex> candidates;
};

// Throws InputError naming the first ambiguous influence (or active ambiguous synergy),
// which pivot identification does not support.
void reject_ambiguous_influences(const Network& net, const Query& query);

// The node closest to the evidence whose unambiguous sign would fix the sign of the
// interest node. Walks the candidates from the interest side towards the evidence,
// seeding '+' at each in turn and stopping as soon as its successor comes out '?'.
PivotSearch compute_pivot(const Network& relevant, const Query& query);

// Part of the relevant network between the evidence and the pivot: the component
// containing the evidence once the pivot is removed, plus the pivot itself.
NodeMask pruned_mask(const Network& relevant, NodeIndex pivot, const Query& query);
Network pruned_network(const Network& relevant, NodeIndex pivot, const Query& query);

// `query` re-expressed over the pruned network, with the pivot as node of interest.
Query pruned_query(const Network& relevant, const Network& pruned, NodeIndex pivot,
                   const Query& query);

// The evidence node plus every node other than the pivot with sign '?' and at least two
// incoming arcs in the pruned network.
NodeMask candidate_resolvers(const Network& pruned, NodeIndex pivot, const SignMap& signs,
                             const Query& query);

// Resolvers that are the last resolver on some unblocked chain from the evidence to the
// pivot. Found by walking chains backwards from the pivot and stopping at resolvers.
NodeMask resolution_frontier(const Network& pruned, NodeIndex pivot, const NodeMask& resolvers,
                             const Query& query);

struct ResolverChainSign {
  std::string resolver;
  std::size_t chain_index;  // 1-based, per resolver
  std::vector<std::string> path;  // resolver ... pivot
  Sign sign;                      // product of the link signs along `path`
};

// For each frontier member, the distinct tails (member to pivot) of unblocked chains from
// the evidence that contain no other frontier member.
std::vector<ResolverChainSign> chain_signs(const Network& pruned, const NodeMask& frontier,
                                           NodeIndex pivot, const Query& query);

// resolver sign (x) chain sign, as it enters the pivot.
struct BranchTerm {
  std::string resolver;
  std::size_t chain_index;
  Sign resolver_sign;
  Sign chain_sign;
  Sign term;
};

// One assignment of signs to the frontier members and the resulting conditional sign of
// the pivot: '+' if the sign-sum of the positive terms is at least as strong as that of
// the negative terms, '-' otherwise.
struct Branch {
  std::vector<std::pair<std::string, Sign>> assignment;
  std::vector<BranchTerm> positive;
  std::vector<BranchTerm> negative;

  [[nodiscard]] bool conditional() const { return !positive.empty() && !negative.empty(); }
  // Ignores the strength comparison when only one side has terms.
  [[nodiscard]] Sign pivot_sign(bool positive_at_least_as_strong) const;
};

struct Explanation {
  std::string evidence;
  Sign evidence_sign = Sign::plus;
  std::string interest;
  std::string pivot;
  std::vector<std::string> candidates;
  std::vector<std::string> relevant_nodes;
  std::vector<std::string> pruned_nodes;
  std::optional<std::string> boundary;
  std::vector<std::string> frontier;
  std::vector<ResolverChainSign> chain_signs;
  std::vector<Branch> branches;
  // Sign of the interest node per unit sign of the pivot: sign[I] = sign[P] (x) this.
  Sign pivot_to_interest = Sign::plus;
  std::vector<std::string> notes;
  std::vector<Explanation> children;
};

// Enumerates '+'/'-' for every frontier member except the evidence node, whose sign is
// fixed to `evidence_sign`. Terms with sign '0' are dropped.
Explanation construct_result(std::span<const ResolverChainSign> chains,
                             std::span<const std::string> frontier, const std::string& pivot,
                             Sign pivot_to_interest, const std::string& evidence,
                             Sign evidence_sign);

// Articulation node closest to the interest node whose propagated sign is not '?'.
std::optional<NodeIndex> boundary_node(const Network& relevant, const Query& query,
                                       const SignMap& signs);

enum class PivotalOutcome { explained, no_ambiguity };

struct PivotalResult {
  PivotalOutcome outcome = PivotalOutcome::no_ambiguity;
  Sign interest_sign = Sign::zero;
  std::optional<Explanation> explanation;
};

inline constexpr int kDefaultRecursionDepth = 1;

// Relevant network, pivot, pruned network, resolvers, frontier, chain signs and the
// conditional result. With depth > 0 the frontier members that are themselves '?' are
// explained in turn, as new nodes of interest.
PivotalResult pivotal_pruning(const Network& net, const Query& query,
                              int depth = kDefaultRecursionDepth);

}  // namespace qpn
