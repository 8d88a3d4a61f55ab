#include "qpn/pivotal.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "qpn/dsep.hpp"
#include "qpn/influence_graph.hpp"
#include "qpn/propagation.hpp"
#include "qpn/relevance.hpp"

namespace qpn {

namespace {

std::vector<std::vector<NodeIndex>> undirected_adjacency(const Network& net) {
  std::vector<std::vector<NodeIndex>> adj(net.size());
  for (const auto& a : net.arcs()) {
    adj[a.tail].push_back(a.head);
    adj[a.head].push_back(a.tail);
  }
  return adj;
}

std::vector<std::string> sorted_labels(const Network& net, const NodeMask& mask) {
  std::vector<std::string> out;
  for (NodeIndex v : mask.indices()) out.push_back(net.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

constexpr LinkKind reversed(LinkKind k) noexcept {
  switch (k) {
    case LinkKind::to_child:
      return LinkKind::to_parent;
    case LinkKind::to_parent:
      return LinkKind::to_child;
    case LinkKind::intercausal:
      break;
  }
  return LinkKind::intercausal;
}

struct FoundChain {
  NodeIndex resolver;
  std::vector<Link> links;  // forward, resolver to pivot
};

// Walks chains backwards from the pivot. Each time a stop node is met, the partial
// chain is kept if the evidence can reach that node without touching it.
class TailSearch {
 public:
  TailSearch(const Network& pruned, NodeIndex pivot, const NodeMask& stop, const Query& query)
      : observations_(all_observations(query)),
        graph_(pruned, observations_),
        pivot_(pivot),
        evidence_(query.evidence.node),
        stop_(stop),
        blocked_(all_observed_mask(pruned, query)) {}

  std::vector<FoundChain> run() {
    NodeMask used(graph_.network().size());
    used.set(pivot_);
    std::vector<Link> tail;
    walk(pivot_, std::nullopt, used, tail);
    return std::move(found_);
  }

 private:
  void walk(NodeIndex v, std::optional<LinkKind> departure, NodeMask& used,
            std::vector<Link>& tail) {
    for (const Link& back : graph_.links(v)) {
      const NodeIndex w = back.to;
      const LinkKind forward = reversed(back.kind);
      if (departure && !may_continue(forward, *departure)) continue;
      if (used.test(w) || used.test(back.via)) continue;
      const NodeIndex via = back.kind == LinkKind::intercausal ? back.via : v;
      const Link step{v, back.sign, forward, via};
      if (stop_.test(w)) {
        NodeMask avoid = used;
        if (back.kind == LinkKind::intercausal) avoid.set(back.via);
        if (exists_chain(graph_, evidence_, w, blocked_, avoid, forward)) {
          FoundChain chain{w, {step}};
          chain.links.insert(chain.links.end(), tail.rbegin(), tail.rend());
          found_.push_back(std::move(chain));
        }
        continue;
      }
      if (blocked_.test(w)) continue;
      used.set(w).set(back.via);
      tail.push_back(step);
      walk(w, forward, used, tail);
      tail.pop_back();
      used.reset(w).reset(back.via);
    }
  }

  std::vector<Observation> observations_;
  InfluenceGraph graph_;
  NodeIndex pivot_;
  NodeIndex evidence_;
  const NodeMask& stop_;
  NodeMask blocked_;
  std::vector<FoundChain> found_;
};

}  // namespace

NodeMask articulation_nodes(const Network& net) {
  const auto adj = undirected_adjacency(net);
  const std::size_t n = net.size();
  std::vector<std::size_t> order(n, 0), low(n, 0);
  std::size_t clock = 0;
  NodeMask out(n);
  std::function<void(NodeIndex, std::optional<NodeIndex>)> dfs =
      [&](NodeIndex v, std::optional<NodeIndex> parent) {
        order[v] = low[v] = ++clock;
        std::size_t children = 0;
        for (NodeIndex w : adj[v]) {
          if (order[w] == 0) {
            ++children;
            dfs(w, v);
            low[v] = std::min(low[v], low[w]);
            if (parent && low[w] >= order[v]) out.set(v);
          } else if (!parent || w != *parent) {
            low[v] = std::min(low[v], order[w]);
          }
        }
        if (!parent && children > 1) out.set(v);
      };
  for (NodeIndex v = 0; v < n; ++v) {
    if (order[v] == 0) dfs(v, std::nullopt);
  }
  return out;
}

std::vector<NodeIndex> candidate_order(const Network& relevant, const Query& query) {
  check_query(relevant, query);
  NodeMask cut = articulation_nodes(relevant);
  for (NodeIndex v : all_observed_mask(relevant, query).indices()) cut.reset(v);
  cut.reset(query.interest);
  const auto witness = find_active_chain(relevant, query.evidence.node, query.interest,
                                         prior_observed_mask(relevant, query));
  if (!witness) throw InputError("the interest node is not reachable from the evidence");
  std::vector<NodeIndex> out;
  for (NodeIndex v : *witness) {
    if (cut.test(v)) out.push_back(v);
  }
  if (out.size() != cut.count()) {
    throw InternalError("an articulation node of the relevant network is off the chain");
  }
  out.push_back(query.interest);
  return out;
}

void reject_ambiguous_influences(const Network& net, const Query& query) {
  for (const auto& a : net.arcs()) {
    if (a.sign == Sign::ambiguous) {
      throw InputError("ambiguous influence " + net.label(a.tail) + "->" + net.label(a.head) +
                       " is not supported by pivotal pruning");
    }
  }
  for (const auto& e : induce_intercausal(net, all_observations(query))) {
    if (e.sign == Sign::ambiguous) {
      const auto& s = net.synergies()[e.synergy];
      throw InputError("ambiguous synergy between " + net.label(s.first) + " and " +
                       net.label(s.second) + " on " + net.label(s.child) +
                       " is not supported by pivotal pruning");
    }
  }
}

PivotSearch compute_pivot(const Network& relevant, const Query& query) {
  check_query(relevant, query);
  reject_ambiguous_influences(relevant, query);
  const auto observations = all_observations(query);
  const SignMap actual = propagate(relevant, query).signs;
  PivotSearch out;
  out.candidates = candidate_order(relevant, query);
  if (actual[query.interest] != Sign::ambiguous) return out;

  const auto& c = out.candidates;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    const SignMap s = propagate_from(relevant, c[i], Sign::plus, observations).signs;
    if (s[c[i + 1]] == Sign::ambiguous) {
      out.outcome = PivotOutcome::found;
      out.pivot = c[i + 1];
      return out;
    }
    if (s[query.interest] == Sign::ambiguous) {
      throw InternalError("sign of " + relevant.label(query.interest) +
                          " ambiguous although " + relevant.label(c[i + 1]) + " is not");
    }
  }
  if (actual[c.front()] != Sign::ambiguous) {
    throw InternalError("no candidate explains the ambiguity of " +
                        relevant.label(query.interest));
  }
  out.outcome = PivotOutcome::found;
  out.pivot = c.front();
  return out;
}

NodeMask pruned_mask(const Network& relevant, NodeIndex pivot, const Query& query) {
  check_query(relevant, query);
  const auto adj = undirected_adjacency(relevant);
  NodeMask reached(relevant.size());
  reached.set(query.evidence.node);
  std::deque<NodeIndex> todo{query.evidence.node};
  while (!todo.empty()) {
    const NodeIndex v = todo.front();
    todo.pop_front();
    for (NodeIndex w : adj[v]) {
      if (w == pivot || reached.test(w)) continue;
      reached.set(w);
      todo.push_back(w);
    }
  }
  return reached.set(pivot);
}

Network pruned_network(const Network& relevant, NodeIndex pivot, const Query& query) {
  return relevant.subnetwork(pruned_mask(relevant, pivot, query));
}

Query pruned_query(const Network& relevant, const Network& pruned, NodeIndex pivot,
                   const Query& query) {
  Query q = query;
  q.interest = pivot;
  return remap_query(relevant, pruned, q);
}

NodeMask candidate_resolvers(const Network& pruned, NodeIndex pivot, const SignMap& signs,
                             const Query& query) {
  check_query(pruned, query);
  if (signs.size() != pruned.size()) throw InputError("sign map does not match the network");
  NodeMask out(pruned.size());
  out.set(query.evidence.node);
  for (NodeIndex v = 0; v < pruned.size(); ++v) {
    if (v != pivot && signs[v] == Sign::ambiguous && pruned.in_degree(v) >= 2) out.set(v);
  }
  return out;
}

NodeMask resolution_frontier(const Network& pruned, NodeIndex pivot, const NodeMask& resolvers,
                             const Query& query) {
  check_query(pruned, query);
  NodeMask out(pruned.size());
  for (const auto& chain : TailSearch(pruned, pivot, resolvers, query).run()) {
    out.set(chain.resolver);
  }
  return out;
}

std::vector<ResolverChainSign> chain_signs(const Network& pruned, const NodeMask& frontier,
                                           NodeIndex pivot, const Query& query) {
  check_query(pruned, query);
  auto found = TailSearch(pruned, pivot, frontier, query).run();
  std::stable_sort(found.begin(), found.end(), [&](const FoundChain& a, const FoundChain& b) {
    return pruned.label_less(a.resolver, b.resolver);
  });
  std::vector<ResolverChainSign> out;
  std::vector<std::size_t> count(pruned.size(), 0);
  for (const auto& f : found) {
    const Chain chain{f.resolver, f.links};
    ResolverChainSign r{pruned.label(f.resolver), ++count[f.resolver], {}, chain.sign()};
    for (NodeIndex v : chain.nodes()) r.path.push_back(pruned.label(v));
    out.push_back(std::move(r));
  }
  return out;
}

Sign Branch::pivot_sign(bool positive_at_least_as_strong) const {
  if (positive.empty() && negative.empty()) return Sign::zero;
  if (negative.empty()) return Sign::plus;
  if (positive.empty()) return Sign::minus;
  return positive_at_least_as_strong ? Sign::plus : Sign::minus;
}

Explanation construct_result(std::span<const ResolverChainSign> chains,
                             std::span<const std::string> frontier, const std::string& pivot,
                             Sign pivot_to_interest, const std::string& evidence,
                             Sign evidence_sign) {
  Explanation out;
  out.pivot = pivot;
  out.evidence = evidence;
  out.evidence_sign = evidence_sign;
  out.pivot_to_interest = pivot_to_interest;
  out.frontier.assign(frontier.begin(), frontier.end());
  std::sort(out.frontier.begin(), out.frontier.end());
  out.chain_signs.assign(chains.begin(), chains.end());

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < out.frontier.size(); ++i) {
    if (out.frontier[i] != evidence) free.push_back(i);
  }
  if (free.size() >= 20) throw InputError("resolution frontier too large to enumerate");
  const std::size_t combos = std::size_t{1} << free.size();
  for (std::size_t bits = 0; bits < combos; ++bits) {
    Branch b;
    for (std::size_t i = 0; i < out.frontier.size(); ++i) {
      b.assignment.emplace_back(out.frontier[i], evidence_sign);
    }
    // '+' before '-', first member varying slowest.
    for (std::size_t k = 0; k < free.size(); ++k) {
      const bool minus = (bits >> (free.size() - 1 - k)) & 1U;
      b.assignment[free[k]].second = minus ? Sign::minus : Sign::plus;
    }
    for (const auto& c : out.chain_signs) {
      const auto it = std::find_if(b.assignment.begin(), b.assignment.end(),
                                   [&](const auto& a) { return a.first == c.resolver; });
      if (it == b.assignment.end()) {
        throw InputError("chain sign for " + c.resolver + " which is not on the frontier");
      }
      const Sign term = it->second * c.sign;
      const BranchTerm t{c.resolver, c.chain_index, it->second, c.sign, term};
      switch (term) {
        case Sign::plus:
          b.positive.push_back(t);
          break;
        case Sign::minus:
          b.negative.push_back(t);
          break;
        case Sign::zero:
          break;
        case Sign::ambiguous:
          throw InternalError("ambiguous chain sign from " + c.resolver);
      }
    }
    out.branches.push_back(std::move(b));
  }
  return out;
}

std::optional<NodeIndex> boundary_node(const Network& relevant, const Query& query,
                                       const SignMap& signs) {
  const auto order = candidate_order(relevant, query);
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    if (signs.at(*it) != Sign::ambiguous) return *it;
  }
  return std::nullopt;
}

PivotalResult pivotal_pruning(const Network& net, const Query& query, int depth) {
  check_query(net, query);
  PivotalResult result;
  result.interest_sign = propagate(net, query).signs[query.interest];
  if (result.interest_sign != Sign::ambiguous) return result;

  const auto relevant = relevant_network(net, query);
  if (relevant.outcome != RelevanceOutcome::ok) {
    throw InternalError("ambiguous interest node outside the relevant network");
  }
  const Network& rel = relevant.network;
  const Query rq = remap_query(net, rel, query);
  const auto search = compute_pivot(rel, rq);
  if (search.outcome != PivotOutcome::found) {
    throw InternalError("relevant network resolves a sign the full network leaves ambiguous");
  }
  const NodeIndex pivot = search.pivot;

  const NodeMask keep = pruned_mask(rel, pivot, rq);
  const Network pruned = rel.subnetwork(keep);
  const Query pq = pruned_query(rel, pruned, pivot, rq);
  const NodeIndex pp = pq.interest;
  const SignMap signs = propagate(pruned, pq).signs;
  const NodeMask resolvers = candidate_resolvers(pruned, pp, signs, pq);
  const NodeMask frontier = resolution_frontier(pruned, pp, resolvers, pq);
  const auto chains = chain_signs(pruned, frontier, pp, pq);
  const Sign to_interest =
      net_influence(rel, pivot, Sign::plus, rq.interest, all_observations(rq));

  const auto frontier_labels = sorted_labels(pruned, frontier);
  Explanation e = construct_result(chains, frontier_labels, rel.label(pivot), to_interest,
                                   net.label(query.evidence.node),
                                   sign_of(query.evidence.value));
  e.interest = net.label(query.interest);
  for (NodeIndex v : search.candidates) e.candidates.push_back(rel.label(v));
  e.relevant_nodes = sorted_labels(net, relevant.nodes);
  e.pruned_nodes = pruned.labels();
  std::sort(e.pruned_nodes.begin(), e.pruned_nodes.end());
  const SignMap rel_signs = propagate(rel, rq).signs;
  if (const auto b = boundary_node(rel, rq, rel_signs)) e.boundary = rel.label(*b);
  if (frontier.test(pq.evidence.node)) {
    e.notes.push_back("evidence node " + e.evidence + " is on the frontier; its sign stays " +
                      std::string(glyph(e.evidence_sign)));
  }

  for (NodeIndex r : frontier.indices()) {
    if (r == pq.evidence.node || signs[r] != Sign::ambiguous) continue;
    const std::string& label = pruned.label(r);
    if (depth <= 0) {
      e.notes.push_back("sign of " + label + " is itself ambiguous; not explained further");
      continue;
    }
    Query sub = query;
    sub.interest = net.index(label);
    auto child = pivotal_pruning(net, sub, depth - 1);
    if (child.explanation) e.children.push_back(std::move(*child.explanation));
  }
  std::sort(e.children.begin(), e.children.end(),
            [](const Explanation& a, const Explanation& b) { return a.interest < b.interest; });

  result.outcome = PivotalOutcome::explained;
  result.explanation = std::move(e);
  return result;
}

}  // namespace qpn
