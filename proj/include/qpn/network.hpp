#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qpn/node_mask.hpp"
#include "qpn/sign.hpp"

namespace qpn {

// Malformed input: unknown nodes, invalid queries, rejected networks.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug or an input that slipped past validation.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct InfluenceArc {
  NodeIndex tail;
  NodeIndex head;
  Sign sign;
  friend bool operator==(const InfluenceArc&, const InfluenceArc&) = default;
};

// Product synergy of the parent pair {first, second} on `child` given child = child_value.
struct ProductSynergy {
  NodeIndex first;
  NodeIndex second;
  NodeIndex child;
  bool child_value;
  Sign sign;
  friend bool operator==(const ProductSynergy&, const ProductSynergy&) = default;
};

struct Violation {
  std::string rule;
  std::string detail;
};

// Qualitative probabilistic network: a DAG of binary variables whose arcs carry
// influence signs, plus product synergies between co-parents.
//
// Nodes are identified by unique string labels; internally they are dense indices in
// insertion order. Neighbour lists are kept in ascending label order so that every
// traversal is deterministic.
class Network {
 public:
  NodeIndex add_node(std::string label);
  void add_arc(NodeIndex tail, NodeIndex head, Sign sign);
  void add_arc(std::string_view tail, std::string_view head, Sign sign);
  void add_synergy(const ProductSynergy& synergy);
  void add_synergy(std::string_view first, std::string_view second, std::string_view child,
                   bool child_value, Sign sign);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] const std::string& label(NodeIndex i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::optional<NodeIndex> find(std::string_view label) const;
  // Throws InputError for unknown labels.
  [[nodiscard]] NodeIndex index(std::string_view label) const;

  [[nodiscard]] const std::vector<InfluenceArc>& arcs() const noexcept { return arcs_; }
  [[nodiscard]] const std::vector<ProductSynergy>& synergies() const noexcept {
    return synergies_;
  }
  // Arc ids (into arcs()) entering / leaving a node, ordered by the neighbour's label.
  [[nodiscard]] const std::vector<std::size_t>& in_arcs(NodeIndex i) const { return in_.at(i); }
  [[nodiscard]] const std::vector<std::size_t>& out_arcs(NodeIndex i) const {
    return out_.at(i);
  }
  [[nodiscard]] std::vector<NodeIndex> parents(NodeIndex i) const;
  [[nodiscard]] std::vector<NodeIndex> children(NodeIndex i) const;
  [[nodiscard]] std::size_t in_degree(NodeIndex i) const { return in_.at(i).size(); }

  [[nodiscard]] std::optional<Sign> arc_sign(NodeIndex tail, NodeIndex head) const;
  [[nodiscard]] bool adjacent(NodeIndex a, NodeIndex b) const;

  // Strict weak order on nodes by label.
  [[nodiscard]] bool label_less(NodeIndex a, NodeIndex b) const {
    return labels_[a] < labels_[b];
  }

  // Nodes in `keep` with the arcs and synergies among them; original order preserved.
  [[nodiscard]] Network subnetwork(const NodeMask& keep) const;

  [[nodiscard]] NodeMask empty_mask() const { return NodeMask(size()); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> by_label_;
  std::vector<InfluenceArc> arcs_;
  std::vector<ProductSynergy> synergies_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

// Label-based structural equality; insertion order is irrelevant.
bool operator==(const Network& a, const Network& b);

// Empty iff the network is acyclic, has at most one arc per ordered pair, no self
// loops, and every synergy names two distinct parents of its child.
std::vector<Violation> validate(const Network& net);

// Topological order of the nodes; throws InputError on a cycle.
std::vector<NodeIndex> topological_order(const Network& net);

// Nodes in `seeds` together with all their ancestors.
NodeMask ancestors_or_self(const Network& net, const NodeMask& seeds);

struct Observation {
  NodeIndex node;
  bool value;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// Previously observed nodes, the node receiving new evidence, and the node of interest.
struct Query {
  std::vector<Observation> observed;
  Observation evidence;
  NodeIndex interest;
};

// Throws InputError when the query names unknown nodes or overlaps evidence, interest
// and previous observations.
void check_query(const Network& net, const Query& query);

// Previously observed nodes only.
NodeMask prior_observed_mask(const Network& net, const Query& query);
// Previously observed nodes plus the evidence node.
NodeMask all_observed_mask(const Network& net, const Query& query);
// Previous observations followed by the evidence.
std::vector<Observation> all_observations(const Query& query);

// Re-express `query` over `to`, matching nodes by label. Observations of nodes absent
// from `to` are dropped; evidence and interest must be present.
Query remap_query(const Network& from, const Network& to, const Query& query);

// Node signs indexed by NodeIndex.
using SignMap = std::vector<Sign>;

}  // namespace qpn
