#include "qpn/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace qpn {

NodeIndex Network::add_node(std::string label) {
  if (label.empty()) throw InputError("node label must not be empty");
  if (by_label_.contains(label)) throw InputError("duplicate node '" + label + "'");
  const NodeIndex id = labels_.size();
  by_label_.emplace(label, id);
  labels_.push_back(std::move(label));
  in_.emplace_back();
  out_.emplace_back();
  return id;
}

void Network::add_arc(NodeIndex tail, NodeIndex head, Sign sign) {
  if (tail >= size() || head >= size()) throw InputError("arc endpoint out of range");
  const std::size_t id = arcs_.size();
  arcs_.push_back({tail, head, sign});
  auto insert_sorted = [&](std::vector<std::size_t>& list, bool by_tail) {
    auto key = [&](std::size_t arc) {
      return labels_[by_tail ? arcs_[arc].tail : arcs_[arc].head];
    };
    auto pos = std::upper_bound(list.begin(), list.end(), id, [&](std::size_t a, std::size_t b) {
      return key(a) < key(b);
    });
    list.insert(pos, id);
  };
  insert_sorted(in_[head], true);
  insert_sorted(out_[tail], false);
}

void Network::add_arc(std::string_view tail, std::string_view head, Sign sign) {
  add_arc(index(tail), index(head), sign);
}

void Network::add_synergy(const ProductSynergy& synergy) {
  if (synergy.first >= size() || synergy.second >= size() || synergy.child >= size()) {
    throw InputError("synergy references a node out of range");
  }
  synergies_.push_back(synergy);
}

void Network::add_synergy(std::string_view first, std::string_view second,
                          std::string_view child, bool child_value, Sign sign) {
  add_synergy({index(first), index(second), index(child), child_value, sign});
}

std::optional<NodeIndex> Network::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Network::index(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw InputError("unknown node '" + std::string(label) + "'");
}

std::vector<NodeIndex> Network::parents(NodeIndex i) const {
  std::vector<NodeIndex> out;
  for (auto arc : in_.at(i)) out.push_back(arcs_[arc].tail);
  return out;
}

std::vector<NodeIndex> Network::children(NodeIndex i) const {
  std::vector<NodeIndex> out;
  for (auto arc : out_.at(i)) out.push_back(arcs_[arc].head);
  return out;
}

std::optional<Sign> Network::arc_sign(NodeIndex tail, NodeIndex head) const {
  for (auto arc : out_.at(tail)) {
    if (arcs_[arc].head == head) return arcs_[arc].sign;
  }
  return std::nullopt;
}

bool Network::adjacent(NodeIndex a, NodeIndex b) const {
  return arc_sign(a, b).has_value() || arc_sign(b, a).has_value();
}

Network Network::subnetwork(const NodeMask& keep) const {
  Network sub;
  std::vector<NodeIndex> remap(size(), size());
  for (NodeIndex i = 0; i < size(); ++i) {
    if (keep.test(i)) remap[i] = sub.add_node(labels_[i]);
  }
  for (const auto& arc : arcs_) {
    if (keep.test(arc.tail) && keep.test(arc.head)) {
      sub.add_arc(remap[arc.tail], remap[arc.head], arc.sign);
    }
  }
  for (const auto& syn : synergies_) {
    if (keep.test(syn.first) && keep.test(syn.second) && keep.test(syn.child)) {
      sub.add_synergy(
          {remap[syn.first], remap[syn.second], remap[syn.child], syn.child_value, syn.sign});
    }
  }
  return sub;
}

namespace {

using ArcKey = std::tuple<std::string, std::string, Sign>;
using SynergyKey = std::tuple<std::string, std::string, std::string, bool, Sign>;

std::set<ArcKey> arc_keys(const Network& net) {
  std::set<ArcKey> keys;
  for (const auto& a : net.arcs()) keys.emplace(net.label(a.tail), net.label(a.head), a.sign);
  return keys;
}

std::set<SynergyKey> synergy_keys(const Network& net) {
  std::set<SynergyKey> keys;
  for (const auto& s : net.synergies()) {
    auto a = net.label(s.first);
    auto b = net.label(s.second);
    if (b < a) std::swap(a, b);
    keys.emplace(a, b, net.label(s.child), s.child_value, s.sign);
  }
  return keys;
}

}  // namespace

bool operator==(const Network& a, const Network& b) {
  if (a.size() != b.size()) return false;
  std::set<std::string> la(a.labels().begin(), a.labels().end());
  std::set<std::string> lb(b.labels().begin(), b.labels().end());
  return la == lb && arc_keys(a) == arc_keys(b) && synergy_keys(a) == synergy_keys(b);
}

namespace {

// Returns the nodes of one directed cycle, or an empty list.
std::vector<NodeIndex> find_cycle(const Network& net) {
  enum class Mark { fresh, active, done };
  std::vector<Mark> mark(net.size(), Mark::fresh);
  std::vector<NodeIndex> stack;
  std::vector<NodeIndex> cycle;
  auto dfs = [&](auto& self, NodeIndex v) -> bool {
    mark[v] = Mark::active;
    stack.push_back(v);
    for (NodeIndex w : net.children(v)) {
      if (mark[w] == Mark::active) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        return true;
      }
      if (mark[w] == Mark::fresh && self(self, w)) return true;
    }
    stack.pop_back();
    mark[v] = Mark::done;
    return false;
  };
  for (NodeIndex v = 0; v < net.size(); ++v) {
    if (mark[v] == Mark::fresh && dfs(dfs, v)) break;
  }
  return cycle;
}

}  // namespace

std::vector<Violation> validate(const Network& net) {
  std::vector<Violation> out;
  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  for (const auto& arc : net.arcs()) {
    const auto& t = net.label(arc.tail);
    const auto& h = net.label(arc.head);
    if (arc.tail == arc.head) out.push_back({"self-loop", "arc " + t + "->" + h});
    if (!seen.emplace(arc.tail, arc.head).second) {
      out.push_back({"duplicate-arc", "arc " + t + "->" + h});
    }
  }
  if (auto cycle = find_cycle(net); !cycle.empty()) {
    std::ostringstream msg;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      msg << (k ? "," : "") << net.label(cycle[k]);
    }
    out.push_back({"cycle", msg.str()});
  }
  for (const auto& s : net.synergies()) {
    std::ostringstream where;
    where << "synergy {" << net.label(s.first) << "," << net.label(s.second) << "} on "
          << net.label(s.child);
    if (s.first == s.second) {
      out.push_back({"bad-synergy", where.str() + ": pair members coincide"});
      continue;
    }
    for (NodeIndex member : {s.first, s.second}) {
      if (!net.arc_sign(member, s.child)) {
        out.push_back({"bad-synergy", where.str() + ": " + net.label(member) +
                                          " is not a parent of " + net.label(s.child)});
      }
    }
  }
  return out;
}

std::vector<NodeIndex> topological_order(const Network& net) {
  std::vector<std::size_t> pending(net.size());
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < net.size(); ++v) {
    pending[v] = net.in_degree(v);
    if (pending[v] == 0) ready.push_back(v);
  }
  std::vector<NodeIndex> order;
  while (!ready.empty()) {
    const NodeIndex v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (NodeIndex w : net.children(v)) {
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  if (order.size() != net.size()) throw InputError("network contains a directed cycle");
  return order;
}

NodeMask ancestors_or_self(const Network& net, const NodeMask& seeds) {
  NodeMask out = seeds;
  std::vector<NodeIndex> todo = seeds.indices();
  while (!todo.empty()) {
    const NodeIndex v = todo.back();
    todo.pop_back();
    for (NodeIndex p : net.parents(v)) {
      if (!out.test(p)) {
        out.set(p);
        todo.push_back(p);
      }
    }
  }
  return out;
}

void check_query(const Network& net, const Query& query) {
  auto require = [&](NodeIndex v, const char* role) {
    if (v >= net.size()) throw InputError(std::string(role) + " node is not in the network");
  };
  require(query.evidence.node, "evidence");
  require(query.interest, "interest");
  NodeMask seen(net.size());
  for (const auto& obs : query.observed) {
    require(obs.node, "observed");
    if (seen.test(obs.node)) {
      throw InputError("node '" + net.label(obs.node) + "' is observed twice");
    }
    seen.set(obs.node);
  }
  if (seen.test(query.evidence.node)) {
    throw InputError("evidence node '" + net.label(query.evidence.node) +
                     "' is already among the observed nodes");
  }
  if (seen.test(query.interest) || query.interest == query.evidence.node) {
    throw InputError("interest node '" + net.label(query.interest) + "' is observed");
  }
}

NodeMask prior_observed_mask(const Network& net, const Query& query) {
  NodeMask mask(net.size());
  for (const auto& obs : query.observed) mask.set(obs.node);
  return mask;
}

NodeMask all_observed_mask(const Network& net, const Query& query) {
  return prior_observed_mask(net, query).set(query.evidence.node);
}

std::vector<Observation> all_observations(const Query& query) {
  auto out = query.observed;
  out.push_back(query.evidence);
  return out;
}

Query remap_query(const Network& from, const Network& to, const Query& query) {
  auto map = [&](NodeIndex v) { return to.index(from.label(v)); };
  Query out{{}, {map(query.evidence.node), query.evidence.value}, map(query.interest)};
  for (const auto& obs : query.observed) {
    if (auto v = to.find(from.label(obs.node))) out.observed.push_back({*v, obs.value});
  }
  return out;
}

}  // namespace qpn
