#include "brute_force.hpp"

#include <functional>

namespace qpn::testing {

namespace {

std::vector<bool> descendants_or_self(const Network& net, NodeIndex v) {
  std::vector<bool> out(net.size(), false);
  std::function<void(NodeIndex)> visit = [&](NodeIndex u) {
    if (out[u]) return;
    out[u] = true;
    for (const auto& a : net.arcs()) {
      if (a.tail == u) visit(a.head);
    }
  };
  visit(v);
  return out;
}

bool has_arc(const Network& net, NodeIndex tail, NodeIndex head) {
  for (const auto& a : net.arcs()) {
    if (a.tail == tail && a.head == head) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<NodeIndex>> simple_paths(const Network& net, NodeIndex from,
                                                 NodeIndex to) {
  std::vector<std::vector<NodeIndex>> out;
  std::vector<NodeIndex> path{from};
  std::vector<bool> on(net.size(), false);
  on[from] = true;
  std::function<void(NodeIndex)> extend = [&](NodeIndex v) {
    if (v == to) {
      out.push_back(path);
      return;
    }
    for (NodeIndex w = 0; w < net.size(); ++w) {
      if (on[w] || !(has_arc(net, v, w) || has_arc(net, w, v))) continue;
      on[w] = true;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on[w] = false;
    }
  };
  extend(from);
  return out;
}

bool path_active(const Network& net, const std::vector<NodeIndex>& path,
                 const std::vector<bool>& observed) {
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const NodeIndex v = path[i];
    const bool collider = has_arc(net, path[i - 1], v) && has_arc(net, path[i + 1], v);
    if (collider) {
      const auto desc = descendants_or_self(net, v);
      bool opened = false;
      for (NodeIndex u = 0; u < net.size(); ++u) opened = opened || (desc[u] && observed[u]);
      if (!opened) return false;
    } else if (observed[v]) {
      return false;
    }
  }
  return true;
}

bool brute_d_separated(const Network& net, NodeIndex x, NodeIndex y,
                       const std::vector<bool>& observed) {
  if (observed[x] || observed[y]) return true;
  if (x == y) return false;
  for (const auto& p : simple_paths(net, x, y)) {
    if (path_active(net, p, observed)) return false;
  }
  return true;
}

std::vector<bool> brute_relevant_nodes(const Network& net, const Query& query) {
  std::vector<bool> observed(net.size(), false);
  for (const auto& o : query.observed) observed[o.node] = true;
  std::vector<bool> out(net.size(), false);
  for (const auto& p : simple_paths(net, query.evidence.node, query.interest)) {
    if (!path_active(net, p, observed)) continue;
    for (NodeIndex v : p) out[v] = true;
  }
  return out;
}

std::vector<Sign> brute_signs(const Network& net, const Query& query) {
  const std::size_t n = net.size();
  std::vector<bool> observed(n, false);
  std::vector<int> value(n, -1);
  for (const auto& o : query.observed) {
    observed[o.node] = true;
    value[o.node] = o.value;
  }
  observed[query.evidence.node] = true;
  value[query.evidence.node] = query.evidence.value;

  // kind 0: to child, 1: to parent, 2: intercausal
  struct Hop {
    NodeIndex to;
    Sign sign;
    int kind;
    NodeIndex via;
  };
  std::vector<std::vector<Hop>> hops(n);
  for (const auto& a : net.arcs()) {
    hops[a.tail].push_back({a.head, a.sign, 0, a.head});
    hops[a.head].push_back({a.tail, a.sign, 1, a.tail});
  }
  for (const auto& s : net.synergies()) {
    if (!observed[s.child] || value[s.child] != static_cast<int>(s.child_value)) continue;
    if (!has_arc(net, s.first, s.child) || !has_arc(net, s.second, s.child)) continue;
    hops[s.first].push_back({s.second, s.sign, 2, s.child});
    hops[s.second].push_back({s.first, s.sign, 2, s.child});
  }

  const NodeIndex source = query.evidence.node;
  std::vector<Sign> signs(n, Sign::zero);
  signs[source] = sign_of(query.evidence.value);
  std::vector<bool> on(n, false);
  on[source] = true;
  std::function<void(NodeIndex, int, Sign)> walk = [&](NodeIndex v, int arrived, Sign acc) {
    for (const auto& h : hops[v]) {
      if (arrived == 0 && h.kind == 1) continue;  // head-to-head at v
      if (on[h.to] || on[h.via] || observed[h.to]) continue;
      const Sign next = acc * h.sign;
      signs[h.to] = signs[h.to] + next;
      on[h.to] = true;
      on[h.via] = true;
      walk(h.to, h.kind, next);
      on[h.via] = false;
      on[h.to] = false;
    }
  };
  walk(source, -1, sign_of(query.evidence.value));
  return signs;
}

}  // namespace qpn::testing
