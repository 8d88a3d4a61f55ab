#include "qpn/dsep.hpp"

#include <deque>
#include <utility>

namespace qpn {

namespace {

struct Step {
  NodeIndex next;
  bool into_next;  // the connecting arc points at `next`
};

std::vector<Step> steps_from(const Network& net, NodeIndex v) {
  std::vector<Step> out;
  for (auto arc : net.out_arcs(v)) out.push_back({net.arcs()[arc].head, true});
  for (auto arc : net.in_arcs(v)) out.push_back({net.arcs()[arc].tail, false});
  return out;
}

// Interior node v may be passed when the chain enters via an arc pointing at v
// (`entered_head`) or not, and leaves via an arc pointing at v (`leave_into_v`) or not.
bool passable(bool entered_head, bool leave_into_v, bool observed, bool opened) {
  const bool collider = entered_head && leave_into_v;
  return collider ? opened : !observed;
}

class ChainSearch {
 public:
  ChainSearch(const Network& net, NodeIndex to, const NodeMask& observed)
      : net_(net),
        to_(to),
        observed_(observed),
        opened_(ancestors_or_self(net, observed)),
        on_chain_(net.size()),
        memo_(2 * net.size()) {}

  NodeMask run(NodeIndex from, bool first_only) {
    first_only_ = first_only;
    NodeMask path(net_.size());
    path.set(from);
    trail_ = {from};
    if (from == to_) {
      on_chain_.set(from);
      witness_ = trail_;
    } else {
      descend(from, std::nullopt, path);
    }
    return on_chain_;
  }

  const std::vector<NodeIndex>& witness() const { return witness_; }

 private:
  struct Seen {
    NodeMask path;
    bool success;
  };

  // `entered_head` is empty at the start node.
  bool descend(NodeIndex v, std::optional<bool> entered_head, const NodeMask& path) {
    bool success = false;
    for (const auto& step : steps_from(net_, v)) {
      if (path.test(step.next)) continue;
      if (entered_head &&
          !passable(*entered_head, !step.into_next, observed_.test(v), opened_.test(v))) {
        continue;
      }
      if (visit(step.next, step.into_next, path)) {
        success = true;
        if (first_only_) break;
      }
    }
    if (success) on_chain_.set(v);
    return success;
  }

  bool visit(NodeIndex w, bool entered_head, const NodeMask& path) {
    NodeMask next_path = path;
    next_path.set(w);
    trail_.push_back(w);
    bool success = false;
    if (w == to_) {
      on_chain_.set(w);
      if (witness_.empty()) witness_ = trail_;
      success = true;
    } else {
      auto& seen = memo_[2 * w + (entered_head ? 1 : 0)];
      bool decided = false;
      for (const auto& s : seen) {
        // A smaller avoided set that failed means this one fails too; a larger one
        // that succeeded means this one succeeds (its suffix nodes are already marked).
        if (!s.success && s.path.is_subset_of(next_path)) {
          decided = true;
          break;
        }
        if (s.success && next_path.is_subset_of(s.path)) {
          decided = true;
          success = true;
          on_chain_.set(w);
          break;
        }
      }
      if (!decided) {
        success = descend(w, entered_head, next_path);
        seen.push_back({next_path, success});
      }
    }
    trail_.pop_back();
    return success;
  }

  const Network& net_;
  NodeIndex to_;
  const NodeMask& observed_;
  NodeMask opened_;
  NodeMask on_chain_;
  std::vector<std::vector<Seen>> memo_;
  std::vector<NodeIndex> trail_;
  std::vector<NodeIndex> witness_;
  bool first_only_ = false;
};

}  // namespace

bool chain_blocked(const Network& net, std::span<const NodeIndex> chain,
                   const NodeMask& observed) {
  NodeMask seen(net.size());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k] >= net.size()) throw InputError("chain names a node outside the network");
    if (seen.test(chain[k])) throw InputError("chain repeats node '" + net.label(chain[k]) + "'");
    seen.set(chain[k]);
    if (k > 0 && !net.adjacent(chain[k - 1], chain[k])) {
      throw InputError("chain is not a trail: " + net.label(chain[k - 1]) + " and " +
                       net.label(chain[k]) + " are not adjacent");
    }
  }
  const NodeMask opened = ancestors_or_self(net, observed);
  for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
    const NodeIndex v = chain[k];
    const bool entered_head = net.arc_sign(chain[k - 1], v).has_value();
    const bool leave_into_v = net.arc_sign(chain[k + 1], v).has_value();
    if (!passable(entered_head, leave_into_v, observed.test(v), opened.test(v))) return true;
  }
  return false;
}

bool d_separated(const Network& net, NodeIndex x, NodeIndex y, const NodeMask& observed) {
  if (x >= net.size() || y >= net.size()) throw InputError("unknown node in d-separation query");
  if (observed.test(x) || observed.test(y)) return true;
  const NodeMask opened = ancestors_or_self(net, observed);
  // Reachability over (node, arrived-from-child) states.
  std::vector<bool> visited(2 * net.size(), false);
  std::deque<std::pair<NodeIndex, bool>> todo{{x, true}};
  while (!todo.empty()) {
    auto [v, up] = todo.front();
    todo.pop_front();
    if (visited[2 * v + up]) continue;
    visited[2 * v + up] = true;
    if (v == y && v != x) return false;
    const bool obs = observed.test(v);
    if (up && !obs) {
      for (NodeIndex p : net.parents(v)) todo.emplace_back(p, true);
      for (NodeIndex c : net.children(v)) todo.emplace_back(c, false);
    } else if (!up) {
      if (!obs) {
        for (NodeIndex c : net.children(v)) todo.emplace_back(c, false);
      }
      if (opened.test(v)) {
        for (NodeIndex p : net.parents(v)) todo.emplace_back(p, true);
      }
    }
  }
  return true;
}

NodeMask nodes_on_active_chains(const Network& net, NodeIndex from, NodeIndex to,
                                const NodeMask& observed) {
  ChainSearch search(net, to, observed);
  return search.run(from, false);
}

std::optional<std::vector<NodeIndex>> find_active_chain(const Network& net, NodeIndex from,
                                                        NodeIndex to,
                                                        const NodeMask& observed) {
  ChainSearch search(net, to, observed);
  search.run(from, true);
  if (search.witness().empty()) return std::nullopt;
  return search.witness();
}

}  // namespace qpn
