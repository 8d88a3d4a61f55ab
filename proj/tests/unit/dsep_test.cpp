#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "qpn/dsep.hpp"
#include "qpn/influence_graph.hpp"
#include "random_networks.hpp"

using namespace qpn;

namespace {

NodeMask mask_of(const Network& n, std::initializer_list<const char*> labels) {
  NodeMask m(n.size());
  for (const char* l : labels) m.set(n.index(l));
  return m;
}

std::vector<NodeIndex> chain_of(const Network& n, std::initializer_list<const char*> labels) {
  std::vector<NodeIndex> out;
  for (const char* l : labels) out.push_back(n.index(l));
  return out;
}

std::vector<bool> as_bools(const NodeMask& m) {
  std::vector<bool> out(m.size());
  for (NodeIndex i = 0; i < m.size(); ++i) out[i] = m.test(i);
  return out;
}

}  // namespace

TEST_CASE("serial, diverging and converging connections") {
  const Network n = testing::fixture_network();
  const auto serial = chain_of(n, {"H", "U", "I"});
  CHECK_FALSE(chain_blocked(n, serial, n.empty_mask()));
  CHECK(chain_blocked(n, serial, mask_of(n, {"U"})));

  const auto diverging = chain_of(n, {"U", "H", "W"});
  CHECK_FALSE(chain_blocked(n, diverging, n.empty_mask()));
  CHECK(chain_blocked(n, diverging, mask_of(n, {"H"})));

  const auto converging = chain_of(n, {"U", "I", "W"});
  CHECK(chain_blocked(n, converging, n.empty_mask()));
  CHECK_FALSE(chain_blocked(n, converging, mask_of(n, {"I"})));
  // An observed descendant opens the collider too.
  CHECK_FALSE(chain_blocked(n, converging, mask_of(n, {"A"})));
}

TEST_CASE("chains must be simple trails") {
  const Network n = testing::fixture_network();
  CHECK_THROWS_AS(chain_blocked(n, chain_of(n, {"H", "I"}), n.empty_mask()), InputError);
  CHECK_THROWS_AS(chain_blocked(n, chain_of(n, {"H", "U", "H"}), n.empty_mask()), InputError);
}

TEST_CASE("observed endpoints are separated") {
  const Network n = testing::fixture_network();
  CHECK(d_separated(n, n.index("H"), n.index("A"), mask_of(n, {"H"})));
  CHECK_FALSE(d_separated(n, n.index("U"), n.index("A"), mask_of(n, {"H"})));
  CHECK(d_separated(n, n.index("H"), n.index("C"), mask_of(n, {"I"})));
}

TEST_CASE("d-separation agrees with path enumeration on random networks") {
  std::mt19937_64 rng(11);
  testing::CorpusOptions opt;
  opt.max_nodes = 8;
  for (int round = 0; round < 150; ++round) {
    const Network net = testing::random_network(rng, opt);
    NodeMask observed(net.size());
    for (NodeIndex v = 0; v < net.size(); ++v) {
      if (std::bernoulli_distribution(0.25)(rng)) observed.set(v);
    }
    const auto obs = as_bools(observed);
    for (NodeIndex x = 0; x < net.size(); ++x) {
      for (NodeIndex y = x + 1; y < net.size(); ++y) {
        CAPTURE(round);
        CHECK(d_separated(net, x, y, observed) == testing::brute_d_separated(net, x, y, obs));
      }
    }
  }
}

TEST_CASE("active-chain nodes agree with path enumeration") {
  std::mt19937_64 rng(12);
  testing::CorpusOptions opt;
  opt.max_nodes = 8;
  for (int round = 0; round < 300; ++round) {
    const Network net = testing::random_network(rng, opt);
    const Query q = testing::random_query(rng, net, opt);
    const NodeMask observed = prior_observed_mask(net, q);
    const auto expected = testing::brute_relevant_nodes(net, q);
    const NodeMask got = nodes_on_active_chains(net, q.evidence.node, q.interest, observed);
    CAPTURE(round);
    CHECK(as_bools(got) == expected);
    const auto witness = find_active_chain(net, q.evidence.node, q.interest, observed);
    CHECK(witness.has_value() == expected[q.interest]);
    if (witness) {
      CHECK(witness->front() == q.evidence.node);
      CHECK(witness->back() == q.interest);
      CHECK_FALSE(chain_blocked(net, *witness, observed));
    }
  }
}

TEST_CASE("synergies induce intercausal links only for the matching value") {
  Network n;
  for (const char* v : {"A", "B", "C"}) n.add_node(v);
  n.add_arc("A", "C", Sign::plus);
  n.add_arc("B", "C", Sign::plus);
  n.add_synergy("A", "B", "C", true, Sign::minus);
  const std::vector<Observation> yes{{n.index("C"), true}};
  const std::vector<Observation> no{{n.index("C"), false}};
  REQUIRE(induce_intercausal(n, yes).size() == 1);
  CHECK(induce_intercausal(n, yes)[0].sign == Sign::minus);
  CHECK(induce_intercausal(n, no).empty());

  const InfluenceGraph g(n, yes);
  const auto& links = g.links(n.index("A"));
  REQUIRE(links.size() == 2);
  CHECK(links[0].to == n.index("B"));
  CHECK(links[0].kind == LinkKind::intercausal);
  CHECK(links[0].via == n.index("C"));
  CHECK(links[1].kind == LinkKind::to_child);
}

TEST_CASE("head-to-head junctions stop a chain") {
  CHECK(may_continue(std::nullopt, LinkKind::to_parent));
  CHECK(may_continue(LinkKind::to_parent, LinkKind::to_parent));
  CHECK(may_continue(LinkKind::to_child, LinkKind::to_child));
  CHECK_FALSE(may_continue(LinkKind::to_child, LinkKind::to_parent));
  CHECK(may_continue(LinkKind::intercausal, LinkKind::to_parent));
}

TEST_CASE("chain existence honours blocking, avoidance and departure") {
  const Network n = testing::fixture_network();
  const std::vector<Observation> obs{{n.index("H"), true}};
  const InfluenceGraph g(n, obs);
  const NodeMask blocked = mask_of(n, {"H"});
  const auto none = n.empty_mask();
  CHECK(exists_chain(g, n.index("H"), n.index("C"), blocked, none, std::nullopt));
  CHECK_FALSE(exists_chain(g, n.index("H"), n.index("C"), blocked, mask_of(n, {"I"}),
                           std::nullopt));
  // D is only reached from I, arriving downwards, so the chain cannot turn back up.
  CHECK(exists_chain(g, n.index("H"), n.index("D"), blocked, mask_of(n, {"G"}),
                     LinkKind::to_child));
  CHECK_FALSE(exists_chain(g, n.index("H"), n.index("D"), blocked, mask_of(n, {"G", "C"}),
                           LinkKind::to_parent));
  CHECK_FALSE(exists_chain(g, n.index("U"), n.index("W"), mask_of(n, {"H", "I"}), none,
                           std::nullopt));
}

TEST_CASE("chain sign is the product of its links") {
  const Network n = testing::fixture_network();
  const InfluenceGraph g(n, {});
  Chain c{n.index("H"), {}};
  CHECK(c.sign() == Sign::plus);
  CHECK(c.end() == n.index("H"));
  for (const auto& l : g.links(n.index("H"))) {
    if (n.label(l.to) == "W") c.links.push_back(l);
  }
  for (const auto& l : g.links(n.index("W"))) {
    if (n.label(l.to) == "I") c.links.push_back(l);
  }
  CHECK(c.sign() == Sign::minus);
  CHECK(c.nodes().size() == 3);
  CHECK(c.end() == n.index("I"));
}
