#include "fixtures.hpp"

namespace qpn::testing {

namespace {

void add_fixture(Network& n) {
  for (const char* v : {"H", "U", "W", "I", "D", "G", "C", "B", "A"}) n.add_node(v);
  n.add_arc("H", "U", Sign::plus);
  n.add_arc("H", "W", Sign::minus);
  n.add_arc("U", "I", Sign::plus);
  n.add_arc("W", "I", Sign::plus);
  n.add_arc("I", "D", Sign::plus);
  n.add_arc("I", "G", Sign::plus);
  n.add_arc("D", "G", Sign::minus);
  n.add_arc("D", "C", Sign::plus);
  n.add_arc("G", "C", Sign::minus);
  n.add_arc("C", "B", Sign::plus);
  n.add_arc("B", "A", Sign::minus);
  n.add_arc("C", "A", Sign::minus);
}

}  // namespace

Network fixture_network() {
  Network n;
  add_fixture(n);
  return n;
}

Query fixture_query(const Network& net) { return simple_query(net, "H", "A"); }

Network full_example_network() {
  Network n;
  add_fixture(n);
  for (const char* v : {"E", "M", "J", "L"}) n.add_node(v);
  n.add_arc("D", "E", Sign::plus);
  n.add_arc("M", "H", Sign::plus);
  n.add_arc("J", "L", Sign::plus);
  n.add_arc("L", "B", Sign::plus);
  n.add_arc("L", "A", Sign::minus);
  return n;
}

Network bottom_pivot_network() {
  Network n;
  for (const char* v : {"E", "A", "X", "I"}) n.add_node(v);
  n.add_arc("E", "A", Sign::plus);
  n.add_arc("E", "X", Sign::minus);
  n.add_arc("A", "X", Sign::plus);
  n.add_arc("X", "I", Sign::plus);
  return n;
}

Network boundary_network() {
  Network n;
  for (const char* v : {"E", "K", "x", "y", "M", "I"}) n.add_node(v);
  n.add_arc("E", "K", Sign::plus);
  n.add_arc("K", "x", Sign::plus);
  n.add_arc("K", "y", Sign::minus);
  n.add_arc("x", "M", Sign::plus);
  n.add_arc("y", "M", Sign::plus);
  n.add_arc("M", "I", Sign::plus);
  return n;
}

Network nuisance_network() {
  Network n;
  for (const char* v : {"X", "Z", "E", "Y", "I"}) n.add_node(v);
  n.add_arc("X", "E", Sign::plus);
  n.add_arc("Z", "E", Sign::plus);
  n.add_arc("Z", "I", Sign::plus);
  n.add_arc("E", "Y", Sign::plus);
  n.add_arc("Y", "I", Sign::plus);
  return n;
}

Query simple_query(const Network& net, std::string_view evidence, std::string_view interest,
                   bool value) {
  return Query{{}, {net.index(evidence), value}, net.index(interest)};
}

}  // namespace qpn::testing
