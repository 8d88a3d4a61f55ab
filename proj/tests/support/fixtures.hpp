#pragma once

#include <string_view>

#include "qpn/network.hpp"

namespace qpn::testing {

// Nine-node worked example: H is observed true, A is the node of interest.
Network fixture_network();
Query fixture_query(const Network& net);

// The worked example plus D->E, M->H and a side branch J->L with L feeding B and A.
Network full_example_network();

// E->A+, E->X-, A->X+, X->I+: the pivot is the first candidate, X.
Network bottom_pivot_network();

// E->K+, K->x+, K->y-, x->M+, y->M+, M->I+: K is the boundary node.
Network boundary_network();

// X->E, Z->E, Z->I, E->Y, Y->I: X is requisite but on no chain from E to I.
Network nuisance_network();

// Query with evidence `evidence`=true, interest `interest`, no prior observations.
Query simple_query(const Network& net, std::string_view evidence, std::string_view interest,
                   bool value = true);

}  // namespace qpn::testing
