#pragma once

#include <iosfwd>
#include <string>

#include "qpn/pivotal.hpp"

namespace qpn {

// Human-readable explanation. Conditional branches read
//   if |I:+ via I->D->C| >= |G:- via G->C| then sign[C]=+ else sign[C]=-
// and the last line relates the pivot to the node of interest.
void write_explanation(std::ostream& os, const Explanation& e, int indent = 0);
std::string explanation_text(const Explanation& e);

// The same content as a JSON document.
std::string explanation_json(const Explanation& e);

}  // namespace qpn
