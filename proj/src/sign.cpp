#include "qpn/sign.hpp"

namespace qpn {

std::string_view glyph(Sign s) noexcept {
  switch (s) {
    case Sign::plus:
      return "+";
    case Sign::minus:
      return "-";
    case Sign::zero:
      return "0";
    case Sign::ambiguous:
      return "?";
  }
  return "?";
}

std::optional<Sign> parse_sign(std::string_view text) noexcept {
  if (text == "+") return Sign::plus;
  if (text == "-" || text == "−") return Sign::minus;
  if (text == "0") return Sign::zero;
  if (text == "?") return Sign::ambiguous;
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, Sign s) { return os << glyph(s); }

}  // namespace qpn
