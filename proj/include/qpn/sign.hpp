#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace qpn {

// Qualitative sign of an influence or of a node's change in belief.
enum class Sign : unsigned char { zero, plus, minus, ambiguous };

inline constexpr std::array<Sign, 4> kAllSigns{Sign::plus, Sign::minus, Sign::zero,
                                               Sign::ambiguous};

// Sign product: chains influences along a trail.
constexpr Sign operator*(Sign a, Sign b) noexcept {
  if (a == Sign::zero || b == Sign::zero) return Sign::zero;
  if (a == Sign::ambiguous || b == Sign::ambiguous) return Sign::ambiguous;
  return a == b ? Sign::plus : Sign::minus;
}

// Sign sum: combines influences arriving along parallel trails.
constexpr Sign operator+(Sign a, Sign b) noexcept {
  if (a == Sign::zero) return b;
  if (b == Sign::zero) return a;
  return a == b ? a : Sign::ambiguous;
}

inline Sign& operator*=(Sign& a, Sign b) noexcept { return a = a * b; }
inline Sign& operator+=(Sign& a, Sign b) noexcept { return a = a + b; }

constexpr Sign sign_product(Sign a, Sign b) noexcept { return a * b; }
constexpr Sign sign_sum(Sign a, Sign b) noexcept { return a + b; }

constexpr bool is_unambiguous(Sign s) noexcept { return s != Sign::ambiguous; }

// Sign of an observed value: true pushes belief up, false pushes it down.
constexpr Sign sign_of(bool value) noexcept { return value ? Sign::plus : Sign::minus; }

// ASCII glyph: "+", "-", "0" or "?".
std::string_view glyph(Sign s) noexcept;

// Accepts "+", "-", "0", "?" and the typographic minus U+2212.
std::optional<Sign> parse_sign(std::string_view text) noexcept;

std::ostream& operator<<(std::ostream& os, Sign s);

}  // namespace qpn
