#include "doctest.h"
#include "qpn/sign.hpp"
#include "sign_tables.hpp"

#include <sstream>

using namespace qpn;

TEST_CASE("product matches the reference table in every cell") {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Sign a = testing::kTableOrder[r];
      const Sign b = testing::kTableOrder[c];
      CAPTURE(glyph(a));
      CAPTURE(glyph(b));
      CHECK(a * b == testing::kProductTable[r][c]);
      CHECK(sign_product(a, b) == testing::kProductTable[r][c]);
    }
  }
}

TEST_CASE("sum matches the reference table in every cell") {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Sign a = testing::kTableOrder[r];
      const Sign b = testing::kTableOrder[c];
      CAPTURE(glyph(a));
      CAPTURE(glyph(b));
      CHECK(a + b == testing::kSumTable[r][c]);
      CHECK(sign_sum(a, b) == testing::kSumTable[r][c]);
    }
  }
}

TEST_CASE("algebraic laws") {
  for (Sign a : kAllSigns) {
    CHECK(a * Sign::plus == a);
    CHECK(a + Sign::zero == a);
    CHECK(a * Sign::zero == Sign::zero);
    CHECK(a + Sign::ambiguous == Sign::ambiguous);
    CHECK(a + a == a);
    for (Sign b : kAllSigns) {
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      for (Sign c : kAllSigns) {
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) + c == a + (b + c));
      }
    }
  }
}

TEST_CASE("compound assignment") {
  Sign s = Sign::plus;
  s *= Sign::minus;
  CHECK(s == Sign::minus);
  s += Sign::plus;
  CHECK(s == Sign::ambiguous);
}

TEST_CASE("glyphs round-trip through the parser") {
  for (Sign s : kAllSigns) CHECK(parse_sign(glyph(s)) == s);
  CHECK(parse_sign("−") == Sign::minus);
  CHECK_FALSE(parse_sign("++").has_value());
  CHECK_FALSE(parse_sign("").has_value());
  std::ostringstream os;
  os << Sign::ambiguous << Sign::minus;
  CHECK(os.str() == "?-");
}

TEST_CASE("observed values map to seeds") {
  CHECK(sign_of(true) == Sign::plus);
  CHECK(sign_of(false) == Sign::minus);
  CHECK(is_unambiguous(Sign::zero));
  CHECK_FALSE(is_unambiguous(Sign::ambiguous));
}
