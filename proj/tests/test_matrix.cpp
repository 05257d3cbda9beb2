#include <doctest.h>

#include "ltl/matrix.hpp"

using namespace ltl;

TEST_CASE("inverse times matrix is the identity") {
  const RationalMatrix m = to_rational(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
  CHECK(inverse(m) * m == RationalMatrix::identity(3));
  CHECK(m * inverse(m) == RationalMatrix::identity(3));
}

TEST_CASE("determinant and leading minors") {
  const RationalMatrix m = to_rational(IntMatrix{{2, -1}, {-3, 2}});
  CHECK(determinant(m) == 1);
  const auto minors = leading_minors(m);
  REQUIRE(minors.size() == 2);
  CHECK(minors[0] == 2);
  CHECK(minors[1] == 1);
  CHECK(determinant(to_rational(IntMatrix{{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("singular matrix has no inverse") {
  CHECK_THROWS_AS(inverse(to_rational(IntMatrix{{1, 2}, {2, 4}})), Error);
}

TEST_CASE("rational strings") {
  CHECK(rational_to_string(mpq_class(3, 4)) == "3/4");
  CHECK(rational_to_string(mpq_class(-6, 3)) == "-2");
  CHECK(parse_rational("6/8") == mpq_class(3, 4));
  CHECK(parse_rational("-5") == -5);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}
