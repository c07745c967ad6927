#include <doctest.h>

#include <sstream>

#include "planes/latin.hpp"

using namespace planes;

namespace {

LatinSquare cyclic(int m) {
  LatinSquare s = LatinSquare::blank(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) s.cell(r, c) = static_cast<std::uint8_t>((r + c) % m);
  return s;
}

}  // namespace

TEST_CASE("latin validation battery") {
  CHECK(validate_latin(cyclic(5)).ok);
  LatinSquare bad = cyclic(4);
  bad.cell(0, 0) = 1;  // repeats 1 in row 0 and column 0
  const auto rep = validate_latin(bad);
  CHECK_FALSE(rep.ok);
  CHECK(!rep.violation.empty());

  LatinSquare wrong_size = cyclic(3);
  wrong_size.grid.pop_back();
  CHECK_FALSE(validate_latin(wrong_size).ok);

  LatinSquare out_of_range = cyclic(3);
  out_of_range.cell(1, 1) = 3;
  CHECK_FALSE(validate_latin(out_of_range).ok);
}

TEST_CASE("orthogonality") {
  // rows r + c and r + 2c over Z_5 are orthogonal
  LatinSquare a = cyclic(5), b = LatinSquare::blank(5);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) b.cell(r, c) = static_cast<std::uint8_t>((r + 2 * c) % 5);
  CHECK(orthogonal(a, b));
  CHECK_FALSE(orthogonal(a, a));
  CHECK_FALSE(orthogonal(a, cyclic(4)));

  MOLSet mols{5, {a, b}};
  CHECK(validate_mols(mols).ok);
  CHECK_FALSE(mols.complete());
  mols.squares.push_back(a);
  CHECK_FALSE(validate_mols(mols).ok);
}

TEST_CASE("block format round trip") {
  std::ostringstream os;
  write_square_blocks(os, {cyclic(3), cyclic(4)});
  std::istringstream is(os.str());
  const auto parsed = parse_square_blocks(is);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == cyclic(3));
  CHECK(parsed[1] == cyclic(4));
}

TEST_CASE("block format errors carry line numbers") {
  std::istringstream ragged("0 1\n1 0 1\n");
  CHECK_THROWS_WITH_AS(parse_square_blocks(ragged), doctest::Contains("line 2"), input_error);
  std::istringstream junk("0 1\n1 z\n");
  CHECK_THROWS_WITH_AS(parse_square_blocks(junk), doctest::Contains("'z'"), input_error);
  std::istringstream not_latin("0 1\n0 1\n");
  CHECK_THROWS_AS(parse_square_blocks(not_latin), input_error);
  std::istringstream comments("# header\n0 1\n1 0\n\n# another\n0\n");
  const auto parsed = parse_square_blocks(comments);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[1].order == 1);
}
