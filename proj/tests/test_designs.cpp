#include <doctest.h>

#include <algorithm>

#include "planes/designs.hpp"

using namespace planes;

TEST_CASE("prime planes validate") {
  for (int p : {2, 3, 5, 7}) {
    const AffinePlane plane = prime_plane(p);
    CHECK(plane.order == p);
    CHECK(plane.classes.size() == static_cast<std::size_t>(p + 1));
    CHECK(validate_affine(plane).ok);
  }
  CHECK_THROWS_AS(prime_plane(6), input_error);
  CHECK_THROWS_AS(prime_plane(1), input_error);
}

TEST_CASE("affine to MOLS and back") {
  for (int p : {2, 3, 5, 7}) {
    const AffinePlane plane = prime_plane(p);
    const MOLSet mols = affine_to_mols(plane);
    CHECK(mols.complete());
    CHECK(validate_mols(mols).ok);
    const AffinePlane back = mols_to_affine(mols);
    CHECK(validate_affine(back).ok);
    // the round trip preserves the line set (classes may be reordered)
    auto lines = [](const AffinePlane& a) {
      std::vector<Line> all;
      for (const auto& cls : a.classes)
        for (const auto& l : cls) all.push_back(l);
      std::sort(all.begin(), all.end());
      return all;
    };
    CHECK(lines(plane) == lines(back));
  }
}

TEST_CASE("affine to code and back") {
  for (int p : {2, 3, 5, 7}) {
    const AffinePlane plane = prime_plane(p);
    const PlaneCode code = affine_to_code(plane);
    CHECK(static_cast<int>(code.vectors.size()) == p * p);
    CHECK(validate_code(code).ok);
    // all n constants appear
    for (int m = 0; m < p; ++m)
      CHECK(std::binary_search(code.vectors.begin(), code.vectors.end(), constant_vector(p, m)));
    const AffinePlane back = code_to_affine(code);
    CHECK(validate_affine(back).ok);
    CHECK(affine_to_code(back).vectors == code.vectors);
  }
}

TEST_CASE("code partition structure") {
  const PlaneCode code = affine_to_code(prime_plane(5));
  const auto classes = partition_code(code);
  REQUIRE(classes.size() == 5);
  for (const auto& cls : classes) CHECK(cls.size() == 5);
  // within a class no coincidence, across classes exactly one
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (const auto& u : classes[a])
      for (std::size_t b = 0; b < classes.size(); ++b)
        for (const auto& v : classes[b]) {
          if (u == v) continue;
          CHECK(count_coincidences(u, v) == (a == b ? 0 : 1));
        }
}

TEST_CASE("validator battery: affine") {
  AffinePlane plane = prime_plane(3);
  SUBCASE("wrong class count") {
    plane.classes.pop_back();
    CHECK_FALSE(validate_affine(plane).ok);
  }
  SUBCASE("short line") {
    plane.classes[0][0].pop_back();
    CHECK_FALSE(validate_affine(plane).ok);
  }
  SUBCASE("point out of range") {
    plane.classes[0][0][0] = 9;
    CHECK_FALSE(validate_affine(plane).ok);
  }
  SUBCASE("class not a partition") {
    plane.classes[0][0] = plane.classes[0][1];
    CHECK_FALSE(validate_affine(plane).ok);
  }
  SUBCASE("double intersection") {
    std::swap(plane.classes[0][0][0], plane.classes[0][1][0]);
    const auto rep = validate_affine(plane);
    CHECK_FALSE(rep.ok);
  }
}

TEST_CASE("validator battery: code") {
  PlaneCode code = affine_to_code(prime_plane(3));
  SUBCASE("duplicate vector") {
    code.vectors.push_back(code.vectors[0]);
    CHECK_FALSE(validate_code(code).ok);
  }
  SUBCASE("coincidence overflow") {
    code.vectors.push_back(GroupVector{0, 0, 1});
    CHECK_FALSE(validate_code(code).ok);  // meets (0,0,0) twice
  }
  SUBCASE("entry out of range") {
    code.vectors[0] = GroupVector{0, 1, 3};
    CHECK_FALSE(validate_code(code).ok);
  }
  SUBCASE("wrong order vector") {
    code.vectors[0] = GroupVector{0, 1};
    CHECK_FALSE(validate_code(code).ok);
  }
}

TEST_CASE("code_to_affine rejects junk") {
  PlaneCode code = affine_to_code(prime_plane(3));
  code.vectors.pop_back();
  CHECK_THROWS_AS(code_to_affine(code), input_error);  // not n^2 vectors

  // n^2 pairwise-compatible vectors that are not a plane code partition
  PlaneCode scrambled = affine_to_code(prime_plane(3));
  scrambled.vectors[0] = GroupVector{1, 0, 0};
  CHECK_THROWS_AS(code_to_affine(scrambled), input_error);
}

TEST_CASE("projective extension") {
  const ProjectivePlane proj = extend_to_projective(prime_plane(3));
  CHECK(proj.ideal_points() == 4);
  AffinePlane bad = prime_plane(3);
  bad.classes.pop_back();
  CHECK_THROWS_AS(extend_to_projective(bad), input_error);
}
