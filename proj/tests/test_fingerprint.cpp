#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "planes/designs.hpp"
#include "planes/fingerprint.hpp"

using namespace planes;

namespace {

// relabel the code by a symbol permutation per coordinate and a coordinate
// permutation - an isomorphism of the underlying plane
PlaneCode relabel(const PlaneCode& code, std::mt19937& rng) {
  const int n = code.order;
  std::vector<int> coord(n);
  std::iota(coord.begin(), coord.end(), 0);
  std::shuffle(coord.begin(), coord.end(), rng);
  std::vector<std::vector<std::uint8_t>> symbol(n, std::vector<std::uint8_t>(n));
  for (auto& s : symbol) {
    std::iota(s.begin(), s.end(), std::uint8_t(0));
    std::shuffle(s.begin(), s.end(), rng);
  }
  PlaneCode out;
  out.order = n;
  for (const auto& v : code.vectors) {
    GroupVector w(v.size());
    for (int i = 0; i < n; ++i) w[i] = symbol[i][v[coord[i]]];
    out.vectors.push_back(std::move(w));
  }
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

}  // namespace

TEST_CASE("projective incidence structure shape") {
  for (int p : {2, 3, 5}) {
    const auto inc = projective_incidence(extend_to_projective(prime_plane(p)));
    CHECK(inc.points == p * p + p + 1);
    CHECK(inc.lines == p * p + p + 1);
    for (const auto& line : inc.line_points) CHECK(static_cast<int>(line.size()) == p + 1);
    // every point on exactly p+1 lines
    for (const auto& through : inc.point_lines)
      CHECK(static_cast<int>(through.size()) == p + 1);
    // any two distinct points share exactly one line
    for (int a = 0; a < inc.points; ++a)
      for (int b = a + 1; b < inc.points; ++b) {
        int shared = 0;
        for (int l : inc.point_lines[a])
          for (int m : inc.point_lines[b])
            if (l == m) ++shared;
        CHECK(shared == 1);
      }
  }
}

TEST_CASE("frozen fingerprints of the prime planes") {
  auto fp = [](int p) { return completion_invariant(affine_to_code(prime_plane(p))); };
  CHECK(fp(2) == "088968834037e16c5f29f4550328e4fa6931fd5d46bb5a63f51526c6b86b9aa8");
  CHECK(fp(3) == "cfaeea231f353f3866749cd615839c93d6a2ea578a860022afdd695a4fc3bf39");
  CHECK(fp(5) == "fec93ee3208ed921b3de96eedc1735dfbb22464ab56cf7efd52dc4ecedac6b2f");
  CHECK(fp(7) == "827d26ddf83deef543858f34d58c562aacf647ce0874757d95b9bb2d35eb19c8");
}

TEST_CASE("fingerprint is invariant under plane isomorphisms") {
  std::mt19937 rng(7);
  for (int p : {3, 5, 7}) {
    const PlaneCode code = affine_to_code(prime_plane(p));
    const std::string base = completion_invariant(code);
    const int trials = p == 7 ? 3 : 8;
    for (int t = 0; t < trials; ++t) {
      const PlaneCode other = relabel(code, rng);
      REQUIRE(validate_code(other).ok);
      CHECK(completion_invariant(other) == base);
    }
  }
}

TEST_CASE("different orders give different fingerprints") {
  CHECK(completion_invariant(affine_to_code(prime_plane(5))) !=
        completion_invariant(affine_to_code(prime_plane(7))));
  CHECK(completion_invariant(affine_to_code(prime_plane(2))) !=
        completion_invariant(affine_to_code(prime_plane(3))));
}

TEST_CASE("fingerprint rejects non-codes") {
  PlaneCode bad = affine_to_code(prime_plane(3));
  bad.vectors.pop_back();
  CHECK_THROWS_AS(completion_invariant(bad), input_error);
}
