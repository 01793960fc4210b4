#include <doctest.h>

#include <cmath>
#include <set>

#include "pairlik/rng.hpp"

using namespace pairlik;

TEST_CASE("Philox4x32-10 known answers") {
  const auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const auto pi = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("Streams are reproducible and distinct") {
  RngStream a(42, 3, 7), b(42, 3, 7), c(42, 4, 7), d(42, 3, 8), e(43, 3, 7);
  std::set<std::uint64_t> firsts;
  const auto x = a();
  CHECK(x == b());
  firsts.insert(x);
  firsts.insert(c());
  firsts.insert(d());
  firsts.insert(e());
  CHECK(firsts.size() == 4);

  RngStream p(1);
  const RngStream s1 = p.split(1);
  const RngStream s2 = p.split(1);
  RngStream t1 = s1, t2 = s2;
  CHECK(t1() == t2());
  RngStream u = p.split(2);
  RngStream v = p.split(1);
  CHECK(u() != v());
}

TEST_CASE("Uniform and normal moments") {
  RngStream rng(2024);
  const int m = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0, sn4 = 0.0;
  double umin = 1.0, umax = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
  }
  CHECK(umin > 0.0);
  CHECK(umax < 1.0);
  CHECK(su / m == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / m) < 0.01);
  CHECK(sn2 / m == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sn4 / m == doctest::Approx(3.0).epsilon(0.05));
}
