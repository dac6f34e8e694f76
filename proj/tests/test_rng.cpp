#include <set>

#include "doctest.h"
#include "rng.hpp"

using evoc::RandomStream;

TEST_CASE("streams are reproducible from their key") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derivation is sensitive to path order and content") {
  const auto k1 = RandomStream::derive_key(7, {1, 2});
  const auto k2 = RandomStream::derive_key(7, {2, 1});
  const auto k3 = RandomStream::derive_key(7, {1, 2, 0});
  const auto k4 = RandomStream::derive_key(8, {1, 2});
  CHECK(k1 != k2);
  CHECK(k1 != k3);
  CHECK(k1 != k4);
}

TEST_CASE("derived streams do not collide over a realistic key space") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t iter = 0; iter < 50; ++iter) {
    for (std::uint64_t agent = 0; agent < 100; ++agent) {
      for (std::uint64_t purpose = 1; purpose <= 3; ++purpose) {
        keys.insert(RandomStream::derive_key(12345, {iter, agent, purpose}));
      }
    }
  }
  CHECK(keys.size() == 50u * 100u * 3u);
}

TEST_CASE("unit draws live in [0,1) and bounded draws in range") {
  RandomStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto v = rng.next_below(7);
    CHECK(v < 7);
  }
}

TEST_CASE("bernoulli respects the trivial probabilities") {
  RandomStream rng(11);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_CASE("bounded draws are roughly uniform") {
  RandomStream rng(17);
  int counts[6] = {0};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[rng.next_below(6)];
  for (int c : counts) {
    CHECK(c > n / 6 - 600);
    CHECK(c < n / 6 + 600);
  }
}
