#include "chromix/rng.hpp"

#include "doctest.h"

using chromix::Rng;

// Frozen values: experiment outputs must be reproducible across platforms,
// so the raw engine and the bounded draw are pinned here.
TEST_CASE("mt19937_64 stream is stable") {
  Rng rng(42);
  CHECK(rng.next() == 13930160852258120406ull);
  CHECK(rng.next() == 11788048577503494824ull);
  CHECK(rng.next() == 13874630024467741450ull);
}

TEST_CASE("bounded draws are uniform and stable") {
  Rng rng(7);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (int c : counts) {
    CHECK(c > 9500);
    CHECK(c < 10500);
  }
  Rng again(7);
  CHECK(again.below(6) == Rng(7).below(6));
}

TEST_CASE("trivial bounds consume no state") {
  Rng a(3), b(3);
  CHECK(a.below(1) == 0);
  CHECK(a.below(0) == 0);
  CHECK(a.next() == b.next());
}

TEST_CASE("split streams differ and are deterministic") {
  Rng a = Rng::split(99, 0);
  Rng b = Rng::split(99, 1);
  Rng a2 = Rng::split(99, 0);
  CHECK(a.next() != b.next());
  CHECK(Rng::split(99, 0).next() == a2.next());
}
