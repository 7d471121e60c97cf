#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>
#include <vector>

#include "shpart/bloom_filter.hpp"
#include "shpart/minhash.hpp"
#include "shpart/types.hpp"

using namespace shpart;

TEST_CASE("bloom filter has no false negatives and starts empty") {
  bloom_filter bf(1 << 16, 4, 8);
  CHECK_FALSE(bf.query(1, 2));
  bf.insert(1, 2);
  CHECK(bf.query(1, 2));
  CHECK(bf.inserted_keys() == 1);

  // Tuple encoding keeps (n,p) and (p,n) apart.
  CHECK(bloom_filter::encode(3, 1, 4) == 13);
  CHECK_FALSE(bf.query(2, 1));

  for (net_id n = 0; n < 500; ++n) bf.insert(n, static_cast<part_id>(n % 8));
  for (net_id n = 0; n < 500; ++n) CHECK(bf.query(n, static_cast<part_id>(n % 8)));
}

TEST_CASE("a saturated filter answers positive for everything") {
  bloom_filter bf(8, 8, 4);
  for (net_id n = 0; n < 64; ++n) bf.insert(n, 0);
  for (net_id n = 100; n < 130; ++n) CHECK(bf.query(n, 3));
}

TEST_CASE("analytic false-positive probability") {
  CHECK(bf_fpp(4, 1'000'000, 20'000'000) == doctest::Approx(0.0010796836430242316).epsilon(1e-12));
  CHECK(bf_fpp(7, 0, 1024) == 0.0);
  CHECK(bf_fpp(1, 4096, 4096) == doctest::Approx(0.6321205588285577).epsilon(1e-12));
}

TEST_CASE("empirical false-positive rate brackets the formula at the 1e-2 point") {
  // ~10^-2 operating point: k=4, m=10^6 bits, n=95032 keys.
  const std::uint64_t m = 1'000'000;
  const int k = 4;
  const std::uint64_t n = 95'032;
  const int parts = 16;
  bloom_filter bf(m, k, parts);

  // Insert distinct keys (net, net % parts); probe keys use other part ids,
  // so the probe set is disjoint from the inserted set.
  for (std::uint64_t i = 0; i < n; ++i)
    bf.insert(static_cast<net_id>(i), static_cast<part_id>(i % parts));

  const double expected = bf_fpp(k, n, m);
  REQUIRE(expected == doctest::Approx(0.01).epsilon(0.01));

  std::int64_t positives = 0;
  const std::int64_t probes = 100'000;
  for (std::int64_t i = 0; i < probes; ++i) {
    const auto nn = static_cast<net_id>(i);
    const auto pp = static_cast<part_id>((nn % parts + 1 + (i % (parts - 1))) % parts);
    REQUIRE(pp != static_cast<part_id>(nn % parts));
    if (bf.query(nn, pp)) ++positives;
  }
  const double rate = static_cast<double>(positives) / static_cast<double>(probes);
  CHECK(rate >= 0.5 * expected);
  CHECK(rate <= 2.0 * expected);
}

TEST_CASE("minhash matches hand arithmetic and stays deterministic") {
  minhash_family hand(std::vector<std::uint64_t>{3}, std::vector<std::uint64_t>{5}, 97);
  const std::vector<net_id> nets = {10, 20};
  const auto sig = hand.signature(nets);
  REQUIRE(sig.size() == 1);
  CHECK(sig[0] == 35);  // min(h(10)=35, h(20)=65)
  CHECK(hand.part(nets, 8) == 3);

  minhash_family a(4, 77), b(4, 77), c(4, 78);
  const std::vector<net_id> list = {5, 9, 123, 7};
  CHECK(a.part(list, 64) == b.part(list, 64));
  CHECK(a.signature(list) == b.signature(list));
  bool differs = false;
  for (net_id n = 0; n < 32 && !differs; ++n)
    differs = a.part({&n, 1}, 1024) != c.part({&n, 1}, 1024);
  CHECK(differs);

  CHECK_THROWS_AS(a.part({}, 8), invariant_error);
  CHECK_THROWS_AS(minhash_family(0, 1), invariant_error);
}

TEST_CASE("identical net lists collide; disjoint ones agree near 1/K") {
  // One hash function: with several, the product of minima is genuinely
  // biased toward residues sharing factors with K, which is the trade the
  // formula makes; spread is only meaningful for a single factor.
  const int K = 8;
  std::int64_t agree = 0;
  const int trials = 20'000;
  rng r(2024);
  for (int t = 0; t < trials; ++t) {
    minhash_family fam(1, r.next());
    std::vector<net_id> x, y;
    for (int i = 0; i < 6; ++i) {
      x.push_back(static_cast<net_id>(r.next_below(1'000'000)));
      y.push_back(static_cast<net_id>(1'000'000 + r.next_below(1'000'000)));
    }
    CHECK(fam.part(x, K) == fam.part(x, K));
    if (fam.part(x, K) == fam.part(y, K)) ++agree;
  }
  const double rate = static_cast<double>(agree) / trials;
  CHECK(rate > 0.5 / K);
  CHECK(rate < 1.5 / K);
}

TEST_CASE("iterative modular product equals a wide-integer oracle") {
  rng r(555);
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t q = minhash_family::kDefaultModulus;
    const int K = static_cast<int>(2 + r.next_below(4094));
    std::vector<std::uint64_t> a(4), b(4);
    for (auto& x : a) x = r.next_below(q);
    for (auto& x : b) x = r.next_below(q);
    minhash_family fam(a, b, q);
    std::vector<net_id> nets(3);
    for (auto& n : nets) n = static_cast<net_id>(r.next_below(1u << 30));

    const auto sig = fam.signature(nets);
    unsigned __int128 wide = 1;
    for (std::uint64_t m : sig) wide *= m;
    const auto expected = static_cast<part_id>(wide % static_cast<unsigned>(K));
    CHECK(fam.part(nets, K) == expected);
  }
}
