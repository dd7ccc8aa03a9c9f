#include <random>

#include "doctest.h"
#include "slocal/localring.hpp"
#include "slocal/verify.hpp"
#include "support/oracles.hpp"

using namespace slocal;

TEST_CASE("ring construction validates its arguments") {
  CHECK_NOTHROW(make_ring(Characteristic::zero, 2, 16));
  CHECK_NOTHROW(make_ring(Characteristic::positive, 3, 8));
  CHECK_THROWS_AS(make_ring(Characteristic::zero, 4, 8), Error);
  CHECK_THROWS_AS(make_ring(Characteristic::zero, 1, 8), Error);
  CHECK_THROWS_AS(make_ring(Characteristic::zero, 2, 0), Error);
  CHECK(make_ring(Characteristic::zero, 2, 16).modulus() == mpz_class(65536));
}

TEST_CASE("arith wraps and truncates") {
  const Ring z = make_ring(Characteristic::zero, 5, 4);  // Z/625
  CHECK(z.from_integer(1L) + z.from_integer(624L) == z.zero());
  CHECK(z.from_integer(5L) * z.from_integer(5L) == z.from_integer(25L));

  const Ring z2 = make_ring(Characteristic::zero, 2, 16);
  CHECK(z2.from_integer(2L) * z2.from_integer(2L) == z2.from_integer(4L));

  const Ring f = make_ring(Characteristic::positive, 3, 8);
  const RingElem t = f.uniformizer();
  RingElem high = f.pi_pow(7);
  CHECK((t * high).is_zero());
  // coefficient-wise sums stay reduced
  CHECK(f.from_coefficients({2, 1}) + f.from_coefficients({2, 2}) ==
        f.from_coefficients({1, 0}));
  CHECK(ring_arith(RingOp::neg, f.from_coefficients({1}), f.zero()) ==
        f.from_coefficients({2}));
}

TEST_CASE("arith rejects mixed rings") {
  const Ring a = make_ring(Characteristic::zero, 5, 4);
  const Ring b = make_ring(Characteristic::zero, 5, 5);
  CHECK_THROWS_AS(a.one() + b.one(), Error);
  CHECK(a.one() != b.one());
}

TEST_CASE("valuation") {
  const Ring z = make_ring(Characteristic::zero, 5, 10);
  CHECK(valuation(z.from_integer(25L)) == Valuation::exact(2));
  CHECK(valuation(z.zero()) == Valuation::at_least_precision());
  CHECK(valuation(make_ring(Characteristic::zero, 2, 16).from_integer(6L)) ==
        Valuation::exact(1));
  const Ring f = make_ring(Characteristic::positive, 3, 8);
  CHECK(valuation(f.pi_pow(3)) == Valuation::exact(3));
  CHECK(Valuation::exact(3) < Valuation::at_least_precision());
}

TEST_CASE("invert matches the extended-euclid oracle") {
  const Ring z16 = make_ring(Characteristic::zero, 2, 4);
  CHECK(invert(z16.from_integer(3L)) == z16.from_integer(11L));
  CHECK(invert(z16.one()) == z16.one());
  CHECK_THROWS_AS(invert(z16.from_integer(2L)), Error);

  std::mt19937_64 rng(7);
  const Ring z = make_ring(Characteristic::zero, 7, 7);
  for (int i = 0; i < 200; ++i) {
    const RingElem u = verify::random_unit(z, rng);
    const RingElem inv = invert(u);
    CHECK(u * inv == z.one());
    CHECK(invert(inv) == u);  // involution
    const std::uint64_t expect =
        oracles::exgcd_inverse(u.residue().get_ui(), z.modulus().get_ui());
    CHECK(inv.residue() == mpz_class(static_cast<unsigned long>(expect)));
  }
}

TEST_CASE("invert works on power series") {
  std::mt19937_64 rng(11);
  const Ring f = make_ring(Characteristic::positive, 5, 9);
  for (int i = 0; i < 100; ++i) {
    const RingElem u = verify::random_unit(f, rng);
    CHECK(u * invert(u) == f.one());
    CHECK(invert(invert(u)) == u);
  }
}

TEST_CASE("valuation is additive under multiplication") {
  std::mt19937_64 rng(13);
  for (const Ring& ring : {make_ring(Characteristic::zero, 3, 9),
                           make_ring(Characteristic::positive, 2, 9)}) {
    for (int i = 0; i < 300; ++i) {
      const RingElem a = verify::random_element(ring, rng);
      const RingElem b = verify::random_element(ring, rng);
      const Valuation va = valuation(a), vb = valuation(b);
      if (!va.is_exact() || !vb.is_exact()) continue;
      if (va.value() + vb.value() >= ring.precision()) continue;
      CHECK(valuation(a * b) == Valuation::exact(va.value() + vb.value()));
    }
  }
}

TEST_CASE("additive subgroup level") {
  const Ring z = make_ring(Characteristic::zero, 5, 6);
  const std::vector<RingElem> g1{z.from_integer(25L)};
  CHECK(additive_subgroup_level(g1) == 2u);

  const Ring z2 = make_ring(Characteristic::zero, 2, 16);
  const std::vector<RingElem> g2{z2.from_integer(6L)};
  CHECK(additive_subgroup_level(g2) == 1u);

  const std::vector<RingElem> g3{z.zero(), z.zero()};
  CHECK(!additive_subgroup_level(g3).has_value());

  const std::vector<RingElem> empty;
  CHECK_THROWS_AS(additive_subgroup_level(empty), Error);
}

TEST_CASE("additive subgroup level equals minimal valuation (closure oracle)") {
  std::mt19937_64 rng(17);
  // p^N <= 2^14 so the brute-force closure stays enumerable
  for (const auto& [p, n] : std::initializer_list<std::pair<std::uint64_t, unsigned>>{
           {2, 13}, {3, 8}, {7, 4}}) {
    const Ring ring = make_ring(Characteristic::zero, p, n);
    std::uint64_t mod = 1;
    for (unsigned i = 0; i < n; ++i) mod *= p;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RingElem> gens;
      std::vector<std::uint64_t> raw;
      const int count = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < count; ++i) {
        const RingElem e = verify::random_element(ring, rng);
        gens.push_back(e);
        raw.push_back(e.residue().get_ui());
      }
      const auto level = additive_subgroup_level(gens);
      unsigned expected_min = n;
      bool all_zero = true;
      for (const RingElem& e : gens) {
        const Valuation v = valuation(e);
        if (v.is_exact()) {
          all_zero = false;
          expected_min = std::min(expected_min, v.value());
        }
      }
      if (all_zero) {
        CHECK(!level.has_value());
        continue;
      }
      REQUIRE(level.has_value());
      CHECK(*level == expected_min);
      // the closure really is pi^level * O
      const auto closure = oracles::additive_closure(raw, mod);
      std::uint64_t pk = 1;
      for (unsigned i = 0; i < *level; ++i) pk *= p;
      CHECK(closure.size() == mod / pk);
      CHECK(closure.count(pk % mod) == 1);
    }
  }
}

TEST_CASE("additive span in positive characteristic") {
  const Ring f = make_ring(Characteristic::positive, 3, 3);
  // span{t} does not reach t^2, so no proper tail is covered
  const std::vector<RingElem> g1{f.uniformizer()};
  CHECK(additive_subgroup_level(g1) == 3u);
  // a full monomial ladder reaches everything
  const std::vector<RingElem> g2{f.one(), f.pi_pow(1), f.pi_pow(2)};
  CHECK(additive_subgroup_level(g2) == 0u);
  const std::vector<RingElem> g3{f.pi_pow(1), f.pi_pow(2)};
  CHECK(additive_subgroup_level(g3) == 1u);
}

TEST_CASE("positive characteristic is p-torsion") {
  std::mt19937_64 rng(19);
  const Ring f = make_ring(Characteristic::positive, 5, 7);
  for (int i = 0; i < 100; ++i) {
    const RingElem a = verify::random_element(f, rng);
    RingElem acc = f.zero();
    for (std::uint64_t rep = 0; rep < f.residue_char(); ++rep) acc = acc + a;
    CHECK(acc.is_zero());
  }
}

TEST_CASE("canonical payloads make equality structural") {
  const Ring z = make_ring(Characteristic::zero, 7, 3);
  CHECK(z.from_integer(343L).is_zero());
  CHECK(z.from_integer(-1L) == z.from_integer(342L));
  const Ring f = make_ring(Characteristic::positive, 3, 4);
  CHECK(f.from_coefficients({-1, 3, 4}) == f.from_coefficients({2, 0, 1}));
}

TEST_CASE("shift_down divides exactly by powers of the uniformizer") {
  const Ring z = make_ring(Characteristic::zero, 3, 6);
  CHECK(shift_down(z.from_integer(54L), 3) == z.from_integer(2L));
  CHECK_THROWS_AS(shift_down(z.from_integer(2L), 1), Error);
  const Ring f = make_ring(Characteristic::positive, 2, 4);
  CHECK(shift_down(f.pi_pow(3), 2) == f.pi_pow(1));
}
