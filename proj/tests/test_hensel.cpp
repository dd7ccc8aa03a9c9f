#include <random>

#include "doctest.h"
#include "slocal/hensel.hpp"
#include "slocal/verify.hpp"
#include "support/oracles.hpp"

using namespace slocal;

namespace {

Polynomial quartic_plus(const Ring& ring, long c) {
  return make_polynomial(ring, {mpz_class(c), mpz_class(0), mpz_class(0), mpz_class(0),
                                mpz_class(1)});
}

}  // namespace

TEST_CASE("poly_eval and poly_deriv") {
  const Ring z = make_ring(Characteristic::zero, 2, 16);
  const Polynomial f = quartic_plus(z, 31);
  CHECK(poly_eval(f, z.one()) == z.from_integer(32L));
  CHECK(f.degree() == 4);

  const Polynomial ident = make_polynomial(z, {mpz_class(0), mpz_class(1)});
  const RingElem c = z.from_integer(12345L);
  CHECK(poly_eval(ident, c) == c);

  const Polynomial d = poly_deriv(f);
  CHECK(d.degree() == 3);
  CHECK(poly_eval(d, z.one()) == z.from_integer(4L));

  const Ring other = make_ring(Characteristic::zero, 3, 4);
  CHECK_THROWS_AS(poly_eval(f, other.one()), Error);
}

TEST_CASE("lifting the 2-adic fourth root of -31") {
  const Ring z = make_ring(Characteristic::zero, 2, 16);
  const Polynomial f = quartic_plus(z, 31);
  const LiftResult lift = hensel_lift_trace(f, z.one());
  CHECK(poly_eval(f, lift.root).is_zero());

  // a0 = a mod f'(a) pi = 8
  CHECK(lift.root.residue() % 8 == 1);

  // residual valuations strictly increase until precision is reached
  for (std::size_t i = 1; i < lift.residual_valuations.size(); ++i)
    CHECK(lift.residual_valuations[i] > lift.residual_valuations[i - 1]);

  // At finite precision the model equation only pins the root modulo 2^14:
  // adding 2^14 changes x^4 by 4 x^3 2^14 = 0 mod 2^16.  The derivative is
  // not a unit here, so the class holds four model roots, all congruent to
  // the lifted one.
  const auto roots = oracles::polynomial_roots({31, 0, 0, 0, 1}, 1u << 16, 1, 8);
  REQUIRE(roots.size() == 4);
  const std::uint64_t got = lift.root.residue().get_ui();
  bool found = false;
  for (const auto r : roots) {
    if (r == got) found = true;
    CHECK(r % (1u << 14) == got % (1u << 14));
  }
  CHECK(found);
}

TEST_CASE("linear polynomials lift to their root") {
  const Ring z = make_ring(Characteristic::zero, 5, 8);
  const RingElem c = z.from_integer(123L);
  // f = t - c
  const Polynomial f{z, {-c, z.one()}};
  CHECK(hensel_lift(f, c + z.from_integer(5L)) == c);
}

TEST_CASE("lifting the fourth root of -4 over Z/5^10") {
  const Ring z = make_ring(Characteristic::zero, 5, 10);
  const Polynomial f = quartic_plus(z, 4);
  const RingElem root = hensel_lift(f, z.from_integer(4L));
  RingElem fourth = root * root;
  fourth = fourth * fourth;
  CHECK(fourth == -z.from_integer(4L));

  // cross-check the low digits against exhaustive search mod 5^4
  const auto roots = oracles::polynomial_roots({4, 0, 0, 0, 1}, 625, 4, 5);
  REQUIRE(roots.size() == 1);
  CHECK(root.residue() % 625 == static_cast<long>(roots[0]));
}

TEST_CASE("hypothesis violations are reported") {
  const Ring z = make_ring(Characteristic::zero, 2, 16);
  const Polynomial f = quartic_plus(z, 31);
  // val f(3) = 4 < 2 val f'(3) + 1 = 5
  CHECK_THROWS_AS(hensel_lift(f, z.from_integer(3L)), Error);
  try {
    hensel_lift(f, z.from_integer(3L));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::hypothesis_failed);
  }
  // f = t^2 with a = 0 is already a root in the model
  const Polynomial sq = make_polynomial(z, {mpz_class(0), mpz_class(0), mpz_class(1)});
  CHECK(hensel_lift(sq, z.zero()).is_zero());
}

TEST_CASE("uniqueness at unit derivative, random instances") {
  std::mt19937_64 rng(23);
  const Ring z = make_ring(Characteristic::zero, 3, 9);  // 3^9 = 19683 <= 2^16
  const std::uint64_t mod = 19683;
  int done = 0;
  while (done < 10) {
    std::vector<std::uint64_t> coeffs(4 + rng() % 2);
    for (auto& c : coeffs) c = rng() % mod;
    std::uint64_t a = rng() % mod;
    std::uint64_t fa = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) fa = (fa * a + *it) % mod;
    coeffs[0] = (coeffs[0] + mod - fa % 3) % mod;
    std::uint64_t da = 0;
    {
      std::vector<std::uint64_t> dc;
      for (std::size_t i = 1; i < coeffs.size(); ++i) dc.push_back(coeffs[i] * (i % 3) % mod);
      for (auto it = dc.rbegin(); it != dc.rend(); ++it) da = (da * a + *it) % mod;
    }
    if (da % 3 == 0) continue;
    std::vector<mpz_class> zc;
    for (const auto c : coeffs) zc.emplace_back(static_cast<unsigned long>(c));
    const RingElem root = hensel_lift(make_polynomial(z, zc),
                                      z.from_integer(static_cast<long>(a)));
    const auto roots = oracles::polynomial_roots(coeffs, mod, a, 3);
    REQUIRE(roots.size() == 1);
    CHECK(root.residue() == mpz_class(static_cast<unsigned long>(roots[0])));
    ++done;
  }
}

TEST_CASE("fourth_root_witness self-certifies") {
  for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    const Ring ring = make_ring(Characteristic::zero, p, 32);
    const RootWitness w = fourth_root_witness(ring);
    CHECK(w.certificate.is_zero());
    CHECK(is_unit(w.q));
    CHECK(w.r == (p == 2 ? 31 : p - 1));
  }
  CHECK_THROWS_AS(fourth_root_witness(make_ring(Characteristic::positive, 3, 8)), Error);
}

TEST_CASE("unit with unit square minus one") {
  const Ring z5 = make_ring(Characteristic::zero, 5, 8);
  const RingElem q5 = unit_with_unit_square_minus_one(z5);
  CHECK(q5 == z5.from_integer(2L));
  CHECK(valuation(q5 * q5 - z5.one()) == Valuation::exact(0));

  const Ring z7 = make_ring(Characteristic::zero, 7, 8);
  const RingElem q7 = unit_with_unit_square_minus_one(z7);
  CHECK(valuation(q7 * q7 - z7.one()) == Valuation::exact(0));

  CHECK_THROWS_AS(unit_with_unit_square_minus_one(make_ring(Characteristic::zero, 3, 8)),
                  Error);
  CHECK_THROWS_AS(unit_with_unit_square_minus_one(make_ring(Characteristic::zero, 2, 8)),
                  Error);
}
