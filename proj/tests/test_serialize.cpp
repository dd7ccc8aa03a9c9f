#include <random>

#include "doctest.h"
#include "slocal/serialize.hpp"
#include "slocal/verify.hpp"

using namespace slocal;
using nlohmann::json;

TEST_CASE("ring wire format") {
  const Ring z = make_ring(Characteristic::zero, 2, 16);
  const json j = ring_to_json(z);
  CHECK(j == json{{"char", "zero"}, {"p", 2}, {"precision", 16}});
  CHECK(ring_from_json(j) == z);

  const Ring f = make_ring(Characteristic::positive, 3, 8);
  CHECK(ring_from_json(ring_to_json(f)) == f);

  CHECK_THROWS_AS(ring_from_json(json{{"char", "mixed"}, {"p", 2}, {"precision", 1}}), Error);
}

TEST_CASE("element round-trips") {
  std::mt19937_64 rng(107);
  const Ring z = make_ring(Characteristic::zero, 7, 9);
  const Ring f = make_ring(Characteristic::positive, 5, 6);
  for (int i = 0; i < 50; ++i) {
    const RingElem a = verify::random_element(z, rng);
    CHECK(elem_from_json(z, elem_to_json(a)) == a);
    const RingElem b = verify::random_element(f, rng);
    CHECK(elem_from_json(f, elem_to_json(b)) == b);
  }
  CHECK(elem_to_json(z.from_integer(42L)) == json("42"));
  CHECK_THROWS_AS(elem_from_json(z, json("not-a-number")), Error);
}

TEST_CASE("matrix, word, polynomial round-trips") {
  std::mt19937_64 rng(109);
  const Ring z = make_ring(Characteristic::zero, 3, 8);
  for (int i = 0; i < 20; ++i) {
    const RMatrix m = verify::random_sl(z, 3, rng);
    CHECK(matrix_from_json(z, matrix_to_json(m)) == m);

    const ElementaryWord w = decompose_sln(m);
    const ElementaryWord back = word_from_json(z, 3, word_to_json(w));
    CHECK(evaluate_word(back) == m);
  }

  const Polynomial f = make_polynomial(z, {mpz_class(4), mpz_class(0), mpz_class(1)});
  const Polynomial g = poly_from_json(z, poly_to_json(f));
  REQUIRE(g.coeffs.size() == f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) CHECK(g.coeffs[i] == f.coeffs[i]);
}

TEST_CASE("rational matrices and flags") {
  std::mt19937_64 rng(113);
  QMatrix m(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      mpq_class x(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 3));
      x.canonicalize();
      m.set(i, j, x);
    }
  CHECK(qmatrix_from_json(qmatrix_to_json(m)) == m);
  CHECK(rational_from_json(json("3/6")) == mpq_class(1, 2));

  QMatrix u = QMatrix::identity(3);
  u.set(0, 1, mpq_class(1, 2));
  u.set(1, 2, mpq_class(3));
  const Flag flag = jh_series(std::vector<QMatrix>{u});
  const Flag back = flag_from_json(3, flag_to_json(flag));
  REQUIRE(back.spaces().size() == flag.spaces().size());
  for (std::size_t i = 0; i < flag.spaces().size(); ++i)
    CHECK(back.spaces()[i] == flag.spaces()[i]);
}
