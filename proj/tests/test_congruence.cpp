#include <bit>
#include <random>

#include "doctest.h"
#include "slocal/congruence.hpp"
#include "slocal/verify.hpp"
#include "support/oracles.hpp"

using namespace slocal;

namespace {

std::vector<FiniteMat> sl2_gens(std::uint32_t q) {
  return {FiniteMat::elementary(q, 2, 1, 2, 1), FiniteMat::elementary(q, 2, 2, 1, 1)};
}

std::vector<FiniteMat> sl_gens(std::uint32_t q, int n) {
  std::vector<FiniteMat> gens;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) gens.push_back(FiniteMat::elementary(q, n, i, j, 1));
  return gens;
}

}  // namespace

TEST_CASE("finite matrix arithmetic") {
  const FiniteMat a = FiniteMat::elementary(8, 2, 1, 2, 3);
  const FiniteMat b = FiniteMat::elementary(8, 2, 2, 1, 5);
  const FiniteMat ab = a * b;
  CHECK(ab.at(0, 0) == 0);  // 1 + 15 = 16 = 0 mod 8
  CHECK(ab.at(0, 1) == 3);
  CHECK((a * a.inverse()) == FiniteMat::identity(8, 2));
  CHECK(a.det() == 1);
  CHECK(a.is_invertible());

  FiniteMat sing(8, 2);
  sing.set(0, 0, 2);
  sing.set(1, 1, 4);
  CHECK(!sing.is_invertible());
  CHECK_THROWS_AS(sing.inverse(), Error);

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteMat m(27, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.set(i, j, rng() % 27);
    if (!m.is_invertible()) continue;
    CHECK(m * m.inverse() == FiniteMat::identity(27, 3));
  }
}

TEST_CASE("packing round-trips") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    // keep bits-per-entry * n^2 within the 128-bit key
    const std::uint32_t q = 2 + static_cast<std::uint32_t>(rng() % 255);
    const int n = 1 + static_cast<int>(rng() % 4);
    FiniteMat m(q, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, rng() % q);
    const unsigned bits = static_cast<unsigned>(std::bit_width(q - 1));
    CHECK(FiniteMat::unpack(m.key(bits), bits, q, n) == m);
  }
}

TEST_CASE("project is a homomorphism") {
  const Ring z = make_ring(Characteristic::zero, 3, 6);
  CHECK(project(RMatrix::identity(z, 2), 2) == FiniteMat::identity(9, 2));
  CHECK(project(elementary(z, 2, 1, 2, z.from_integer(9L)), 2) == FiniteMat::identity(9, 2));

  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 50; ++trial) {
    const RMatrix a = verify::random_sl(z, 2, rng);
    const RMatrix b = verify::random_sl(z, 2, rng);
    CHECK(project(a * b, 3) == project(a, 3) * project(b, 3));
  }
  CHECK_THROWS_AS(project(RMatrix::identity(z, 2), 7), Error);
  const Ring f = make_ring(Characteristic::positive, 3, 6);
  CHECK_THROWS_AS(project(RMatrix::identity(f, 2), 2), Error);
}

TEST_CASE("group closure basics") {
  // empty generating set with explicit context: the trivial group
  const FiniteGroup trivial = group_closure(4, 2, {});
  CHECK(trivial.size() == 1);
  CHECK(trivial.contains(FiniteMat::identity(4, 2)));

  // SL2(F_2) has 6 elements; the oracle enumerates determinant-1 matrices
  const FiniteGroup sl2f2 = group_closure(sl2_gens(2));
  CHECK(sl2f2.size() == 6);
  CHECK(sl2f2.size() == oracles::count_sl2_elements(2));

  const FiniteGroup sl2f3 = group_closure(sl2_gens(3));
  CHECK(sl2f3.size() == 24);
  CHECK(sl2f3.size() == oracles::count_sl2_elements(3));

  // deterministic enumeration: identity first, then sorted layers
  CHECK(sl2f3.element(0) == FiniteMat::identity(3, 2));
  const FiniteGroup again = group_closure(sl2_gens(3));
  for (std::size_t i = 0; i < sl2f3.size(); ++i) CHECK(sl2f3.element(i) == again.element(i));
}

TEST_CASE("closure respects the element cap") {
  ClosureOptions opts;
  opts.element_cap = 10;
  CHECK_THROWS_AS(group_closure(sl2_gens(5), opts), Error);
}

TEST_CASE("subgroup index is Lagrange-exact") {
  const FiniteGroup g = group_closure(sl2_gens(2));
  CHECK(subgroup_index(g, g) == 1);
  const FiniteGroup trivial = group_closure(2, 2, {});
  CHECK(subgroup_index(trivial, g) == 6);

  // a subgroup not contained in the ambient group is rejected
  const FiniteGroup other = group_closure(4, 2, {FiniteMat::elementary(4, 2, 1, 2, 1)});
  CHECK_THROWS_AS(subgroup_index(other, g), Error);
}

TEST_CASE("orders match the standard formula") {
  for (const auto& [n, p, m] :
       std::initializer_list<std::tuple<int, std::uint64_t, unsigned>>{
           {2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {2, 3, 2}, {2, 5, 1}, {3, 2, 1}, {3, 3, 1}}) {
    std::uint32_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= static_cast<std::uint32_t>(p);
    const FiniteGroup g = group_closure(sl_gens(q, n));
    CHECK(g.size() == sl_order_formula(n, p, m));
  }
}

TEST_CASE("derived subgroup and abelianization") {
  // cyclic group: abelianization is the group itself
  const FiniteGroup c4 = group_closure(4, 2, {FiniteMat::elementary(4, 2, 1, 2, 1)});
  CHECK(c4.size() == 4);
  CHECK(derived_subgroup(c4).size() == 1);
  CHECK(abelianization(c4) == std::vector<std::uint64_t>{4});

  CHECK(abelianization(group_closure(sl2_gens(2))) == std::vector<std::uint64_t>{2});
  CHECK(abelianization(group_closure(sl2_gens(3))) == std::vector<std::uint64_t>{3});
  CHECK(abelianization(group_closure(sl2_gens(5))).empty());
  CHECK(abelianization(group_closure(sl_gens(2, 3))).empty());

  // the derived subgroup of SL2(F_2) is the 3-cycle subgroup
  const FiniteGroup d = derived_subgroup(group_closure(sl2_gens(2)));
  CHECK(d.size() == 3);
}

TEST_CASE("el image index") {
  CHECK(el_image_index(2, 2, 0, 1) == 1);
  CHECK(el_image_index(2, 3, 0, 2) == 1);
  CHECK(el_image_index(3, 2, 0, 1) == 1);

  const std::uint64_t idx223 = el_image_index(2, 2, 1, 3);
  CHECK(idx223 > 1);
  const std::uint64_t idx232 = el_image_index(2, 3, 1, 2);
  CHECK(idx232 > 1);

  // divisibility along k (the groups shrink as k grows)
  const std::uint64_t k1 = el_image_index(2, 2, 1, 3);
  const std::uint64_t k2 = el_image_index(2, 2, 2, 3);
  CHECK(k2 % k1 == 0);

  CHECK_THROWS_AS(el_image_index(2, 2, 3, 3), Error);
}

TEST_CASE("word tracking recovers elements") {
  ClosureOptions opts;
  opts.track_words = true;
  const FiniteGroup g = group_closure(9, 2, sl2_gens(9), opts);
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    const FiniteMat target = g.element(rng() % g.size());
    const std::vector<int> word = g.word_for(target);
    FiniteMat acc = FiniteMat::identity(9, 2);
    for (const int code : word)
      acc = acc * (code >= 0 ? g.generators()[static_cast<std::size_t>(code)]
                             : g.generators()[static_cast<std::size_t>(~code)].inverse());
    CHECK(acc == target);
  }
}

TEST_CASE("nontrivial rotation representation") {
  const RepDescription rep3 = nontrivial_rep(3, 2);
  CHECK(rep3.cyclic_order > 1);
  CHECK(rep3.k == 1);
  CHECK(rep3.generator_images.size() == 2);

  CHECK_THROWS_AS(nontrivial_rep(5, 2), Error);
  CHECK_THROWS_AS(nontrivial_rep(3, 1), Error);

  // relator soundness on a handful of BFS words
  ClosureOptions opts;
  opts.track_words = true;
  const FiniteGroup g = group_closure(9, 2, sl2_gens(9), opts);
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> word;
    for (int l = 0; l < 12; ++l) {
      const int gi = static_cast<int>(rng() % 2);
      word.push_back((rng() & 1) ? gi : ~gi);
    }
    FiniteMat prod = FiniteMat::identity(9, 2);
    for (const int code : word)
      prod = prod * (code >= 0 ? g.generators()[static_cast<std::size_t>(code)]
                               : g.generators()[static_cast<std::size_t>(~code)].inverse());
    const std::vector<int> back = g.word_for(prod.inverse());
    word.insert(word.end(), back.begin(), back.end());
    CHECK(rep_kills_word(rep3, word));
  }

  // the display rendering is a rotation block
  const auto block = rotation_block_display(rep3, 1);
  CHECK(block.size() == 2);
  CHECK(block[0][0] == doctest::Approx(block[1][1]));
  CHECK(block[0][1] == doctest::Approx(-block[1][0]));
}
