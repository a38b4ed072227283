#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rackcode/codeword.hpp"

using namespace rackcode;

TEST_CASE("evaluation points in F_29") {
  Field f = make_field(29, 2);
  CHECK(eval_point(f, 2, 0, 0, 1) == 2);
  CHECK(eval_point(f, 2, 1, 1, 0) == 25);
  CHECK(eval_point(f, 2, 0, 0, 0) == 1);
}

TEST_CASE("zero message encodes to the zero codeword") {
  Instance inst = fixtures::sketch12();
  Message zero(inst.params.B, 0);
  StackedCodeword cw = encode_stacked(inst.params, inst.field, zero);
  for (const FlatCodeword& icw : cw.instances)
    for (Symbol s : icw.data) CHECK(s == 0);
  CHECK(parity_check(inst.params, inst.field, cw));
}

TEST_CASE("random encodes satisfy every parity check, and perturbations break it") {
  Instance inst = fixtures::sketch12();
  std::mt19937_64 rng(11);
  StackedCodeword cw = fixtures::random_stacked(inst, 11);
  CHECK(parity_check(inst.params, inst.field, cw));

  SUBCASE("systematic layout") {
    std::mt19937_64 mrng(11);
    Message msg = random_message(inst.params, mrng, inst.field.q);
    const std::uint32_t rows = inst.params.base_rows();
    for (int j = 0; j < inst.params.k; ++j)
      for (int y = 0; y < inst.params.instances(); ++y)
        for (std::uint32_t a = 0; a < rows; ++a)
          CHECK(cw.instances[y].at(j, a) ==
                msg[std::size_t(j) * inst.params.l + std::uint64_t(y) * rows + a]);
  }

  SUBCASE("single-symbol perturbations are caught") {
    for (int trial = 0; trial < 10; ++trial) {
      StackedCodeword bad = cw;
      int y = int(rng() % bad.instances.size());
      std::size_t idx = std::size_t(rng() % bad.instances[y].data.size());
      bad.instances[y].data[idx] =
          (bad.instances[y].data[idx] + 1 + rng() % (inst.field.q - 1)) % inst.field.q;
      CHECK_FALSE(parity_check(inst.params, inst.field, bad));
    }
  }

  SUBCASE("stacked check localizes to instances") {
    StackedCodeword bad = cw;
    bad.instances[1].data[5] = (bad.instances[1].data[5] + 3) % inst.field.q;
    CHECK_FALSE(parity_check(inst.params, inst.field, bad));
    CHECK(oracle::parity_holds(bad.instances[0], inst.params, inst.field));
    CHECK_FALSE(oracle::parity_holds(bad.instances[1], inst.params, inst.field));
    CHECK(oracle::parity_holds(bad.instances[2], inst.params, inst.field));
  }
}

TEST_CASE("one message symbol flips at least r+1 positions of its row") {
  Instance inst = fixtures::sketch12();
  std::mt19937_64 rng(13);
  Message m1 = random_message(inst.params, rng, inst.field.q);
  Message m2 = m1;
  const std::uint32_t rows = inst.params.base_rows();
  const int node = 3;
  const int y = 1;
  const std::uint32_t a = 37;
  m2[std::size_t(node) * inst.params.l + std::uint64_t(y) * rows + a] =
      (m2[std::size_t(node) * inst.params.l + std::uint64_t(y) * rows + a] + 5) %
      inst.field.q;
  StackedCodeword c1 = encode_stacked(inst.params, inst.field, m1);
  StackedCodeword c2 = encode_stacked(inst.params, inst.field, m2);
  int differing = 0;
  for (int pos = 0; pos < inst.params.n; ++pos)
    if (c1.instances[y].at(pos, a) != c2.instances[y].at(pos, a)) ++differing;
  CHECK(differing >= inst.params.r + 1);
  // all other (instance, row) pairs agree
  for (int yy = 0; yy < inst.params.instances(); ++yy)
    for (std::uint32_t aa = 0; aa < rows; ++aa) {
      if (yy == y && aa == a) continue;
      for (int pos = 0; pos < inst.params.n; ++pos)
        if (c1.instances[yy].at(pos, aa) != c2.instances[yy].at(pos, aa)) REQUIRE(false);
    }
}

TEST_CASE("reconstruct recovers erased columns exactly") {
  Instance inst = fixtures::sketch12();
  StackedCodeword cw = fixtures::random_stacked(inst, 17);
  std::mt19937_64 rng(17);

  SUBCASE("erasing nothing is the identity") {
    std::vector<int> all(inst.params.n);
    for (int i = 0; i < inst.params.n; ++i) all[i] = i;
    StackedCodeword rec = reconstruct(inst.params, inst.field, cw, all);
    for (int y = 0; y < inst.params.instances(); ++y)
      CHECK(rec.instances[y].data == cw.instances[y].data);
  }

  SUBCASE("random r-subsets") {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<int> nodes(inst.params.n);
      for (int i = 0; i < inst.params.n; ++i) nodes[i] = i;
      for (int i = 0; i < inst.params.r; ++i)
        std::swap(nodes[i], nodes[i + rng() % (nodes.size() - i)]);
      std::vector<int> erased(nodes.begin(), nodes.begin() + inst.params.r);
      std::vector<int> known(nodes.begin() + inst.params.r, nodes.end());
      StackedCodeword damaged = cw;
      for (int pos : erased)
        for (FlatCodeword& icw : damaged.instances)
          for (std::uint32_t a = 0; a < icw.rows; ++a) icw.at(pos, a) = 0;
      StackedCodeword rec = reconstruct(inst.params, inst.field, damaged, known);
      for (int y = 0; y < inst.params.instances(); ++y)
        CHECK(rec.instances[y].data == cw.instances[y].data);
    }
  }

  SUBCASE("fewer than k known nodes is rejected") {
    std::vector<int> known;
    for (int i = 0; i < inst.params.k - 1; ++i) known.push_back(i);
    CHECK_THROWS_AS(reconstruct(inst.params, inst.field, cw, known), ParameterError);
  }
}

TEST_CASE("checks never couple distinct rows or instances") {
  Instance inst = fixtures::sketch12();
  StackedCodeword c1 = fixtures::random_stacked(inst, 19);
  StackedCodeword c2 = fixtures::random_stacked(inst, 23);

  SUBCASE("row splices of two codewords stay valid") {
    std::mt19937_64 rng(29);
    StackedCodeword mix = c1;
    for (int y = 0; y < inst.params.instances(); ++y)
      for (std::uint32_t a = 0; a < mix.instances[y].rows; ++a)
        if (rng() & 1)
          for (int pos = 0; pos < inst.params.n; ++pos)
            mix.instances[y].at(pos, a) = c2.instances[y].at(pos, a);
    CHECK(parity_check(inst.params, inst.field, mix));
  }

  SUBCASE("instance permutations stay valid") {
    StackedCodeword rot = c1;
    std::rotate(rot.instances.begin(), rot.instances.begin() + 1, rot.instances.end());
    CHECK(parity_check(inst.params, inst.field, rot));
  }
}

TEST_CASE("the rejected q=23 field really does break erasure decoding") {
  // Bypass the config-level guard: theta*xi^0 = xi^11 = xi^(5*2+1), so the
  // eval points of node 1 and node 10 coincide on rows with a_0=0, a_5=1.
  SystemParams p = validate(12, 2, 5, 3, 3, 2, 3, Construction::stacked);
  Field f = make_field(23, 2);
  CHECK(f.mul(f.theta, f.pow(f.xi, 0)) == f.pow(f.xi, 11));

  std::mt19937_64 rng(61);
  Message msg(p.B);
  for (auto& s : msg) s = Symbol(rng() % f.q);
  StackedCodeword cw = encode_stacked(p, f, msg);  // parity points stay distinct
  CHECK(parity_check(p, f, cw));

  std::vector<int> known{0, 5, 8, 9, 11};  // erased set contains nodes 1 and 10
  CHECK_THROWS_AS(reconstruct(p, f, cw, known), SingularMatrixError);
}

TEST_CASE("grouped construction encodes and reconstructs") {
  Instance inst = fixtures::grouped16();
  FlatCodeword cw = fixtures::random_flat(inst, 31);
  CHECK(parity_check(inst.params, inst.field, cw));
  std::vector<int> known;
  for (int i = inst.params.r; i < inst.params.n; ++i) known.push_back(i);
  FlatCodeword damaged = cw;
  for (int pos = 0; pos < inst.params.r; ++pos)
    for (std::uint32_t a = 0; a < damaged.rows; ++a) damaged.at(pos, a) = 0;
  FlatCodeword rec = reconstruct(inst.params, inst.field, damaged, known);
  CHECK(rec.data == cw.data);
}
