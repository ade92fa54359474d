#include <doctest.h>

#include "brute_force.hpp"
#include "mscs/constructions.hpp"
#include "mscs/correlation.hpp"
#include "mscs/random_params.hpp"

using namespace mscs;

namespace {

std::vector<std::vector<int>> phases(SequenceSet const& set) {
  std::vector<std::vector<int>> out;
  for (auto const& s : set.sequences())
    out.push_back(s.values());
  return out;
}

/// Largest |sum rho(tau)| over nonzero multiples of `shift`.
double worst_multiple(SequenceSet const& set, std::size_t shift) {
  double worst = 0.0;
  for (auto tau = shift; tau < set.length(); tau += shift)
    worst = std::max(worst, std::abs(brute::set_aacf(phases(set),
                                                     set.modulus(), tau)));
  return worst;
}

PrimeBlockParams block(int p, int m, int s) {
  PrimeBlockParams b;
  b.p = p;
  b.m = m;
  b.s = s;
  b.permutation = identity_permutation(s, m);
  return b;
}

bool has_claim(SequenceSet const& set, ClaimKind kind, std::size_t value) {
  for (auto const& c : set.metadata().claims)
    if (c.kind == kind && c.value == value)
      return true;
  return false;
}

} // namespace

TEST_CASE("theorem 1: the (3,27,3) worked example") {
  auto const set = theorem1_set(example1_params());
  REQUIRE(set.size() == 3);
  REQUIRE(set.length() == 27);
  CHECK(set.modulus() == 6);
  // frozen from tests/oracle/reference.py
  CHECK(set[0].values()
        == std::vector<int>{5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 5, 1, 1,
                            1, 3, 3, 3, 5, 5, 5, 3, 3, 3, 1, 1, 1});
  CHECK(worst_multiple(set, 3) < 1e-9);
  CHECK(set.metadata().construction == "theorem1");
  CHECK(has_claim(set, ClaimKind::mscs, 3));
  CHECK(has_claim(set, ClaimKind::type2_zcs, 24));
}

TEST_CASE("theorem 1: length-2 pair") {
  Theorem1Params params{2, block(2, 1, 1)};
  params.block.linear = {0};
  auto const set = theorem1_set(params);
  REQUIRE(set.size() == 2);
  CHECK(set[0].values() == std::vector<int>{0, 0});
  CHECK(set[1].values() == std::vector<int>{0, 1});
  CHECK(std::abs(brute::set_aacf(phases(set), 2, 1)) < 1e-12);
  CHECK(has_claim(set, ClaimKind::gcs, 1));
}

TEST_CASE("theorem 1: f = v1 v2 over Z_2 gives a length-4 pair") {
  auto const set = theorem1_set({2, block(2, 2, 1)});
  REQUIRE(set.size() == 2);
  REQUIRE(set.length() == 4);
  for (std::size_t tau = 1; tau < 4; ++tau)
    CHECK(std::abs(brute::set_aacf(phases(set), 2, tau)) < 1e-12);
}

TEST_CASE("theorem 1: degenerate s = m has no quadratic part") {
  for (int p : {2, 3, 5}) {
    Rng rng{static_cast<std::uint64_t>(p)};
    Theorem1Params params{2 * p, random_block(rng, p, 3, 3, 2 * p)};
    auto const set = theorem1_set(params);
    CHECK(worst_multiple(set, static_cast<std::size_t>(p * p)) < 1e-9);
  }
}

TEST_CASE("theorem 1: linear terms below s fold into the head table") {
  Theorem1Params with_linear{6, block(3, 4, 3)};
  with_linear.block.linear = {4, 5, 1, 2};
  with_linear.block.head_table = {0, 1, 2, 3, 4, 5, 0, 1, 2};

  Theorem1Params folded = with_linear;
  folded.block.linear = {0, 0, 1, 2};
  for (std::size_t pos = 0; pos < 9; ++pos) {
    auto const v1 = static_cast<std::int64_t>(pos % 3);
    auto const v2 = static_cast<std::int64_t>(pos / 3);
    folded.block.head_table[pos] += 4 * v1 + 5 * v2;
  }
  CHECK(theorem1_set(with_linear) == theorem1_set(folded));

  // the same head as polynomial terms
  Theorem1Params as_terms = with_linear;
  as_terms.block.head_table.clear();
  as_terms.block.head_terms = {{1, {{{0, 1}, 1}}}, {3, {{{0, 2}, 1}}}};
  Theorem1Params as_table = with_linear;
  as_table.block.head_table.assign(9, 0);
  for (std::size_t pos = 0; pos < 9; ++pos)
    as_table.block.head_table[pos] =
      static_cast<std::int64_t>(pos % 3) + 3 * static_cast<std::int64_t>(pos / 3);
  CHECK(theorem1_set(as_terms).sequences() == theorem1_set(as_table).sequences());
}

TEST_CASE("theorem 1: parameter errors") {
  Theorem1Params good{6, block(3, 3, 2)};
  CHECK_NOTHROW(validate(good));

  auto bad = good;
  bad.block.p = 4;
  CHECK_THROWS_WITH_AS(validate(bad), "p must be prime", parameter_error);

  bad = good;
  bad.modulus = 4;
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.permutation = {2, 2};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.permutation = {1, 2};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.s = 4;
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = Theorem1Params{6, block(3, 3, 1)};
  bad.block.head_table = {1};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.head_table = {1, 2};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.linear = {1, 2};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.block.head_terms = {{1, {{{0, 2}, 1}}}};
  CHECK_THROWS_AS(validate(bad), parameter_error);

  CHECK_THROWS_AS(theorem1_set(good, 26), capacity_error);
}

TEST_CASE("theorem 2 with one block matches theorem 1") {
  Rng rng{11};
  for (int trial = 0; trial < 20; ++trial) {
    auto const t1 = randomize(rng, Theorem1Params{6, block(3, 4, 1 + trial % 4)});
    Theorem2Params t2{t1.modulus, {t1.block}, false};
    CHECK(theorem2_set(t2).sequences() == theorem1_set(t1).sequences());
  }
}

TEST_CASE("theorem 2: primes 2 and 3 with s = 1 give a (6,6,1) set") {
  auto const set = theorem2_set(gcs6_params());
  REQUIRE(set.size() == 6);
  REQUIRE(set.length() == 6);
  // frozen from tests/oracle/reference.py
  std::vector<std::vector<int>> const expected = {
    {0, 0, 0, 0, 0, 0}, {0, 3, 0, 3, 0, 3}, {0, 0, 2, 2, 4, 4},
    {0, 3, 2, 5, 4, 1}, {0, 0, 4, 4, 2, 2}, {0, 3, 4, 1, 2, 5}};
  CHECK(phases(set) == expected);
  CHECK(worst_multiple(set, 1) < 1e-9);
  CHECK(has_claim(set, ClaimKind::gcs, 1));
}

TEST_CASE("theorem 2: (2,2,2) with (3,1,1) gives a (6,12,2)-MSCS") {
  Theorem2Params params{6, {block(2, 2, 2), block(3, 1, 1)}, false};
  auto const set = theorem2_set(params);
  REQUIRE(set.size() == 6);
  REQUIRE(set.length() == 12);
  CHECK(claimed_shape(params).shift == 2);
  CHECK(worst_multiple(set, 2) < 1e-9);
}

TEST_CASE("theorem 2 output is the Kronecker chain of per-block factors") {
  Rng rng{5};
  for (int trial = 0; trial < 25; ++trial) {
    Theorem2Params params{30, {}, false};
    params.blocks.push_back(random_block(rng, 2, 1 + trial % 3, 1, 30));
    params.blocks.push_back(random_block(rng, 3, 1 + trial % 2, 1 + trial % 2, 30));
    params.blocks.push_back(random_block(rng, 5, 1, 1, 30));
    auto const set = theorem2_set(params);

    std::vector<SequenceSet> factors;
    for (auto const& b : params.blocks)
      factors.push_back(theorem1_set({params.modulus, b}));

    std::size_t member = 0;
    for (std::size_t g3 = 0; g3 < 5; ++g3)
      for (std::size_t g2 = 0; g2 < 3; ++g2)
        for (std::size_t g1 = 0; g1 < 2; ++g1) {
          auto const chain = kronecker_compose(
            factors[2][g3], kronecker_compose(factors[1][g2], factors[0][g1]));
          REQUIRE(set[member++] == chain);
        }
  }
}

TEST_CASE("theorem 2: parameter errors") {
  Theorem2Params dup{6, {block(3, 2, 1), block(3, 1, 1)}, false};
  CHECK_THROWS_AS(validate(dup), parameter_error);
  dup.allow_repeated_primes = true;
  CHECK_NOTHROW(validate(dup));

  Theorem2Params missing{6, {block(2, 2, 1), block(5, 1, 1)}, false};
  CHECK_THROWS_AS(validate(missing), parameter_error);

  CHECK_THROWS_AS(validate(Theorem2Params{6, {}, false}), parameter_error);
}

TEST_CASE("theorem 3: the (3,54,2) worked example") {
  auto const params = example2_params();
  auto const set = theorem3_set(params);
  REQUIRE(set.size() == 3);
  REQUIRE(set.length() == 54);
  auto const shape = claimed_shape(params);
  CHECK(shape.set_size == 3);
  CHECK(shape.length == 54);
  CHECK(shape.shift == 2);
  CHECK(worst_multiple(set, 2) < 1e-9);
  CHECK(has_claim(set, ClaimKind::mscs, 2));
}

TEST_CASE("theorem 3: base (2,1,1), extension 3, zero coefficients") {
  Theorem3Params params;
  params.base = Theorem2Params{6, {block(2, 1, 1)}, false};
  params.extension = {3, 0, 0};
  auto const set = theorem3_set(params);
  REQUIRE(set.size() == 2);
  REQUIRE(set.length() == 6);
  CHECK(std::abs(brute::set_aacf(phases(set), 6, 3)) < 1e-12);
}

TEST_CASE("theorem 3 output is extension (x) base member") {
  Rng rng{9};
  for (int trial = 0; trial < 20; ++trial) {
    Theorem3Params params;
    params.base = Theorem2Params{30, {block(3, 1 + trial % 3, 1),
                                      block(2, 1 + trial % 2, 1)}, false};
    params.extension.p = 5;
    params = randomize(rng, params);
    auto const set = theorem3_set(params);
    auto const base = theorem2_set(params.base);

    std::vector<int> ext(5);
    for (int v = 0; v < 5; ++v)
      ext[static_cast<std::size_t>(v)] = static_cast<int>(reduce_mod(
        params.extension.linear * v + params.extension.constant, 30));
    PhaseSequence const outer{30, ext};
    REQUIRE(set.size() == base.size());
    for (std::size_t g = 0; g < set.size(); ++g)
      REQUIRE(set[g] == kronecker_compose(outer, base[g]));
  }
}

TEST_CASE("theorem 3: parameter errors") {
  Theorem3Params good;
  good.base = Theorem2Params{6, {block(3, 2, 1)}, false};
  good.extension = {2, 1, 1};
  CHECK_NOTHROW(validate(good));

  auto bad = good;
  bad.base.blocks[0] = block(3, 2, 2);
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.extension.p = 3;
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.extension.p = 5;
  CHECK_THROWS_AS(validate(bad), parameter_error);

  bad = good;
  bad.extension.p = 6;
  CHECK_THROWS_AS(validate(bad), parameter_error);
}

TEST_CASE("kronecker_compose") {
  PhaseSequence const inner{6, {1, 4, 2}};
  CHECK(kronecker_compose(PhaseSequence{6, {0}}, inner) == inner);
  CHECK(kronecker_compose(PhaseSequence{6, {0, 3}}, PhaseSequence{6, {0, 0, 0}})
        == PhaseSequence{6, {0, 0, 0, 3, 3, 3}});
  CHECK_THROWS_AS(kronecker_compose(PhaseSequence{4, {0}}, inner),
                  parameter_error);

  Rng rng{21};
  for (int trial = 0; trial < 50; ++trial) {
    int const lam = 2 + trial % 9;
    std::uniform_int_distribution<int> ph{0, lam - 1};
    std::vector<int> a(1 + trial % 5), b(1 + trial % 7);
    for (auto& x : a) x = ph(rng);
    for (auto& x : b) x = ph(rng);
    auto const ab = kronecker_compose(PhaseSequence{lam, a}, PhaseSequence{lam, b});
    REQUIRE(ab.size() == a.size() * b.size());
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t i = 0; i < b.size(); ++i) {
        auto const want = brute::root(a[j], lam) * brute::root(b[i], lam);
        REQUIRE(std::abs(brute::root(ab[j * b.size() + i], lam) - want) < 1e-12);
      }
  }
}

TEST_CASE("set shape and metadata match the claimed parameters") {
  Rng rng{13};
  for (int trial = 0; trial < 30; ++trial) {
    Theorem2Params params{10, {random_block(rng, 2, 2 + trial % 2, 1 + trial % 2, 10),
                               random_block(rng, 5, 1, 1, 10)}, false};
    auto const set = theorem2_set(params);
    auto const shape = claimed_shape(params);
    CHECK(set.size() == shape.set_size);
    CHECK(set.length() == shape.length);
    CHECK(has_claim(set, ClaimKind::mscs, shape.shift));
  }
}
