#include "mscs/random_params.hpp"

#include <algorithm>

namespace mscs {

namespace {

std::int64_t draw(Rng& rng, int modulus) {
  return std::uniform_int_distribution<std::int64_t>{0, modulus - 1}(rng);
}

} // namespace

PrimeBlockParams random_block(Rng& rng, int p, int m, int s, int modulus) {
  PrimeBlockParams b;
  b.p = p;
  b.m = m;
  b.s = s;
  b.permutation = identity_permutation(s, m);
  std::ranges::shuffle(b.permutation, rng);
  b.linear.resize(static_cast<std::size_t>(m));
  for (auto& g : b.linear)
    g = draw(rng, modulus);
  b.constant = draw(rng, modulus);
  if (s > 1) {
    std::size_t size = 1;
    for (int i = 1; i < s; ++i)
      size *= static_cast<std::size_t>(p);
    b.head_table.resize(size);
    for (auto& h : b.head_table)
      h = draw(rng, modulus);
  }
  return b;
}

Theorem1Params randomize(Rng& rng, Theorem1Params shape) {
  auto const& b = shape.block;
  shape.block = random_block(rng, b.p, b.m, b.s, shape.modulus);
  return shape;
}

Theorem2Params randomize(Rng& rng, Theorem2Params shape) {
  for (auto& b : shape.blocks)
    b = random_block(rng, b.p, b.m, b.s, shape.modulus);
  return shape;
}

Theorem3Params randomize(Rng& rng, Theorem3Params shape) {
  shape.base = randomize(rng, std::move(shape.base));
  shape.extension.linear = draw(rng, shape.base.modulus);
  shape.extension.constant = draw(rng, shape.base.modulus);
  return shape;
}

Theorem1Params example1_params() {
  Theorem1Params params;
  params.modulus = 6;
  params.block.p = 3;
  params.block.m = 3;
  params.block.s = 2;
  params.block.permutation = {2, 3};
  params.block.constant = 5;
  return params;
}

Theorem3Params example2_params() {
  Theorem3Params params;
  params.base.modulus = 6;
  PrimeBlockParams b;
  b.p = 3;
  b.m = 3;
  b.s = 1;
  // path v2 - v3 - v1 gives 2(v2 v3 + v3 v1)
  b.permutation = {2, 3, 1};
  b.linear = {2, 5, 1};
  params.base.blocks.push_back(b);
  params.extension = {2, 3, 0};
  return params;
}

Theorem2Params gcs6_params() {
  Theorem2Params params;
  params.modulus = 6;
  for (int p : {2, 3}) {
    PrimeBlockParams b;
    b.p = p;
    b.permutation = {1};
    params.blocks.push_back(b);
  }
  return params;
}

} // namespace mscs
