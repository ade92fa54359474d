#include "mscs/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace mscs {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i)
    r *= base;
  return r;
}

std::string block_label(std::size_t index) {
  return "block " + std::to_string(index + 1) + ": ";
}

void validate_block(PrimeBlockParams const& b, int modulus,
                    std::string const& label) {
  if (!is_prime(b.p))
    throw parameter_error{label + "p must be prime"};
  if (b.m < 1)
    throw parameter_error{label + "m must be >= 1"};
  if (b.s < 1 || b.s > b.m)
    throw parameter_error{label + "s must satisfy 1 <= s <= m"};
  if (modulus % b.p != 0)
    throw parameter_error{label + "p must divide lambda"};
  auto const span = static_cast<std::size_t>(b.m - b.s + 1);
  if (b.permutation.size() != span)
    throw parameter_error{label + "permutation must list "
                          + std::to_string(span) + " entries over {s..m}"};
  auto sorted = b.permutation;
  std::ranges::sort(sorted);
  for (std::size_t k = 0; k < span; ++k)
    if (sorted[k] != b.s + static_cast<int>(k))
      throw parameter_error{label + "permutation is not a bijection on {s..m}"};
  if (!b.linear.empty() && b.linear.size() != static_cast<std::size_t>(b.m))
    throw parameter_error{label + "linear coefficients must have m entries"};
  if (b.s == 1 && (!b.head_table.empty() || !b.head_terms.empty()))
    throw parameter_error{label + "head function must be absent when s = 1"};
  if (!b.head_table.empty()
      && b.head_table.size() != ipow(static_cast<std::size_t>(b.p), b.s - 1))
    throw parameter_error{label + "head table must have p^(s-1) entries"};
  for (auto const& t : b.head_terms)
    for (auto const& f : t.factors)
      if (f.variable.block != 0 || f.variable.position < 1
          || f.variable.position >= b.s)
        throw parameter_error{label
                              + "head terms may only use v_1 .. v_{s-1}"};
}

void check_capacity(std::size_t len, std::size_t max_length) {
  if (len > max_length)
    throw capacity_error{"sequence length " + std::to_string(len)
                         + " exceeds the configured maximum "
                         + std::to_string(max_length)};
}

MultivariableFunction with_terms(MultivariableFunction const& f,
                                 std::vector<Term> extra) {
  auto terms = f.terms();
  terms.insert(terms.end(), std::make_move_iterator(extra.begin()),
               std::make_move_iterator(extra.end()));
  return MultivariableFunction{f.domain(), f.modulus(), std::move(terms),
                               f.constant(), f.tables()};
}

Term gamma_term(PrimeBlockParams const& b, int modulus, std::size_t block,
                int gamma) {
  return Term{static_cast<std::int64_t>(modulus / b.p) * gamma,
              {Factor{Variable{block, b.permutation.front()}, 1}}};
}

/// Builds one member per gamma vector (gamma_1 fastest) from the common part
/// `base` over `blocks`, which index blocks 0 .. blocks.size()-1.
std::vector<PhaseSequence> enumerate_members(
  MultivariableFunction const& base, std::vector<PrimeBlockParams> const& blocks,
  int modulus, std::size_t max_length) {
  std::size_t count = 1;
  for (auto const& b : blocks)
    count *= static_cast<std::size_t>(b.p);
  std::vector<PhaseSequence> members;
  members.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    std::vector<Term> extra;
    auto rest = g;
    for (std::size_t a = 0; a < blocks.size(); ++a) {
      auto const p = static_cast<std::size_t>(blocks[a].p);
      extra.push_back(
        gamma_term(blocks[a], modulus, a, static_cast<int>(rest % p)));
      rest /= p;
    }
    members.push_back(materialize(with_terms(base, std::move(extra)),
                                  max_length));
  }
  return members;
}

MultivariableFunction sum_of_blocks(std::vector<PrimeBlockParams> const& blocks,
                                    int modulus, MixedDomain const& domain) {
  MultivariableFunction f{domain, modulus};
  for (std::size_t a = 0; a < blocks.size(); ++a)
    f = f + block_function(blocks[a], modulus, domain, a);
  return f;
}

std::vector<PrimeBlock> prime_blocks(std::vector<PrimeBlockParams> const& bs) {
  std::vector<PrimeBlock> out;
  for (auto const& b : bs)
    out.push_back({b.p, b.m});
  return out;
}

} // namespace

std::vector<int> identity_permutation(int s, int m) {
  std::vector<int> pi(static_cast<std::size_t>(std::max(0, m - s + 1)));
  std::iota(pi.begin(), pi.end(), s);
  return pi;
}

void validate(Theorem1Params const& params) {
  if (params.modulus < 2)
    throw parameter_error{"lambda must be >= 2"};
  validate_block(params.block, params.modulus, "");
}

void validate(Theorem2Params const& params) {
  if (params.modulus < 2)
    throw parameter_error{"lambda must be >= 2"};
  if (params.blocks.empty())
    throw parameter_error{"at least one prime block is required"};
  std::set<int> primes;
  for (std::size_t a = 0; a < params.blocks.size(); ++a) {
    validate_block(params.blocks[a], params.modulus, block_label(a));
    if (!primes.insert(params.blocks[a].p).second
        && !params.allow_repeated_primes)
      throw parameter_error{"primes must be pairwise distinct"};
  }
}

void validate(Theorem3Params const& params) {
  validate(params.base);
  for (auto const& b : params.base.blocks)
    if (b.s != 1)
      throw parameter_error{"extended construction requires s = 1 in every "
                            "block"};
  auto const q = params.extension.p;
  if (!is_prime(q))
    throw parameter_error{"extension p must be prime"};
  if (params.base.modulus % q != 0)
    throw parameter_error{"extension p must divide lambda"};
  for (auto const& b : params.base.blocks)
    if (b.p == q)
      throw parameter_error{"extension p must differ from every base prime"};
}

ClaimedShape claimed_shape(Theorem1Params const& params) {
  auto const p = static_cast<std::size_t>(params.block.p);
  return {p, ipow(p, params.block.m), ipow(p, params.block.s - 1)};
}

ClaimedShape claimed_shape(Theorem2Params const& params) {
  ClaimedShape shape{1, 1, 1};
  for (auto const& b : params.blocks) {
    auto const p = static_cast<std::size_t>(b.p);
    shape.set_size *= p;
    shape.length *= ipow(p, b.m);
    shape.shift *= ipow(p, b.s - 1);
  }
  return shape;
}

ClaimedShape claimed_shape(Theorem3Params const& params) {
  auto shape = claimed_shape(params.base);
  auto const q = static_cast<std::size_t>(params.extension.p);
  shape.length *= q;
  shape.shift = q;
  return shape;
}

MultivariableFunction block_function(PrimeBlockParams const& b, int modulus,
                                     MixedDomain const& domain,
                                     std::size_t block_index) {
  std::vector<Term> terms;
  auto const half = static_cast<std::int64_t>(modulus / b.p);
  for (std::size_t k = 0; k + 1 < b.permutation.size(); ++k)
    terms.push_back({half,
                     {Factor{Variable{block_index, b.permutation[k]}, 1},
                      Factor{Variable{block_index, b.permutation[k + 1]}, 1}}});
  for (int i = b.s; i <= b.m && !b.linear.empty(); ++i)
    terms.push_back({b.linear[static_cast<std::size_t>(i - 1)],
                     {Factor{Variable{block_index, i}, 1}}});
  for (auto t : b.head_terms) {
    for (auto& f : t.factors)
      f.variable.block = block_index;
    terms.push_back(std::move(t));
  }

  std::vector<TableComponent> tables;
  if (b.s > 1) {
    TableComponent head;
    for (int i = 1; i < b.s; ++i)
      head.variables.push_back(Variable{block_index, i});
    auto const size = ipow(static_cast<std::size_t>(b.p), b.s - 1);
    head.table = b.head_table.empty() ? std::vector<std::int64_t>(size, 0)
                                      : b.head_table;
    if (!b.linear.empty()) {
      // fold g_i v_i for i < s into the head table
      for (std::size_t pos = 0; pos < size; ++pos) {
        auto rest = pos;
        for (int i = 1; i < b.s; ++i) {
          auto const digit = static_cast<std::int64_t>(rest % b.p);
          rest /= static_cast<std::size_t>(b.p);
          head.table[pos] += reduce_mod(b.linear[static_cast<std::size_t>(i - 1)], modulus) * digit;
        }
        head.table[pos] = reduce_mod(head.table[pos], modulus);
      }
    }
    tables.push_back(std::move(head));
  }
  return MultivariableFunction{domain, modulus, std::move(terms), b.constant,
                               std::move(tables)};
}

SequenceSet theorem1_set(Theorem1Params const& params,
                         std::size_t max_length) {
  validate(params);
  auto const shape = claimed_shape(params);
  check_capacity(shape.length, max_length);
  MixedDomain domain{{{params.block.p, params.block.m}}};
  auto f = block_function(params.block, params.modulus, domain, 0);
  SetMetadata meta{"theorem1",
                   {{ClaimKind::mscs, shape.shift},
                    {ClaimKind::type2_zcs, shape.length - shape.shift}}};
  if (shape.shift == 1)
    meta.claims.push_back({ClaimKind::gcs, 1});
  return SequenceSet{
    enumerate_members(f, {params.block}, params.modulus, max_length),
    std::move(meta)};
}

SequenceSet theorem2_set(Theorem2Params const& params,
                         std::size_t max_length) {
  validate(params);
  auto const shape = claimed_shape(params);
  check_capacity(shape.length, max_length);
  MixedDomain domain{prime_blocks(params.blocks)};
  auto f = sum_of_blocks(params.blocks, params.modulus, domain);
  SetMetadata meta{"theorem2", {{ClaimKind::mscs, shape.shift}}};
  if (params.blocks.size() == 1)
    meta.claims.push_back({ClaimKind::type2_zcs, shape.length - shape.shift});
  if (shape.shift == 1)
    meta.claims.push_back({ClaimKind::gcs, 1});
  return SequenceSet{
    enumerate_members(f, params.blocks, params.modulus, max_length),
    std::move(meta)};
}

SequenceSet theorem3_set(Theorem3Params const& params,
                         std::size_t max_length) {
  validate(params);
  auto const shape = claimed_shape(params);
  check_capacity(shape.length, max_length);
  auto const& base = params.base;
  auto blocks = prime_blocks(base.blocks);
  blocks.push_back({params.extension.p, 1});
  MixedDomain domain{std::move(blocks)};
  auto f = sum_of_blocks(base.blocks, base.modulus, domain);
  auto const ext_block = base.blocks.size();
  f = with_terms(f, {Term{params.extension.linear,
                          {Factor{Variable{ext_block, 1}, 1}}},
                     Term{params.extension.constant, {}}});
  SetMetadata meta{"theorem3", {{ClaimKind::mscs, shape.shift}}};
  return SequenceSet{
    enumerate_members(f, base.blocks, base.modulus, max_length),
    std::move(meta)};
}

PhaseSequence kronecker_compose(PhaseSequence const& outer,
                                PhaseSequence const& inner) {
  if (outer.modulus() != inner.modulus())
    throw parameter_error{"Kronecker composition needs a common modulus"};
  auto const lam = outer.modulus();
  std::vector<int> values;
  values.reserve(outer.size() * inner.size());
  for (auto o : outer.values())
    for (auto i : inner.values())
      values.push_back((o + i) % lam);
  return PhaseSequence{lam, std::move(values)};
}

} // namespace mscs
