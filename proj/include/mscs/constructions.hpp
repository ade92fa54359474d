#ifndef MSCS_CONSTRUCTIONS_HPP
#define MSCS_CONSTRUCTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mscs/seqcore.hpp"

namespace mscs {

/// Parameters of one prime block of the quadratic construction over
/// Z_p^m -> Z_lambda:
///
///   f = (lambda/p) sum_{i=s}^{m-1} v_{pi(i)} v_{pi(i+1)}
///       + sum_{i=1}^{m} g_i v_i + g + h(v_1, ..., v_{s-1})
///
/// and the set index gamma enters as (lambda/p) v_{pi(s)} gamma.
struct PrimeBlockParams {
  int p = 2;
  int m = 1;
  int s = 1;
  /// permutation[k] = pi(s + k); must be a bijection on {s, ..., m}.
  std::vector<int> permutation;
  /// g_1 .. g_m; empty means all zero. Coefficients on v_1 .. v_{s-1} are
  /// folded into the head table.
  std::vector<std::int64_t> linear;
  std::int64_t constant = 0;
  /// Head function h as a table over (v_1, ..., v_{s-1}), v_1 least
  /// significant, p^{s-1} entries. Empty means h = 0.
  std::vector<std::int64_t> head_table;
  /// Head function h in polynomial form. Factors use block 0 and positions
  /// below s; they are relocated to the block's actual index.
  std::vector<Term> head_terms;
};

struct Theorem1Params {
  int modulus = 2;
  PrimeBlockParams block;
};

struct Theorem2Params {
  int modulus = 2;
  /// Block 0 is the least significant index block.
  std::vector<PrimeBlockParams> blocks;
  /// Allow repeated primes across blocks. Off by default.
  bool allow_repeated_primes = false;
};

struct ExtensionParams {
  int p = 2;
  std::int64_t linear = 0;
  std::int64_t constant = 0;
};

struct Theorem3Params {
  Theorem2Params base;  // every block must have s = 1
  ExtensionParams extension;
};

/// Identity permutation on {s, ..., m}.
std::vector<int> identity_permutation(int s, int m);

void validate(Theorem1Params const& params);
void validate(Theorem2Params const& params);
void validate(Theorem3Params const& params);

/// Claimed parameters of the set a construction produces.
struct ClaimedShape {
  std::size_t set_size;
  std::size_t length;
  std::size_t shift;  // S
};

ClaimedShape claimed_shape(Theorem1Params const& params);
ClaimedShape claimed_shape(Theorem2Params const& params);
ClaimedShape claimed_shape(Theorem3Params const& params);

/// The gamma-independent part f_alpha of one block, placed at index block
/// `block_index` of `domain`.
MultivariableFunction block_function(PrimeBlockParams const& block,
                                     int modulus, MixedDomain const& domain,
                                     std::size_t block_index);

/// (p, p^m, p^{s-1})-MSCS, gamma = 0 .. p-1 in order. Also a type-II
/// (p, p^m, p^m - p^{s-1})-ZCS.
SequenceSet theorem1_set(Theorem1Params const& params,
                         std::size_t max_length = default_max_length);

/// (prod p_a, prod p_a^{m_a}, prod p_a^{s_a-1})-MSCS. Members are ordered by
/// the gamma vector with gamma_1 varying fastest.
SequenceSet theorem2_set(Theorem2Params const& params,
                         std::size_t max_length = default_max_length);

/// (prod p_a, p_{k+1} prod p_a^{m_a}, p_{k+1})-MSCS. The extension prime's
/// single variable is the most significant index block.
SequenceSet theorem3_set(Theorem3Params const& params,
                         std::size_t max_length = default_max_length);

/// result[j * |inner| + i] = outer[j] + inner[i] mod lambda, i.e. the phase
/// form of the complex Kronecker product outer (x) inner.
PhaseSequence kronecker_compose(PhaseSequence const& outer,
                                PhaseSequence const& inner);

} // namespace mscs

#endif
