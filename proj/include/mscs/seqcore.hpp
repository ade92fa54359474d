#ifndef MSCS_SEQCORE_HPP
#define MSCS_SEQCORE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mscs {

// Error categories shared by every module.
class domain_error : public std::domain_error {
  using std::domain_error::domain_error;
};

class parameter_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class capacity_error : public std::length_error {
  using std::length_error::length_error;
};

inline constexpr std::size_t default_max_length = 1'000'000;

bool is_prime(std::int64_t n);

/// Reduces `value` into [0, modulus).
inline std::int64_t reduce_mod(std::int64_t value, std::int64_t modulus) {
  auto r = value % modulus;
  return r < 0 ? r + modulus : r;
}

struct PrimeBlock {
  int prime;
  int exponent;

  friend bool operator==(PrimeBlock const&, PrimeBlock const&) = default;
};

/// The index space Z_{p1}^{m1} x ... x Z_{pk}^{mk}.
///
/// A global index x in [0, length()) is laid out with block 0 least
/// significant, and inside each block digit 1 least significant:
///   x = sum_a i_a * prod_{b<a} p_b^{m_b},  i_a = sum_g p_a^(g-1) i_{a,g}.
class MixedDomain {
public:
  explicit MixedDomain(std::vector<PrimeBlock> blocks);

  std::vector<PrimeBlock> const& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t length() const { return length_; }
  /// Length of block `b` alone, p_b^{m_b}.
  std::size_t block_length(std::size_t b) const { return block_lengths_[b]; }

  friend bool operator==(MixedDomain const& a, MixedDomain const& b) {
    return a.blocks_ == b.blocks_;
  }

private:
  std::vector<PrimeBlock> blocks_;
  std::vector<std::size_t> block_lengths_;
  std::size_t length_ = 1;
};

/// One digit vector per block; digits[b][g-1] is variable v_{p_b, g}.
struct MixedRadixIndex {
  std::vector<std::vector<int>> digits;

  friend bool operator==(MixedRadixIndex const&,
                         MixedRadixIndex const&) = default;
};

std::size_t encode_index(MixedRadixIndex const& index,
                         MixedDomain const& domain);
MixedRadixIndex decode_index(std::size_t x, MixedDomain const& domain);

/// Variable v_{p_block, position}: `block` is 0-based, `position` is
/// 1-based (1 <= position <= m_block).
struct Variable {
  std::size_t block = 0;
  int position = 1;

  friend auto operator<=>(Variable const&, Variable const&) = default;
};

struct Factor {
  Variable variable;
  int power = 1;

  friend bool operator==(Factor const&, Factor const&) = default;
};

struct Term {
  std::int64_t coefficient = 0;
  std::vector<Factor> factors;  // empty product is the constant monomial
};

/// A function of a subset of variables given by a lookup table. The table
/// is indexed by the digit tuple of `variables`, first variable least
/// significant.
struct TableComponent {
  std::vector<Variable> variables;
  std::vector<std::int64_t> table;
};

/// Z_modulus-valued function on a MixedDomain: polynomial terms, a constant
/// and any number of tabulated components. Coefficients are reduced on
/// construction.
class MultivariableFunction {
public:
  MultivariableFunction(MixedDomain domain, int modulus,
                        std::vector<Term> terms = {},
                        std::int64_t constant = 0,
                        std::vector<TableComponent> tables = {});

  MixedDomain const& domain() const { return domain_; }
  int modulus() const { return modulus_; }
  std::vector<Term> const& terms() const { return terms_; }
  std::int64_t constant() const { return constant_; }
  std::vector<TableComponent> const& tables() const { return tables_; }

  int evaluate(MixedRadixIndex const& index) const;

  /// Pointwise sum mod modulus; term and table lists are concatenated.
  friend MultivariableFunction operator+(MultivariableFunction const& f,
                                         MultivariableFunction const& g);

private:
  int evaluate_unchecked(MixedRadixIndex const& index) const;

  MixedDomain domain_;
  int modulus_;
  std::vector<Term> terms_;
  std::int64_t constant_;
  std::vector<TableComponent> tables_;

};

int evaluate(MultivariableFunction const& f, MixedRadixIndex const& index);

/// Z_modulus-valued sequence; entries always in [0, modulus).
class PhaseSequence {
public:
  PhaseSequence(int modulus, std::vector<int> values);

  int modulus() const { return modulus_; }
  std::size_t size() const { return values_.size(); }
  std::vector<int> const& values() const { return values_; }
  int operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(PhaseSequence const&, PhaseSequence const&) = default;

private:
  int modulus_;
  std::vector<int> values_;
};

PhaseSequence materialize(MultivariableFunction const& f,
                          std::size_t max_length = default_max_length);

/// psi mapping: entry x becomes exp(2 pi i values[x] / modulus).
std::vector<std::complex<double>> to_complex(PhaseSequence const& s);

enum class ClaimKind { gcs, mscs, type2_zcs };

std::string to_string(ClaimKind kind);
ClaimKind claim_kind_from_string(std::string const& name);

/// A correlation property asserted for a set. `value` is S for MSCS, Z for
/// type-II ZCS and 1 for GCS.
struct Claim {
  ClaimKind kind = ClaimKind::mscs;
  std::size_t value = 1;

  friend bool operator==(Claim const&, Claim const&) = default;
};

struct SetMetadata {
  std::string construction = "external";
  std::vector<Claim> claims;

  friend bool operator==(SetMetadata const&, SetMetadata const&) = default;
};

class SequenceSet {
public:
  SequenceSet(std::vector<PhaseSequence> sequences, SetMetadata metadata = {});

  int modulus() const { return sequences_.front().modulus(); }
  std::size_t length() const { return sequences_.front().size(); }
  std::size_t size() const { return sequences_.size(); }
  std::vector<PhaseSequence> const& sequences() const { return sequences_; }
  PhaseSequence const& operator[](std::size_t i) const { return sequences_[i]; }
  SetMetadata const& metadata() const { return metadata_; }

  friend bool operator==(SequenceSet const&, SequenceSet const&) = default;

private:
  std::vector<PhaseSequence> sequences_;
  SetMetadata metadata_;
};

} // namespace mscs

#endif
