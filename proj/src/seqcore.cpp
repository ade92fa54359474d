#include "mscs/seqcore.hpp"

#include <limits>
#include <numbers>
#include <set>

namespace mscs {

bool is_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

MixedDomain::MixedDomain(std::vector<PrimeBlock> blocks)
  : blocks_{std::move(blocks)} {
  if (blocks_.empty())
    throw parameter_error{"domain needs at least one prime block"};
  constexpr auto limit = std::numeric_limits<std::size_t>::max();
  for (auto const& [p, m] : blocks_) {
    if (!is_prime(p))
      throw parameter_error{"block radix " + std::to_string(p)
                            + " is not prime"};
    if (m < 1)
      throw parameter_error{"block exponent must be >= 1"};
    std::size_t len = 1;
    for (int i = 0; i < m; ++i) {
      if (len > limit / static_cast<std::size_t>(p))
        throw capacity_error{"domain length overflows the index type"};
      len *= static_cast<std::size_t>(p);
    }
    if (length_ > limit / len)
      throw capacity_error{"domain length overflows the index type"};
    length_ *= len;
    block_lengths_.push_back(len);
  }
}

namespace {

void check_index(MixedRadixIndex const& index, MixedDomain const& domain) {
  auto const& blocks = domain.blocks();
  if (index.digits.size() != blocks.size())
    throw domain_error{"index has wrong number of blocks"};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    auto const& ds = index.digits[b];
    if (ds.size() != static_cast<std::size_t>(blocks[b].exponent))
      throw domain_error{"index block " + std::to_string(b)
                         + " has wrong number of digits"};
    for (auto d : ds)
      if (d < 0 || d >= blocks[b].prime)
        throw domain_error{"digit " + std::to_string(d)
                           + " out of range for radix "
                           + std::to_string(blocks[b].prime)};
  }
}

void check_variable(Variable const& v, MixedDomain const& domain) {
  if (v.block >= domain.block_count())
    throw parameter_error{"variable refers to block "
                          + std::to_string(v.block) + " outside the domain"};
  auto m = domain.blocks()[v.block].exponent;
  if (v.position < 1 || v.position > m)
    throw parameter_error{"variable position " + std::to_string(v.position)
                          + " outside 1.." + std::to_string(m)};
}

int digit_of(MixedRadixIndex const& index, Variable const& v) {
  return index.digits[v.block][static_cast<std::size_t>(v.position - 1)];
}

} // namespace

std::size_t encode_index(MixedRadixIndex const& index,
                         MixedDomain const& domain) {
  check_index(index, domain);
  std::size_t x = 0;
  std::size_t scale = 1;
  auto const& blocks = domain.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto d : index.digits[b]) {
      x += static_cast<std::size_t>(d) * scale;
      scale *= static_cast<std::size_t>(blocks[b].prime);
    }
  }
  return x;
}

MixedRadixIndex decode_index(std::size_t x, MixedDomain const& domain) {
  if (x >= domain.length())
    throw domain_error{"index " + std::to_string(x) + " outside [0, "
                       + std::to_string(domain.length()) + ")"};
  MixedRadixIndex result;
  result.digits.reserve(domain.block_count());
  for (auto const& [p, m] : domain.blocks()) {
    auto& ds = result.digits.emplace_back(static_cast<std::size_t>(m));
    auto radix = static_cast<std::size_t>(p);
    for (auto& d : ds) {
      d = static_cast<int>(x % radix);
      x /= radix;
    }
  }
  return result;
}

MultivariableFunction::MultivariableFunction(MixedDomain domain, int modulus,
                                             std::vector<Term> terms,
                                             std::int64_t constant,
                                             std::vector<TableComponent> tables)
  : domain_{std::move(domain)},
    modulus_{modulus},
    terms_{std::move(terms)},
    constant_{0},
    tables_{std::move(tables)} {
  if (modulus_ < 2)
    throw parameter_error{"modulus must be >= 2"};
  constant_ = reduce_mod(constant, modulus_);
  for (auto& t : terms_) {
    t.coefficient = reduce_mod(t.coefficient, modulus_);
    for (auto const& f : t.factors) {
      check_variable(f.variable, domain_);
      if (f.power < 1)
        throw parameter_error{"monomial exponents must be positive"};
    }
  }
  for (auto& c : tables_) {
    std::set<Variable> seen;
    std::size_t expected = 1;
    for (auto const& v : c.variables) {
      check_variable(v, domain_);
      if (!seen.insert(v).second)
        throw parameter_error{"tabulated component repeats a variable"};
      expected *= static_cast<std::size_t>(domain_.blocks()[v.block].prime);
    }
    if (c.table.size() != expected)
      throw parameter_error{"tabulated component has "
                            + std::to_string(c.table.size())
                            + " entries, expected "
                            + std::to_string(expected)};
    for (auto& e : c.table)
      e = reduce_mod(e, modulus_);
  }
}

int MultivariableFunction::evaluate(MixedRadixIndex const& index) const {
  check_index(index, domain_);
  return evaluate_unchecked(index);
}

int MultivariableFunction::evaluate_unchecked(
  MixedRadixIndex const& index) const {
  std::int64_t const lam = modulus_;
  std::int64_t acc = constant_;
  for (auto const& t : terms_) {
    std::int64_t prod = t.coefficient;
    for (auto const& f : t.factors) {
      std::int64_t d = digit_of(index, f.variable) % lam;
      for (int e = 0; e < f.power && prod != 0; ++e)
        prod = prod * d % lam;
    }
    acc = (acc + prod) % lam;
  }
  for (auto const& c : tables_) {
    std::size_t pos = 0;
    std::size_t scale = 1;
    for (auto const& v : c.variables) {
      pos += static_cast<std::size_t>(digit_of(index, v)) * scale;
      scale *= static_cast<std::size_t>(domain_.blocks()[v.block].prime);
    }
    acc = (acc + c.table[pos]) % lam;
  }
  return static_cast<int>(acc);
}

MultivariableFunction operator+(MultivariableFunction const& f,
                                MultivariableFunction const& g) {
  if (!(f.domain_ == g.domain_) || f.modulus_ != g.modulus_)
    throw parameter_error{"cannot add functions over different domains"};
  auto terms = f.terms_;
  terms.insert(terms.end(), g.terms_.begin(), g.terms_.end());
  auto tables = f.tables_;
  tables.insert(tables.end(), g.tables_.begin(), g.tables_.end());
  return MultivariableFunction{f.domain_, f.modulus_, std::move(terms),
                               f.constant_ + g.constant_, std::move(tables)};
}

int evaluate(MultivariableFunction const& f, MixedRadixIndex const& index) {
  return f.evaluate(index);
}

PhaseSequence::PhaseSequence(int modulus, std::vector<int> values)
  : modulus_{modulus}, values_{std::move(values)} {
  if (modulus_ < 2)
    throw parameter_error{"modulus must be >= 2"};
  for (auto v : values_)
    if (v < 0 || v >= modulus_)
      throw parameter_error{"phase " + std::to_string(v) + " outside Z_"
                            + std::to_string(modulus_)};
}

PhaseSequence materialize(MultivariableFunction const& f,
                          std::size_t max_length) {
  auto const len = f.domain().length();
  if (len > max_length)
    throw capacity_error{"sequence length " + std::to_string(len)
                         + " exceeds the configured maximum "
                         + std::to_string(max_length)};
  std::vector<int> values(len);
  for (std::size_t x = 0; x < len; ++x)
    values[x] = f.evaluate(decode_index(x, f.domain()));
  return PhaseSequence{f.modulus(), std::move(values)};
}

std::vector<std::complex<double>> to_complex(PhaseSequence const& s) {
  std::vector<std::complex<double>> out;
  out.reserve(s.size());
  auto const step = 2.0 * std::numbers::pi / s.modulus();
  for (auto v : s.values())
    out.push_back(std::polar(1.0, step * v));
  return out;
}

std::string to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::gcs:
      return "GCS";
    case ClaimKind::mscs:
      return "MSCS";
    case ClaimKind::type2_zcs:
      return "ZCS";
  }
  return "?";
}

ClaimKind claim_kind_from_string(std::string const& name) {
  if (name == "GCS")
    return ClaimKind::gcs;
  if (name == "MSCS")
    return ClaimKind::mscs;
  if (name == "ZCS")
    return ClaimKind::type2_zcs;
  throw parameter_error{"unknown claim kind '" + name + "'"};
}

SequenceSet::SequenceSet(std::vector<PhaseSequence> sequences,
                         SetMetadata metadata)
  : sequences_{std::move(sequences)}, metadata_{std::move(metadata)} {
  if (sequences_.empty())
    throw parameter_error{"a sequence set needs at least one member"};
  for (auto const& s : sequences_) {
    if (s.modulus() != sequences_.front().modulus()
        || s.size() != sequences_.front().size())
      throw parameter_error{"set members must share modulus and length"};
  }
  if (sequences_.front().size() == 0)
    throw parameter_error{"set members must be non-empty"};
}

} // namespace mscs
