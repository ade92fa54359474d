#include "mscs/correlation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>

#include "mscs/constructions.hpp"

namespace mscs {

CyclotomicSum::CyclotomicSum(int modulus)
  : modulus_{modulus}, counts_(static_cast<std::size_t>(modulus), 0) {
  if (modulus < 1)
    throw parameter_error{"cyclotomic modulus must be >= 1"};
}

CyclotomicSum::CyclotomicSum(int modulus, std::vector<std::int64_t> counts)
  : modulus_{modulus}, counts_{std::move(counts)} {
  if (modulus < 1)
    throw parameter_error{"cyclotomic modulus must be >= 1"};
  if (counts_.size() != static_cast<std::size_t>(modulus))
    throw parameter_error{"count vector length must equal the modulus"};
}

void CyclotomicSum::add(std::int64_t exponent, std::int64_t multiplicity) {
  counts_[static_cast<std::size_t>(reduce_mod(exponent, modulus_))]
    += multiplicity;
}

std::complex<double> CyclotomicSum::value() const {
  std::complex<double> acc{};
  auto const step = 2.0 * std::numbers::pi / modulus_;
  for (std::size_t j = 0; j < counts_.size(); ++j)
    if (counts_[j] != 0)
      acc += static_cast<double>(counts_[j])
             * std::polar(1.0, step * static_cast<double>(j));
  return acc;
}

CyclotomicSum CyclotomicSum::conjugate() const {
  CyclotomicSum out{modulus_};
  for (std::size_t j = 0; j < counts_.size(); ++j)
    out.add(-static_cast<std::int64_t>(j), counts_[j]);
  return out;
}

void CyclotomicSum::check_compatible(CyclotomicSum const& other) const {
  if (other.modulus_ != modulus_)
    throw parameter_error{"cyclotomic sums over different moduli"};
}

CyclotomicSum& CyclotomicSum::operator+=(CyclotomicSum const& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < counts_.size(); ++j)
    counts_[j] += other.counts_[j];
  return *this;
}

CyclotomicSum& CyclotomicSum::operator-=(CyclotomicSum const& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < counts_.size(); ++j)
    counts_[j] -= other.counts_[j];
  return *this;
}

CyclotomicSum operator*(CyclotomicSum const& a, CyclotomicSum const& b) {
  a.check_compatible(b);
  CyclotomicSum out{a.modulus_};
  auto const n = a.counts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.counts_[i] == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j)
      out.counts_[(i + j) % n] += a.counts_[i] * b.counts_[j];
  }
  return out;
}

namespace {

using Poly = std::vector<std::int64_t>;

Poly multiply(Poly const& a, Poly const& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

/// Exact quotient of `num` by the monic `den`.
Poly divide_exact(Poly num, Poly const& den) {
  auto const dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    auto const c = num[k + dn];
    quot[k] = c;
    for (std::size_t j = 0; j <= dn; ++j)
      num[k + j] -= c * den[j];
  }
  return quot;
}

Poly compute_cyclotomic(int n, std::map<int, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end())
    return it->second;
  Poly num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  Poly den{1};
  for (int d = 1; d < n; ++d)
    if (n % d == 0)
      den = multiply(den, compute_cyclotomic(d, memo));
  auto phi = divide_exact(std::move(num), den);
  memo.emplace(n, phi);
  return phi;
}

Poly const& cached_cyclotomic(int n) {
  static std::mutex mutex;
  static std::map<int, Poly> memo;
  std::lock_guard lock{mutex};
  if (memo.find(n) == memo.end())
    compute_cyclotomic(n, memo);
  return memo.at(n);
}

/// Remainder-is-zero test with 64-bit arithmetic; nullopt on overflow.
std::optional<bool> divisible_fast(Poly rem, Poly const& phi) {
  auto const dn = phi.size() - 1;
  for (std::size_t top = rem.size(); top-- > dn;) {
    auto const c = rem[top];
    if (c == 0)
      continue;
    auto const k = top - dn;
    for (std::size_t j = 0; j <= dn; ++j) {
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(c, phi[j], &prod)
          || __builtin_sub_overflow(rem[k + j], prod, &rem[k + j]))
        return std::nullopt;
    }
  }
  for (std::size_t j = 0; j < dn && j < rem.size(); ++j)
    if (rem[j] != 0)
      return false;
  return true;
}

bool divisible_big(Poly const& counts, Poly const& phi) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> rem(counts.begin(), counts.end());
  auto const dn = phi.size() - 1;
  for (std::size_t top = rem.size(); top-- > dn;) {
    cpp_int const c = rem[top];
    if (c == 0)
      continue;
    auto const k = top - dn;
    for (std::size_t j = 0; j <= dn; ++j)
      rem[k + j] -= c * phi[j];
  }
  for (std::size_t j = 0; j < dn && j < rem.size(); ++j)
    if (rem[j] != 0)
      return false;
  return true;
}

void check_pair(PhaseSequence const& a, PhaseSequence const& b,
                std::ptrdiff_t tau) {
  if (a.modulus() != b.modulus())
    throw parameter_error{"correlated sequences must share a modulus"};
  if (a.size() != b.size())
    throw parameter_error{"correlated sequences must share a length"};
  auto const len = static_cast<std::ptrdiff_t>(a.size());
  if (tau <= -len || tau >= len)
    throw domain_error{"shift " + std::to_string(tau)
                       + " outside (-L, L) for L = " + std::to_string(len)};
}

/// Adds the exponent differences of rho(a, b)(tau) into `counts`.
void accumulate_counts(std::vector<int> const& a, std::vector<int> const& b,
                       std::ptrdiff_t tau, int lam,
                       std::vector<std::int64_t>& counts) {
  auto const len = a.size();
  auto const shift = static_cast<std::size_t>(tau < 0 ? -tau : tau);
  for (std::size_t i = 0; i + shift < len; ++i) {
    int d = tau >= 0 ? a[i] - b[i + shift] : a[i + shift] - b[i];
    if (d < 0)
      d += lam;
    ++counts[static_cast<std::size_t>(d)];
  }
}

std::complex<double> accf_complex(std::vector<std::complex<double>> const& a,
                                  std::vector<std::complex<double>> const& b,
                                  std::ptrdiff_t tau) {
  std::complex<double> acc{};
  auto const shift = static_cast<std::size_t>(tau < 0 ? -tau : tau);
  for (std::size_t i = 0; i + shift < a.size(); ++i)
    acc += tau >= 0 ? a[i] * std::conj(b[i + shift])
                    : a[i + shift] * std::conj(b[i]);
  return acc;
}

/// Verifies one claim over an explicit ascending list of shifts.
CorrelationReport run_verification(SequenceSet const& set, Claim claim,
                                   std::vector<std::ptrdiff_t> const& shifts,
                                   VerifyOptions const& options) {
  CorrelationReport report;
  report.claim = claim;
  auto const lam = set.modulus();
  report.numerical = lam > exact_modulus_limit;

  std::vector<std::vector<std::complex<double>>> lifted;
  for (auto const& s : set.sequences())
    lifted.push_back(to_complex(s));

  for (auto tau : shifts) {
    std::complex<double> fsum{};
    for (auto const& z : lifted)
      fsum += accf_complex(z, z, tau);
    ShiftVerdict v{tau, false, std::abs(fsum)};
    if (report.numerical) {
      v.zero = v.magnitude < numerical_zero_tolerance;
    } else {
      std::vector<std::int64_t> counts(static_cast<std::size_t>(lam), 0);
      for (auto const& s : set.sequences())
        accumulate_counts(s.values(), s.values(), tau, lam, counts);
      v.zero = is_zero(CyclotomicSum{lam, std::move(counts)});
    }
    report.shifts.push_back(v);
    if (!v.zero) {
      report.passed = false;
      report.failing_shifts.push_back(tau);
      if (options.early_exit)
        break;
    }
  }
  return report;
}

std::optional<CyclotomicSum> exact_or_empty(PhaseSequence const& a,
                                            PhaseSequence const& b,
                                            std::ptrdiff_t tau) {
  auto const len = static_cast<std::ptrdiff_t>(a.size());
  if (tau <= -len || tau >= len)
    return std::nullopt;
  return accf_exact(a, b, tau);
}

std::complex<double> float_or_zero(PhaseSequence const& a,
                                   PhaseSequence const& b, std::ptrdiff_t tau) {
  auto const len = static_cast<std::ptrdiff_t>(a.size());
  if (tau <= -len || tau >= len)
    return {};
  return accf_float(a, b, tau);
}

} // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int n) {
  if (n < 1)
    throw parameter_error{"cyclotomic index must be >= 1"};
  return cached_cyclotomic(n);
}

bool is_zero(CyclotomicSum const& sum) {
  auto const& phi = cached_cyclotomic(sum.modulus());
  if (auto fast = divisible_fast(sum.counts(), phi))
    return *fast;
  return divisible_big(sum.counts(), phi);
}

CyclotomicSum accf_exact(PhaseSequence const& a, PhaseSequence const& b,
                         std::ptrdiff_t tau) {
  check_pair(a, b, tau);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(a.modulus()), 0);
  accumulate_counts(a.values(), b.values(), tau, a.modulus(), counts);
  return CyclotomicSum{a.modulus(), std::move(counts)};
}

std::complex<double> accf_float(PhaseSequence const& a, PhaseSequence const& b,
                                std::ptrdiff_t tau) {
  check_pair(a, b, tau);
  return accf_complex(to_complex(a), to_complex(b), tau);
}

CyclotomicSum aacf_set_sum(SequenceSet const& set, std::ptrdiff_t tau) {
  CyclotomicSum total{set.modulus()};
  for (auto const& s : set.sequences())
    total += accf_exact(s, s, tau);
  return total;
}

std::complex<double> aacf_set_sum_float(SequenceSet const& set,
                                        std::ptrdiff_t tau) {
  std::complex<double> total{};
  for (auto const& s : set.sequences())
    total += accf_float(s, s, tau);
  return total;
}

std::size_t CorrelationReport::oracle_disagreements() const {
  if (numerical)
    return 0;
  std::size_t bad = 0;
  for (auto const& v : shifts) {
    if (v.zero && !(v.magnitude < numerical_zero_tolerance))
      ++bad;
    if (!v.zero && !(v.magnitude > numerical_nonzero_floor))
      ++bad;
  }
  return bad;
}

CorrelationReport verify_mscs(SequenceSet const& set, std::size_t shift,
                              VerifyOptions const& options) {
  if (shift < 1)
    throw parameter_error{"MSCS shift S must be >= 1"};
  std::vector<std::ptrdiff_t> shifts;
  for (std::size_t tau = shift; tau < set.length(); tau += shift)
    shifts.push_back(static_cast<std::ptrdiff_t>(tau));
  return run_verification(set, {ClaimKind::mscs, shift}, shifts, options);
}

CorrelationReport verify_gcs(SequenceSet const& set,
                             VerifyOptions const& options) {
  auto report = verify_mscs(set, 1, options);
  report.claim = {ClaimKind::gcs, 1};
  return report;
}

CorrelationReport verify_type2_zcs(SequenceSet const& set, std::size_t zone,
                                   VerifyOptions const& options) {
  auto const len = set.length();
  if (zone < 1 || zone > len)
    throw parameter_error{"ZCZ width Z must satisfy 1 <= Z <= L"};
  std::vector<std::ptrdiff_t> shifts;
  for (auto tau = std::max<std::size_t>(len - zone + 1, 1); tau < len; ++tau)
    shifts.push_back(static_cast<std::ptrdiff_t>(tau));
  return run_verification(set, {ClaimKind::type2_zcs, zone}, shifts, options);
}

CorrelationReport verify_claim(SequenceSet const& set, Claim const& claim,
                               VerifyOptions const& options) {
  switch (claim.kind) {
    case ClaimKind::gcs:
      return verify_gcs(set, options);
    case ClaimKind::mscs:
      return verify_mscs(set, claim.value, options);
    case ClaimKind::type2_zcs:
      return verify_type2_zcs(set, claim.value, options);
  }
  throw parameter_error{"unknown claim kind"};
}

KroneckerIdentityResult kronecker_accf_identity(PhaseSequence const& a,
                                                PhaseSequence const& b,
                                                std::ptrdiff_t tau) {
  auto const ab = kronecker_compose(a, b);
  auto const total = static_cast<std::ptrdiff_t>(ab.size());
  if (tau < 0 || tau >= total)
    throw domain_error{"shift outside [0, |a||b|)"};
  auto const inner = static_cast<std::ptrdiff_t>(b.size());
  auto const q = tau / inner;
  auto const r = tau % inner;

  KroneckerIdentityResult result;

  auto const direct = accf_exact(ab, ab, tau);
  CyclotomicSum rhs{a.modulus()};
  if (auto ra = exact_or_empty(a, a, q))
    rhs += *ra * accf_exact(b, b, r);
  if (r != 0)
    if (auto ra = exact_or_empty(a, a, q + 1))
      rhs += *ra * accf_exact(b, b, r - inner);
  result.exact_holds = is_zero(direct - rhs);
  result.direct_exact_zero = is_zero(direct);

  auto const direct_f = accf_float(ab, ab, tau);
  auto rhs_f = float_or_zero(a, a, q) * accf_float(b, b, r);
  if (r != 0)
    rhs_f += float_or_zero(a, a, q + 1) * accf_float(b, b, r - inner);
  result.float_deviation = std::abs(direct_f - rhs_f);
  result.direct_magnitude = std::abs(direct_f);
  return result;
}

bool kronecker_accf_identity_check(PhaseSequence const& a,
                                   PhaseSequence const& b,
                                   std::ptrdiff_t tau) {
  auto const r = kronecker_accf_identity(a, b, tau);
  return r.exact_holds && r.float_deviation < numerical_zero_tolerance;
}

} // namespace mscs
