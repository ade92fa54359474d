#ifndef MSCS_CORRELATION_HPP
#define MSCS_CORRELATION_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mscs/seqcore.hpp"

namespace mscs {

/// Largest modulus for which verification runs in exact mode. Above it the
/// verifier falls back to double precision and marks reports numerical.
inline constexpr int exact_modulus_limit = 1000;

/// Float magnitude under which a sum is treated as zero in numerical mode.
inline constexpr double numerical_zero_tolerance = 1e-9;
/// Float magnitude an exactly nonzero sum must exceed for the float oracle
/// to count as agreeing.
inline constexpr double numerical_nonzero_floor = 1e-6;

/// Exact sum of modulus-th roots of unity: sum_j counts[j] * w^j.
class CyclotomicSum {
public:
  explicit CyclotomicSum(int modulus);
  CyclotomicSum(int modulus, std::vector<std::int64_t> counts);

  int modulus() const { return modulus_; }
  std::vector<std::int64_t> const& counts() const { return counts_; }

  /// Adds `multiplicity` copies of w^exponent; exponent taken mod modulus.
  void add(std::int64_t exponent, std::int64_t multiplicity = 1);

  std::complex<double> value() const;
  /// Complex conjugate: exponent j maps to -j.
  CyclotomicSum conjugate() const;

  CyclotomicSum& operator+=(CyclotomicSum const& other);
  CyclotomicSum& operator-=(CyclotomicSum const& other);
  friend CyclotomicSum operator+(CyclotomicSum a, CyclotomicSum const& b) {
    return a += b;
  }
  friend CyclotomicSum operator-(CyclotomicSum a, CyclotomicSum const& b) {
    return a -= b;
  }
  /// Product as a cyclic convolution of the count vectors.
  friend CyclotomicSum operator*(CyclotomicSum const& a,
                                 CyclotomicSum const& b);

  friend bool operator==(CyclotomicSum const&, CyclotomicSum const&) = default;

private:
  void check_compatible(CyclotomicSum const& other) const;

  int modulus_;
  std::vector<std::int64_t> counts_;
};

/// Coefficients of Phi_n, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(int n);

/// Decides sum == 0 exactly: the count polynomial must be divisible by
/// Phi_modulus.
bool is_zero(CyclotomicSum const& sum);

/// Aperiodic cross-correlation: sum_i a_i conj(b_{i+tau}) for tau >= 0 and
/// sum_i a_{i-tau} conj(b_i) for tau < 0.
CyclotomicSum accf_exact(PhaseSequence const& a, PhaseSequence const& b,
                         std::ptrdiff_t tau);
std::complex<double> accf_float(PhaseSequence const& a, PhaseSequence const& b,
                                std::ptrdiff_t tau);

/// Sum of the members' aperiodic autocorrelations at `tau`.
CyclotomicSum aacf_set_sum(SequenceSet const& set, std::ptrdiff_t tau);
std::complex<double> aacf_set_sum_float(SequenceSet const& set,
                                        std::ptrdiff_t tau);

struct ShiftVerdict {
  std::ptrdiff_t shift = 0;
  bool zero = false;
  /// |sum| computed independently in double precision.
  double magnitude = 0.0;
};

struct CorrelationReport {
  Claim claim;
  std::vector<ShiftVerdict> shifts;
  std::vector<std::ptrdiff_t> failing_shifts;
  bool passed = true;
  /// Verdicts come from the float path (modulus above the exact limit).
  bool numerical = false;

  /// Shifts where the exact verdict and the float magnitude disagree.
  std::size_t oracle_disagreements() const;
};

struct VerifyOptions {
  bool early_exit = false;
};

/// Zero sums required at every 0 < tau < L with tau mod S == 0.
CorrelationReport verify_mscs(SequenceSet const& set, std::size_t shift,
                              VerifyOptions const& options = {});
/// Zero sums required at every 0 < tau < L.
CorrelationReport verify_gcs(SequenceSet const& set,
                             VerifyOptions const& options = {});
/// Zero sums required for L - Z < tau < L.
CorrelationReport verify_type2_zcs(SequenceSet const& set, std::size_t zone,
                                   VerifyOptions const& options = {});
CorrelationReport verify_claim(SequenceSet const& set, Claim const& claim,
                               VerifyOptions const& options = {});

struct KroneckerIdentityResult {
  bool exact_holds = false;
  double float_deviation = 0.0;
  /// Direct correlation of the composed sequence, for oracle bookkeeping.
  bool direct_exact_zero = false;
  double direct_magnitude = 0.0;
};

/// Compares rho(a (x) b)(tau) with
///   rho(a)(q) rho(b)(r) + [r != 0] rho(a)(q+1) rho(b)(r - |b|),
/// q = tau / |b|, r = tau mod |b|, exactly and in double precision.
KroneckerIdentityResult kronecker_accf_identity(PhaseSequence const& a,
                                                PhaseSequence const& b,
                                                std::ptrdiff_t tau);
bool kronecker_accf_identity_check(PhaseSequence const& a,
                                   PhaseSequence const& b, std::ptrdiff_t tau);

} // namespace mscs

#endif
