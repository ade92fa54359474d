#ifndef MSCS_PMEPR_HPP
#define MSCS_PMEPR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mscs/seqcore.hpp"

namespace mscs {

inline constexpr std::size_t default_oversampling = 64;
/// Slack allowed above the M*S bound for rounding in the envelope transform.
inline constexpr double pmepr_bound_slack = 1e-9;

/// Complex OFDM envelope sampled at df*t = j / (N_os * L), j = 0 .. N_os*L-1.
struct EnvelopeGrid {
  std::size_t oversampling = 1;
  std::size_t length = 0;  // L, number of subcarriers
  std::vector<std::complex<double>> samples;

  /// Normalized time df*t of sample j.
  double position(std::size_t j) const {
    return static_cast<double>(j)
           / static_cast<double>(oversampling * length);
  }
};

/// samples[j] = sum_i c_i exp(2 pi i * i j / (N_os L)) for an arbitrary
/// complex sequence c.
EnvelopeGrid envelope(std::span<std::complex<double> const> sequence,
                      std::size_t oversampling);
EnvelopeGrid envelope(PhaseSequence const& x,
                      std::size_t oversampling = default_oversampling);

/// |P(t)|^2 / L on the envelope grid.
std::vector<double> iapr_curve(PhaseSequence const& x,
                               std::size_t oversampling = default_oversampling);

/// Grid maximum of the IAPR curve.
double pmepr(PhaseSequence const& x,
             std::size_t oversampling = default_oversampling);

struct PmeprReport {
  std::vector<double> per_sequence;
  double set_pmepr = 0.0;
  /// M * S
  double bound = 0.0;
  bool bound_satisfied = false;
  std::size_t oversampling = default_oversampling;
};

PmeprReport pmepr_set(SequenceSet const& set, std::size_t shift,
                      std::size_t oversampling = default_oversampling);

/// Member u (0 <= u < S) is x_k * zeta^{k u}, zeta = exp(2 pi i / S).
std::vector<std::vector<std::complex<double>>> modulated_family(
  PhaseSequence const& x, std::size_t shift);

/// Max over the grid of |sum_i sum_u |P_{a_i^u}|^2 - M L S| / (M L S).
double energy_identity_check(SequenceSet const& set, std::size_t shift,
                             std::size_t oversampling = default_oversampling);

} // namespace mscs

#endif
