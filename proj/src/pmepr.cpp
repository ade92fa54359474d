#include "mscs/pmepr.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <numbers>

namespace mscs {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock{planner_mutex()};
    fftw_destroy_plan(p);
  }
};

using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

Buffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr)
    throw std::bad_alloc{};
  return Buffer{p};
}

void check_oversampling(std::size_t oversampling) {
  if (oversampling < 1)
    throw parameter_error{"oversampling factor must be >= 1"};
}

} // namespace

EnvelopeGrid envelope(std::span<std::complex<double> const> sequence,
                      std::size_t oversampling) {
  check_oversampling(oversampling);
  if (sequence.empty())
    throw parameter_error{"envelope of an empty sequence"};
  auto const n = oversampling * sequence.size();
  auto in = make_buffer(n);
  auto out = make_buffer(n);
  Plan plan;
  {
    std::lock_guard lock{planner_mutex()};
    plan.reset(fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(),
                                FFTW_BACKWARD, FFTW_ESTIMATE));
  }
  // zero-padded spectrum: carriers occupy the first L bins
  for (std::size_t i = 0; i < n; ++i) {
    auto const c = i < sequence.size() ? sequence[i] : std::complex<double>{};
    in[i][0] = c.real();
    in[i][1] = c.imag();
  }
  fftw_execute(plan.get());

  EnvelopeGrid grid{oversampling, sequence.size(), {}};
  grid.samples.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    grid.samples.emplace_back(out[j][0], out[j][1]);
  return grid;
}

EnvelopeGrid envelope(PhaseSequence const& x, std::size_t oversampling) {
  auto const c = to_complex(x);
  return envelope(std::span<std::complex<double> const>{c}, oversampling);
}

std::vector<double> iapr_curve(PhaseSequence const& x,
                               std::size_t oversampling) {
  auto const grid = envelope(x, oversampling);
  auto const len = static_cast<double>(x.size());
  std::vector<double> curve;
  curve.reserve(grid.samples.size());
  for (auto const& s : grid.samples)
    curve.push_back(std::norm(s) / len);
  return curve;
}

double pmepr(PhaseSequence const& x, std::size_t oversampling) {
  auto const curve = iapr_curve(x, oversampling);
  return std::ranges::max(curve);
}

PmeprReport pmepr_set(SequenceSet const& set, std::size_t shift,
                      std::size_t oversampling) {
  if (shift < 1)
    throw parameter_error{"MSCS shift S must be >= 1"};
  PmeprReport report;
  report.oversampling = oversampling;
  for (auto const& s : set.sequences())
    report.per_sequence.push_back(pmepr(s, oversampling));
  report.set_pmepr = std::ranges::max(report.per_sequence);
  report.bound = static_cast<double>(set.size() * shift);
  report.bound_satisfied = report.set_pmepr <= report.bound + pmepr_bound_slack;
  return report;
}

std::vector<std::vector<std::complex<double>>> modulated_family(
  PhaseSequence const& x, std::size_t shift) {
  if (shift < 1)
    throw parameter_error{"MSCS shift S must be >= 1"};
  auto const base = to_complex(x);
  std::vector<std::vector<std::complex<double>>> family;
  family.reserve(shift);
  auto const step = 2.0 * std::numbers::pi / static_cast<double>(shift);
  for (std::size_t u = 0; u < shift; ++u) {
    auto& member = family.emplace_back(base);
    if (u == 0)
      continue;
    for (std::size_t k = 0; k < member.size(); ++k)
      member[k] *= std::polar(1.0, step * static_cast<double>((k * u) % shift));
  }
  return family;
}

double energy_identity_check(SequenceSet const& set, std::size_t shift,
                             std::size_t oversampling) {
  check_oversampling(oversampling);
  auto const n = oversampling * set.length();
  std::vector<double> energy(n, 0.0);
  for (auto const& s : set.sequences()) {
    for (auto const& member : modulated_family(s, shift)) {
      auto const grid = envelope(
        std::span<std::complex<double> const>{member}, oversampling);
      for (std::size_t j = 0; j < n; ++j)
        energy[j] += std::norm(grid.samples[j]);
    }
  }
  auto const target =
    static_cast<double>(set.size() * set.length() * shift);
  double worst = 0.0;
  for (auto e : energy)
    worst = std::max(worst, std::abs(e - target) / target);
  return worst;
}

} // namespace mscs
