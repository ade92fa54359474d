#ifndef MSCS_ACCEPTANCE_HPP
#define MSCS_ACCEPTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mscs {

struct AcceptanceOptions {
  std::size_t theorem1_draws = 200;
  std::size_t multi_prime_draws = 100;
  std::size_t kronecker_pairs = 500;
  std::uint64_t seed = 20240501;
  /// Scratch directory for the IAPR export check; a fresh temporary
  /// directory when empty.
  std::filesystem::path work_dir;
  /// Negative control: flip one phase of the Example 1 fixture.
  bool corrupt_example1 = false;

  /// Scale used by `selftest`.
  static AcceptanceOptions reduced();
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every acceptance criterion in order, printing one PASS/FAIL line per
/// criterion to `log` when non-null.
std::vector<CriterionResult> run_acceptance(AcceptanceOptions const& options,
                                            std::ostream* log);

bool all_passed(std::vector<CriterionResult> const& results);

} // namespace mscs

#endif
